// Copyright 2026 The qfa-cutpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFA_SIGNRANK_H
#define QFA_SIGNRANK_H

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qfa/automata.h"
#include "qfa/matrix.h"
#include "qfa/tolerances.h"

namespace qfa {

/// +/-1 matrix over labelled prefix x suffix index sets.
class SignMatrix {
   public:
    SignMatrix() = default;
    /// Throws InvariantViolation unless every entry is exactly +1 or -1 and
    /// the label counts match the entry shape.
    SignMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels, Matrix<int> entries);

    std::size_t rows() const noexcept {
        return entries_.rows();
    }
    std::size_t cols() const noexcept {
        return entries_.cols();
    }
    int operator()(std::size_t r, std::size_t c) const {
        return entries_(r, c);
    }
    const Matrix<int> &entries() const noexcept {
        return entries_;
    }
    const std::vector<std::string> &row_labels() const noexcept {
        return row_labels_;
    }
    const std::vector<std::string> &col_labels() const noexcept {
        return col_labels_;
    }
    bool is_square() const noexcept {
        return rows() == cols();
    }
    RealMatrix to_real() const;

    /// Same entries; labels ignored.
    bool same_signs(const SignMatrix &other) const {
        return entries_ == other.entries_;
    }

   private:
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    Matrix<int> entries_;
};

/// Canonical column order of the complete shattering matrix: column k is the
/// binary counter value 2^d - 1 - k read most significant index first, with
/// bit 1 meaning +1. Column 0 is all +1, the last column all -1.
std::vector<int> sign_vector(std::size_t d, std::size_t column);
/// "+-+..." rendering.
std::string sign_pattern(const std::vector<int> &eta);

/// d x 2^d matrix (C_d)_{j, eta} = eta_j. Requires 1 <= d <= 20.
SignMatrix complete_shattering(std::size_t d);

/// Whether the columns of `s` are exactly the sign vectors in canonical order.
bool is_complete_shattering(const SignMatrix &s);

struct InducedSignMatrix {
    SignMatrix signs;
    /// (row, col) entries with |f - lambda| < tol.eq; they default to -1.
    std::vector<std::pair<std::size_t, std::size_t>> ambiguous;
};

/// Entry (x, y) = sgn(f(xy) - lambda) with sgn(0) = -1.
template <typename Automaton>
InducedSignMatrix sign_matrix(const Automaton &a, double lambda, const std::vector<Word> &prefixes,
                              const std::vector<Word> &suffixes, const Tolerances &tol = kDefaultTolerances) {
    Matrix<int> entries(prefixes.size(), suffixes.size());
    std::vector<std::pair<std::size_t, std::size_t>> ambiguous;
    for (std::size_t i = 0; i < prefixes.size(); i++) {
        for (std::size_t j = 0; j < suffixes.size(); j++) {
            Word w = prefixes[i];
            w.insert(w.end(), suffixes[j].begin(), suffixes[j].end());
            auto m = member_of(evaluate(a, w), lambda, tol);
            entries(i, j) = m.sign;
            if (m.ambiguous) {
                ambiguous.emplace_back(i, j);
            }
        }
    }
    std::vector<std::string> rl;
    std::vector<std::string> cl;
    for (const auto &w : prefixes) {
        rl.push_back(word_to_string(w));
    }
    for (const auto &w : suffixes) {
        cl.push_back(word_to_string(w));
    }
    return {SignMatrix(std::move(rl), std::move(cl), std::move(entries)), std::move(ambiguous)};
}

enum class RealizationSource { pfa, quantum, direct };
const char *to_string(RealizationSource s);

/// Real matrix whose sign pattern is meant to match a SignMatrix.
struct RealizationMatrix {
    RealMatrix matrix;
    std::size_t claimed_rank_bound = 0;
    RealizationSource source = RealizationSource::direct;
    /// Cutpoint shift: entries are f(xy) - (cutpoint + epsilon).
    double epsilon = 0;
    double cutpoint = 0;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
};

/// Half the smallest positive gap f - mu over `values`, floored at 1e-12;
/// 1e-6 when no gap is positive.
double realization_shift(const std::vector<double> &gaps);

/// R_{x,y} = a_x . b_y - (mu + eps) where a_x is the distribution after x and
/// b_y = P_y P_# 1_F. The factorization through R^m bounds the rank by m.
template <typename T>
RealizationMatrix pfa_realization(const BasicPfa<T> &p, const T &mu, const std::vector<Word> &prefixes,
                                  const std::vector<Word> &suffixes) {
    std::vector<std::vector<T>> left;
    std::vector<std::vector<T>> right;
    for (const auto &x : prefixes) {
        left.push_back(run_pfa(p, x, p.initial()));
    }
    for (const auto &y : suffixes) {
        right.push_back(pfa_suffix_column(p, y));
    }
    std::vector<double> gaps;
    RealMatrix values(prefixes.size(), suffixes.size());
    for (std::size_t i = 0; i < prefixes.size(); i++) {
        for (std::size_t j = 0; j < suffixes.size(); j++) {
            T f = dot<T>(left[i], right[j]);
            values(i, j) = ScalarTraits<T>::to_double(f);
            gaps.push_back(ScalarTraits<T>::to_double(T(f - mu)));
        }
    }
    RealizationMatrix r;
    r.claimed_rank_bound = p.states();
    r.source = RealizationSource::pfa;
    r.cutpoint = ScalarTraits<T>::to_double(mu);
    r.epsilon = realization_shift(gaps);
    r.matrix = RealMatrix(prefixes.size(), suffixes.size());
    for (std::size_t i = 0; i < prefixes.size(); i++) {
        for (std::size_t j = 0; j < suffixes.size(); j++) {
            // The gap is exact in rational mode; only the shift is rounded.
            r.matrix(i, j) = gaps[i * suffixes.size() + j] - r.epsilon;
        }
    }
    for (const auto &w : prefixes) {
        r.row_labels.push_back(word_to_string(w));
    }
    for (const auto &w : suffixes) {
        r.col_labels.push_back(word_to_string(w));
    }
    return r;
}

/// R_{x,y} = f_Q(xy) - (lambda + eps); the acceptance matrix factors through
/// Herm(C^n), so rank <= n^2.
RealizationMatrix quantum_realization(const Moqfa &q, double lambda, const std::vector<Word> &prefixes,
                                      const std::vector<Word> &suffixes);

struct RankReport {
    std::size_t rank = 0;
    /// Descending, for auditing the threshold.
    RealVector singular_values;
};

RankReport numerical_rank_report(const RealMatrix &m, double rel_tol = kDefaultTolerances.rank);
std::size_t numerical_rank(const RealMatrix &m, double rel_tol = kDefaultTolerances.rank);

double spectral_norm(const SignMatrix &s);

struct ForsterBound {
    std::size_t side = 0;
    double spectral_norm = 0;
    /// L / ||S||_2.
    double bound = 0;
    /// sqrt(L); the bound never exceeds it.
    double cap = 0;
};

/// Square matrices only; throws InvalidParameter otherwise.
ForsterBound forster_bound(const SignMatrix &s);

/// Top-left k x k restriction, for spectral certificates on rectangular data.
SignMatrix square_submatrix(const SignMatrix &s, std::size_t k);

struct SignConsistency {
    bool consistent = true;
    std::size_t violations = 0;
    /// Consistent entries with |R| < tol.eq.
    std::size_t fragile = 0;
    double min_signed_margin = std::numeric_limits<double>::infinity();
};

/// Entrywise S R > 0.
SignConsistency sign_consistency(const RealizationMatrix &r, const SignMatrix &s,
                                 const Tolerances &tol = kDefaultTolerances);

/// True iff every column of R lies strictly in the open orthant of the
/// matching column of C_d and rank(R) = d. Throws DimensionMismatch when the
/// shapes differ or `c_d` is not d x 2^d.
bool orthant_certificate(const RealizationMatrix &r, const SignMatrix &c_d,
                         const Tolerances &tol = kDefaultTolerances);

}  // namespace qfa

#endif
