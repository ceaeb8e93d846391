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

#include "qfa/signrank.h"

#include <cmath>

#include "qfa/opcore.h"

namespace qfa {

SignMatrix::SignMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels, Matrix<int> entries)
    : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)), entries_(std::move(entries)) {
    if (row_labels_.size() != entries_.rows() || col_labels_.size() != entries_.cols()) {
        throw DimensionMismatch("sign matrix labels do not match entry shape " + entries_.shape_str());
    }
    for (int x : entries_.data()) {
        if (x != 1 && x != -1) {
            throw InvariantViolation("sign matrix entries must be +1 or -1");
        }
    }
}

RealMatrix SignMatrix::to_real() const {
    RealMatrix m(rows(), cols());
    for (std::size_t i = 0; i < rows(); i++) {
        for (std::size_t j = 0; j < cols(); j++) {
            m(i, j) = entries_(i, j);
        }
    }
    return m;
}

std::vector<int> sign_vector(std::size_t d, std::size_t column) {
    if (d == 0 || d > 62 || column >= (std::size_t{1} << d)) {
        throw InvalidParameter("sign vector column out of range");
    }
    std::size_t value = (std::size_t{1} << d) - 1 - column;
    std::vector<int> eta(d);
    for (std::size_t j = 0; j < d; j++) {
        eta[j] = (value >> (d - 1 - j)) & 1 ? +1 : -1;
    }
    return eta;
}

std::string sign_pattern(const std::vector<int> &eta) {
    std::string s;
    for (int e : eta) {
        s += e > 0 ? '+' : '-';
    }
    return s;
}

SignMatrix complete_shattering(std::size_t d) {
    if (d < 1 || d > 20) {
        throw InvalidParameter("complete_shattering needs 1 <= d <= 20, got " + std::to_string(d));
    }
    const std::size_t cols = std::size_t{1} << d;
    Matrix<int> m(d, cols);
    std::vector<std::string> rl;
    std::vector<std::string> cl;
    for (std::size_t j = 0; j < d; j++) {
        rl.push_back(std::to_string(j + 1));
    }
    for (std::size_t k = 0; k < cols; k++) {
        auto eta = sign_vector(d, k);
        for (std::size_t j = 0; j < d; j++) {
            m(j, k) = eta[j];
        }
        cl.push_back(sign_pattern(eta));
    }
    return SignMatrix(std::move(rl), std::move(cl), std::move(m));
}

bool is_complete_shattering(const SignMatrix &s) {
    const std::size_t d = s.rows();
    if (d < 1 || d > 20 || s.cols() != (std::size_t{1} << d)) {
        return false;
    }
    for (std::size_t k = 0; k < s.cols(); k++) {
        auto eta = sign_vector(d, k);
        for (std::size_t j = 0; j < d; j++) {
            if (s(j, k) != eta[j]) {
                return false;
            }
        }
    }
    return true;
}

const char *to_string(RealizationSource s) {
    switch (s) {
        case RealizationSource::pfa:
            return "pfa";
        case RealizationSource::quantum:
            return "quantum";
        case RealizationSource::direct:
            return "direct";
    }
    return "direct";
}

double realization_shift(const std::vector<double> &gaps) {
    double min_positive = std::numeric_limits<double>::infinity();
    for (double g : gaps) {
        if (g > 0) {
            min_positive = std::min(min_positive, g);
        }
    }
    if (!std::isfinite(min_positive)) {
        return 1e-6;
    }
    return std::max(min_positive / 2, 1e-12);
}

RealizationMatrix quantum_realization(const Moqfa &q, double lambda, const std::vector<Word> &prefixes,
                                      const std::vector<Word> &suffixes) {
    std::vector<double> gaps;
    gaps.reserve(prefixes.size() * suffixes.size());
    for (const auto &x : prefixes) {
        auto psi = run_moqfa(q, x, q.initial_state());
        for (const auto &y : suffixes) {
            gaps.push_back(moqfa_acceptance(q, run_moqfa(q, y, psi)) - lambda);
        }
    }
    RealizationMatrix r;
    r.claimed_rank_bound = q.dim() * q.dim();
    r.source = RealizationSource::quantum;
    r.cutpoint = lambda;
    r.epsilon = realization_shift(gaps);
    r.matrix = RealMatrix(prefixes.size(), suffixes.size());
    for (std::size_t i = 0; i < prefixes.size(); i++) {
        for (std::size_t j = 0; j < suffixes.size(); j++) {
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

RankReport numerical_rank_report(const RealMatrix &m, double rel_tol) {
    RankReport rep;
    rep.singular_values = singular_values(m);
    if (rep.singular_values.empty() || rep.singular_values.front() == 0.0) {
        return rep;
    }
    const double cutoff = rel_tol * rep.singular_values.front();
    for (double s : rep.singular_values) {
        if (s > cutoff) {
            rep.rank++;
        }
    }
    return rep;
}

std::size_t numerical_rank(const RealMatrix &m, double rel_tol) {
    return numerical_rank_report(m, rel_tol).rank;
}

double spectral_norm(const SignMatrix &s) {
    return operator_norm(s.to_real());
}

ForsterBound forster_bound(const SignMatrix &s) {
    if (!s.is_square()) {
        throw InvalidParameter("Forster bound is defined for square L x L sign matrices; got " +
                               s.entries().shape_str() + ". Extract a square submatrix first.");
    }
    ForsterBound f;
    f.side = s.rows();
    f.spectral_norm = spectral_norm(s);
    f.bound = static_cast<double>(f.side) / f.spectral_norm;
    f.cap = std::sqrt(static_cast<double>(f.side));
    return f;
}

SignMatrix square_submatrix(const SignMatrix &s, std::size_t k) {
    if (k == 0 || k > s.rows() || k > s.cols()) {
        throw InvalidParameter("square submatrix side " + std::to_string(k) + " does not fit " +
                               s.entries().shape_str());
    }
    Matrix<int> m(k, k);
    for (std::size_t i = 0; i < k; i++) {
        for (std::size_t j = 0; j < k; j++) {
            m(i, j) = s(i, j);
        }
    }
    std::vector<std::string> rl(s.row_labels().begin(), s.row_labels().begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<std::string> cl(s.col_labels().begin(), s.col_labels().begin() + static_cast<std::ptrdiff_t>(k));
    return SignMatrix(std::move(rl), std::move(cl), std::move(m));
}

SignConsistency sign_consistency(const RealizationMatrix &r, const SignMatrix &s, const Tolerances &tol) {
    if (r.matrix.rows() != s.rows() || r.matrix.cols() != s.cols()) {
        throw DimensionMismatch("realization " + r.matrix.shape_str() + " vs sign matrix " +
                                s.entries().shape_str());
    }
    SignConsistency out;
    for (std::size_t i = 0; i < s.rows(); i++) {
        for (std::size_t j = 0; j < s.cols(); j++) {
            double signed_value = s(i, j) * r.matrix(i, j);
            out.min_signed_margin = std::min(out.min_signed_margin, signed_value);
            if (signed_value <= 0) {
                out.violations++;
                out.consistent = false;
            } else if (signed_value < tol.eq) {
                out.fragile++;
            }
        }
    }
    return out;
}

bool orthant_certificate(const RealizationMatrix &r, const SignMatrix &c_d, const Tolerances &tol) {
    const std::size_t d = c_d.rows();
    if (d == 0 || d > 20 || c_d.cols() != (std::size_t{1} << d)) {
        throw DimensionMismatch("orthant certificate needs a d x 2^d complete shattering matrix");
    }
    if (r.matrix.rows() != d || r.matrix.cols() != c_d.cols()) {
        throw DimensionMismatch("realization " + r.matrix.shape_str() + " does not match C_d shape " +
                                c_d.entries().shape_str());
    }
    // Every orthant must be represented, i.e. the columns are all 2^d sign
    // vectors in some order.
    std::vector<bool> seen(c_d.cols(), false);
    for (std::size_t k = 0; k < c_d.cols(); k++) {
        std::size_t code = 0;
        for (std::size_t j = 0; j < d; j++) {
            code = (code << 1) | (c_d(j, k) > 0 ? 1u : 0u);
        }
        if (seen[code]) {
            return false;
        }
        seen[code] = true;
    }
    if (!sign_consistency(r, c_d, tol).consistent) {
        return false;
    }
    return numerical_rank(r.matrix, tol.rank) == d;
}

}  // namespace qfa
