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

#ifndef QFA_AUTOMATA_H
#define QFA_AUTOMATA_H

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "qfa/matrix.h"
#include "qfa/opcore.h"
#include "qfa/rational.h"
#include "qfa/tolerances.h"

namespace qfa {

/// A word is a sequence of symbol names. Symbols are arbitrary strings.
using Word = std::vector<std::string>;

/// Space-separated rendering; the empty word renders as "".
std::string word_to_string(const Word &w);
/// Inverse of word_to_string.
Word parse_word(const std::string &text);

/// Ordered symbol set with O(1) lookup by name.
class Alphabet {
   public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const noexcept {
        return symbols_.size();
    }
    const std::vector<std::string> &symbols() const noexcept {
        return symbols_;
    }
    const std::string &operator[](std::size_t i) const {
        return symbols_[i];
    }
    bool contains(const std::string &symbol) const {
        return index_.contains(symbol);
    }
    /// Throws UnknownSymbol.
    std::size_t index_of(const std::string &symbol) const;
    std::vector<std::size_t> encode(const Word &w) const;

    friend bool operator==(const Alphabet &a, const Alphabet &b) {
        return a.symbols_ == b.symbols_;
    }

   private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Every word over `alphabet` of length <= max_len, shortest first, each
/// length in lexicographic order of symbol indices.
std::vector<Word> enumerate_words(const std::vector<std::string> &alphabet, std::size_t max_len);

// ---------------------------------------------------------------------------
// Generalized finite automaton: f(w) = u A_w1 ... A_wm v.

template <typename T>
class BasicGfa {
   public:
    using Scalar = T;

    BasicGfa(Alphabet alphabet, std::vector<T> initial, std::vector<Matrix<T>> transitions, std::vector<T> final_vector)
        : alphabet_(std::move(alphabet)),
          initial_(std::move(initial)),
          transitions_(std::move(transitions)),
          final_(std::move(final_vector)) {
        const std::size_t k = initial_.size();
        if (k == 0) {
            throw InvariantViolation("GFA needs at least one state");
        }
        if (final_.size() != k) {
            throw DimensionMismatch("GFA final vector length differs from state count");
        }
        if (transitions_.size() != alphabet_.size()) {
            throw DimensionMismatch("GFA needs exactly one transition matrix per symbol");
        }
        for (const auto &a : transitions_) {
            if (a.rows() != k || a.cols() != k) {
                throw DimensionMismatch("GFA transition matrix has shape " + a.shape_str());
            }
        }
    }

    std::size_t states() const noexcept {
        return initial_.size();
    }
    const Alphabet &alphabet() const noexcept {
        return alphabet_;
    }
    const std::vector<T> &initial() const noexcept {
        return initial_;
    }
    const std::vector<Matrix<T>> &transitions() const noexcept {
        return transitions_;
    }
    const Matrix<T> &transition(std::size_t symbol) const {
        return transitions_.at(symbol);
    }
    const Matrix<T> &transition(const std::string &symbol) const {
        return transitions_[alphabet_.index_of(symbol)];
    }
    const std::vector<T> &final_vector() const noexcept {
        return final_;
    }

   private:
    Alphabet alphabet_;
    std::vector<T> initial_;
    std::vector<Matrix<T>> transitions_;
    std::vector<T> final_;
};

using Gfa = BasicGfa<double>;
using RationalGfa = BasicGfa<Rational>;

/// Row vector after reading w from `start`.
template <typename T>
std::vector<T> run_gfa(const BasicGfa<T> &g, const Word &w, std::vector<T> start) {
    for (auto s : g.alphabet().encode(w)) {
        start = row_times<T>(start, g.transition(s));
    }
    return start;
}

template <typename T>
T evaluate_gfa(const BasicGfa<T> &g, const Word &w) {
    auto row = run_gfa(g, w, g.initial());
    return dot<T>(row, g.final_vector());
}

// ---------------------------------------------------------------------------
// Probabilistic finite automaton with end-marker:
// f(w) = pi P_w1 ... P_wm P_# 1_F.

namespace detail {

template <typename T>
bool is_probability_vector(std::span<const T> v, double tol) {
    T sum(0);
    for (const auto &x : v) {
        if constexpr (ScalarTraits<T>::exact) {
            if (x < 0) {
                return false;
            }
        } else {
            if (x < -tol) {
                return false;
            }
        }
        sum += x;
    }
    if constexpr (ScalarTraits<T>::exact) {
        return sum == 1;
    } else {
        return std::abs(sum - 1.0) <= tol;
    }
}

}  // namespace detail

template <typename T>
class BasicPfa {
   public:
    using Scalar = T;
    /// Stochasticity tolerance in float mode; rational mode is exact.
    static constexpr double kStochasticTol = 1e-12;

    BasicPfa(Alphabet alphabet, std::vector<T> initial, std::vector<Matrix<T>> transitions, Matrix<T> end_marker,
             std::vector<std::size_t> accepting)
        : alphabet_(std::move(alphabet)),
          initial_(std::move(initial)),
          transitions_(std::move(transitions)),
          end_marker_(std::move(end_marker)),
          accepting_(std::move(accepting)) {
        const std::size_t m = initial_.size();
        if (m == 0) {
            throw InvariantViolation("PFA needs at least one state");
        }
        if (transitions_.size() != alphabet_.size()) {
            throw DimensionMismatch("PFA needs exactly one transition matrix per symbol");
        }
        if (!detail::is_probability_vector<T>(initial_, kStochasticTol)) {
            throw InvariantViolation("PFA initial vector is not a probability distribution");
        }
        auto check = [&](const Matrix<T> &p, const std::string &what) {
            if (p.rows() != m || p.cols() != m) {
                throw DimensionMismatch("PFA " + what + " has shape " + p.shape_str());
            }
            for (std::size_t r = 0; r < m; r++) {
                if (!detail::is_probability_vector<T>(p.row(r), kStochasticTol)) {
                    throw InvariantViolation("PFA " + what + " row " + std::to_string(r) + " is not stochastic");
                }
            }
        };
        for (std::size_t s = 0; s < transitions_.size(); s++) {
            check(transitions_[s], "transition '" + alphabet_[s] + "'");
        }
        check(end_marker_, "end-marker");
        std::sort(accepting_.begin(), accepting_.end());
        accepting_.erase(std::unique(accepting_.begin(), accepting_.end()), accepting_.end());
        for (auto f : accepting_) {
            if (f >= m) {
                throw InvariantViolation("accepting state index out of range");
            }
        }
    }

    std::size_t states() const noexcept {
        return initial_.size();
    }
    const Alphabet &alphabet() const noexcept {
        return alphabet_;
    }
    const std::vector<T> &initial() const noexcept {
        return initial_;
    }
    const std::vector<Matrix<T>> &transitions() const noexcept {
        return transitions_;
    }
    const Matrix<T> &transition(std::size_t symbol) const {
        return transitions_.at(symbol);
    }
    const Matrix<T> &end_marker() const noexcept {
        return end_marker_;
    }
    const std::vector<std::size_t> &accepting() const noexcept {
        return accepting_;
    }
    /// Column indicator 1_F.
    std::vector<T> accepting_indicator() const {
        std::vector<T> ind(states(), T(0));
        for (auto f : accepting_) {
            ind[f] = T(1);
        }
        return ind;
    }
    /// P_# 1_F: acceptance probability from each state once the input ends.
    std::vector<T> final_column() const {
        auto ind = accepting_indicator();
        return times_col<T>(end_marker_, ind);
    }

   private:
    Alphabet alphabet_;
    std::vector<T> initial_;
    std::vector<Matrix<T>> transitions_;
    Matrix<T> end_marker_;
    std::vector<std::size_t> accepting_;
};

using Pfa = BasicPfa<double>;
using RationalPfa = BasicPfa<Rational>;

/// State distribution after reading w from `start` (end-marker not applied).
template <typename T>
std::vector<T> run_pfa(const BasicPfa<T> &p, const Word &w, std::vector<T> start) {
    for (auto s : p.alphabet().encode(w)) {
        start = row_times<T>(start, p.transition(s));
    }
    return start;
}

/// Conditional acceptance column P_y P_# 1_F for a suffix y.
template <typename T>
std::vector<T> pfa_suffix_column(const BasicPfa<T> &p, const Word &y) {
    auto col = p.final_column();
    auto enc = p.alphabet().encode(y);
    for (auto it = enc.rbegin(); it != enc.rend(); ++it) {
        col = times_col<T>(p.transition(*it), col);
    }
    return col;
}

template <typename T>
T evaluate_pfa(const BasicPfa<T> &p, const Word &w) {
    auto dist = run_pfa(p, w, p.initial());
    return dot<T>(dist, p.final_column());
}

// ---------------------------------------------------------------------------
// Measure-once quantum finite automaton: f(w) = <psi_w| P |psi_w>.

class Moqfa {
   public:
    Moqfa(Alphabet alphabet, ComplexVector initial_state, std::vector<ComplexMatrix> unitaries, Projector accept);

    std::size_t dim() const noexcept {
        return initial_.size();
    }
    const Alphabet &alphabet() const noexcept {
        return alphabet_;
    }
    const ComplexVector &initial_state() const noexcept {
        return initial_;
    }
    const std::vector<ComplexMatrix> &unitaries() const noexcept {
        return unitaries_;
    }
    const ComplexMatrix &unitary(std::size_t symbol) const {
        return unitaries_.at(symbol);
    }
    const Projector &accept() const noexcept {
        return accept_;
    }

   private:
    Alphabet alphabet_;
    ComplexVector initial_;
    std::vector<ComplexMatrix> unitaries_;
    Projector accept_;
};

ComplexVector run_moqfa(const Moqfa &q, const Word &w, ComplexVector start);
/// Acceptance probability of a state vector, clamped to [0, 1].
double moqfa_acceptance(const Moqfa &q, const ComplexVector &psi);
double evaluate_moqfa(const Moqfa &q, const Word &w);

// ---------------------------------------------------------------------------
// One-way automaton with a deterministic classical controller and a quantum
// register driven by CPTP channels.

struct QcfaConfiguration {
    std::size_t classical_state;
    ComplexMatrix rho;
};

class Qcfa {
   public:
    /// `delta` and `channels` are indexed by state * |alphabet| + symbol.
    Qcfa(Alphabet alphabet, std::size_t classical_states, std::size_t quantum_dim, std::size_t initial_classical,
         DensityOperator initial_quantum, std::vector<std::size_t> delta, std::vector<KrausChannel> channels,
         EffectOperator accept);

    std::size_t classical_states() const noexcept {
        return classical_states_;
    }
    std::size_t quantum_dim() const noexcept {
        return quantum_dim_;
    }
    const Alphabet &alphabet() const noexcept {
        return alphabet_;
    }
    std::size_t initial_classical() const noexcept {
        return initial_classical_;
    }
    const DensityOperator &initial_quantum() const noexcept {
        return initial_quantum_;
    }
    std::size_t next_state(std::size_t state, std::size_t symbol) const {
        return delta_[state * alphabet_.size() + symbol];
    }
    const KrausChannel &channel(std::size_t state, std::size_t symbol) const {
        return channels_[state * alphabet_.size() + symbol];
    }
    const EffectOperator &accept() const noexcept {
        return accept_;
    }

   private:
    Alphabet alphabet_;
    std::size_t classical_states_;
    std::size_t quantum_dim_;
    std::size_t initial_classical_;
    DensityOperator initial_quantum_;
    std::vector<std::size_t> delta_;
    std::vector<KrausChannel> channels_;
    EffectOperator accept_;
};

QcfaConfiguration run_qcfa(const Qcfa &a, const Word &w, QcfaConfiguration start);
QcfaConfiguration qcfa_initial_configuration(const Qcfa &a);
double qcfa_acceptance(const Qcfa &a, const QcfaConfiguration &config);
double evaluate_qcfa(const Qcfa &a, const Word &w);

// ---------------------------------------------------------------------------
// Uniform evaluation entry points (used by generic verification code).

inline double evaluate(const Gfa &g, const Word &w) {
    return evaluate_gfa(g, w);
}
inline Rational evaluate(const RationalGfa &g, const Word &w) {
    return evaluate_gfa(g, w);
}
inline double evaluate(const Pfa &p, const Word &w) {
    return evaluate_pfa(p, w);
}
inline Rational evaluate(const RationalPfa &p, const Word &w) {
    return evaluate_pfa(p, w);
}
inline double evaluate(const Moqfa &q, const Word &w) {
    return evaluate_moqfa(q, w);
}
inline double evaluate(const Qcfa &a, const Word &w) {
    return evaluate_qcfa(a, w);
}

// ---------------------------------------------------------------------------
// Strict-cutpoint membership.

struct CutpointSpec {
    double lambda = 0.5;
};

struct Membership {
    /// +1 iff f > lambda; equality rejects.
    int sign;
    /// Float mode only: |f - lambda| < tol.eq, so the sign is not trustworthy.
    bool ambiguous;
};

Membership member(double f_value, const CutpointSpec &spec, const Tolerances &tol = kDefaultTolerances);
Membership member(const Rational &f_value, const Rational &lambda);

/// Float values use the tolerance band; exact values compare exactly against
/// the binary value of lambda.
inline Membership member_of(double f_value, double lambda, const Tolerances &tol = kDefaultTolerances) {
    return member(f_value, CutpointSpec{lambda}, tol);
}
inline Membership member_of(const Rational &f_value, double lambda, const Tolerances & = kDefaultTolerances) {
    return member(f_value, Rational(lambda));
}

}  // namespace qfa

#endif
