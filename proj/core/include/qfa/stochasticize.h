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

#ifndef QFA_STOCHASTICIZE_H
#define QFA_STOCHASTICIZE_H

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "qfa/automata.h"

namespace qfa {

/// Constants chosen by gfa_to_pfa. With g(w) = f_G(w) - lambda the output
/// satisfies f_P(w) = 1/2 + g(w) (c m)^{-|w|} / (2 T b).
template <typename T>
struct BasicConversionReport {
    std::size_t input_states = 0;
    /// Always 2 k + 6.
    std::size_t output_states = 0;
    /// Positivity shift c >= max |C_sigma| and c >= 1.
    T shift{};
    /// m = k + 3, the zero-row-sum embedding dimension.
    std::size_t scale_m = 0;
    T offset_a{};
    T scale_b{};
    /// Common mass of the positive and negative parts of the initial measure.
    T block_mass{};
};

template <typename T>
struct Stochasticized {
    BasicPfa<T> pfa;
    T cutpoint;
    BasicConversionReport<T> report;
};

namespace detail {

template <typename T>
T half() {
    if constexpr (ScalarTraits<T>::exact) {
        return T(1, 2);
    } else {
        return T(0.5);
    }
}

template <typename T>
T pow_uint(const T &base, std::size_t e) {
    T out(1);
    for (std::size_t i = 0; i < e; i++) {
        out *= base;
    }
    return out;
}

}  // namespace detail

/// Strict-cutpoint GFA -> PFA conversion with exactly 2k+6 states and
/// cutpoint 1/2. The chain is:
///   1. absorb lambda:   u' = (u, 1), A' = A (+) [1], v' = (v, -lambda)
///   2. embed in m = k+3 coordinates with zero row sums and a zero-sum
///      initial vector, so the all-ones matrix E is annihilated on both sides
///   3. P_sigma = (C_sigma + c E) / (c m)
///   4. split the initial measure into pi+ - pi- (both of mass T) and run
///      two copies of P_sigma side by side
///   5. the end-marker routes copy-plus state i to the accept sink with
///      probability eta'_i and copy-minus state i with 1 - eta'_i.
template <typename T>
Stochasticized<T> gfa_to_pfa(const BasicGfa<T> &g, const T &lambda) {
    using Traits = ScalarTraits<T>;
    const std::size_t k = g.states();
    const std::size_t inner = k + 1;
    const std::size_t m = k + 3;

    // Steps 1-2.
    std::vector<Matrix<T>> zero_sum;
    zero_sum.reserve(g.alphabet().size());
    for (const auto &a : g.transitions()) {
        Matrix<T> c(m, m);
        for (std::size_t i = 0; i < inner; i++) {
            T row_sum(0);
            for (std::size_t j = 0; j < inner; j++) {
                T entry = (i < k && j < k) ? a(i, j) : T(i == j ? 1 : 0);
                c(i + 1, j + 1) = entry;
                row_sum += entry;
            }
            c(i + 1, m - 1) = -row_sum;
        }
        zero_sum.push_back(std::move(c));
    }
    std::vector<T> pi0(m, T(0));
    T initial_sum(0);
    for (std::size_t i = 0; i < inner; i++) {
        pi0[i + 1] = i < k ? g.initial()[i] : T(1);
        initial_sum += pi0[i + 1];
    }
    pi0[m - 1] = -initial_sum;
    std::vector<T> eta_hat(m, T(0));
    for (std::size_t i = 0; i < k; i++) {
        eta_hat[i + 1] = g.final_vector()[i];
    }
    eta_hat[k + 1] = -lambda;

    // Step 3.
    T shift(1);
    for (const auto &c : zero_sum) {
        for (const auto &x : c.data()) {
            T mag = Traits::abs(x);
            if (mag > shift) {
                shift = mag;
            }
        }
    }
    const T scale = shift * T(static_cast<long>(m));
    std::vector<Matrix<T>> stochastic;
    stochastic.reserve(zero_sum.size());
    for (const auto &c : zero_sum) {
        Matrix<T> doubled(2 * m, 2 * m);
        for (std::size_t i = 0; i < m; i++) {
            for (std::size_t j = 0; j < m; j++) {
                T p = (c(i, j) + shift) / scale;
                doubled(i, j) = p;
                doubled(m + i, m + j) = p;
            }
        }
        stochastic.push_back(std::move(doubled));
    }

    // Step 4.
    T mass(0);
    for (const auto &x : pi0) {
        if (x > 0) {
            mass += x;
        }
    }
    std::vector<T> pi(2 * m, T(0));
    for (std::size_t i = 0; i < m; i++) {
        if (pi0[i] > 0) {
            pi[i] = pi0[i] / (T(2) * mass);
        } else if (pi0[i] < 0) {
            pi[m + i] = -pi0[i] / (T(2) * mass);
        }
    }

    // Step 5.
    T offset(0);
    for (const auto &x : eta_hat) {
        if (-x > offset) {
            offset = -x;
        }
    }
    T spread(1);
    for (const auto &x : eta_hat) {
        if (x + offset > spread) {
            spread = x + offset;
        }
    }
    const std::size_t accept_sink = 0;
    const std::size_t reject_sink = m;
    Matrix<T> end_marker(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; i++) {
        T eta = (eta_hat[i] + offset) / spread;
        end_marker(i, accept_sink) += eta;
        end_marker(i, reject_sink) += T(1) - eta;
        end_marker(m + i, accept_sink) += T(1) - eta;
        end_marker(m + i, reject_sink) += eta;
    }

    BasicConversionReport<T> report;
    report.input_states = k;
    report.output_states = 2 * m;
    report.shift = shift;
    report.scale_m = m;
    report.offset_a = offset;
    report.scale_b = spread;
    report.block_mass = mass;

    return {BasicPfa<T>(g.alphabet(), std::move(pi), std::move(stochastic), std::move(end_marker), {accept_sink}),
            detail::half<T>(), report};
}

/// 1/2 + g (c m)^{-len} / (2 T b).
template <typename T>
T predicted_pfa_value(const BasicConversionReport<T> &r, const T &gap, std::size_t len) {
    T scale = r.shift * T(static_cast<long>(r.scale_m));
    return detail::half<T>() + gap / (detail::pow_uint(scale, len) * T(2) * r.block_mass * r.scale_b);
}

struct SignAgreementReport {
    std::size_t words_checked = 0;
    /// Words whose reference value sits within tol.eq of its cutpoint; they
    /// are excluded from the comparison (float mode only).
    std::size_t ambiguous = 0;
    bool agree = true;
    std::optional<Word> first_disagreement;
    double reference_value = 0;
    double simulator_value = 0;
    /// min |f_sim(w) - mu| over compared words.
    double min_margin = std::numeric_limits<double>::infinity();
};

/// Compares strict-cutpoint signs of two evaluators on a word list.
/// `reference(w)` and `simulator(w)` may return double or Rational.
template <typename RefFn, typename SimFn, typename R, typename S>
SignAgreementReport verify_sign_agreement_on(const std::vector<Word> &words, RefFn &&reference, const R &lambda,
                                             SimFn &&simulator, const S &mu,
                                             const Tolerances &tol = kDefaultTolerances) {
    SignAgreementReport rep;
    for (const auto &w : words) {
        auto f_ref = reference(w);
        auto f_sim = simulator(w);
        rep.words_checked++;
        if constexpr (!ScalarTraits<R>::exact) {
            if (std::abs(f_ref - lambda) < tol.eq) {
                rep.ambiguous++;
                continue;
            }
        }
        bool ref_accepts = f_ref > lambda;
        bool sim_accepts = f_sim > mu;
        double margin = ScalarTraits<S>::to_double(ScalarTraits<S>::abs(S(f_sim - mu)));
        rep.min_margin = std::min(rep.min_margin, margin);
        if (ref_accepts != sim_accepts && rep.agree) {
            rep.agree = false;
            rep.first_disagreement = w;
            rep.reference_value = ScalarTraits<R>::to_double(R(f_ref));
            rep.simulator_value = ScalarTraits<S>::to_double(S(f_sim));
        }
    }
    return rep;
}

/// Enumerates every word up to max_len over `alphabet` and compares
/// f_G(w) > lambda against f_P(w) > mu.
template <typename T>
SignAgreementReport verify_sign_agreement(const BasicGfa<T> &g, const T &lambda, const BasicPfa<T> &p, const T &mu,
                                          std::size_t max_len, const std::vector<std::string> &alphabet,
                                          const Tolerances &tol = kDefaultTolerances) {
    return verify_sign_agreement_on(
        enumerate_words(alphabet, max_len), [&](const Word &w) { return evaluate_gfa(g, w); }, lambda,
        [&](const Word &w) { return evaluate_pfa(p, w); }, mu, tol);
}

}  // namespace qfa

#endif
