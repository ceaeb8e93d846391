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

#ifndef QFA_WITNESSES_H
#define QFA_WITNESSES_H

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qfa/automata.h"
#include "qfa/opcore.h"
#include "qfa/signrank.h"

namespace qfa {

/// Which sign vectors get a test symbol.
struct EtaMode {
    enum class Kind { full, sampled };
    Kind kind = Kind::full;
    /// Sampled mode: number of distinct sign vectors drawn.
    std::size_t count = 0;
    std::uint64_t seed = 0x51676e52616e6bULL;

    static EtaMode full() {
        return {};
    }
    static EtaMode sampled(std::size_t count, std::uint64_t seed) {
        return {Kind::sampled, count, seed};
    }
    /// "full" or "sample:N".
    std::string describe() const;
};

/// Parses "full" or "sample:N". Throws InvalidParameter.
EtaMode parse_eta_mode(const std::string &text, std::uint64_t seed);

/// Full mode: all 2^d vectors in canonical order (see sign_vector). Sampled
/// mode: `count` distinct vectors drawn uniformly without replacement from a
/// 64-bit Mersenne Twister seeded with `seed`. Full mode requires d <= 20.
std::vector<std::vector<int>> select_sign_vectors(std::size_t d, const EtaMode &mode);

/// "p:<l>" with l 1-based.
std::string prepare_symbol(std::size_t l);
/// "tau:" followed by the +/- pattern.
std::string test_symbol(const std::vector<int> &eta);

/// Channel whose |0><0| acceptance reproduces Tr(E rho); Kraus operators
/// sqrt(lambda_i)|0><psi_i| and sqrt(1 - lambda_i)|1><psi_i| from the spectral
/// decomposition of E. Requires q >= 2.
KrausChannel effect_channel(const EffectOperator &e, std::size_t q);

/// rho -> Tr(rho) theta, with Kraus set sqrt(mu_j)|phi_j><k|.
KrausChannel replacement_channel(const DensityOperator &theta);

/// Unitary V with V phi0 = psi: both vectors are completed to orthonormal
/// bases by Gram-Schmidt over the standard basis and V maps one to the other.
ComplexMatrix prepare_unitary(const ComplexVector &phi0, const ComplexVector &psi);

struct ShatteringReport {
    std::size_t pairs_checked = 0;
    std::size_t agreements = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::size_t ambiguous_count = 0;
    /// (row, col) of the first few mismatches.
    std::vector<std::pair<std::size_t, std::size_t>> disagreements;

    bool passed() const {
        return agreements == pairs_checked && ambiguous_count == 0;
    }
};

/// Evaluates every prefix.suffix pair and compares sgn(f - lambda) with the
/// expected sign matrix.
template <typename Automaton>
ShatteringReport verify_shattering(const Automaton &a, const std::vector<Word> &prefixes,
                                   const std::vector<Word> &suffixes, double lambda, const SignMatrix &expected,
                                   const Tolerances &tol = kDefaultTolerances) {
    if (expected.rows() != prefixes.size() || expected.cols() != suffixes.size()) {
        throw DimensionMismatch("expected sign matrix shape does not match the word grid");
    }
    ShatteringReport rep;
    for (std::size_t i = 0; i < prefixes.size(); i++) {
        for (std::size_t j = 0; j < suffixes.size(); j++) {
            Word w = prefixes[i];
            w.insert(w.end(), suffixes[j].begin(), suffixes[j].end());
            auto value = evaluate(a, w);
            double f = ScalarTraits<decltype(value)>::to_double(value);
            auto m = member_of(value, lambda, tol);
            rep.pairs_checked++;
            rep.min_margin = std::min(rep.min_margin, std::abs(f - lambda));
            if (m.ambiguous) {
                rep.ambiguous_count++;
            }
            if (m.sign == expected(i, j)) {
                rep.agreements++;
            } else if (rep.disagreements.size() < 16) {
                rep.disagreements.emplace_back(i, j);
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Hybrid (c, q) witness: d = c q^2 - 1 prepared block configurations
// zeta_l = |a_l><a_l| (x) theta_{b_l}, shattered by block effects
// E_eta = I/2 + t X_eta.

struct QcfaWitnessBundle {
    Qcfa automaton;
    std::size_t c = 0;
    std::size_t q = 0;
    std::size_t d = 0;
    double t = 0;
    /// Analytic bound dominating max_eta ||X_eta||.
    double m_bound = 0;
    /// theta_k = I/q + epsilon H_k.
    double epsilon = 0;
    std::vector<DensityOperator> thetas;
    /// (classical block a_l, theta index b_l), 0-based.
    std::vector<std::pair<std::size_t, std::size_t>> configs;
    /// Hilbert-Schmidt Gram matrix of the zeta_l.
    RealMatrix gram;
    std::vector<std::vector<int>> etas;
    EtaMode eta_mode;

    std::vector<Word> prefixes() const;
    std::vector<Word> suffixes() const;
    /// sign matrix the construction promises: entry (l, k) = etas[k][l].
    SignMatrix expected_signs() const;
};

QcfaWitnessBundle build_qcfa_witness(std::size_t c, std::size_t q, const EtaMode &eta_mode);

/// Blocks X_eta^{(i)} of the block-diagonal operator solving
/// Tr(X_eta zeta_l) = eta_l inside span{zeta_l}.
std::vector<ComplexMatrix> qcfa_witness_test_operator(const QcfaWitnessBundle &b, const std::vector<int> &eta);

// ---------------------------------------------------------------------------
// Measure-once witness on C^n: accepting projector P_0 onto the first
// r = floor(n/2) coordinates, d = 2 r s balanced test states, and test
// unitaries exp(t K_eta) with t = 1/(4 n^2).

struct MoqfaWitnessBundle {
    Moqfa automaton;
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t s = 0;
    std::size_t d = 0;
    double t = 0;
    /// R-type states for (a, b) in lexicographic order, then I-type states.
    std::vector<ComplexVector> test_states;
    std::vector<std::vector<int>> etas;
    EtaMode eta_mode;

    std::vector<Word> prefixes() const;
    std::vector<Word> suffixes() const;
    SignMatrix expected_signs() const;
};

MoqfaWitnessBundle build_moqfa_witness(std::size_t n, const EtaMode &eta_mode);

/// Skew-Hermitian generator [[0, X], [-X^dagger, 0]] for an r x s block X.
ComplexMatrix orbit_generator(std::size_t r, std::size_t s, const ComplexMatrix &x);

/// X_eta with entries eta^R_{ab} - i eta^I_{ab} (eta in test-state order).
ComplexMatrix moqfa_witness_block(std::size_t r, std::size_t s, const std::vector<int> &eta);

/// Central finite-difference Jacobian (step 1e-5) of the test-state
/// acceptance map along the tangent directions [P_0, K] at P_0. Column g
/// corresponds to the unit generator of the g-th test coordinate: X = E_ab
/// for R-type, X = i E_ab for I-type.
RealMatrix orbit_jacobian(std::size_t n);

/// The exact differential: +1 on R-type diagonal entries, -1 on I-type.
RealMatrix orbit_jacobian_exact(std::size_t n);

struct ExpansionReport {
    std::size_t pairs = 0;
    /// max |f(p_j tau_eta) - 1/2 - t eta_j - (r - s) t^2|.
    double max_residual = 0;
    /// 1 / (48 n^3).
    double bound = 0;
    double min_margin = std::numeric_limits<double>::infinity();

    bool within_bound() const {
        return max_residual <= bound;
    }
};

ExpansionReport verify_moqfa_expansion(const MoqfaWitnessBundle &b);

}  // namespace qfa

#endif
