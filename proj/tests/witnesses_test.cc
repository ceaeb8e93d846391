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

#include "qfa/witnesses.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qfa/errors.h"
#include "test_util.h"

using namespace qfa;
using qfa::testing::Rng;

namespace {

double unitarity_error(const ComplexMatrix &u) {
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

double vec_diff(const ComplexVector &a, const ComplexVector &b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

ComplexVector times(const ComplexMatrix &m, const ComplexVector &v) {
    ComplexVector out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            out[i] += m(i, j) * v[j];
        }
    }
    return out;
}

double trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a * b).trace().real();
}

double accept_zero(const KrausChannel &ch, const ComplexMatrix &rho) {
    return ch.apply(rho)(0, 0).real();
}

}  // namespace

TEST(eta_mode, parse) {
    EXPECT_EQ(parse_eta_mode("full", 1).kind, EtaMode::Kind::full);
    auto s = parse_eta_mode("sample:64", 9);
    EXPECT_EQ(s.kind, EtaMode::Kind::sampled);
    EXPECT_EQ(s.count, 64u);
    EXPECT_EQ(s.seed, 9u);
    EXPECT_EQ(s.describe(), "sample:64");
    for (const char *bad : {"", "sample:", "sample:0", "sample:-3", "sample:x", "fully"}) {
        EXPECT_THROW(parse_eta_mode(bad, 1), InvalidParameter) << bad;
    }
}

TEST(select_sign_vectors, full_is_canonical) {
    auto etas = select_sign_vectors(3, EtaMode::full());
    ASSERT_EQ(etas.size(), 8u);
    for (std::size_t k = 0; k < 8; k++) {
        // Column k encodes 7 - k in binary, most significant index first.
        std::size_t value = 7 - k;
        for (std::size_t j = 0; j < 3; j++) {
            int bit = (value >> (2 - j)) & 1;
            EXPECT_EQ(etas[k][j], bit ? 1 : -1);
        }
    }
}

TEST(select_sign_vectors, sampled_distinct_and_reproducible) {
    auto a = select_sign_vectors(11, EtaMode::sampled(2048, 5));
    auto b = select_sign_vectors(11, EtaMode::sampled(2048, 5));
    auto c = select_sign_vectors(11, EtaMode::sampled(2048, 6));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    std::set<std::vector<int>> distinct(a.begin(), a.end());
    EXPECT_EQ(distinct.size(), 2048u);
    for (const auto &eta : a) {
        ASSERT_EQ(eta.size(), 11u);
        for (int x : eta) {
            EXPECT_TRUE(x == 1 || x == -1);
        }
    }
}

TEST(select_sign_vectors, errors) {
    EXPECT_THROW(select_sign_vectors(21, EtaMode::full()), InvalidParameter);
    EXPECT_THROW(select_sign_vectors(3, EtaMode::sampled(9, 1)), InvalidParameter);
    EXPECT_THROW(select_sign_vectors(0, EtaMode::full()), InvalidParameter);
    EXPECT_EQ(select_sign_vectors(3, EtaMode::sampled(8, 1)).size(), 8u);
}

TEST(symbols, names) {
    EXPECT_EQ(prepare_symbol(3), "p:3");
    EXPECT_EQ(test_symbol({1, -1, 1}), "tau:+-+");
}

TEST(effect_channel, projector_effect) {
    Rng rng(51);
    for (std::size_t q : {2, 3}) {
        auto e = Projector::onto_basis(q, {0});
        auto ch = effect_channel(e, q);
        EXPECT_EQ(ch.kraus().size(), 2 * q);
        for (int trial = 0; trial < 10; trial++) {
            auto rho = qfa::testing::random_density(q, rng).matrix();
            EXPECT_NEAR(accept_zero(ch, rho), rho(0, 0).real(), 1e-10);
        }
    }
}

TEST(effect_channel, half_identity) {
    Rng rng(52);
    auto ch = effect_channel(EffectOperator(ComplexMatrix::identity(3) * Complex(0.5)), 3);
    for (int trial = 0; trial < 10; trial++) {
        auto rho = qfa::testing::random_density(3, rng).matrix();
        EXPECT_NEAR(accept_zero(ch, rho), 0.5, 1e-12);
    }
}

TEST(effect_channel, random_effects_match_trace) {
    Rng rng(53);
    for (std::size_t q : {2, 3, 4}) {
        auto e = qfa::testing::random_effect(q, rng);
        auto ch = effect_channel(e, q);
        for (int trial = 0; trial < 20; trial++) {
            auto rho = qfa::testing::random_density(q, rng).matrix();
            EXPECT_NEAR(accept_zero(ch, rho), trace_product(e.matrix(), rho), 1e-10);
            EXPECT_NEAR(ch.apply(rho).trace().real(), 1.0, 1e-12);
        }
    }
}

TEST(effect_channel, witness_block) {
    Rng rng(54);
    auto b = build_qcfa_witness(2, 2, EtaMode::full());
    auto blocks = qcfa_witness_test_operator(b, b.etas[37]);
    ComplexMatrix e = ComplexMatrix::identity(2) * Complex(0.5) + blocks[1] * Complex(b.t);
    auto ch = effect_channel(EffectOperator(e), 2);
    for (int trial = 0; trial < 100; trial++) {
        auto rho = qfa::testing::random_density(2, rng).matrix();
        EXPECT_NEAR(accept_zero(ch, rho), trace_product(e, rho), 1e-10);
    }
}

TEST(effect_channel, errors) {
    EXPECT_THROW(effect_channel(EffectOperator(ComplexMatrix::identity(1)), 1), InvalidParameter);
    EXPECT_THROW(effect_channel(EffectOperator(ComplexMatrix::identity(2)), 3), DimensionMismatch);
}

TEST(replacement_channel, outputs_theta) {
    Rng rng(55);
    for (std::size_t q : {2, 3}) {
        auto theta = qfa::testing::random_density(q, rng);
        auto ch = replacement_channel(theta);
        ComplexVector last(q, 0.0);
        last[q - 1] = 1;
        EXPECT_LE(max_abs_diff(ch.apply(DensityOperator::pure(last).matrix()), theta.matrix()), 1e-12);
        for (int trial = 0; trial < 5; trial++) {
            auto rho = qfa::testing::random_density(q, rng).matrix();
            EXPECT_LE(max_abs_diff(ch.apply(rho), theta.matrix()), 1e-12);
        }
    }
    auto mixed = replacement_channel(DensityOperator::maximally_mixed(3));
    ComplexVector e0(3, 0.0);
    e0[0] = 1;
    EXPECT_LE(max_abs_diff(mixed.apply(DensityOperator::pure(e0).matrix()), ComplexMatrix::identity(3) * Complex(1.0 / 3)),
              1e-12);
}

TEST(prepare_unitary, identity_when_equal) {
    ComplexVector e0(3, 0.0);
    e0[0] = 1;
    EXPECT_LE(max_abs_diff(prepare_unitary(e0, e0), ComplexMatrix::identity(3)), 1e-12);
}

TEST(prepare_unitary, real_and_complex_targets) {
    const double h = 1 / std::sqrt(2.0);
    ComplexVector e0(3, 0.0);
    e0[0] = 1;
    ComplexVector real_target{h, h, 0};
    ComplexVector complex_target{h, Complex(0, h), 0};
    for (const auto &psi : {real_target, complex_target}) {
        auto v = prepare_unitary(e0, psi);
        EXPECT_LE(unitarity_error(v), 1e-12);
        EXPECT_LE(vec_diff(times(v, e0), psi), 1e-12);
        EXPECT_NEAR(std::abs(v(2, 2)), 1, 1e-12);
    }
    Rng rng(56);
    for (int trial = 0; trial < 10; trial++) {
        auto phi = qfa::testing::random_unit_vector(4, rng);
        auto psi = qfa::testing::random_unit_vector(4, rng);
        auto v = prepare_unitary(phi, psi);
        EXPECT_LE(unitarity_error(v), 1e-12);
        EXPECT_LE(vec_diff(times(v, phi), psi), 1e-12);
    }
}

TEST(prepare_unitary, errors) {
    ComplexVector a{1, 0};
    ComplexVector b{1, 1};
    EXPECT_THROW(prepare_unitary(a, b), InvariantViolation);
    EXPECT_THROW(prepare_unitary(a, ComplexVector{1, 0, 0}), DimensionMismatch);
}

TEST(qcfa_witness, shape_2_2) {
    auto b = build_qcfa_witness(2, 2, EtaMode::full());
    EXPECT_EQ(b.d, 7u);
    EXPECT_EQ(b.automaton.alphabet().size(), 7u + 128u);
    EXPECT_EQ(b.automaton.classical_states(), 2u);
    EXPECT_EQ(b.configs.size(), 7u);
    EXPECT_LT(b.t * b.m_bound, 0.5);
    for (const auto &th : b.thetas) {
        EXPECT_NEAR(th.trace(), 1, 1e-12);
        EXPECT_GE(min_eigenvalue(th), -1e-12);
    }
}

TEST(qcfa_witness, closed_form_2_2) {
    auto b = build_qcfa_witness(2, 2, EtaMode::full());
    auto pre = b.prefixes();
    auto suf = b.suffixes();
    double worst = 0;
    for (std::size_t k = 0; k < suf.size(); k++) {
        for (std::size_t l = 0; l < pre.size(); l++) {
            double f = evaluate_qcfa(b.automaton, {pre[l][0], suf[k][0]});
            worst = std::max(worst, std::abs(f - (0.5 + b.t * b.etas[k][l])));
            if (l == 2) {
                EXPECT_EQ(f > 0.5 ? 1 : -1, b.etas[k][2]);
            }
        }
    }
    EXPECT_LE(worst, 1e-10);
    auto rep = verify_shattering(b.automaton, pre, suf, 0.5, b.expected_signs());
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.pairs_checked, 7u * 128u);
    EXPECT_NEAR(rep.min_margin, b.t, 1e-10);
}

TEST(qcfa_witness, test_operator_solves_trace_equations) {
    auto b = build_qcfa_witness(2, 2, EtaMode::full());
    for (std::size_t k = 0; k < b.etas.size(); k += 9) {
        auto blocks = qcfa_witness_test_operator(b, b.etas[k]);
        ASSERT_EQ(blocks.size(), 2u);
        for (std::size_t l = 0; l < b.d; l++) {
            auto [a, th] = b.configs[l];
            EXPECT_NEAR(trace_product(blocks[a], b.thetas[th].matrix()), b.etas[k][l], 1e-9);
        }
        for (const auto &x : blocks) {
            ComplexMatrix e = ComplexMatrix::identity(2) * Complex(0.5) + x * Complex(b.t);
            auto spec = eigh(e);
            EXPECT_GE(spec.values.front(), 0.25 - 1e-12);
            EXPECT_LE(spec.values.back(), 0.75 + 1e-12);
        }
    }
}

TEST(qcfa_witness, sampled_3_2) {
    auto b = build_qcfa_witness(3, 2, EtaMode::sampled(256, 77));
    EXPECT_EQ(b.d, 11u);
    EXPECT_EQ(b.etas.size(), 256u);
    auto rep = verify_shattering(b.automaton, b.prefixes(), b.suffixes(), 0.5, b.expected_signs());
    EXPECT_TRUE(rep.passed());
    EXPECT_NEAR(rep.min_margin, b.t, 1e-9);
}

TEST(qcfa_witness, errors) {
    EXPECT_THROW(build_qcfa_witness(1, 2, EtaMode::full()), InvalidParameter);
    EXPECT_THROW(build_qcfa_witness(2, 1, EtaMode::full()), InvalidParameter);
    // d = 26 > 20.
    EXPECT_THROW(build_qcfa_witness(2, 4, EtaMode::full()), InvalidParameter);
}

TEST(moqfa_witness, parameters) {
    for (std::size_t n : {2, 3, 4, 5}) {
        auto b = build_moqfa_witness(n, EtaMode::sampled(4, 1));
        EXPECT_EQ(b.r, n / 2);
        EXPECT_EQ(b.s, n - n / 2);
        EXPECT_EQ(b.d, n * n / 2);
        EXPECT_DOUBLE_EQ(b.t, 1.0 / (4.0 * n * n));
        ASSERT_EQ(b.test_states.size(), b.d);
        for (const auto &psi : b.test_states) {
            double p0 = 0;
            for (std::size_t a = 0; a < b.r; a++) {
                p0 += std::norm(psi[a]);
            }
            EXPECT_NEAR(p0, 0.5, 1e-12);
        }
    }
    EXPECT_THROW(build_moqfa_witness(1, EtaMode::full()), InvalidParameter);
}

TEST(moqfa_witness, balanced_prefixes) {
    auto b = build_moqfa_witness(4, EtaMode::full());
    for (const auto &x : b.prefixes()) {
        EXPECT_NEAR(evaluate_moqfa(b.automaton, x), 0.5, 1e-12);
    }
}

TEST(moqfa_witness, generators_and_unitaries) {
    for (std::size_t n : {2, 3, 4}) {
        auto b = build_moqfa_witness(n, EtaMode::full());
        for (std::size_t k = 0; k < b.etas.size(); k++) {
            auto kgen = orbit_generator(b.r, b.s, moqfa_witness_block(b.r, b.s, b.etas[k]));
            EXPECT_LE(operator_norm(kgen), static_cast<double>(n) + 1e-12);
            EXPECT_LE(max_abs_diff(kgen.adjoint(), kgen * Complex(-1)), 0.0);
            EXPECT_LE(unitarity_error(b.automaton.unitary(b.d + k)), 1e-11);
        }
    }
}

TEST(moqfa_witness, expansion_and_signs) {
    for (std::size_t n : {2, 3, 4}) {
        auto b = build_moqfa_witness(n, EtaMode::full());
        auto e = verify_moqfa_expansion(b);
        EXPECT_EQ(e.pairs, b.d * b.etas.size());
        EXPECT_DOUBLE_EQ(e.bound, 1.0 / (48.0 * n * n * n));
        EXPECT_TRUE(e.within_bound()) << n << " " << e.max_residual;
        EXPECT_GE(e.min_margin, 43.0 / 48.0 * b.t);
        auto rep = verify_shattering(b.automaton, b.prefixes(), b.suffixes(), 0.5, b.expected_signs());
        EXPECT_TRUE(rep.passed());
        EXPECT_GE(rep.min_margin, 43.0 / 48.0 * b.t);
    }
}

TEST(moqfa_witness, second_order_shift_n3) {
    auto b = build_moqfa_witness(3, EtaMode::full());
    auto pre = b.prefixes();
    auto suf = b.suffixes();
    // Residual of f - 1/2 - t eta_j - (r - s) t^2 against the bare first-order term.
    double shifted = 0;
    double unshifted = 0;
    for (std::size_t k = 0; k < suf.size(); k++) {
        for (std::size_t j = 0; j < pre.size(); j++) {
            double f = evaluate_moqfa(b.automaton, {pre[j][0], suf[k][0]});
            double first = 0.5 + b.t * b.etas[k][j];
            shifted = std::max(shifted, std::abs(f - first + b.t * b.t));
            unshifted = std::max(unshifted, std::abs(f - first));
        }
    }
    EXPECT_LE(shifted, 1.0 / 1296);
    EXPECT_LE(shifted, unshifted);
}

TEST(moqfa_witness, all_plus_restriction) {
    auto full = build_moqfa_witness(2, EtaMode::full());
    auto e = verify_moqfa_expansion(full);
    // Column 0 is the all-(+1) vector.
    double f1 = evaluate_moqfa(full.automaton, {"p:1", test_symbol(full.etas[0])});
    EXPECT_NEAR(full.etas[0][0], 1, 0);
    EXPECT_LE(std::abs(f1 - 0.5 - full.t), 1.0 / 384);
    EXPECT_LE(e.max_residual, 1.0 / 384);
}

TEST(moqfa_witness, zero_time_collapses_signs) {
    auto b = build_moqfa_witness(2, EtaMode::full());
    std::vector<ComplexMatrix> unitaries = b.automaton.unitaries();
    for (std::size_t k = 0; k < b.etas.size(); k++) {
        unitaries[b.d + k] = ComplexMatrix::identity(2);
    }
    Moqfa flat(b.automaton.alphabet(), b.automaton.initial_state(), unitaries, b.automaton.accept());
    auto rep = verify_shattering(flat, b.prefixes(), b.suffixes(), 0.5, b.expected_signs());
    EXPECT_FALSE(rep.passed());
    EXPECT_EQ(rep.ambiguous_count, rep.pairs_checked);
    // Half of the entries of C_2 are +1 and those cannot be matched.
    EXPECT_EQ(rep.agreements, 4u);
    EXPECT_FALSE(rep.disagreements.empty());
}

TEST(verify_shattering, shape_mismatch) {
    auto b = build_moqfa_witness(2, EtaMode::full());
    EXPECT_THROW(verify_shattering(b.automaton, b.prefixes(), b.suffixes(), 0.5, complete_shattering(3)),
                 DimensionMismatch);
}

TEST(orbit_jacobian, matches_exact_signed_pattern) {
    for (std::size_t n : {2, 3, 4, 5}) {
        std::size_t r = n / 2;
        std::size_t s = n - r;
        std::size_t d = 2 * r * s;
        auto fd = orbit_jacobian(n);
        ASSERT_EQ(fd.rows(), d);
        ASSERT_EQ(fd.cols(), d);
        RealMatrix oracle(d, d);
        for (std::size_t g = 0; g < d; g++) {
            oracle(g, g) = g < r * s ? 1 : -1;
        }
        EXPECT_LE(max_abs_diff(orbit_jacobian_exact(n), oracle), 0.0);
        EXPECT_LE(max_abs_diff(fd, oracle), 1e-6) << n;
        EXPECT_EQ(numerical_rank(fd), d);
    }
}

TEST(orbit_jacobian, determinant_magnitude_n4) {
    auto sv = singular_values(orbit_jacobian(4));
    double det = 1;
    for (double x : sv) {
        det *= x;
    }
    EXPECT_NEAR(det, 1, 1e-4);
}
