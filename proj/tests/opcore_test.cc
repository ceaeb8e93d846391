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

#include "qfa/opcore.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qfa/errors.h"
#include "test_util.h"

using namespace qfa;
using qfa::testing::Rng;

namespace {

ComplexMatrix cm(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::size_t r = rows.size();
    std::size_t c = rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto &row : rows) {
        std::size_t j = 0;
        for (auto x : row) {
            m(i, j++) = x;
        }
        i++;
    }
    return m;
}

double unitarity_residual(const ComplexMatrix &u) {
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

ComplexMatrix reconstruct(const Eigensystem &e) {
    const std::size_t n = e.values.size();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; i++) {
        d(i, i) = e.values[i];
    }
    return e.vectors * d * e.vectors.adjoint();
}

}  // namespace

TEST(operators, hermitian_rejects_non_hermitian) {
    EXPECT_THROW(HermitianOperator(cm({{0, 1}, {0, 0}})), InvariantViolation);
    EXPECT_THROW(HermitianOperator(ComplexMatrix(2, 3)), InvariantViolation);
    EXPECT_NO_THROW(HermitianOperator(cm({{1, Complex(0, 1)}, {Complex(0, -1), 2}})));
}

TEST(operators, density_invariants) {
    EXPECT_NO_THROW(DensityOperator::maximally_mixed(3));
    EXPECT_THROW(DensityOperator(cm({{1, 0}, {0, 1}})), InvariantViolation);
    EXPECT_THROW(DensityOperator(cm({{1.5, 0}, {0, -0.5}})), InvariantViolation);
    auto pure = DensityOperator::pure({Complex(1 / std::sqrt(2.0)), Complex(0, 1 / std::sqrt(2.0))});
    EXPECT_NEAR(pure.trace(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(pure.matrix()(0, 1) - Complex(0, -0.5)), 0, 1e-15);
}

TEST(operators, effect_and_projector_invariants) {
    EXPECT_NO_THROW(EffectOperator(cm({{0.3, 0}, {0, 1}})));
    EXPECT_THROW(EffectOperator(cm({{1.2, 0}, {0, 0}})), InvariantViolation);
    EXPECT_THROW(Projector(cm({{0.5, 0}, {0, 1}})), InvariantViolation);
    auto p = Projector::onto_basis(3, {0, 2});
    EXPECT_EQ(p.matrix()(0, 0), Complex(1));
    EXPECT_EQ(p.matrix()(1, 1), Complex(0));
    EXPECT_EQ(p.matrix()(2, 2), Complex(1));
    EXPECT_THROW(Projector::onto_basis(2, {2}), InvariantViolation);
}

TEST(kraus_channel, rejects_non_trace_preserving) {
    EXPECT_THROW(KrausChannel({cm({{1, 0}, {0, 0.5}})}), InvariantViolation);
    EXPECT_THROW(KrausChannel(std::vector<ComplexMatrix>{}), InvariantViolation);
    EXPECT_THROW(KrausChannel({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}), DimensionMismatch);
}

TEST(hermitian_basis, q1_is_single_identity) {
    auto b = hermitian_basis(1);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].matrix()(0, 0), Complex(1));
}

TEST(hermitian_basis, orthonormal_and_traceless_tail) {
    for (std::size_t q = 1; q <= 6; q++) {
        auto b = hermitian_basis(q);
        ASSERT_EQ(b.size(), q * q);
        for (std::size_t i = 0; i < b.size(); i++) {
            for (std::size_t j = 0; j < b.size(); j++) {
                EXPECT_NEAR(hs_inner(b[i], b[j]), i == j ? 1.0 : 0.0, 1e-13) << q << " " << i << " " << j;
            }
            if (i > 0) {
                EXPECT_LE(std::abs(b[i].matrix().trace()), 1e-14);
            }
        }
    }
}

TEST(hermitian_basis, ordering_q2) {
    // I/sqrt2, diag(1,-1)/sqrt2, sigma_x/sqrt2, then +i on (0, 1).
    auto b = hermitian_basis(2);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(b[0].matrix()(0, 0) - h), 0, 1e-15);
    EXPECT_NEAR(std::abs(b[1].matrix()(1, 1) + h), 0, 1e-15);
    EXPECT_NEAR(std::abs(b[2].matrix()(0, 1) - h), 0, 1e-15);
    EXPECT_NEAR(std::abs(b[3].matrix()(0, 1) - Complex(0, h)), 0, 1e-15);
    EXPECT_NEAR(std::abs(b[3].matrix()(1, 0) - Complex(0, -h)), 0, 1e-15);
}

TEST(hermitian_basis, spans_hermitian_operators) {
    Rng rng(7);
    auto b = hermitian_basis(4);
    auto x = qfa::testing::random_hermitian(4, rng);
    auto coords = hermitian_coordinates(b, x);
    ComplexMatrix back(4, 4);
    for (std::size_t j = 0; j < b.size(); j++) {
        back += b[j].matrix() * Complex(coords[j]);
    }
    EXPECT_LE(max_abs_diff(back, x), 1e-12);
}

TEST(hs_inner, small_cases) {
    HermitianOperator i2(ComplexMatrix::identity(2));
    EXPECT_DOUBLE_EQ(hs_inner(i2, i2), 2.0);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(hs_inner(HermitianOperator(cm({{h, 0}, {0, -h}})), HermitianOperator(cm({{h, 0}, {0, h}}))), 0,
                1e-16);
    EXPECT_THROW(hs_inner(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), DimensionMismatch);
}

TEST(hs_inner, perturbed_mixed_state) {
    // Tr((I/2 + eH)^2) = 1/2 + 2 e Tr(H)/2 + e^2 Tr(H^2) = 1/2 + e^2.
    auto b = hermitian_basis(2);
    for (double eps : {0.1, 0.25, 0.4}) {
        for (std::size_t k = 1; k < 4; k++) {
            HermitianOperator theta(ComplexMatrix::identity(2) * Complex(0.5) + b[k].matrix() * Complex(eps));
            EXPECT_NEAR(hs_inner(theta, theta), 0.5 + eps * eps, 1e-14);
        }
    }
}

TEST(eigh, diagonal_and_pauli_x) {
    auto e = eigh(HermitianOperator(cm({{3, 0}, {0, 1}})));
    EXPECT_NEAR(e.values[0], 1, 1e-15);
    EXPECT_NEAR(e.values[1], 3, 1e-15);
    EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1, 1e-15);
    EXPECT_NEAR(std::abs(e.vectors(0, 1)), 1, 1e-15);

    auto x = eigh(HermitianOperator(cm({{0, 1}, {1, 0}})));
    EXPECT_NEAR(x.values[0], -1, 1e-14);
    EXPECT_NEAR(x.values[1], 1, 1e-14);
}

TEST(eigh, random_reconstruction) {
    Rng rng(11);
    for (std::size_t n : {1, 2, 5, 8, 16}) {
        auto h = qfa::testing::random_hermitian(n, rng);
        auto e = eigh(HermitianOperator(h));
        EXPECT_LE(frobenius_norm(reconstruct(e) - h), 1e-10 * std::max(1.0, frobenius_norm(h)));
        EXPECT_LE(unitarity_residual(e.vectors), 1e-10);
        for (std::size_t i = 1; i < n; i++) {
            EXPECT_LE(e.values[i - 1], e.values[i]);
        }
    }
}

TEST(eigh, projector_spectrum_is_zero_one) {
    Rng rng(12);
    auto u = qfa::testing::random_unitary(6, rng);
    ComplexMatrix p = u * Projector::onto_basis(6, {0, 1, 4}).matrix() * u.adjoint();
    for (double v : eigh(HermitianOperator(p)).values) {
        EXPECT_LE(std::min(std::abs(v), std::abs(v - 1)), 1e-10);
    }
}

TEST(eigh, rejects_non_hermitian) {
    EXPECT_THROW(eigh(cm({{0, 1}, {2, 0}})), InvariantViolation);
}

TEST(expm, zero_and_rotation) {
    EXPECT_LE(max_abs_diff(expm(ComplexMatrix(3, 3)), ComplexMatrix::identity(3)), 0.0);
    for (double theta : {0.1, 1.0, 2.5, 7.0}) {
        auto r = expm(cm({{0, theta}, {-theta, 0}}));
        auto expected = cm({{std::cos(theta), std::sin(theta)}, {-std::sin(theta), std::cos(theta)}});
        EXPECT_LE(max_abs_diff(r, expected), 1e-12 * std::max(1.0, theta));
    }
    EXPECT_THROW(expm(ComplexMatrix(2, 3)), DimensionMismatch);
}

TEST(expm, diagonal_matches_scalar_exponential) {
    ComplexMatrix d(3, 3);
    d(0, 0) = -4.0;
    d(1, 1) = Complex(0.5, 2.0);
    d(2, 2) = 6.0;
    auto e = expm(d);
    for (std::size_t i = 0; i < 3; i++) {
        EXPECT_LE(std::abs(e(i, i) - std::exp(d(i, i))) / std::abs(std::exp(d(i, i))), 1e-12);
    }
}

TEST(expm, inverse_and_unitarity) {
    Rng rng(13);
    for (int trial = 0; trial < 10; trial++) {
        auto a = qfa::testing::random_complex(4, 4, rng);
        a = a * Complex(5.0 * qfa::testing::uniform(rng, 0, 1) / operator_norm(a));
        EXPECT_LE(max_abs_diff(expm(a) * expm(a * Complex(-1)), ComplexMatrix::identity(4)), 1e-11);

        auto k = qfa::testing::random_hermitian(5, rng) * Complex(0, 1);
        EXPECT_LE(unitarity_residual(expm(k)), 1e-12);
    }
}

TEST(operator_norm, small_cases) {
    EXPECT_NEAR(operator_norm(ComplexMatrix::identity(4)), 1, 1e-14);
    EXPECT_NEAR(operator_norm(cm({{1, 1}, {1, 1}})), 2, 1e-14);
    RealMatrix r(2, 3);
    r(0, 0) = 3;
    r(1, 2) = -4;
    EXPECT_NEAR(operator_norm(r), 4, 1e-14);
}

TEST(operator_norm, skew_generator_with_modulus_sqrt2_entries) {
    // K = [[0, X], [-X^dagger, 0]] with X = 1 - i has ||K|| = |X| = sqrt2.
    auto k = cm({{0, Complex(1, -1)}, {Complex(-1, -1), 0}});
    EXPECT_NEAR(operator_norm(k), std::sqrt(2.0), 1e-12);
    EXPECT_LE(operator_norm(k), 2.0);
}

TEST(operator_norm, frobenius_sandwich) {
    Rng rng(14);
    for (int trial = 0; trial < 20; trial++) {
        std::size_t rows = 1 + trial % 5;
        std::size_t cols = 1 + (trial * 3) % 6;
        auto a = qfa::testing::random_complex(rows, cols, rng);
        double op = operator_norm(a);
        double fro = frobenius_norm(a);
        EXPECT_LE(op, fro * (1 + 1e-12));
        EXPECT_LE(fro, std::sqrt(static_cast<double>(std::min(rows, cols))) * op * (1 + 1e-12));
    }
}

TEST(singular_values, diagonal_and_rank_one) {
    RealMatrix d(3, 3);
    d(0, 0) = 1;
    d(1, 1) = -5;
    d(2, 2) = 2;
    auto s = singular_values(d);
    EXPECT_NEAR(s[0], 5, 1e-14);
    EXPECT_NEAR(s[1], 2, 1e-14);
    EXPECT_NEAR(s[2], 1, 1e-14);

    RealMatrix uv(4, 3);
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 3; j++) {
            uv(i, j) = (i + 1.0) * (j - 1.5);
        }
    }
    auto t = singular_values(uv);
    EXPECT_GT(t[0], 1);
    EXPECT_LE(t[1], 1e-14 * t[0]);
}

TEST(apply_channel, identity_and_dimension_check) {
    Rng rng(15);
    auto rho = qfa::testing::random_density(3, rng);
    auto out = apply_channel(KrausChannel::identity(3), rho);
    EXPECT_LE(max_abs_diff(out.matrix(), rho.matrix()), 1e-15);
    EXPECT_THROW(apply_channel(KrausChannel::identity(2), rho), DimensionMismatch);
}

TEST(apply_channel, preserves_trace_and_positivity) {
    Rng rng(16);
    for (int trial = 0; trial < 30; trial++) {
        std::size_t q = 2 + trial % 3;
        auto ch = qfa::testing::random_channel(q, 1 + trial % 4, rng);
        auto out = apply_channel(ch, qfa::testing::random_density(q, rng));
        EXPECT_NEAR(out.trace(), 1, 1e-12);
        EXPECT_GE(min_eigenvalue(out), -1e-9);
    }
}

TEST(choi_matrix, identity_channel_is_maximally_entangled) {
    auto choi = choi_matrix(KrausChannel::identity(2));
    EXPECT_NEAR(choi.trace(), 2, 1e-15);
    auto e = eigh(choi);
    EXPECT_NEAR(e.values[3], 2, 1e-12);
    for (int i = 0; i < 3; i++) {
        EXPECT_NEAR(e.values[i], 0, 1e-12);
    }
}

TEST(choi_matrix, random_channels_are_positive) {
    Rng rng(17);
    for (int trial = 0; trial < 20; trial++) {
        auto ch = qfa::testing::random_channel(3, 1 + trial % 5, rng);
        EXPECT_GE(min_eigenvalue(choi_matrix(ch)), -1e-10);
    }
}

TEST(choi_matrix, transpose_map_is_not_completely_positive) {
    // Kraus-like set for the transpose is not CP: build its Choi matrix by hand.
    ComplexMatrix swap(4, 4);
    swap(0, 0) = swap(3, 3) = 1;
    swap(1, 2) = swap(2, 1) = 1;
    EXPECT_LT(min_eigenvalue(HermitianOperator(swap)), -0.5);
}

TEST(solve_spd, matches_direct_product) {
    Rng rng(18);
    auto a = qfa::testing::random_real(5, 5, rng);
    RealMatrix g = a.transpose() * a + RealMatrix::identity(5);
    RealVector x{1, -2, 0.5, 3, -1};
    auto b = times_col<double>(g, x);
    auto solved = solve_spd(g, b);
    for (std::size_t i = 0; i < 5; i++) {
        EXPECT_NEAR(solved[i], x[i], 1e-12);
    }
    RealMatrix indefinite = RealMatrix::identity(2);
    indefinite(1, 1) = -1;
    EXPECT_THROW(solve_spd(indefinite, RealVector{1, 1}), InvariantViolation);
}
