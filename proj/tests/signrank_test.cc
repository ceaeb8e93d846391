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

#include <gtest/gtest.h>

#include <cmath>

#include "qfa/errors.h"
#include "qfa/linearize.h"
#include "qfa/stochasticize.h"
#include "qfa/witnesses.h"
#include "test_util.h"

using namespace qfa;
using qfa::testing::Rng;

namespace {

SignMatrix from_entries(const Matrix<int> &m) {
    std::vector<std::string> rl;
    std::vector<std::string> cl;
    for (std::size_t i = 0; i < m.rows(); i++) {
        rl.push_back("r" + std::to_string(i));
    }
    for (std::size_t j = 0; j < m.cols(); j++) {
        cl.push_back("c" + std::to_string(j));
    }
    return SignMatrix(rl, cl, m);
}

SignMatrix hadamard(std::size_t l) {
    Matrix<int> m(l, l);
    for (std::size_t i = 0; i < l; i++) {
        for (std::size_t j = 0; j < l; j++) {
            m(i, j) = __builtin_popcountll(i & j) % 2 ? -1 : 1;
        }
    }
    return from_entries(m);
}

SignMatrix random_signs(std::size_t rows, std::size_t cols, Rng &rng) {
    Matrix<int> m(rows, cols);
    for (std::size_t i = 0; i < rows; i++) {
        for (std::size_t j = 0; j < cols; j++) {
            m(i, j) = rng() & 1 ? 1 : -1;
        }
    }
    return from_entries(m);
}

RealizationMatrix direct(const RealMatrix &m) {
    RealizationMatrix r;
    r.matrix = m;
    r.claimed_rank_bound = m.rows();
    return r;
}

}  // namespace

TEST(sign_matrix_type, rejects_bad_entries) {
    Matrix<int> m(1, 2);
    m(0, 0) = 1;
    m(0, 1) = 0;
    EXPECT_THROW(from_entries(m), InvariantViolation);
    Matrix<int> ok(1, 1);
    ok(0, 0) = -1;
    EXPECT_THROW(SignMatrix({"a", "b"}, {"c"}, ok), DimensionMismatch);
}

TEST(complete_shattering, small_cases) {
    auto c1 = complete_shattering(1);
    ASSERT_EQ(c1.cols(), 2u);
    EXPECT_EQ(c1(0, 0), 1);
    EXPECT_EQ(c1(0, 1), -1);
    auto c2 = complete_shattering(2);
    EXPECT_EQ(sign_pattern({c2(0, 0), c2(1, 0)}), "++");
    EXPECT_EQ(sign_pattern({c2(0, 1), c2(1, 1)}), "+-");
    EXPECT_EQ(sign_pattern({c2(0, 2), c2(1, 2)}), "-+");
    EXPECT_EQ(sign_pattern({c2(0, 3), c2(1, 3)}), "--");
    EXPECT_TRUE(is_complete_shattering(c2));
    EXPECT_FALSE(is_complete_shattering(hadamard(4)));
    EXPECT_THROW(complete_shattering(0), InvalidParameter);
    EXPECT_THROW(complete_shattering(21), InvalidParameter);
}

TEST(complete_shattering, rows_orthogonal) {
    auto c = complete_shattering(3);
    for (std::size_t i = 0; i < 3; i++) {
        for (std::size_t j = 0; j < 3; j++) {
            int dot = 0;
            for (std::size_t k = 0; k < 8; k++) {
                dot += c(i, k) * c(j, k);
            }
            EXPECT_EQ(dot, i == j ? 8 : 0);
        }
    }
}

TEST(spectral_norm, complete_shattering) {
    for (std::size_t d = 1; d <= 12; d++) {
        double s = spectral_norm(complete_shattering(d));
        double expected = std::pow(2.0, d / 2.0);
        EXPECT_NEAR(s / expected, 1, 1e-6) << d;
    }
}

TEST(spectral_norm, hadamard_and_ones) {
    for (std::size_t l : {2, 4, 8, 16}) {
        EXPECT_NEAR(spectral_norm(hadamard(l)), std::sqrt(static_cast<double>(l)), 1e-9);
        Matrix<int> ones(l, l);
        for (std::size_t i = 0; i < l; i++) {
            for (std::size_t j = 0; j < l; j++) {
                ones(i, j) = 1;
            }
        }
        EXPECT_NEAR(spectral_norm(from_entries(ones)), static_cast<double>(l), 1e-9);
        EXPECT_NEAR(forster_bound(from_entries(ones)).bound, 1, 1e-9);
    }
}

TEST(forster_bound, hadamard_meets_cap) {
    for (std::size_t l : {2, 4, 8, 16}) {
        auto f = forster_bound(hadamard(l));
        EXPECT_EQ(f.side, l);
        EXPECT_NEAR(f.bound, std::sqrt(static_cast<double>(l)), 1e-9);
        EXPECT_NEAR(f.cap, std::sqrt(static_cast<double>(l)), 1e-15);
    }
}

TEST(forster_bound, never_exceeds_cap) {
    Rng rng(61);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t l = 1 + rng() % 32;
        auto f = forster_bound(random_signs(l, l, rng));
        EXPECT_LE(f.bound, f.cap * (1 + 1e-12));
        EXPECT_GE(f.bound, 1 - 1e-12);
    }
    for (int trial = 0; trial < 20; trial++) {
        auto f = forster_bound(random_signs(16, 16, rng));
        EXPECT_GE(f.bound, 1 - 1e-12);
        EXPECT_LE(f.bound, 4 + 1e-12);
    }
}

TEST(forster_bound, rectangular_rejected) {
    EXPECT_THROW(forster_bound(complete_shattering(3)), InvalidParameter);
    auto sq = square_submatrix(complete_shattering(3), 3);
    EXPECT_EQ(sq.rows(), 3u);
    EXPECT_EQ(sq.cols(), 3u);
    EXPECT_EQ(sq(2, 1), complete_shattering(3)(2, 1));
    EXPECT_THROW(square_submatrix(complete_shattering(3), 4), InvalidParameter);
}

TEST(numerical_rank, basics) {
    EXPECT_EQ(numerical_rank(RealMatrix::identity(5)), 5u);
    RealMatrix uv(4, 6);
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 6; j++) {
            uv(i, j) = (i + 1.0) * (0.5 - j);
        }
    }
    EXPECT_EQ(numerical_rank(uv), 1u);
    EXPECT_EQ(numerical_rank(RealMatrix(3, 3)), 0u);
    for (std::size_t d = 1; d <= 10; d++) {
        EXPECT_EQ(numerical_rank(complete_shattering(d).to_real()), d);
    }
    auto rep = numerical_rank_report(uv);
    ASSERT_EQ(rep.singular_values.size(), 4u);
    EXPECT_GE(rep.singular_values[0], rep.singular_values[1]);
}

TEST(sign_matrix, constant_automaton) {
    Matrix<double> p(1, 1);
    p(0, 0) = 1;
    Pfa one(Alphabet({"a"}), {1.0}, {p}, p, {0});
    auto words = enumerate_words({"a"}, 2);
    auto s = sign_matrix(one, 0.5, words, words);
    EXPECT_TRUE(s.ambiguous.empty());
    for (std::size_t i = 0; i < 3; i++) {
        for (std::size_t j = 0; j < 3; j++) {
            EXPECT_EQ(s.signs(i, j), 1);
        }
    }
}

TEST(sign_matrix, witnesses_give_complete_shattering) {
    auto mo = build_moqfa_witness(2, EtaMode::full());
    auto s = sign_matrix(mo.automaton, 0.5, mo.prefixes(), mo.suffixes());
    EXPECT_TRUE(s.signs.same_signs(complete_shattering(2)));
    EXPECT_EQ(s.signs.row_labels()[0], "p:1");
    auto qc = build_qcfa_witness(2, 2, EtaMode::full());
    auto t = sign_matrix(qc.automaton, 0.5, qc.prefixes(), qc.suffixes());
    EXPECT_TRUE(t.signs.same_signs(complete_shattering(7)));
    EXPECT_TRUE(t.ambiguous.empty());
}

TEST(realization_shift, rules) {
    EXPECT_DOUBLE_EQ(realization_shift({-1, 0.4, 0.2}), 0.1);
    EXPECT_DOUBLE_EQ(realization_shift({-1, 0}), 1e-6);
    EXPECT_DOUBLE_EQ(realization_shift({1e-15}), 1e-12);
}

TEST(pfa_realization, one_state) {
    Matrix<double> p(1, 1);
    p(0, 0) = 1;
    Pfa one(Alphabet({"a"}), {1.0}, {p}, p, {0});
    auto words = enumerate_words({"a"}, 3);
    auto r = pfa_realization(one, 0.5, words, words);
    EXPECT_EQ(r.claimed_rank_bound, 1u);
    EXPECT_LE(numerical_rank(r.matrix), 1u);
}

TEST(pfa_realization, doubling_gfa_grid) {
    Matrix<Rational> a(1, 1);
    a(0, 0) = 2;
    RationalGfa g(Alphabet({"a"}), {Rational(1)}, {a}, {Rational(1)});
    auto s = gfa_to_pfa(g, Rational(3));
    auto words = enumerate_words({"a"}, 3);
    auto r = pfa_realization(s.pfa, s.cutpoint, words, words);
    EXPECT_EQ(r.claimed_rank_bound, 8u);
    EXPECT_LE(numerical_rank(r.matrix), 8u);
    auto gs = sign_matrix(g, 3.0, words, words);
    auto c = sign_consistency(r, gs.signs);
    EXPECT_TRUE(c.consistent);
    EXPECT_EQ(c.violations, 0u);
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 4; j++) {
            EXPECT_EQ(gs.signs(i, j), i + j >= 2 ? 1 : -1);
        }
    }
}

TEST(pfa_realization, chain_inequality_on_witness_grid) {
    auto b = build_moqfa_witness(2, EtaMode::full());
    auto s = gfa_to_pfa(moqfa_to_gfa(b.automaton), 0.5);
    auto r = pfa_realization(s.pfa, s.cutpoint, b.prefixes(), b.suffixes());
    auto signs = sign_matrix(s.pfa, s.cutpoint, b.prefixes(), b.suffixes());
    ASSERT_TRUE(signs.signs.same_signs(complete_shattering(b.d)));
    EXPECT_TRUE(sign_consistency(r, signs.signs).consistent);
    std::size_t rank = numerical_rank(r.matrix);
    EXPECT_GE(rank, b.d);
    EXPECT_LE(rank, s.pfa.states());
}

TEST(quantum_realization, rank_bounded_by_n_squared) {
    Rng rng(62);
    for (std::size_t n : {2, 3}) {
        auto q = qfa::testing::random_moqfa(n, 2, rng);
        std::size_t side = n == 2 ? 50 : 40;
        auto xs = qfa::testing::random_words(side, 6, {"a", "b"}, rng);
        auto ys = qfa::testing::random_words(side, 6, {"a", "b"}, rng);
        auto r = quantum_realization(q, 0.5, xs, ys);
        EXPECT_EQ(r.claimed_rank_bound, n * n);
        EXPECT_LE(numerical_rank(r.matrix), n * n);
        auto s = sign_matrix(q, 0.5, xs, ys);
        EXPECT_TRUE(sign_consistency(r, s.signs).consistent);
        auto single = quantum_realization(q, 0.5, {xs[0]}, ys);
        EXPECT_LE(numerical_rank(single.matrix), 1u);
    }
}

TEST(sign_consistency, counts_violations) {
    auto c = complete_shattering(2);
    auto r = direct(c.to_real());
    EXPECT_TRUE(sign_consistency(r, c).consistent);
    EXPECT_NEAR(sign_consistency(r, c).min_signed_margin, 1, 0);
    r.matrix(1, 2) = -r.matrix(1, 2);
    auto bad = sign_consistency(r, c);
    EXPECT_FALSE(bad.consistent);
    EXPECT_EQ(bad.violations, 1u);
    r.matrix(1, 2) = 0;
    EXPECT_FALSE(sign_consistency(r, c).consistent);
}

TEST(orthant_certificate, cases) {
    for (std::size_t d = 1; d <= 10; d++) {
        auto c = complete_shattering(d);
        EXPECT_TRUE(orthant_certificate(direct(c.to_real()), c)) << d;
    }
    auto c = complete_shattering(4);
    auto r = direct(c.to_real());
    for (std::size_t i = 0; i < 4; i++) {
        r.matrix(i, 5) = 0;
    }
    EXPECT_FALSE(orthant_certificate(r, c));
    EXPECT_THROW(orthant_certificate(direct(RealMatrix(4, 15)), c), DimensionMismatch);
    EXPECT_THROW(orthant_certificate(direct(hadamard(4).to_real()), hadamard(4)), DimensionMismatch);
}

TEST(orthant_certificate, moqfa_witness_realization) {
    auto b = build_moqfa_witness(2, EtaMode::full());
    auto r = quantum_realization(b.automaton, 0.5, b.prefixes(), b.suffixes());
    EXPECT_EQ(numerical_rank(r.matrix), 2u);
    EXPECT_TRUE(orthant_certificate(r, complete_shattering(2)));
}
