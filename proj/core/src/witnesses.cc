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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace qfa {

namespace {

constexpr std::size_t kMaxFullD = 20;
constexpr double kUnitTol = 1e-10;
constexpr double kGramSchmidtSkip = 1e-8;
constexpr double kJacobianStep = 1e-5;
constexpr int kMaxEpsilonHalvings = 10;

ComplexMatrix outer(const ComplexVector &a, const ComplexVector &b) {
    ComplexMatrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        for (std::size_t j = 0; j < b.size(); j++) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

double vector_norm(const ComplexVector &v) {
    double acc = 0;
    for (const auto &x : v) {
        acc += std::norm(x);
    }
    return std::sqrt(acc);
}

ComplexVector basis_vector(std::size_t n, std::size_t i) {
    ComplexVector v(n, 0.0);
    v[i] = 1.0;
    return v;
}

/// Columns: v first, then standard basis vectors orthogonalized against the
/// columns so far (modified Gram-Schmidt, applied twice).
ComplexMatrix complete_to_unitary(const ComplexVector &v) {
    const std::size_t n = v.size();
    std::vector<ComplexVector> cols{v};
    for (std::size_t i = 0; i < n && cols.size() < n; i++) {
        ComplexVector w = basis_vector(n, i);
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &c : cols) {
                Complex proj = 0;
                for (std::size_t k = 0; k < n; k++) {
                    proj += std::conj(c[k]) * w[k];
                }
                for (std::size_t k = 0; k < n; k++) {
                    w[k] -= proj * c[k];
                }
            }
        }
        double norm = vector_norm(w);
        if (norm < kGramSchmidtSkip) {
            continue;
        }
        for (auto &x : w) {
            x /= norm;
        }
        cols.push_back(std::move(w));
    }
    ComplexMatrix u(n, n);
    for (std::size_t j = 0; j < n; j++) {
        for (std::size_t i = 0; i < n; i++) {
            u(i, j) = cols[j][i];
        }
    }
    return u;
}

std::vector<Word> single_symbol_words(const std::vector<std::string> &symbols) {
    std::vector<Word> out;
    out.reserve(symbols.size());
    for (const auto &s : symbols) {
        out.push_back(Word{s});
    }
    return out;
}

SignMatrix signs_from_etas(const std::vector<std::vector<int>> &etas, std::size_t d,
                           const std::vector<Word> &prefixes, const std::vector<Word> &suffixes) {
    Matrix<int> m(d, etas.size());
    for (std::size_t k = 0; k < etas.size(); k++) {
        for (std::size_t j = 0; j < d; j++) {
            m(j, k) = etas[k][j];
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
    return SignMatrix(std::move(rl), std::move(cl), std::move(m));
}

}  // namespace

std::string EtaMode::describe() const {
    return kind == Kind::full ? "full" : "sample:" + std::to_string(count);
}

EtaMode parse_eta_mode(const std::string &text, std::uint64_t seed) {
    if (text == "full") {
        auto mode = EtaMode::full();
        mode.seed = seed;
        return mode;
    }
    const std::string prefix = "sample:";
    if (text.rfind(prefix, 0) == 0) {
        std::string num = text.substr(prefix.size());
        if (!num.empty() && num.find_first_not_of("0123456789") == std::string::npos) {
            auto count = std::stoull(num);
            if (count > 0) {
                return EtaMode::sampled(count, seed);
            }
        }
    }
    throw InvalidParameter("eta mode must be 'full' or 'sample:N' with N >= 1, got '" + text + "'");
}

std::vector<std::vector<int>> select_sign_vectors(std::size_t d, const EtaMode &mode) {
    if (d == 0) {
        throw InvalidParameter("sign vectors need d >= 1");
    }
    std::vector<std::vector<int>> out;
    if (mode.kind == EtaMode::Kind::full) {
        if (d > kMaxFullD) {
            throw InvalidParameter("full eta enumeration needs d <= 20 (d = " + std::to_string(d) +
                                   " would need 2^d test symbols); use sample:N");
        }
        const std::size_t total = std::size_t{1} << d;
        out.reserve(total);
        for (std::size_t k = 0; k < total; k++) {
            out.push_back(sign_vector(d, k));
        }
        return out;
    }
    if (d > 62) {
        throw InvalidParameter("sampled sign vectors need d <= 62");
    }
    const std::uint64_t total = std::uint64_t{1} << d;
    if (mode.count == 0 || mode.count > total) {
        throw InvalidParameter("cannot draw " + std::to_string(mode.count) + " distinct sign vectors of length " +
                               std::to_string(d));
    }
    std::mt19937_64 rng(mode.seed);
    std::set<std::uint64_t> seen;
    out.reserve(mode.count);
    while (out.size() < mode.count) {
        std::uint64_t bits = rng() & (total - 1);
        if (!seen.insert(bits).second) {
            continue;
        }
        std::vector<int> eta(d);
        for (std::size_t j = 0; j < d; j++) {
            eta[j] = (bits >> (d - 1 - j)) & 1 ? +1 : -1;
        }
        out.push_back(std::move(eta));
    }
    return out;
}

std::string prepare_symbol(std::size_t l) {
    return "p:" + std::to_string(l);
}

std::string test_symbol(const std::vector<int> &eta) {
    return "tau:" + sign_pattern(eta);
}

KrausChannel effect_channel(const EffectOperator &e, std::size_t q) {
    if (q < 2) {
        throw InvalidParameter("effect_channel needs q >= 2");
    }
    if (e.dim() != q) {
        throw DimensionMismatch("effect acts on C^" + std::to_string(e.dim()) + ", expected C^" + std::to_string(q));
    }
    auto eig = eigh(e);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(2 * q);
    const auto accept = basis_vector(q, 0);
    const auto reject = basis_vector(q, 1);
    for (std::size_t i = 0; i < q; i++) {
        ComplexVector psi(q);
        for (std::size_t r = 0; r < q; r++) {
            psi[r] = eig.vectors(r, i);
        }
        double lambda = std::clamp(eig.values[i], 0.0, 1.0);
        kraus.push_back(outer(accept, psi) * Complex(std::sqrt(lambda)));
        kraus.push_back(outer(reject, psi) * Complex(std::sqrt(1 - lambda)));
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel replacement_channel(const DensityOperator &theta) {
    const std::size_t q = theta.dim();
    auto eig = eigh(theta);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(q * q);
    for (std::size_t j = 0; j < q; j++) {
        ComplexVector phi(q);
        for (std::size_t r = 0; r < q; r++) {
            phi[r] = eig.vectors(r, j);
        }
        double weight = std::sqrt(std::max(0.0, eig.values[j]));
        for (std::size_t k = 0; k < q; k++) {
            kraus.push_back(outer(phi, basis_vector(q, k)) * Complex(weight));
        }
    }
    return KrausChannel(std::move(kraus));
}

ComplexMatrix prepare_unitary(const ComplexVector &phi0, const ComplexVector &psi) {
    if (phi0.size() != psi.size() || phi0.empty()) {
        throw DimensionMismatch("prepare_unitary needs two vectors of the same positive length");
    }
    if (std::abs(vector_norm(phi0) - 1) > kUnitTol || std::abs(vector_norm(psi) - 1) > kUnitTol) {
        throw InvariantViolation("prepare_unitary needs unit vectors");
    }
    return complete_to_unitary(psi) * complete_to_unitary(phi0).adjoint();
}

// ---------------------------------------------------------------------------

std::vector<Word> QcfaWitnessBundle::prefixes() const {
    std::vector<std::string> names;
    for (std::size_t l = 1; l <= d; l++) {
        names.push_back(prepare_symbol(l));
    }
    return single_symbol_words(names);
}

std::vector<Word> QcfaWitnessBundle::suffixes() const {
    std::vector<std::string> names;
    for (const auto &eta : etas) {
        names.push_back(test_symbol(eta));
    }
    return single_symbol_words(names);
}

SignMatrix QcfaWitnessBundle::expected_signs() const {
    return signs_from_etas(etas, d, prefixes(), suffixes());
}

namespace {

std::vector<ComplexMatrix> witness_blocks(std::size_t c, std::size_t q, const RealMatrix &gram,
                                          const std::vector<std::pair<std::size_t, std::size_t>> &configs,
                                          const std::vector<DensityOperator> &thetas, const std::vector<int> &eta) {
    if (eta.size() != configs.size()) {
        throw DimensionMismatch("sign vector length differs from d");
    }
    RealVector rhs(eta.begin(), eta.end());
    auto alpha = solve_spd(gram, rhs);
    std::vector<ComplexMatrix> blocks(c, ComplexMatrix(q, q));
    for (std::size_t l = 0; l < configs.size(); l++) {
        auto [block, k] = configs[l];
        blocks[block] += thetas[k].matrix() * Complex(alpha[l]);
    }
    return blocks;
}

}  // namespace

std::vector<ComplexMatrix> qcfa_witness_test_operator(const QcfaWitnessBundle &b, const std::vector<int> &eta) {
    return witness_blocks(b.c, b.q, b.gram, b.configs, b.thetas, eta);
}

QcfaWitnessBundle build_qcfa_witness(std::size_t c, std::size_t q, const EtaMode &eta_mode) {
    if (c < 2 || q < 2) {
        throw InvalidParameter("QCFA witness needs c >= 2 and q >= 2");
    }
    const std::size_t q2 = q * q;
    const std::size_t d = c * q2 - 1;
    auto etas = select_sign_vectors(d, eta_mode);

    // theta_0 = I/q, theta_k = I/q + eps H_k.
    auto basis = hermitian_basis(q);
    double max_h = 0;
    for (std::size_t k = 1; k < q2; k++) {
        max_h = std::max(max_h, operator_norm(basis[k].matrix()));
    }
    const ComplexMatrix omega = ComplexMatrix::identity(q) * Complex(1.0 / static_cast<double>(q));
    double epsilon = 1.0 / (2.0 * static_cast<double>(q) * max_h);
    std::vector<DensityOperator> thetas;
    for (int attempt = 0;; attempt++) {
        try {
            thetas.clear();
            thetas.emplace_back(omega);
            for (std::size_t k = 1; k < q2; k++) {
                thetas.emplace_back(omega + basis[k].matrix() * Complex(epsilon));
            }
            break;
        } catch (const InvariantViolation &) {
            if (attempt >= kMaxEpsilonHalvings) {
                throw;
            }
            epsilon /= 2;
        }
    }

    // Lexicographic (block, k), dropping the last pair.
    std::vector<std::pair<std::size_t, std::size_t>> configs;
    for (std::size_t i = 0; i < c; i++) {
        for (std::size_t k = 0; k < q2; k++) {
            configs.emplace_back(i, k);
        }
    }
    configs.pop_back();

    RealMatrix gram(d, d);
    for (std::size_t l = 0; l < d; l++) {
        for (std::size_t m = 0; m < d; m++) {
            if (configs[l].first == configs[m].first) {
                gram(l, m) = hs_inner(thetas[configs[l].second], thetas[configs[m].second]);
            }
        }
    }
    const double gram_min = eigh(to_complex(gram)).values.front();
    if (gram_min <= 0) {
        throw InvariantViolation("prepared configurations are not linearly independent");
    }
    double max_zeta = 0;
    for (const auto &th : thetas) {
        max_zeta = std::max(max_zeta, operator_norm(th.matrix()));
    }
    // ||X_eta|| <= ||alpha||_1 max||zeta|| <= sqrt(d) ||G^-1|| sqrt(d) max||zeta||.
    const double m_bound = static_cast<double>(d) * (1.0 / gram_min) * max_zeta;
    const double t = 1.0 / (4.0 * m_bound);

    std::vector<std::string> symbols;
    for (std::size_t l = 1; l <= d; l++) {
        symbols.push_back(prepare_symbol(l));
    }
    for (const auto &eta : etas) {
        symbols.push_back(test_symbol(eta));
    }
    Alphabet alphabet(std::move(symbols));
    const std::size_t sigma = alphabet.size();

    std::vector<std::size_t> delta(c * sigma);
    std::vector<KrausChannel> channels(c * sigma);
    std::vector<KrausChannel> replacements;
    for (std::size_t l = 0; l < d; l++) {
        replacements.push_back(replacement_channel(thetas[configs[l].second]));
    }

    for (std::size_t i = 0; i < c; i++) {
        for (std::size_t l = 0; l < d; l++) {
            delta[i * sigma + l] = configs[l].first;
            channels[i * sigma + l] = replacements[l];
        }
    }
    const ComplexMatrix half_identity = ComplexMatrix::identity(q) * Complex(0.5);
    for (std::size_t k = 0; k < etas.size(); k++) {
        auto x_blocks = witness_blocks(c, q, gram, configs, thetas, etas[k]);
        const std::size_t symbol = d + k;
        for (std::size_t i = 0; i < c; i++) {
            EffectOperator block(half_identity + x_blocks[i] * Complex(t));
            delta[i * sigma + symbol] = i;
            channels[i * sigma + symbol] = effect_channel(block, q);
        }
    }

    Qcfa automaton(std::move(alphabet), c, q, 0, DensityOperator(omega), std::move(delta), std::move(channels),
                   Projector::onto_basis(q, {0}));
    return QcfaWitnessBundle{std::move(automaton), c,
                             q,
                             d,
                             t,
                             m_bound,
                             epsilon,
                             std::move(thetas),
                             std::move(configs),
                             std::move(gram),
                             std::move(etas),
                             eta_mode};
}

// ---------------------------------------------------------------------------

std::vector<Word> MoqfaWitnessBundle::prefixes() const {
    std::vector<std::string> names;
    for (std::size_t j = 1; j <= d; j++) {
        names.push_back(prepare_symbol(j));
    }
    return single_symbol_words(names);
}

std::vector<Word> MoqfaWitnessBundle::suffixes() const {
    std::vector<std::string> names;
    for (const auto &eta : etas) {
        names.push_back(test_symbol(eta));
    }
    return single_symbol_words(names);
}

SignMatrix MoqfaWitnessBundle::expected_signs() const {
    return signs_from_etas(etas, d, prefixes(), suffixes());
}

ComplexMatrix orbit_generator(std::size_t r, std::size_t s, const ComplexMatrix &x) {
    if (x.rows() != r || x.cols() != s) {
        throw DimensionMismatch("orbit generator block must be " + std::to_string(r) + "x" + std::to_string(s));
    }
    ComplexMatrix k(r + s, r + s);
    for (std::size_t a = 0; a < r; a++) {
        for (std::size_t b = 0; b < s; b++) {
            k(a, r + b) = x(a, b);
            k(r + b, a) = -std::conj(x(a, b));
        }
    }
    return k;
}

ComplexMatrix moqfa_witness_block(std::size_t r, std::size_t s, const std::vector<int> &eta) {
    if (eta.size() != 2 * r * s) {
        throw DimensionMismatch("sign vector length differs from 2 r s");
    }
    ComplexMatrix x(r, s);
    for (std::size_t a = 0; a < r; a++) {
        for (std::size_t b = 0; b < s; b++) {
            x(a, b) = Complex(eta[a * s + b], -eta[r * s + a * s + b]);
        }
    }
    return x;
}

namespace {

std::vector<ComplexVector> balanced_test_states(std::size_t r, std::size_t s) {
    const std::size_t n = r + s;
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<ComplexVector> states;
    for (Complex phase : {Complex(1, 0), Complex(0, 1)}) {
        for (std::size_t a = 0; a < r; a++) {
            for (std::size_t b = 0; b < s; b++) {
                ComplexVector psi(n, 0.0);
                psi[a] = h;
                psi[r + b] = h * phase;
                states.push_back(std::move(psi));
            }
        }
    }
    return states;
}

double expectation(const ComplexVector &psi, const ComplexMatrix &e) {
    auto ep = times_col<Complex>(e, psi);
    Complex acc = 0;
    for (std::size_t i = 0; i < psi.size(); i++) {
        acc += std::conj(psi[i]) * ep[i];
    }
    return acc.real();
}

}  // namespace

MoqfaWitnessBundle build_moqfa_witness(std::size_t n, const EtaMode &eta_mode) {
    if (n < 2) {
        throw InvalidParameter("MO-QFA witness needs n >= 2");
    }
    const std::size_t r = n / 2;
    const std::size_t s = n - r;
    const std::size_t d = 2 * r * s;
    const double t = 1.0 / (4.0 * static_cast<double>(n * n));
    auto etas = select_sign_vectors(d, eta_mode);
    auto states = balanced_test_states(r, s);

    const ComplexVector phi0 = basis_vector(n, 0);
    std::vector<std::string> symbols;
    std::vector<ComplexMatrix> unitaries;
    for (std::size_t j = 0; j < d; j++) {
        symbols.push_back(prepare_symbol(j + 1));
        unitaries.push_back(prepare_unitary(phi0, states[j]));
    }
    for (const auto &eta : etas) {
        symbols.push_back(test_symbol(eta));
        unitaries.push_back(expm(orbit_generator(r, s, moqfa_witness_block(r, s, eta)) * Complex(t)));
    }
    std::vector<std::size_t> range(r);
    for (std::size_t i = 0; i < r; i++) {
        range[i] = i;
    }
    Moqfa automaton(Alphabet(std::move(symbols)), phi0, std::move(unitaries), Projector::onto_basis(n, range));
    return MoqfaWitnessBundle{std::move(automaton), n, r, s, d, t, std::move(states), std::move(etas), eta_mode};
}

RealMatrix orbit_jacobian(std::size_t n) {
    if (n < 2) {
        throw InvalidParameter("orbit_jacobian needs n >= 2");
    }
    const std::size_t r = n / 2;
    const std::size_t s = n - r;
    const std::size_t d = 2 * r * s;
    auto states = balanced_test_states(r, s);
    ComplexMatrix p0(n, n);
    for (std::size_t i = 0; i < r; i++) {
        p0(i, i) = 1;
    }
    RealMatrix jac(d, d);
    for (std::size_t g = 0; g < d; g++) {
        ComplexMatrix x(r, s);
        std::size_t idx = g % (r * s);
        x(idx / s, idx % s) = g < r * s ? Complex(1, 0) : Complex(0, 1);
        auto k = orbit_generator(r, s, x);
        // E(h) = e^{-hK} P_0 e^{hK}.
        auto moved = [&](double h) {
            auto u = expm(k * Complex(h));
            return u.adjoint() * p0 * u;
        };
        auto plus = moved(kJacobianStep);
        auto minus = moved(-kJacobianStep);
        for (std::size_t j = 0; j < d; j++) {
            jac(j, g) = (expectation(states[j], plus) - expectation(states[j], minus)) / (2 * kJacobianStep);
        }
    }
    return jac;
}

RealMatrix orbit_jacobian_exact(std::size_t n) {
    if (n < 2) {
        throw InvalidParameter("orbit_jacobian_exact needs n >= 2");
    }
    const std::size_t r = n / 2;
    const std::size_t rs = r * (n - r);
    RealMatrix jac(2 * rs, 2 * rs);
    for (std::size_t g = 0; g < 2 * rs; g++) {
        jac(g, g) = g < rs ? 1.0 : -1.0;
    }
    return jac;
}

ExpansionReport verify_moqfa_expansion(const MoqfaWitnessBundle &b) {
    ExpansionReport rep;
    const double n = static_cast<double>(b.n);
    rep.bound = 1.0 / (48.0 * n * n * n);
    const double shift = (static_cast<double>(b.r) - static_cast<double>(b.s)) * b.t * b.t;
    const auto prefixes = b.prefixes();
    const auto suffixes = b.suffixes();
    for (std::size_t k = 0; k < suffixes.size(); k++) {
        for (std::size_t j = 0; j < prefixes.size(); j++) {
            double f = evaluate_moqfa(b.automaton, Word{prefixes[j][0], suffixes[k][0]});
            double residual = f - 0.5 - b.t * b.etas[k][j] - shift;
            rep.pairs++;
            rep.max_residual = std::max(rep.max_residual, std::abs(residual));
            rep.min_margin = std::min(rep.min_margin, std::abs(f - 0.5));
        }
    }
    return rep;
}

}  // namespace qfa
