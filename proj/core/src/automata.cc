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

#include "qfa/automata.h"

#include <cmath>
#include <sstream>

namespace qfa {

namespace {

constexpr double kUnitNormTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;

}  // namespace

std::string word_to_string(const Word &w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); i++) {
        if (i) {
            out += ' ';
        }
        out += w[i];
    }
    return out;
}

Word parse_word(const std::string &text) {
    Word w;
    std::istringstream in(text);
    std::string symbol;
    while (in >> symbol) {
        w.push_back(symbol);
    }
    return w;
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); i++) {
        const auto &s = symbols_[i];
        if (s.empty() || s.find_first_of(" \t\n") != std::string::npos) {
            throw InvariantViolation("symbol names must be non-empty and contain no whitespace: '" + s + "'");
        }
        if (!index_.emplace(s, i).second) {
            throw InvariantViolation("duplicate symbol '" + s + "'");
        }
    }
}

std::size_t Alphabet::index_of(const std::string &symbol) const {
    auto it = index_.find(symbol);
    if (it == index_.end()) {
        throw UnknownSymbol(symbol);
    }
    return it->second;
}

std::vector<std::size_t> Alphabet::encode(const Word &w) const {
    std::vector<std::size_t> out;
    out.reserve(w.size());
    for (const auto &s : w) {
        out.push_back(index_of(s));
    }
    return out;
}

std::vector<Word> enumerate_words(const std::vector<std::string> &alphabet, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t layer_begin = 0;
    for (std::size_t len = 1; len <= max_len && !alphabet.empty(); len++) {
        std::size_t layer_end = out.size();
        for (std::size_t i = layer_begin; i < layer_end; i++) {
            for (const auto &s : alphabet) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        }
        layer_begin = layer_end;
    }
    return out;
}

Moqfa::Moqfa(Alphabet alphabet, ComplexVector initial_state, std::vector<ComplexMatrix> unitaries, Projector accept)
    : alphabet_(std::move(alphabet)),
      initial_(std::move(initial_state)),
      unitaries_(std::move(unitaries)),
      accept_(std::move(accept)) {
    const std::size_t n = initial_.size();
    double norm2 = 0;
    for (const auto &x : initial_) {
        norm2 += std::norm(x);
    }
    if (n == 0 || std::abs(std::sqrt(norm2) - 1.0) > kUnitNormTol) {
        throw InvariantViolation("MO-QFA initial state must be a unit vector");
    }
    if (accept_.dim() != n) {
        throw DimensionMismatch("MO-QFA accepting projector dimension differs from state dimension");
    }
    if (unitaries_.size() != alphabet_.size()) {
        throw DimensionMismatch("MO-QFA needs exactly one unitary per symbol");
    }
    const auto id = ComplexMatrix::identity(n);
    for (std::size_t s = 0; s < unitaries_.size(); s++) {
        const auto &u = unitaries_[s];
        if (u.rows() != n || u.cols() != n) {
            throw DimensionMismatch("MO-QFA unitary has shape " + u.shape_str());
        }
        if (max_abs_diff(u.adjoint() * u, id) > kUnitaryTol) {
            throw InvariantViolation("matrix for symbol '" + alphabet_[s] + "' is not unitary");
        }
    }
}

ComplexVector run_moqfa(const Moqfa &q, const Word &w, ComplexVector start) {
    for (auto s : q.alphabet().encode(w)) {
        start = times_col<Complex>(q.unitary(s), start);
    }
    return start;
}

double moqfa_acceptance(const Moqfa &q, const ComplexVector &psi) {
    auto p_psi = times_col<Complex>(q.accept().matrix(), psi);
    Complex acc = 0;
    for (std::size_t i = 0; i < psi.size(); i++) {
        acc += std::conj(psi[i]) * p_psi[i];
    }
    return std::clamp(acc.real(), 0.0, 1.0);
}

double evaluate_moqfa(const Moqfa &q, const Word &w) {
    return moqfa_acceptance(q, run_moqfa(q, w, q.initial_state()));
}

Qcfa::Qcfa(Alphabet alphabet, std::size_t classical_states, std::size_t quantum_dim, std::size_t initial_classical,
           DensityOperator initial_quantum, std::vector<std::size_t> delta, std::vector<KrausChannel> channels,
           EffectOperator accept)
    : alphabet_(std::move(alphabet)),
      classical_states_(classical_states),
      quantum_dim_(quantum_dim),
      initial_classical_(initial_classical),
      initial_quantum_(std::move(initial_quantum)),
      delta_(std::move(delta)),
      channels_(std::move(channels)),
      accept_(std::move(accept)) {
    if (classical_states_ == 0 || quantum_dim_ == 0) {
        throw InvariantViolation("QCFA needs c >= 1 and q >= 1");
    }
    if (initial_classical_ >= classical_states_) {
        throw InvariantViolation("QCFA initial classical state out of range");
    }
    if (initial_quantum_.dim() != quantum_dim_ || accept_.dim() != quantum_dim_) {
        throw DimensionMismatch("QCFA initial state and accepting effect must act on C^q");
    }
    const std::size_t cells = classical_states_ * alphabet_.size();
    if (delta_.size() != cells || channels_.size() != cells) {
        throw DimensionMismatch("QCFA transition tables must cover every (state, symbol) pair");
    }
    for (std::size_t i = 0; i < cells; i++) {
        if (delta_[i] >= classical_states_) {
            throw InvariantViolation("QCFA classical transition target out of range");
        }
        if (channels_[i].dim_in() != quantum_dim_ || channels_[i].dim_out() != quantum_dim_) {
            throw DimensionMismatch("QCFA channel must map C^q to C^q");
        }
    }
}

QcfaConfiguration qcfa_initial_configuration(const Qcfa &a) {
    return {a.initial_classical(), a.initial_quantum().matrix()};
}

QcfaConfiguration run_qcfa(const Qcfa &a, const Word &w, QcfaConfiguration start) {
    for (auto s : a.alphabet().encode(w)) {
        start.rho = a.channel(start.classical_state, s).apply(start.rho);
        start.classical_state = a.next_state(start.classical_state, s);
    }
    return start;
}

double qcfa_acceptance(const Qcfa &a, const QcfaConfiguration &config) {
    return hs_inner(a.accept().matrix(), config.rho).real();
}

double evaluate_qcfa(const Qcfa &a, const Word &w) {
    return qcfa_acceptance(a, run_qcfa(a, w, qcfa_initial_configuration(a)));
}

Membership member(double f_value, const CutpointSpec &spec, const Tolerances &tol) {
    const bool ambiguous = std::abs(f_value - spec.lambda) < tol.eq;
    return {f_value > spec.lambda && !ambiguous ? +1 : -1, ambiguous};
}

Membership member(const Rational &f_value, const Rational &lambda) {
    return {f_value > lambda ? +1 : -1, false};
}

}  // namespace qfa
