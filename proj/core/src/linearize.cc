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

#include "qfa/linearize.h"

namespace qfa {

BlockCoordinates block_coordinates(std::size_t c, std::size_t state, const std::vector<HermitianOperator> &basis,
                                   const ComplexMatrix &rho) {
    const std::size_t q2 = basis.size();
    if (state >= c) {
        throw InvariantViolation("block index out of range");
    }
    BlockCoordinates out{c, rho.rows(), RealVector(c * q2, 0.0)};
    auto coords = hermitian_coordinates(basis, rho);
    std::copy(coords.begin(), coords.end(), out.vector.begin() + static_cast<std::ptrdiff_t>(state * q2));
    return out;
}

RealMatrix channel_transfer_matrix(const KrausChannel &channel, const std::vector<HermitianOperator> &basis) {
    const std::size_t q2 = basis.size();
    if (channel.dim_in() * channel.dim_in() != q2 || channel.dim_out() != channel.dim_in()) {
        throw DimensionMismatch("channel dimension does not match Hermitian basis of size " + std::to_string(q2));
    }
    RealMatrix m(q2, q2);
    for (std::size_t j = 0; j < q2; j++) {
        auto image = channel.apply(basis[j].matrix());
        auto col = hermitian_coordinates(basis, image);
        for (std::size_t i = 0; i < q2; i++) {
            m(i, j) = col[i];
        }
    }
    return m;
}

RealMatrix block_transfer_matrix(const Qcfa &a, std::size_t symbol, const std::vector<HermitianOperator> &basis) {
    const std::size_t c = a.classical_states();
    const std::size_t q2 = basis.size();
    RealMatrix m(c * q2, c * q2);
    for (std::size_t s = 0; s < c; s++) {
        std::size_t t = a.next_state(s, symbol);
        auto block = channel_transfer_matrix(a.channel(s, symbol), basis);
        for (std::size_t i = 0; i < q2; i++) {
            for (std::size_t j = 0; j < q2; j++) {
                m(t * q2 + i, s * q2 + j) += block(i, j);
            }
        }
    }
    return m;
}

RealVector acceptance_functional(const EffectOperator &accept, const std::vector<HermitianOperator> &basis) {
    return hermitian_coordinates(basis, accept.matrix());
}

Gfa qcfa_to_gfa(const Qcfa &a) {
    const std::size_t c = a.classical_states();
    const auto basis = hermitian_basis(a.quantum_dim());
    const std::size_t q2 = basis.size();

    auto u = block_coordinates(c, a.initial_classical(), basis, a.initial_quantum().matrix()).vector;

    std::vector<RealMatrix> transitions;
    transitions.reserve(a.alphabet().size());
    for (std::size_t s = 0; s < a.alphabet().size(); s++) {
        // Coordinates evolve as columns (x -> M x); GFAs act on rows.
        transitions.push_back(block_transfer_matrix(a, s, basis).transpose());
    }

    auto v_acc = acceptance_functional(a.accept(), basis);
    RealVector v_tot;
    v_tot.reserve(c * q2);
    for (std::size_t s = 0; s < c; s++) {
        v_tot.insert(v_tot.end(), v_acc.begin(), v_acc.end());
    }
    return Gfa(a.alphabet(), std::move(u), std::move(transitions), std::move(v_tot));
}

Gfa moqfa_to_gfa(const Moqfa &q) {
    const auto basis = hermitian_basis(q.dim());
    const auto &psi = q.initial_state();
    ComplexMatrix rho0(psi.size(), psi.size());
    for (std::size_t i = 0; i < psi.size(); i++) {
        for (std::size_t j = 0; j < psi.size(); j++) {
            rho0(i, j) = psi[i] * std::conj(psi[j]);
        }
    }
    auto u = hermitian_coordinates(basis, rho0);
    std::vector<RealMatrix> transitions;
    transitions.reserve(q.alphabet().size());
    for (const auto &unitary : q.unitaries()) {
        transitions.push_back(channel_transfer_matrix(KrausChannel::unitary(unitary), basis).transpose());
    }
    auto v = hermitian_coordinates(basis, q.accept().matrix());
    return Gfa(q.alphabet(), std::move(u), std::move(transitions), std::move(v));
}

}  // namespace qfa
