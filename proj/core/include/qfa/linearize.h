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

#ifndef QFA_LINEARIZE_H
#define QFA_LINEARIZE_H

#include <vector>

#include "qfa/automata.h"
#include "qfa/opcore.h"

namespace qfa {

/// Concatenated per-block Hermitian coordinates of a block-diagonal
/// classical-quantum operator sum_s |s><s| (x) rho_s.
struct BlockCoordinates {
    std::size_t c = 0;
    std::size_t q = 0;
    RealVector vector;
};

/// Coordinates of |s><s| (x) rho in the given basis (other blocks zero).
BlockCoordinates block_coordinates(std::size_t c, std::size_t state, const std::vector<HermitianOperator> &basis,
                                   const ComplexMatrix &rho);

/// Real q^2 x q^2 matrix M with coords(Phi(X)) = M coords(X); column j holds
/// the coordinates of Phi(B_j).
RealMatrix channel_transfer_matrix(const KrausChannel &channel, const std::vector<HermitianOperator> &basis);

/// (c q^2) x (c q^2) block transfer matrix of one symbol: block (t, s) is the
/// channel transfer of Phi_{s,sigma} when delta(s, sigma) = t.
RealMatrix block_transfer_matrix(const Qcfa &a, std::size_t symbol, const std::vector<HermitianOperator> &basis);

/// (Tr(E B_j))_j.
RealVector acceptance_functional(const EffectOperator &accept, const std::vector<HermitianOperator> &basis);

/// c q^2-state GFA with identical acceptance values.
Gfa qcfa_to_gfa(const Qcfa &a);

/// n^2-state GFA with identical acceptance values (rho -> U rho U^dagger).
Gfa moqfa_to_gfa(const Moqfa &q);

}  // namespace qfa

#endif
