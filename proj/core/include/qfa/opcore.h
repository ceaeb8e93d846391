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

#ifndef QFA_OPCORE_H
#define QFA_OPCORE_H

#include <cstddef>
#include <vector>

#include "qfa/matrix.h"
#include "qfa/tolerances.h"

namespace qfa {

/// Square complex matrix equal to its conjugate transpose.
class HermitianOperator {
   public:
    HermitianOperator() = default;
    /// Throws InvariantViolation if `m` is not square or not Hermitian within
    /// tol.herm. The stored matrix is symmetrized exactly.
    explicit HermitianOperator(ComplexMatrix m, const Tolerances &tol = kDefaultTolerances);

    std::size_t dim() const noexcept {
        return m_.rows();
    }
    const ComplexMatrix &matrix() const noexcept {
        return m_;
    }
    double trace() const {
        return m_.trace().real();
    }

   private:
    ComplexMatrix m_;
};

/// Positive semidefinite, trace-one operator.
class DensityOperator : public HermitianOperator {
   public:
    DensityOperator() = default;
    explicit DensityOperator(ComplexMatrix m, const Tolerances &tol = kDefaultTolerances);
    /// |psi><psi| for a unit vector psi.
    static DensityOperator pure(const ComplexVector &psi);
    /// I/q.
    static DensityOperator maximally_mixed(std::size_t q);
};

/// Hermitian operator with spectrum in [0, 1].
class EffectOperator : public HermitianOperator {
   public:
    EffectOperator() = default;
    explicit EffectOperator(ComplexMatrix m, const Tolerances &tol = kDefaultTolerances);
};

/// Idempotent effect.
class Projector : public EffectOperator {
   public:
    Projector() = default;
    explicit Projector(ComplexMatrix m, const Tolerances &tol = kDefaultTolerances);
    /// Projector onto span{|i> : i in indices} (0-based computational basis).
    static Projector onto_basis(std::size_t dim, const std::vector<std::size_t> &indices);
};

/// Completely positive trace-preserving map rho -> sum K rho K^dagger.
class KrausChannel {
   public:
    KrausChannel() = default;
    /// Validates trace preservation (sum K^dagger K = I within 1e-10,
    /// Frobenius) and complete positivity (Choi spectrum >= -tol.psd).
    explicit KrausChannel(std::vector<ComplexMatrix> kraus, const Tolerances &tol = kDefaultTolerances);

    static KrausChannel identity(std::size_t dim);
    static KrausChannel unitary(const ComplexMatrix &u);

    std::size_t dim_in() const noexcept {
        return dim_in_;
    }
    std::size_t dim_out() const noexcept {
        return dim_out_;
    }
    const std::vector<ComplexMatrix> &kraus() const noexcept {
        return kraus_;
    }

    /// Applies the map to an arbitrary square operator (linear extension).
    ComplexMatrix apply(const ComplexMatrix &x) const;

   private:
    std::size_t dim_in_ = 0;
    std::size_t dim_out_ = 0;
    std::vector<ComplexMatrix> kraus_;
};

struct Eigensystem {
    /// Ascending.
    RealVector values;
    /// Column k is the eigenvector for values[k].
    ComplexMatrix vectors;
};

/// Orthonormal Hilbert-Schmidt basis of Herm(C^q): I/sqrt(q), then the
/// diagonal traceless Gell-Mann operators, then the symmetric pairs, then the
/// antisymmetric pairs, each in lexicographic (j, k) order.
std::vector<HermitianOperator> hermitian_basis(std::size_t q);

/// Tr(A^dagger B).
double hs_inner(const HermitianOperator &a, const HermitianOperator &b);
Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);

/// Cyclic complex Jacobi diagonalization.
Eigensystem eigh(const HermitianOperator &h);
Eigensystem eigh(const ComplexMatrix &h, const Tolerances &tol = kDefaultTolerances);

/// Scaling-and-squaring with a degree-20 Taylor polynomial.
ComplexMatrix expm(const ComplexMatrix &a);

/// Largest singular value.
double operator_norm(const ComplexMatrix &a);
double operator_norm(const RealMatrix &a);

/// Singular values of a real matrix, descending (one-sided Jacobi).
RealVector singular_values(const RealMatrix &a);

DensityOperator apply_channel(const KrausChannel &channel, const DensityOperator &rho);

/// sum_ij |i><j| (x) Phi(|i><j|), a (dim_in*dim_out)-square operator.
HermitianOperator choi_matrix(const KrausChannel &channel);

/// Smallest eigenvalue of a Hermitian operator.
double min_eigenvalue(const HermitianOperator &h);

/// Solves G x = b for symmetric positive definite G (Cholesky).
RealVector solve_spd(const RealMatrix &g, const RealVector &b);

/// Real coordinates (Tr(B_j X))_j of a Hermitian operator in `basis`.
RealVector hermitian_coordinates(const std::vector<HermitianOperator> &basis, const ComplexMatrix &x);

}  // namespace qfa

#endif
