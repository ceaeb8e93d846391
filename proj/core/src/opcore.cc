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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qfa {

namespace {

constexpr double kTraceTol = 1e-12;
constexpr double kProjectorTol = 1e-10;
constexpr double kTracePreservingTol = 1e-10;
constexpr double kJacobiRelTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;
constexpr int kTaylorOrder = 20;

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    double scale = 1.0;
    for (const auto &x : m.data()) {
        scale = std::max(scale, std::abs(x));
    }
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = i; j < m.cols(); j++) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol * scale) {
                return false;
            }
        }
    }
    return true;
}

ComplexMatrix symmetrized(const ComplexMatrix &m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); i++) {
        out(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < m.cols(); j++) {
            Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return out;
}

double off_diagonal_norm(const ComplexMatrix &a) {
    double acc = 0;
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            if (i != j) {
                acc += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(acc);
}

Eigensystem jacobi(ComplexMatrix a) {
    const std::size_t n = a.rows();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = frobenius_norm(a);

    for (int sweep = 0; sweep < kJacobiMaxSweeps; sweep++) {
        if (off_diagonal_norm(a) <= kJacobiRelTol * scale) {
            break;
        }
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                Complex b = a(p, q);
                double mag = std::abs(b);
                if (mag == 0.0) {
                    continue;
                }
                rotated = true;
                // Phase-rotate column q so the pivot is real, then apply a
                // real Jacobi rotation: G = diag(1, e^{-i phi}) * [[c, s], [-s, c]].
                Complex phase = std::conj(b / mag);
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double tau = (aqq - app) / (2 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;
                Complex gpp = c;
                Complex gpq = s;
                Complex gqp = -s * phase;
                Complex gqq = c * phase;

                for (std::size_t k = 0; k < n; k++) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; k++) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; k++) {
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    Eigensystem out{RealVector(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; k++) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; r++) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m, const Tolerances &tol) {
    if (!m.is_square()) {
        throw InvariantViolation("Hermitian operator must be square, got " + m.shape_str());
    }
    if (!is_hermitian(m, tol.herm)) {
        throw InvariantViolation("matrix is not Hermitian");
    }
    m_ = symmetrized(m);
}

DensityOperator::DensityOperator(ComplexMatrix m, const Tolerances &tol) : HermitianOperator(std::move(m), tol) {
    if (std::abs(trace() - 1.0) > kTraceTol) {
        throw InvariantViolation("density operator trace is " + std::to_string(trace()));
    }
    if (min_eigenvalue(*this) < -tol.psd) {
        throw InvariantViolation("density operator is not positive semidefinite");
    }
}

DensityOperator DensityOperator::pure(const ComplexVector &psi) {
    ComplexMatrix m(psi.size(), psi.size());
    for (std::size_t i = 0; i < psi.size(); i++) {
        for (std::size_t j = 0; j < psi.size(); j++) {
            m(i, j) = psi[i] * std::conj(psi[j]);
        }
    }
    return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t q) {
    return DensityOperator(ComplexMatrix::identity(q) * Complex(1.0 / static_cast<double>(q)));
}

EffectOperator::EffectOperator(ComplexMatrix m, const Tolerances &tol) : HermitianOperator(std::move(m), tol) {
    auto eig = eigh(*this);
    if (!eig.values.empty() && (eig.values.front() < -tol.psd || eig.values.back() > 1 + tol.psd)) {
        throw InvariantViolation("effect spectrum leaves [0, 1]");
    }
}

Projector::Projector(ComplexMatrix m, const Tolerances &tol) : EffectOperator(std::move(m), tol) {
    const auto &p = matrix();
    if (frobenius_norm(p * p - p) > kProjectorTol) {
        throw InvariantViolation("operator is not idempotent");
    }
}

Projector Projector::onto_basis(std::size_t dim, const std::vector<std::size_t> &indices) {
    ComplexMatrix m(dim, dim);
    for (auto i : indices) {
        if (i >= dim) {
            throw InvariantViolation("projector index out of range");
        }
        m(i, i) = 1;
    }
    return Projector(std::move(m));
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus, const Tolerances &tol) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw InvariantViolation("channel needs at least one Kraus operator");
    }
    dim_out_ = kraus_.front().rows();
    dim_in_ = kraus_.front().cols();
    ComplexMatrix sum(dim_in_, dim_in_);
    for (const auto &k : kraus_) {
        if (k.rows() != dim_out_ || k.cols() != dim_in_) {
            throw DimensionMismatch("Kraus operators must share one shape");
        }
        sum += k.adjoint() * k;
    }
    if (frobenius_norm(sum - ComplexMatrix::identity(dim_in_)) > kTracePreservingTol) {
        throw InvariantViolation("Kraus operators are not trace preserving");
    }
    if (min_eigenvalue(choi_matrix(*this)) < -tol.psd) {
        throw InvariantViolation("channel is not completely positive");
    }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
    return KrausChannel({ComplexMatrix::identity(dim)});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix &u) {
    return KrausChannel({u});
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix &x) const {
    if (x.rows() != dim_in_ || x.cols() != dim_in_) {
        throw DimensionMismatch("channel on C^" + std::to_string(dim_in_) + " applied to " + x.shape_str());
    }
    ComplexMatrix out(dim_out_, dim_out_);
    for (const auto &k : kraus_) {
        out += k * x * k.adjoint();
    }
    return out;
}

std::vector<HermitianOperator> hermitian_basis(std::size_t q) {
    if (q == 0) {
        throw InvalidParameter("hermitian_basis needs q >= 1");
    }
    std::vector<HermitianOperator> basis;
    basis.reserve(q * q);
    basis.emplace_back(ComplexMatrix::identity(q) * Complex(1.0 / std::sqrt(static_cast<double>(q))));

    // diag(1, ..., 1, -l, 0, ...) / sqrt(l (l + 1)) for l = 1 .. q-1.
    for (std::size_t l = 1; l < q; l++) {
        ComplexMatrix m(q, q);
        double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (std::size_t i = 0; i < l; i++) {
            m(i, i) = norm;
        }
        m(l, l) = -static_cast<double>(l) * norm;
        basis.emplace_back(std::move(m));
    }
    const double h = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < q; j++) {
        for (std::size_t k = j + 1; k < q; k++) {
            ComplexMatrix m(q, q);
            m(j, k) = h;
            m(k, j) = h;
            basis.emplace_back(std::move(m));
        }
    }
    for (std::size_t j = 0; j < q; j++) {
        for (std::size_t k = j + 1; k < q; k++) {
            ComplexMatrix m(q, q);
            m(j, k) = Complex(0, h);
            m(k, j) = Complex(0, -h);
            basis.emplace_back(std::move(m));
        }
    }
    return basis;
}

Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("hs_inner on " + a.shape_str() + " and " + b.shape_str());
    }
    Complex acc = 0;
    for (std::size_t i = 0; i < a.data().size(); i++) {
        acc += std::conj(a.data()[i]) * b.data()[i];
    }
    return acc;
}

double hs_inner(const HermitianOperator &a, const HermitianOperator &b) {
    return hs_inner(a.matrix(), b.matrix()).real();
}

Eigensystem eigh(const HermitianOperator &h) {
    return jacobi(h.matrix());
}

Eigensystem eigh(const ComplexMatrix &h, const Tolerances &tol) {
    if (!is_hermitian(h, tol.herm)) {
        throw InvariantViolation("eigh requires a Hermitian matrix");
    }
    return jacobi(symmetrized(h));
}

ComplexMatrix expm(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw DimensionMismatch("expm of non-square " + a.shape_str());
    }
    const std::size_t n = a.rows();
    double norm = frobenius_norm(a);
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    ComplexMatrix scaled = a * Complex(std::ldexp(1.0, -squarings));

    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= kTaylorOrder; k++) {
        term = term * scaled;
        term *= Complex(1.0 / k);
        result += term;
    }
    for (int i = 0; i < squarings; i++) {
        result = result * result;
    }
    return result;
}

double operator_norm(const ComplexMatrix &a) {
    if (a.rows() == 0 || a.cols() == 0) {
        return 0.0;
    }
    ComplexMatrix gram = a.rows() < a.cols() ? a * a.adjoint() : a.adjoint() * a;
    auto eig = jacobi(symmetrized(gram));
    return std::sqrt(std::max(0.0, eig.values.back()));
}

double operator_norm(const RealMatrix &a) {
    auto sv = singular_values(a);
    return sv.empty() ? 0.0 : sv.front();
}

RealVector singular_values(const RealMatrix &a) {
    RealMatrix u = a.rows() >= a.cols() ? a : a.transpose();
    const std::size_t m = u.rows();
    const std::size_t n = u.cols();
    auto column_dot = [&](std::size_t p, std::size_t q) {
        double acc = 0;
        for (std::size_t i = 0; i < m; i++) {
            acc += u(i, p) * u(i, q);
        }
        return acc;
    };
    for (int sweep = 0; sweep < 80; sweep++) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                double alpha = column_dot(p, p);
                double beta = column_dot(q, q);
                double gamma = column_dot(p, q);
                if (alpha == 0 || beta == 0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                double zeta = (beta - alpha) / (2 * gamma);
                double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
                double c = 1 / std::sqrt(1 + t * t);
                double s = c * t;
                for (std::size_t i = 0; i < m; i++) {
                    double up = u(i, p);
                    double uq = u(i, q);
                    u(i, p) = c * up - s * uq;
                    u(i, q) = s * up + c * uq;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }
    RealVector sv(n);
    for (std::size_t j = 0; j < n; j++) {
        sv[j] = std::sqrt(column_dot(j, j));
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

DensityOperator apply_channel(const KrausChannel &channel, const DensityOperator &rho) {
    if (rho.dim() != channel.dim_in()) {
        throw DimensionMismatch("channel input dimension " + std::to_string(channel.dim_in()) +
                                " does not match state dimension " + std::to_string(rho.dim()));
    }
    return DensityOperator(channel.apply(rho.matrix()));
}

HermitianOperator choi_matrix(const KrausChannel &channel) {
    const std::size_t din = channel.dim_in();
    const std::size_t dout = channel.dim_out();
    ComplexMatrix choi(din * dout, din * dout);
    for (std::size_t i = 0; i < din; i++) {
        for (std::size_t j = 0; j < din; j++) {
            ComplexMatrix eij(din, din);
            eij(i, j) = 1;
            ComplexMatrix block = channel.apply(eij);
            for (std::size_t r = 0; r < dout; r++) {
                for (std::size_t c = 0; c < dout; c++) {
                    choi(i * dout + r, j * dout + c) = block(r, c);
                }
            }
        }
    }
    return HermitianOperator(std::move(choi));
}

double min_eigenvalue(const HermitianOperator &h) {
    if (h.dim() == 0) {
        return 0.0;
    }
    return eigh(h).values.front();
}

RealVector solve_spd(const RealMatrix &g, const RealVector &b) {
    const std::size_t n = g.rows();
    if (!g.is_square() || b.size() != n) {
        throw DimensionMismatch("solve_spd with " + g.shape_str() + " and rhs of length " + std::to_string(b.size()));
    }
    RealMatrix l(n, n);
    for (std::size_t j = 0; j < n; j++) {
        double d = g(j, j);
        for (std::size_t k = 0; k < j; k++) {
            d -= l(j, k) * l(j, k);
        }
        if (d <= 0) {
            throw InvariantViolation("matrix is not positive definite");
        }
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; i++) {
            double s = g(i, j);
            for (std::size_t k = 0; k < j; k++) {
                s -= l(i, k) * l(j, k);
            }
            l(i, j) = s / l(j, j);
        }
    }
    RealVector y(n);
    for (std::size_t i = 0; i < n; i++) {
        double s = b[i];
        for (std::size_t k = 0; k < i; k++) {
            s -= l(i, k) * y[k];
        }
        y[i] = s / l(i, i);
    }
    RealVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t k = i + 1; k < n; k++) {
            s -= l(k, i) * x[k];
        }
        x[i] = s / l(i, i);
    }
    return x;
}

RealVector hermitian_coordinates(const std::vector<HermitianOperator> &basis, const ComplexMatrix &x) {
    RealVector coords;
    coords.reserve(basis.size());
    for (const auto &b : basis) {
        // Tr(B X) = sum_ab B_ab X_ba; B Hermitian so this equals <B, X>_HS.
        coords.push_back(hs_inner(b.matrix(), x).real());
    }
    return coords;
}

}  // namespace qfa
