// Copyright 2026 The mcdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCDISC_NUMERICS_HPP
#define MCDISC_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "mcdisc/errors.hpp"

namespace mcdisc {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;

/// Dense complex Hermitian matrix. Density matrices, averaged states, Gram
/// matrices and POVM effects all live in this type.
using HermitianMatrix = Matrix<cplx>;

/// Tolerances shared by every rank and positivity decision in the library.
struct Tolerances {
  double psd = 1e-10;        ///< eigenvalues <= psd count as zero
  double hermitian = 1e-12;  ///< max |a_ij - conj(a_ji)| accepted as Hermitian
};

inline constexpr double kDefaultPsdTolerance = 1e-10;
inline constexpr double kDefaultHermitianTolerance = 1e-12;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending and column i of `eigenvectors` belongs to eigenvalue i.
template <typename Scalar>
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Matrix<Scalar> eigenvectors;
};

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

inline double conj(double x) { return x; }
inline cplx conj(const cplx& x) { return std::conj(x); }

template <typename Scalar>
Scalar unit_phase(const Scalar& x) {
  const double mag = std::abs(x);
  if (mag == 0.0) return Scalar(1);
  return x / mag;
}

}  // namespace detail

/// Largest entrywise deviation from Hermiticity, max |a_ij - conj(a_ji)|.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) return INFINITY;
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& a,
                       double tol = kDefaultHermitianTolerance) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw ValidationError("expected a non-empty square matrix, got " +
                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  const double defect = hermiticity_defect(a);
  if (!(defect <= tol)) {
    throw ValidationError("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps visit (p, q) pairs in row-major order, so results are bit-for-bit
/// reproducible. Iteration stops once the off-diagonal Frobenius mass drops
/// below 1e-14 relative to the Frobenius norm of the input.
template <typename Derived>
Spectrum<typename Derived::Scalar> eigh(const Eigen::MatrixBase<Derived>& input,
                                        double hermitian_tol = kDefaultHermitianTolerance) {
  using Scalar = typename Derived::Scalar;
  require_hermitian(input, hermitian_tol);

  const Eigen::Index n = input.rows();
  // Symmetrize so rounding noise in the input cannot bias the rotations.
  Matrix<Scalar> a = (input + input.adjoint()) / 2.0;
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);

  const double scale = std::max(1.0, a.norm());
  const double stop = 1e-14 * scale;
  constexpr int kMaxSweeps = 100;

  auto off_norm = [&]() {
    double s = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kMaxSweeps && off_norm() >= stop; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        // Skip rotations that cannot change the diagonal at working precision.
        if (sweep > 3 && mag < 1e-300 + 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = Scalar(0);
          a(q, p) = Scalar(0);
          continue;
        }
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Scalar phase = detail::unit_phase(apq);
        // Unitary acting on columns p, q:
        //   [ c            s       ]
        //   [ -s*conj(ph)  c*conj(ph) ]  with rows/cols p, q scaled by phase.
        const Scalar jpp = Scalar(c);
        const Scalar jpq = Scalar(s);
        const Scalar jqp = -Scalar(s) * detail::conj(phase);
        const Scalar jqq = Scalar(c) * detail::conj(phase);

        for (Eigen::Index r = 0; r < n; ++r) {
          const Scalar arp = a(r, p);
          const Scalar arq = a(r, q);
          a(r, p) = arp * jpp + arq * jqp;
          a(r, q) = arp * jpq + arq * jqq;
        }
        for (Eigen::Index col = 0; col < n; ++col) {
          const Scalar apc = a(p, col);
          const Scalar aqc = a(q, col);
          a(p, col) = detail::conj(jpp) * apc + detail::conj(jqp) * aqc;
          a(q, col) = detail::conj(jpq) * apc + detail::conj(jqq) * aqc;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const Scalar vrp = v(r, p);
          const Scalar vrq = v(r, q);
          v(r, p) = vrp * jpp + vrq * jqp;
          v(r, q) = vrp * jpq + vrq * jqq;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(std::real(a(p, p)));
        a(q, q) = Scalar(std::real(a(q, q)));
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::real(a(x, x)) > std::real(a(y, y));
  });

  Spectrum<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = std::real(a(order[i], order[i]));
    out.eigenvectors.col(i) = v.col(order[i]);
  }
  return out;
}

/// Rebuilds V diag(f(lambda)) V^dagger from a spectrum.
template <typename Scalar, typename Fn>
Matrix<Scalar> spectral_apply(const Spectrum<Scalar>& spec, Fn&& fn) {
  const Eigen::VectorXd mapped = spec.eigenvalues.unaryExpr(std::forward<Fn>(fn));
  Matrix<Scalar> out = spec.eigenvectors * mapped.template cast<Scalar>().asDiagonal() *
                       spec.eigenvectors.adjoint();
  return (out + out.adjoint()) / 2.0;
}

namespace detail {

template <typename Scalar>
void require_psd(const Spectrum<Scalar>& spec, double tol, const char* who) {
  const double lo = spec.eigenvalues.size() ? spec.eigenvalues.minCoeff() : 0.0;
  if (lo < -tol) {
    throw NotPsdError(std::string(who) + ": matrix is not positive semidefinite (min eigenvalue " +
                          std::to_string(lo) + ")",
                      lo);
  }
}

}  // namespace detail

/// PSD square root. Eigenvalues below `tol` are clamped to zero.
template <typename Derived>
Matrix<typename Derived::Scalar> sqrtm_psd(const Eigen::MatrixBase<Derived>& a,
                                           double tol = kDefaultPsdTolerance) {
  const auto spec = eigh(a);
  detail::require_psd(spec, tol, "sqrtm_psd");
  return spectral_apply(spec, [tol](double x) { return x <= tol ? 0.0 : std::sqrt(x); });
}

/// Moore-Penrose pseudo-inverse of a PSD matrix; eigenvalues <= tol are
/// treated as exact zeros.
template <typename Derived>
Matrix<typename Derived::Scalar> pinv_psd(const Eigen::MatrixBase<Derived>& a,
                                          double tol = kDefaultPsdTolerance) {
  const auto spec = eigh(a);
  detail::require_psd(spec, tol, "pinv_psd");
  return spectral_apply(spec, [tol](double x) { return x <= tol ? 0.0 : 1.0 / x; });
}

/// Square root of the pseudo-inverse, (a^+)^{1/2}.
template <typename Derived>
Matrix<typename Derived::Scalar> pinv_sqrtm_psd(const Eigen::MatrixBase<Derived>& a,
                                                double tol = kDefaultPsdTolerance) {
  const auto spec = eigh(a);
  detail::require_psd(spec, tol, "pinv_sqrtm_psd");
  return spectral_apply(spec, [tol](double x) { return x <= tol ? 0.0 : 1.0 / std::sqrt(x); });
}

/// Orthogonal projector onto the eigenspace with eigenvalues > tol.
template <typename Derived>
Matrix<typename Derived::Scalar> support_projector(const Eigen::MatrixBase<Derived>& a,
                                                   double tol = kDefaultPsdTolerance) {
  return spectral_apply(eigh(a), [tol](double x) { return x > tol ? 1.0 : 0.0; });
}

/// Sum of absolute eigenvalues.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& a) {
  return eigh(a).eigenvalues.cwiseAbs().sum();
}

/// Kronecker product; entry ((i,p),(j,q)) equals a_ij * b_pq.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Scalar(a(i, j)) * b.template cast<Scalar>();
  return out;
}

/// a ⊗ a ⊗ ... ⊗ a (k factors); k = 0 gives the 1x1 identity.
template <typename Derived>
Matrix<typename Derived::Scalar> kron_power(const Eigen::MatrixBase<Derived>& a, int k) {
  using Scalar = typename Derived::Scalar;
  if (k < 0) throw ValidationError("kron_power: negative exponent");
  Matrix<Scalar> out = Matrix<Scalar>::Identity(1, 1);
  for (int i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

}  // namespace mcdisc

#endif  // MCDISC_NUMERICS_HPP
