#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "qee/types.hpp"

namespace qee {

template <typename Scalar>
struct SpectralSummary {
  Vector<Scalar> eigenvalues;   // descending
  Matrix<Scalar> eigenvectors;  // columns aligned with eigenvalues
  Scalar min_eigenvalue = Scalar(0);
};

template <typename Scalar>
struct GershgorinDisc {
  Scalar center = Scalar(0);   // diagonal entry a_{i,i}
  Scalar radius = Scalar(0);   // sum of off-diagonal |a_{i,j}| in row i
  Index row = 0;               // 0-based
};

template <typename Scalar>
struct PsdVerdict {
  bool psd = false;
  SpectralSummary<Scalar> summary;
};

namespace detail {

template <typename Derived>
void require_symmetric(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw ValidationError("matrix must be square");
  if (a.size() > 0 && !a.derived().allFinite())
    throw ValidationError("matrix has non-finite entries");
  const Scalar scale = a.size() > 0 ? a.derived().cwiseAbs().maxCoeff() : Scalar(0);
  const Scalar tol = Scalar(1e-9) * std::max<Scalar>(Scalar(1), scale);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol)
        throw ValidationError("matrix is not symmetric within tolerance");
}

template <typename Scalar>
Scalar off_diagonal_norm(const Matrix<Scalar>& a) {
  Scalar sum = Scalar(0);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace detail

// Symmetric eigendecomposition by cyclic Jacobi rotations with a fixed
// upper-triangle sweep order, so results are bit-reproducible. Converges when
// the off-diagonal Frobenius norm drops below 1e-12 * ||A||_F. Eigenvalues are
// returned in descending order; each eigenvector's first nonzero component is
// made positive.
template <typename Derived>
SpectralSummary<typename Derived::Scalar> eigendecompose(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  detail::require_symmetric(input);
  const Index n = input.rows();

  SpectralSummary<Scalar> out;
  if (n == 0) {
    out.eigenvalues.resize(0);
    out.eigenvectors.resize(0, 0);
    return out;
  }

  // Work on the exactly-symmetric average so tiny input asymmetry cannot
  // leak into the rotations.
  Matrix<Scalar> a = (input.derived() + input.derived().transpose()) / Scalar(2);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);

  const Scalar norm = a.norm();
  const Scalar target = Scalar(1e-12) * norm;
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps && detail::off_diagonal_norm(a) > target; ++sweep) {
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (theta >= Scalar(0))
          t = Scalar(1) / (theta + std::sqrt(theta * theta + Scalar(1)));
        else
          t = Scalar(-1) / (-theta + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;

        const Scalar app = a(p, p);
        const Scalar aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        for (Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(p, k) = a(k, p);
          a(k, q) = s * akp + c * akq;
          a(q, k) = a(k, q);
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i) > a(j, j); });

  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]);
    out.eigenvectors.col(k) = v.col(order[static_cast<size_t>(k)]);
    for (Index i = 0; i < n; ++i) {
      const Scalar lead = out.eigenvectors(i, k);
      if (lead != Scalar(0)) {
        if (lead < Scalar(0)) out.eigenvectors.col(k) = -out.eigenvectors.col(k);
        break;
      }
    }
  }
  out.min_eigenvalue = out.eigenvalues(n - 1);
  return out;
}

// PSD test: all eigenvalues at least -tol * max(1, |lambda_max|).
template <typename Derived>
PsdVerdict<typename Derived::Scalar> is_psd(const Eigen::MatrixBase<Derived>& a,
                                            typename Derived::Scalar tol) {
  using Scalar = typename Derived::Scalar;
  PsdVerdict<Scalar> verdict;
  verdict.summary = eigendecompose(a);
  if (a.rows() == 0) {
    verdict.psd = true;
    return verdict;
  }
  const Scalar scale = std::max<Scalar>(Scalar(1), std::abs(verdict.summary.eigenvalues(0)));
  verdict.psd = verdict.summary.min_eigenvalue >= -tol * scale;
  return verdict;
}

template <typename Derived>
std::vector<GershgorinDisc<typename Derived::Scalar>> gershgorin_discs(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw ValidationError("matrix must be square");
  std::vector<GershgorinDisc<Scalar>> discs;
  discs.reserve(static_cast<size_t>(a.rows()));
  for (Index i = 0; i < a.rows(); ++i) {
    GershgorinDisc<Scalar> d;
    d.row = i;
    d.center = a(i, i);
    d.radius = Scalar(0);
    for (Index j = 0; j < a.cols(); ++j)
      if (j != i) d.radius += std::abs(a(i, j));
    discs.push_back(d);
  }
  return discs;
}

// Factorizes a PSD matrix as A = E * E^T with E = U * diag(lambda)^(1/2).
// Eigenvalues inside [-tol * max(1, |lambda_max|), 0) are clamped to zero;
// anything below that band is a hard NotPsdError carrying the min eigenvalue
// and the Gershgorin discs that admit negative values.
template <typename Derived>
Matrix<typename Derived::Scalar> psd_sqrt_factor(const Eigen::MatrixBase<Derived>& a,
                                                 typename Derived::Scalar tol) {
  using Scalar = typename Derived::Scalar;
  PsdVerdict<Scalar> verdict = is_psd(a, tol);
  const Index n = a.rows();
  if (!verdict.psd) {
    std::ostringstream msg;
    msg << "matrix is not positive semi-definite: min eigenvalue "
        << verdict.summary.min_eigenvalue;
    auto discs = gershgorin_discs(a);
    msg << "; Gershgorin discs reaching below zero (row: [center-radius, center+radius]):";
    bool any = false;
    for (const auto& d : discs) {
      if (d.center - d.radius < Scalar(0)) {
        msg << " " << (d.row + 1) << ": [" << (d.center - d.radius) << ", "
            << (d.center + d.radius) << "]";
        any = true;
      }
    }
    if (!any) msg << " none";
    throw NotPsdError(msg.str(), static_cast<double>(verdict.summary.min_eigenvalue));
  }

  Vector<Scalar> lambda = verdict.summary.eigenvalues;
  for (Index i = 0; i < n; ++i)
    if (lambda(i) < Scalar(0)) lambda(i) = Scalar(0);
  return verdict.summary.eigenvectors * lambda.cwiseSqrt().asDiagonal();
}

}  // namespace qee
