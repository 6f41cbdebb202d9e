#pragma once

#include <cmath>
#include <string>

#include "qee/types.hpp"

namespace qee {

// Cosine-law matrix of a proximity evaluation h over an indexed point set,
// relative to a reference point. Entry (l,s) is
//   (h(l,a)^2 + h(a,s)^2 - h(l,s)^2) / 2,
// so the row and column of the reference are identically zero.
template <typename Scalar>
struct CosineLawMatrix {
  Index ref_index = 0;  // 0-based
  Matrix<Scalar> entries;

  Index size() const { return entries.rows(); }
};

namespace detail {

template <typename Derived>
void require_proximity_matrix(const Eigen::MatrixBase<Derived>& h) {
  using Scalar = typename Derived::Scalar;
  if (h.rows() != h.cols()) throw ValidationError("proximity evaluation must be square");
  const Scalar scale = h.derived().cwiseAbs().maxCoeff();
  const Scalar tol = Scalar(1e-12) * std::max<Scalar>(Scalar(1), scale);
  for (Index i = 0; i < h.rows(); ++i) {
    if (std::abs(h(i, i)) > tol)
      throw ValidationError("nonzero self-proximity at index " + std::to_string(i + 1));
    for (Index j = i + 1; j < h.cols(); ++j) {
      if (std::abs(h(i, j) - h(j, i)) > tol)
        throw ValidationError("asymmetric proximity evaluation at (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + ")");
    }
  }
}

}  // namespace detail

// Builds the cosine-law matrix for h with the given 0-based reference index.
// h must be symmetric, nonnegative, and zero on the diagonal. The result is
// symmetric by construction: each (l,s) pair is evaluated once and mirrored.
template <typename Derived>
CosineLawMatrix<typename Derived::Scalar> build_cosine_law(const Eigen::MatrixBase<Derived>& h,
                                                           Index ref_index) {
  using Scalar = typename Derived::Scalar;
  const Index n = h.rows();
  if (ref_index < 0 || ref_index >= n) throw ValidationError("reference index out of range");
  detail::require_proximity_matrix(h);

  CosineLawMatrix<Scalar> out;
  out.ref_index = ref_index;
  out.entries.setZero(n, n);
  for (Index l = 0; l < n; ++l) {
    const Scalar hla2 = h(l, ref_index) * h(l, ref_index);
    for (Index s = l; s < n; ++s) {
      const Scalar has2 = h(ref_index, s) * h(ref_index, s);
      const Scalar hls2 = h(l, s) * h(l, s);
      const Scalar m = (hla2 + has2 - hls2) / Scalar(2);
      out.entries(l, s) = m;
      out.entries(s, l) = m;
    }
  }
  return out;
}

}  // namespace qee
