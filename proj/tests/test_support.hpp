#pragma once

// Shared fixtures and independent oracles for the test suites. Everything in
// here is test-only and deliberately avoids the library's construction paths
// where it serves as an oracle for them.

#include <random>
#include <vector>

#include "qee/indexing.hpp"
#include "qee/instance.hpp"
#include "qee/types.hpp"

namespace qee::test {

inline std::mt19937 make_rng(unsigned seed) { return std::mt19937(seed); }

inline MatrixXd distances_from_points(const MatrixXd& pts) {
  const Index n = pts.rows();
  MatrixXd d = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      d(i, j) = (pts.row(i) - pts.row(j)).norm();
      d(j, i) = d(i, j);
    }
  return d;
}

inline MatrixXd random_points(Index n, Index dim, std::mt19937& g) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  MatrixXd pts(n, dim);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < dim; ++j) pts(i, j) = u(g);
  return pts;
}

inline MatrixXd planted_set(Index n, Index dim, std::mt19937& g) {
  return distances_from_points(random_points(n, dim, g));
}

// A hub at distance r from every leaf, leaves pairwise at 2r. A valid metric,
// but not Euclidean-embeddable for 3 or more leaves: the leaves form a regular
// simplex of side 2r whose circumradius exceeds r.
inline MatrixXd star_metric(Index size, double r = 1.0) {
  MatrixXd d = MatrixXd::Constant(size, size, 2.0 * r);
  d.row(0).setConstant(r);
  d.col(0).setConstant(r);
  d.diagonal().setZero();
  return d;
}

inline MatrixXd random_symmetric(Index n, double lo, double hi, std::mt19937& g) {
  std::uniform_real_distribution<double> u(lo, hi);
  MatrixXd a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      a(i, j) = u(g);
      a(j, i) = a(i, j);
    }
  return a;
}

// Symmetric, nonnegative, zero-diagonal; an arbitrary proximity, not a metric.
inline MatrixXd random_proximity(Index n, std::mt19937& g) {
  MatrixXd a = random_symmetric(n, 0.2, 3.0, g);
  a.diagonal().setZero();
  return a;
}

inline MatrixXd random_cross(Index m, Index n, std::mt19937& g) {
  std::uniform_real_distribution<double> u(0.1, 2.5);
  MatrixXd f(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) f(i, j) = u(g);
  return f;
}

inline VectorXd random_origin_proximity(Index n, std::mt19937& g) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  VectorXd v(n);
  for (Index i = 0; i < n; ++i) v(i) = u(g);
  return v;
}

enum class YKind { Planted, Star, Arbitrary };

inline ProblemInstance random_instance(Index m, Index n, bool origin, YKind y_kind,
                                       std::mt19937& g) {
  MatrixXd dy;
  switch (y_kind) {
    case YKind::Planted: dy = planted_set(n, 3, g); break;
    case YKind::Star: dy = n >= 4 ? star_metric(n) : random_proximity(n, g); break;
    case YKind::Arbitrary: dy = random_proximity(n, g); break;
  }
  std::optional<VectorXd> ux;
  std::optional<VectorXd> uy;
  if (origin) {
    ux = random_origin_proximity(m, g);
    uy = random_origin_proximity(n, g);
  }
  return make_instance(planted_set(m, 2, g), std::move(dy), random_cross(m, n, g),
                       std::move(ux), std::move(uy), origin);
}

// Independent zeta oracle: a direct double loop over the cross pairs using
// nothing but the raw instance data.
inline double zeta_bruteforce(const ProblemInstance& inst) {
  const Index m_count = inst.M();
  const Index n_count = inst.N();
  auto cross_entry = [&](Index m, Index n) {
    const double d = inst.dX(m, 0);
    const double f1 = inst.F(0, n);
    const double fmn = inst.F(m, n);
    return (d * d + f1 * f1 - fmn * fmn) / 2.0;
  };
  double zeta = 0.0;
  for (Index m = 0; m < m_count; ++m) {
    double row = 0.0;
    for (Index n = 0; n < n_count; ++n) row += std::abs(cross_entry(m, n));
    zeta = std::max(zeta, row);
  }
  for (Index n = 0; n < n_count; ++n) {
    double row = 0.0;
    for (Index m = 0; m < m_count; ++m) row += std::abs(cross_entry(m, n));
    zeta = std::max(zeta, row);
  }
  return zeta;
}

// Independent componentwise oracle for the cosine-law matrix of
// (V^z, h-tilde^alpha): the case-by-case table, written without touching the
// library's split or cosine-law construction. The all-origin diagonal case is
// absent from the table's source and is filled in from the generic
// definition (2 c2 zeta).
inline MatrixXd mz_case_table(const ProblemInstance& inst, const AugmentedIndexing& idx,
                              double alpha, double zeta, double c1, double c2) {
  const Index q_count = idx.Q();
  MatrixXd two_m = MatrixXd::Zero(q_count, q_count);
  for (Index q1 = 0; q1 < q_count; ++q1) {
    for (Index q2 = 0; q2 < q_count; ++q2) {
      const RoleRef a = idx.role_of(q1);
      const RoleRef b = idx.role_of(q2);
      double v = 0.0;
      if (a.role == PointRole::Z || b.role == PointRole::Z) {
        v = 0.0;
      } else if (a.role == PointRole::X && b.role == PointRole::X) {
        if (a.member == 0 && b.member == 0) {
          v = 2.0 * c1 * zeta;
        } else if (a.member == 0 || b.member == 0) {
          v = c1 * zeta + c2 * zeta - alpha;
        } else if (a.member == b.member) {
          const double d = inst.dX(a.member, 0);
          v = 2.0 * c2 * zeta + 2.0 * d * d;
        } else {
          const double d1 = inst.dX(a.member, 0);
          const double d2 = inst.dX(b.member, 0);
          const double d12 = inst.dX(a.member, b.member);
          v = 2.0 * c2 * zeta - alpha + d1 * d1 + d2 * d2 - d12 * d12;
        }
      } else if (a.role == PointRole::Origin && b.role == PointRole::Origin) {
        v = 2.0 * c2 * zeta;
      } else if (a.role == PointRole::Origin || b.role == PointRole::Origin) {
        const RoleRef other = a.role == PointRole::Origin ? b : a;
        if (other.role == PointRole::X) {
          const double u = (*inst.uX)(other.member);
          if (other.member == 0) {
            v = c1 * zeta + c2 * zeta - alpha - u * u;
          } else {
            const double d = inst.dX(other.member, 0);
            v = 2.0 * c2 * zeta - alpha + d * d - u * u;
          }
        } else {
          const double u = (*inst.uY)(other.member);
          const double f = inst.F(0, other.member);
          v = 2.0 * c2 * zeta - alpha + f * f - u * u;
        }
      } else if (a.role == PointRole::Y && b.role == PointRole::Y) {
        const double fa = inst.F(0, a.member);
        if (a.member == b.member) {
          v = 2.0 * c2 * zeta + 2.0 * fa * fa;
        } else {
          const double fb = inst.F(0, b.member);
          const double dy = inst.dY(a.member, b.member);
          v = 2.0 * c2 * zeta - alpha + fa * fa + fb * fb - dy * dy;
        }
      } else {
        // one X, one Y
        const RoleRef xr = a.role == PointRole::X ? a : b;
        const RoleRef yr = a.role == PointRole::X ? b : a;
        if (xr.member == 0) {
          v = c1 * zeta + c2 * zeta - alpha;
        } else {
          const double d = inst.dX(xr.member, 0);
          const double f1 = inst.F(0, yr.member);
          const double fmn = inst.F(xr.member, yr.member);
          v = 2.0 * c2 * zeta - alpha + d * d + f1 * f1 - fmn * fmn;
        }
      }
      two_m(q1, q2) = v;
    }
  }
  return two_m / 2.0;
}

// An instance whose cross blocks cancel exactly: d(x_m,x_1)^2 + F(x_1,y_n)^2
// equals F(x_m,y_n)^2 for every pair, so zeta_f is exactly zero.
inline ProblemInstance zeta_degenerate_instance() {
  MatrixXd dx(2, 2);
  dx << 0, 1, 1, 0;
  MatrixXd dy(2, 2);
  dy << 0, 2, 2, 0;
  MatrixXd f(2, 2);
  f << 1, 1, std::sqrt(2.0), std::sqrt(2.0);
  return make_instance(dx, dy, f, std::nullopt, std::nullopt, false);
}

}  // namespace qee::test
