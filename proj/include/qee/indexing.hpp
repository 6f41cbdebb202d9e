#pragma once

#include <string>

#include "qee/types.hpp"

namespace qee {

enum class PointRole { Z, X, Origin, Y };

struct RoleRef {
  PointRole role = PointRole::Z;
  Index member = 0;  // 0-based index within its set; 0 for Z and Origin

  friend bool operator==(const RoleRef&, const RoleRef&) = default;
};

// Canonical ordering of W = X u Y u {o} and V^z = W u {z}:
// V^z slots run z, x_1..x_M, o, y_1..y_N with the origin slot structurally
// absent when the instance carries no origin. All indices are 0-based; the
// 1-based convention appears only in printed labels.
class AugmentedIndexing {
public:
  AugmentedIndexing(Index points_x, Index points_y, bool include_origin)
      : m_(points_x), n_(points_y), origin_(include_origin) {
    if (m_ < 1 || n_ < 1) throw ValidationError("both point sets must be non-empty");
  }

  Index M() const { return m_; }
  Index N() const { return n_; }
  bool has_origin() const { return origin_; }

  Index S() const { return m_ + n_ + (origin_ ? 1 : 0); }  // |W|
  Index Q() const { return S() + 1; }                      // |V^z|

  // V^z slots
  Index z_slot() const { return 0; }
  Index x_slot(Index m) const { return 1 + m; }
  Index origin_slot() const {
    if (!origin_) throw ValidationError("instance has no origin slot");
    return 1 + m_;
  }
  Index y_slot(Index n) const { return 1 + m_ + (origin_ ? 1 : 0) + n; }

  // W slots (V^z slot minus the leading z)
  Index w_x(Index m) const { return m; }
  Index w_origin() const { return origin_slot() - 1; }
  Index w_y(Index n) const { return y_slot(n) - 1; }

  RoleRef role_of(Index q) const {
    if (q < 0 || q >= Q()) throw ValidationError("slot out of range");
    if (q == 0) return {PointRole::Z, 0};
    return w_role_of(q - 1);
  }

  RoleRef w_role_of(Index s) const {
    if (s < 0 || s >= S()) throw ValidationError("slot out of range");
    if (s < m_) return {PointRole::X, s};
    if (origin_ && s == m_) return {PointRole::Origin, 0};
    return {PointRole::Y, s - m_ - (origin_ ? 1 : 0)};
  }

private:
  Index m_;
  Index n_;
  bool origin_;
};

inline AugmentedIndexing build_indexing(Index points_x, Index points_y, bool include_origin) {
  return AugmentedIndexing(points_x, points_y, include_origin);
}

// Labels in the canonical (post-relabel) frame: z, x1..xM, o, y1..yN.
inline std::string canonical_label(const AugmentedIndexing& idx, Index q) {
  const RoleRef r = idx.role_of(q);
  switch (r.role) {
    case PointRole::Z: return "z";
    case PointRole::Origin: return "o";
    case PointRole::X: return "x" + std::to_string(r.member + 1);
    case PointRole::Y: return "y" + std::to_string(r.member + 1);
  }
  return "?";
}

}  // namespace qee
