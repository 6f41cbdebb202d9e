#pragma once

#include <optional>
#include <string>

#include "qee/indexing.hpp"
#include "qee/types.hpp"

namespace qee {

// A joint-embedding problem: two disjoint point sets known through intra-set
// distances, optional proximities to an origin, and a cross-set proximity
// matrix. Immutable after construction; validated and canonicalized (exactly
// symmetric, exactly zero diagonal) by make_instance.
struct ProblemInstance {
  MatrixXd dX;                  // M x M intra-set distances of X
  MatrixXd dY;                  // N x N intra-set distances of Y
  MatrixXd F;                   // M x N cross proximities f(x_m, y_n)
  std::optional<VectorXd> uX;   // length M proximities to o_X
  std::optional<VectorXd> uY;   // length N proximities to o_Y
  bool include_origin = false;

  Index M() const { return dX.rows(); }
  Index N() const { return dY.rows(); }
};

struct InstancePaths {
  std::string dX;
  std::string dY;
  std::string F;
  std::optional<std::string> uX;
  std::optional<std::string> uY;
};

// Validates and canonicalizes raw data into an instance. Asymmetry up to a
// relative 1e-9 (against the larger entry) is averaged away; beyond that it is
// a hard error. Throws ValidationError on any contract violation.
ProblemInstance make_instance(MatrixXd dX, MatrixXd dY, MatrixXd F,
                              std::optional<VectorXd> uX, std::optional<VectorXd> uY,
                              bool include_origin);

ProblemInstance load_instance(const InstancePaths& paths, bool include_origin);
void save_instance(const ProblemInstance& inst, const InstancePaths& paths);

inline AugmentedIndexing build_indexing(const ProblemInstance& inst) {
  return AugmentedIndexing(inst.M(), inst.N(), inst.include_origin);
}

}  // namespace qee
