#include "qee/instance.hpp"

#include <cmath>

#include "qee/csv.hpp"

namespace qee {

namespace {

constexpr double kAsymmetryTol = 1e-9;  // relative, against the larger entry

void require_finite_nonnegative(const MatrixXd& m, const std::string& name) {
  if (!m.allFinite()) throw ValidationError(name + " has non-finite entries");
  if (m.minCoeff() < 0.0) throw ValidationError(name + " has negative entries");
}

// Distance matrices must be square, symmetric within tolerance, and zero on
// the diagonal. Returns the canonicalized copy.
MatrixXd canonicalize_distance(MatrixXd d, const std::string& name) {
  if (d.rows() != d.cols())
    throw ValidationError(name + " must be square, got " + std::to_string(d.rows()) + "x" +
                          std::to_string(d.cols()));
  require_finite_nonnegative(d, name);
  const double scale = d.cwiseAbs().maxCoeff();
  for (Index i = 0; i < d.rows(); ++i) {
    if (std::abs(d(i, i)) > kAsymmetryTol * std::max(1.0, scale))
      throw ValidationError(name + " has a nonzero diagonal at entry " + std::to_string(i + 1));
    d(i, i) = 0.0;
    for (Index j = i + 1; j < d.cols(); ++j) {
      const double a = d(i, j);
      const double b = d(j, i);
      if (std::abs(a - b) > kAsymmetryTol * std::max(std::abs(a), std::abs(b)))
        throw ValidationError(name + " is asymmetric beyond tolerance at (" +
                              std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      const double avg = (a + b) / 2.0;
      d(i, j) = avg;
      d(j, i) = avg;
    }
  }
  return d;
}

void require_some_positive(const MatrixXd& m, const std::string& name) {
  if (m.maxCoeff() <= 0.0)
    throw ValidationError(name + " must contain at least one strictly positive entry");
}

}  // namespace

ProblemInstance make_instance(MatrixXd dX, MatrixXd dY, MatrixXd F,
                              std::optional<VectorXd> uX, std::optional<VectorXd> uY,
                              bool include_origin) {
  ProblemInstance inst;
  inst.dX = canonicalize_distance(std::move(dX), "dX");
  inst.dY = canonicalize_distance(std::move(dY), "dY");
  inst.F = std::move(F);
  inst.uX = std::move(uX);
  inst.uY = std::move(uY);
  inst.include_origin = include_origin;

  const Index m = inst.M();
  const Index n = inst.N();
  if (inst.F.rows() != m || inst.F.cols() != n)
    throw ValidationError("F must be " + std::to_string(m) + "x" + std::to_string(n) +
                          ", got " + std::to_string(inst.F.rows()) + "x" +
                          std::to_string(inst.F.cols()));
  require_finite_nonnegative(inst.F, "F");

  require_some_positive(inst.dX, "dX");
  require_some_positive(inst.dY, "dY");
  if (inst.F.maxCoeff() <= 0.0)
    throw ValidationError("cross proximity identically zero");

  if (include_origin && (!inst.uX || !inst.uY))
    throw ValidationError("include_origin requires both uX and uY");
  if (inst.uX) {
    if (inst.uX->size() != m)
      throw ValidationError("uX must have length " + std::to_string(m));
    require_finite_nonnegative(*inst.uX, "uX");
    require_some_positive(*inst.uX, "uX");
  }
  if (inst.uY) {
    if (inst.uY->size() != n)
      throw ValidationError("uY must have length " + std::to_string(n));
    require_finite_nonnegative(*inst.uY, "uY");
    require_some_positive(*inst.uY, "uY");
  }
  return inst;
}

ProblemInstance load_instance(const InstancePaths& paths, bool include_origin) {
  std::optional<VectorXd> uX;
  std::optional<VectorXd> uY;
  if (paths.uX) uX = read_csv_vector(*paths.uX);
  if (paths.uY) uY = read_csv_vector(*paths.uY);
  return make_instance(read_csv_matrix(paths.dX), read_csv_matrix(paths.dY),
                       read_csv_matrix(paths.F), std::move(uX), std::move(uY), include_origin);
}

void save_instance(const ProblemInstance& inst, const InstancePaths& paths) {
  write_csv_matrix(paths.dX, inst.dX);
  write_csv_matrix(paths.dY, inst.dY);
  write_csv_matrix(paths.F, inst.F);
  if (inst.uX && paths.uX) write_csv_vector(*paths.uX, *inst.uX);
  if (inst.uY && paths.uY) write_csv_vector(*paths.uY, *inst.uY);
}

}  // namespace qee
