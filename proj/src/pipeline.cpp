#include "qee/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace qee {

namespace {

ProblemInstance swap_sets(const ProblemInstance& inst) {
  ProblemInstance out;
  out.dX = inst.dY;
  out.dY = inst.dX;
  out.F = inst.F.transpose();
  out.uX = inst.uY;
  out.uY = inst.uX;
  out.include_origin = inst.include_origin;
  return out;
}

// Swaps members 0 and r of X so the chosen reference becomes x1.
void move_reference_to_front(ProblemInstance& inst, Index r) {
  if (r == 0) return;
  inst.dX.row(0).swap(inst.dX.row(r));
  inst.dX.col(0).swap(inst.dX.col(r));
  inst.F.row(0).swap(inst.F.row(r));
  if (inst.uX) std::swap((*inst.uX)(0), (*inst.uX)(r));
}

std::vector<std::string> make_labels(const AugmentedIndexing& idx, bool swapped, Index reference) {
  const std::string x_name = swapped ? "y" : "x";
  const std::string y_name = swapped ? "x" : "y";
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(idx.Q()));
  labels.push_back("z");
  for (Index m = 0; m < idx.M(); ++m) {
    Index original = m;
    if (m == 0) original = reference;
    else if (m == reference) original = 0;
    labels.push_back(x_name + std::to_string(original + 1));
  }
  if (idx.has_origin()) labels.push_back("o");
  for (Index n = 0; n < idx.N(); ++n) labels.push_back(y_name + std::to_string(n + 1));
  return labels;
}

double raw_proximity(const ProblemInstance& inst, const RoleRef& a, const RoleRef& b) {
  if (a.role == PointRole::X && b.role == PointRole::X) return inst.dX(a.member, b.member);
  if (a.role == PointRole::Y && b.role == PointRole::Y) return inst.dY(a.member, b.member);
  if (a.role == PointRole::X && b.role == PointRole::Y) return inst.F(a.member, b.member);
  if (a.role == PointRole::Y && b.role == PointRole::X) return inst.F(b.member, a.member);
  if (a.role == PointRole::Origin)
    return b.role == PointRole::X ? (*inst.uX)(b.member) : (*inst.uY)(b.member);
  if (b.role == PointRole::Origin)
    return a.role == PointRole::X ? (*inst.uX)(a.member) : (*inst.uY)(a.member);
  throw Error("unreachable role pair");
}

SummandVerdict summand_verdict(const std::string& name, const MatrixXd& a, double tol) {
  SummandVerdict v;
  v.name = name;
  const auto verdict = is_psd(a, tol);
  v.psd = verdict.psd;
  v.min_eigenvalue = verdict.summary.min_eigenvalue;
  v.worst_disc_low = 0.0;
  v.worst_disc_row = 0;
  for (const auto& disc : gershgorin_discs(a)) {
    const double low = disc.center - disc.radius;
    if (disc.row == 0 || low < v.worst_disc_low) {
      v.worst_disc_low = low;
      v.worst_disc_row = disc.row;
    }
  }
  return v;
}

EmbeddingConstants make_constants(double c1, double c2, double c3, double zeta) {
  EmbeddingConstants k;
  k.c1 = c1;
  k.c2 = c2;
  k.c3 = c3;
  k.zeta_f = zeta;
  k.epsilon = c3 * zeta;
  return k;
}

}  // namespace

SetSelection select_embeddable_set(const ProblemInstance& inst, double tol, Index reference) {
  SetSelection sel;
  const auto x_check = is_psd(build_cosine_law(inst.dX, 0).entries, tol);
  if (x_check.psd) {
    sel.instance = inst;
    sel.swapped = false;
    sel.x_summary = x_check.summary;
  } else {
    const auto y_check = is_psd(build_cosine_law(inst.dY, 0).entries, tol);
    if (!y_check.psd) {
      std::ostringstream msg;
      msg << "neither set passes the Schoenberg test (min eigenvalues: X "
          << x_check.summary.min_eigenvalue << ", Y " << y_check.summary.min_eigenvalue << ")";
      throw NeitherSetEuclideanError(msg.str());
    }
    sel.instance = swap_sets(inst);
    sel.swapped = true;
    sel.x_summary = y_check.summary;
    sel.rejected_summary = x_check.summary;
  }

  if (reference < 0 || reference >= sel.instance.M())
    throw ValidationError("reference index out of range for the embeddable set");
  sel.reference_original = reference;
  move_reference_to_front(sel.instance, reference);
  sel.labels = make_labels(build_indexing(sel.instance), sel.swapped, reference);
  return sel;
}

MatrixXd build_f_alpha(const ProblemInstance& inst, const AugmentedIndexing& idx, double alpha) {
  if (alpha < 0.0) throw ValidationError("alpha must be nonnegative");
  const Index s = idx.S();
  MatrixXd f = MatrixXd::Zero(s, s);
  for (Index i = 0; i < s; ++i) {
    const RoleRef ri = idx.w_role_of(i);
    for (Index j = i + 1; j < s; ++j) {
      const double raw = raw_proximity(inst, ri, idx.w_role_of(j));
      const double value = std::sqrt(raw * raw + alpha);
      f(i, j) = value;
      f(j, i) = value;
    }
  }
  return f;
}

BaseCosineContext compute_zeta_f(SetSelection selection) {
  BaseCosineContext ctx;
  ctx.selection = std::move(selection);
  const AugmentedIndexing idx = build_indexing(ctx.instance());

  const MatrixXd f0 = build_f_alpha(ctx.instance(), idx, 0.0);
  ctx.M0 = build_cosine_law(f0, idx.w_x(0));

  double zeta = 0.0;
  for (Index m = 0; m < idx.M(); ++m) {
    double row = 0.0;
    for (Index n = 0; n < idx.N(); ++n) row += std::abs(ctx.M0.entries(idx.w_x(m), idx.w_y(n)));
    zeta = std::max(zeta, row);
  }
  for (Index n = 0; n < idx.N(); ++n) {
    double row = 0.0;
    for (Index m = 0; m < idx.M(); ++m) row += std::abs(ctx.M0.entries(idx.w_y(n), idx.w_x(m)));
    zeta = std::max(zeta, row);
  }

  if (zeta <= 1e-12) {
    std::ostringstream msg;
    msg << "zeta_f = " << zeta
        << " is not positive; the cross blocks of the base cosine-law matrix carry no mass";
    throw ZetaNonpositiveError(msg.str(), zeta);
  }
  ctx.zeta_f = zeta;
  return ctx;
}

VectorXd build_g_tilde(const BaseCosineContext& ctx, double c1, double c2) {
  if (c1 <= 0.0 || c2 <= 0.0) throw ValidationError("c1 and c2 must be positive");
  const ProblemInstance& inst = ctx.instance();
  const AugmentedIndexing idx = build_indexing(inst);
  const double zeta = ctx.zeta_f;

  VectorXd g(idx.S());
  g(idx.w_x(0)) = std::sqrt(c1 * zeta);
  for (Index m = 1; m < idx.M(); ++m) {
    const double d = inst.dX(m, 0);
    g(idx.w_x(m)) = std::sqrt(d * d + c2 * zeta);
  }
  if (idx.has_origin()) g(idx.w_origin()) = std::sqrt(c2 * zeta);
  for (Index n = 0; n < idx.N(); ++n) {
    const double f = inst.F(0, n);
    g(idx.w_y(n)) = std::sqrt(f * f + c2 * zeta);
  }
  return g;
}

MatrixXd build_h_tilde(const BaseCosineContext& ctx, const AugmentedIndexing& idx, double alpha,
                       double c1, double c2) {
  const Index q = idx.Q();
  MatrixXd h = MatrixXd::Zero(q, q);
  h.bottomRightCorner(idx.S(), idx.S()) = build_f_alpha(ctx.instance(), idx, alpha);
  const VectorXd g = build_g_tilde(ctx, c1, c2);
  h.row(0).tail(idx.S()) = g.transpose();
  h.col(0).tail(idx.S()) = g;
  return h;
}

SplitDecomposition build_split(const BaseCosineContext& ctx, const AugmentedIndexing& idx,
                               double alpha, double c1, double c2) {
  const ProblemInstance& inst = ctx.instance();
  const double zeta = ctx.zeta_f;
  const Index q = idx.Q();
  const Index m_count = idx.M();
  const Index n_count = idx.N();

  SplitDecomposition split;
  split.MX = MatrixXd::Zero(q, q);
  split.G = MatrixXd::Zero(q, q);
  split.CX = MatrixXd::Zero(q, q);
  split.CY = MatrixXd::Zero(q, q);

  // Padded cosine-law matrix of (X, dX) with reference x1.
  const CosineLawMatrix<double> mx = build_cosine_law(inst.dX, 0);
  for (Index a = 0; a < m_count; ++a)
    for (Index b = 0; b < m_count; ++b) split.MX(idx.x_slot(a), idx.x_slot(b)) = mx.entries(a, b);

  // G: half the c2-mass on the X and Y diagonals plus the cross block B.
  for (Index a = 0; a < m_count; ++a) split.G(idx.x_slot(a), idx.x_slot(a)) = c2 * zeta / 2.0;
  for (Index b = 0; b < n_count; ++b) split.G(idx.y_slot(b), idx.y_slot(b)) = c2 * zeta / 2.0;
  for (Index a = 0; a < m_count; ++a) {
    for (Index b = 0; b < n_count; ++b) {
      double two_b;
      if (a == 0) {
        two_b = c1 * zeta + c2 * zeta - alpha;
      } else {
        const double d = inst.dX(a, 0);
        const double f1 = inst.F(0, b);
        const double fab = inst.F(a, b);
        two_b = 2.0 * c2 * zeta - alpha + d * d + f1 * f1 - fab * fab;
      }
      split.G(idx.x_slot(a), idx.y_slot(b)) = two_b / 2.0;
      split.G(idx.y_slot(b), idx.x_slot(a)) = two_b / 2.0;
    }
  }

  // CX: A_X minus the diagonal mass already granted to G, plus the o_X row.
  for (Index a = 0; a < m_count; ++a) {
    for (Index b = a; b < m_count; ++b) {
      double ax;
      if (a == 0 && b == 0) ax = c1 * zeta;
      else if (a == 0 || b == 0) ax = (c1 * zeta + c2 * zeta - alpha) / 2.0;
      else if (a != b) ax = (2.0 * c2 * zeta - alpha) / 2.0;
      else ax = c2 * zeta;
      split.CX(idx.x_slot(a), idx.x_slot(b)) = ax;
      split.CX(idx.x_slot(b), idx.x_slot(a)) = ax;
    }
    split.CX(idx.x_slot(a), idx.x_slot(a)) -= c2 * zeta / 2.0;
  }
  if (idx.has_origin()) {
    const VectorXd& ux = *inst.uX;
    for (Index a = 0; a < m_count; ++a) {
      double two_c;
      if (a == 0) {
        two_c = c1 * zeta + c2 * zeta - alpha - ux(0) * ux(0);
      } else {
        const double d = inst.dX(a, 0);
        two_c = 2.0 * c2 * zeta - alpha + d * d - ux(a) * ux(a);
      }
      split.CX(idx.origin_slot(), idx.x_slot(a)) = two_c / 2.0;
      split.CX(idx.x_slot(a), idx.origin_slot()) = two_c / 2.0;
    }
    split.CX(idx.origin_slot(), idx.origin_slot()) = c2 * zeta / 2.0;
  }

  // CY: A_Y minus the diagonal mass granted to G, plus the o_Y row.
  for (Index a = 0; a < n_count; ++a) {
    for (Index b = a; b < n_count; ++b) {
      double ay;
      const double fa = inst.F(0, a);
      if (a == b) {
        ay = c2 * zeta + fa * fa;
      } else {
        const double fb = inst.F(0, b);
        const double dy = inst.dY(a, b);
        ay = (2.0 * c2 * zeta - alpha + fa * fa + fb * fb - dy * dy) / 2.0;
      }
      split.CY(idx.y_slot(a), idx.y_slot(b)) = ay;
      split.CY(idx.y_slot(b), idx.y_slot(a)) = ay;
    }
    split.CY(idx.y_slot(a), idx.y_slot(a)) -= c2 * zeta / 2.0;
  }
  if (idx.has_origin()) {
    const VectorXd& uy = *inst.uY;
    for (Index b = 0; b < n_count; ++b) {
      const double f1 = inst.F(0, b);
      const double two_c = 2.0 * c2 * zeta - alpha + f1 * f1 - uy(b) * uy(b);
      split.CY(idx.origin_slot(), idx.y_slot(b)) = two_c / 2.0;
      split.CY(idx.y_slot(b), idx.origin_slot()) = two_c / 2.0;
    }
    split.CY(idx.origin_slot(), idx.origin_slot()) = c2 * zeta / 2.0;
  }

  return split;
}

ConditionReport check_sufficient_condition(const SplitDecomposition& split, bool base_mx_psd,
                                           double tol) {
  ConditionReport report;
  report.summands[0] = summand_verdict("MX", split.MX, tol);
  report.summands[1] = summand_verdict("G", split.G, tol);
  report.summands[2] = summand_verdict("CX", split.CX, tol);
  report.summands[3] = summand_verdict("CY", split.CY, tol);
  const bool mx_ok = base_mx_psd || report.summands[0].psd;
  report.all_psd =
      mx_ok && report.summands[1].psd && report.summands[2].psd && report.summands[3].psd;
  return report;
}

namespace {

ConstantSearchResult evaluate_constants(const BaseCosineContext& ctx, const AugmentedIndexing& idx,
                                        double c1, double c2, double c3, double tol) {
  ConstantSearchResult result;
  result.constants = make_constants(c1, c2, c3, ctx.zeta_f);
  const double eps = result.constants.epsilon;
  result.split_report =
      check_sufficient_condition(build_split(ctx, idx, eps, c1, c2), true, tol);
  const auto mz = is_psd(build_cosine_law(build_h_tilde(ctx, idx, eps, c1, c2), 0).entries, tol);
  result.mz_psd = mz.psd;
  result.mz_min_eigenvalue = mz.summary.min_eigenvalue;
  result.certified_by_split = result.split_report.all_psd;
  return result;
}

std::string describe_rejection(const ConstantSearchResult& r) {
  std::ostringstream msg;
  msg << "c1=" << r.constants.c1 << " c2=" << r.constants.c2 << " c3=" << r.constants.c3
      << " (epsilon=" << r.constants.epsilon << "): summand min eigenvalues";
  for (const auto& s : r.split_report.summands)
    msg << " " << s.name << "=" << s.min_eigenvalue << (s.psd ? " (psd)" : " (not psd)");
  msg << "; assembled matrix min eigenvalue " << r.mz_min_eigenvalue;
  return msg.str();
}

}  // namespace

ConstantSearchResult find_constants(const BaseCosineContext& ctx, const AugmentedIndexing& idx,
                                    double tol, int max_doublings, double seed_c1, double seed_c2,
                                    double seed_c3) {
  if (seed_c1 <= 0.0 || seed_c2 <= 0.0 || seed_c3 <= 0.0)
    throw ValidationError("constants must be positive");
  if (max_doublings < 0) throw ValidationError("max_doublings must be nonnegative");

  double c1 = seed_c1;
  double c2 = seed_c2;
  double c3 = seed_c3;
  for (int doublings = 0;; ++doublings) {
    ConstantSearchResult result = evaluate_constants(ctx, idx, c1, c2, c3, tol);
    if (result.split_report.all_psd || result.mz_psd) {
      result.doublings = doublings;
      return result;
    }
    if (doublings == max_doublings)
      throw SearchExhaustedError("constant search exhausted after " +
                                 std::to_string(max_doublings) + " doublings; last " +
                                 describe_rejection(result));
    c1 = c2;
    c2 = 2.0 * c1;
    c3 = 2.0 + c1 + c2;
  }
}

ConstantSearchResult validate_constants(const BaseCosineContext& ctx,
                                        const AugmentedIndexing& idx, double c1, double c2,
                                        double c3, double tol) {
  if (c1 <= 0.0 || c2 <= 0.0 || c3 <= 0.0)
    throw ValidationError("constants must be positive");
  ConstantSearchResult result = evaluate_constants(ctx, idx, c1, c2, c3, tol);
  if (!result.split_report.all_psd && !result.mz_psd)
    throw SearchExhaustedError("supplied constants rejected: " + describe_rejection(result));
  result.doublings = 0;
  return result;
}

}  // namespace qee
