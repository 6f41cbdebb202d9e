#include "qee/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qee/spectral.hpp"

namespace qee {

namespace {

constexpr double kVerifyRelTol = 1e-6;

std::string block_name(const RoleRef& a, const RoleRef& b) {
  if (a.role == PointRole::Z || b.role == PointRole::Z) return "z";
  if (a.role == PointRole::Origin || b.role == PointRole::Origin) return "origin";
  if (a.role == b.role) return a.role == PointRole::X ? "X-X" : "Y-Y";
  return "X-Y";
}

// Pairs sorted by target value must come out in non-decreasing embedded order,
// except inside tie groups: every embedded value must dominate the embedded
// maximum of all strictly smaller targets.
bool ranks_preserved(std::vector<std::pair<double, double>> pairs /* target, embedded */) {
  if (pairs.size() < 2) return true;
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  double scale = 0.0;
  for (const auto& p : pairs) scale = std::max(scale, std::abs(p.second));
  const double tol = 1e-9 * std::max(1.0, scale);
  const double tie_tol = 1e-12 * std::max(1.0, pairs.back().first);

  double smaller_max = -std::numeric_limits<double>::infinity();
  double group_target = pairs.front().first;
  double group_max = pairs.front().second;
  for (size_t k = 1; k < pairs.size(); ++k) {
    if (pairs[k].first - group_target > tie_tol) {
      smaller_max = std::max(smaller_max, group_max);
      group_target = pairs[k].first;
      group_max = pairs[k].second;
    } else {
      group_max = std::max(group_max, pairs[k].second);
    }
    if (pairs[k].second < smaller_max - tol) return false;
  }
  return true;
}

}  // namespace

VerificationReport verify_pairs(const MatrixXd& coords, const MatrixXd& target,
                                const std::vector<RoleRef>& roles) {
  const Index n = coords.rows();
  if (target.rows() != n || target.cols() != n)
    throw ValidationError("target size does not match coordinate rows");
  if (static_cast<Index>(roles.size()) != n)
    throw ValidationError("role list does not match coordinate rows");

  VerificationReport report;
  std::map<std::string, BlockResidual> blocks;
  std::vector<std::pair<double, double>> x_pairs;
  std::vector<std::pair<double, double>> y_pairs;

  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double dist = (coords.row(i) - coords.row(j)).norm();
      const double want = target(i, j);
      const double abs_err = std::abs(dist - want);
      const double rel_err = abs_err / std::max(want, 1e-300);
      if (rel_err > report.max_rel_error) {
        report.worst_row1 = i;
        report.worst_row2 = j;
      }
      report.max_abs_error = std::max(report.max_abs_error, abs_err);
      report.max_rel_error = std::max(report.max_rel_error, rel_err);

      const std::string name = block_name(roles[static_cast<size_t>(i)],
                                          roles[static_cast<size_t>(j)]);
      auto& block = blocks[name];
      block.block = name;
      block.max_abs = std::max(block.max_abs, abs_err);
      block.max_rel = std::max(block.max_rel, rel_err);
      ++block.pairs;

      const auto& ri = roles[static_cast<size_t>(i)];
      const auto& rj = roles[static_cast<size_t>(j)];
      if (ri.role == PointRole::X && rj.role == PointRole::X) x_pairs.emplace_back(want, dist);
      if (ri.role == PointRole::Y && rj.role == PointRole::Y) y_pairs.emplace_back(want, dist);
    }
  }

  for (auto& [name, block] : blocks) report.blocks.push_back(block);
  report.rank_preserved_x = ranks_preserved(std::move(x_pairs));
  report.rank_preserved_y = ranks_preserved(std::move(y_pairs));
  report.passed =
      report.max_rel_error <= kVerifyRelTol && report.rank_preserved_x && report.rank_preserved_y;
  return report;
}

VerificationReport verify_embedding(const Embedding& emb, const AugmentedIndexing& idx) {
  std::vector<RoleRef> roles;
  roles.reserve(static_cast<size_t>(idx.Q()));
  for (Index q = 0; q < idx.Q(); ++q) roles.push_back(idx.role_of(q));
  return verify_pairs(emb.coords, emb.target, roles);
}

Embedding embed_joint(const BaseCosineContext& ctx, const AugmentedIndexing& idx,
                      const EmbeddingConstants& constants, double tol, bool truncate_rank) {
  Embedding emb;
  emb.epsilon = constants.epsilon;
  emb.labels = ctx.selection.labels;
  emb.target = build_h_tilde(ctx, idx, constants.epsilon, constants.c1, constants.c2);

  const CosineLawMatrix<double> mz = build_cosine_law(emb.target, idx.z_slot());
  const MatrixXd factor = psd_sqrt_factor(mz.entries, tol);

  const auto summary = eigendecompose(mz.entries);
  const double scale = std::max(1.0, std::abs(summary.eigenvalues(0)));
  Index rank = 0;
  while (rank < summary.eigenvalues.size() && summary.eigenvalues(rank) > tol * scale) ++rank;
  emb.effective_rank = rank;

  emb.coords = truncate_rank ? MatrixXd(factor.leftCols(rank)) : factor;

  const auto report = verify_embedding(emb, idx);
  emb.max_abs_error = report.max_abs_error;
  emb.max_rel_error = report.max_rel_error;
  return emb;
}

}  // namespace qee
