#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qee/config.hpp"
#include "qee/csv.hpp"
#include "qee/embed.hpp"
#include "qee/instance.hpp"
#include "qee/pipeline.hpp"
#include "qee/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSearchFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

struct CommonOptions {
  std::string config_path;
  std::string dx_path, dy_path, f_path, ux_path, uy_path;
  bool no_origin = false;
  double tol = -1.0;  // negative: take the config value
};

void add_common_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file (flags override its fields)");
  cmd->add_option("--dx", o.dx_path, "CSV distance matrix of set X");
  cmd->add_option("--dy", o.dy_path, "CSV distance matrix of set Y");
  cmd->add_option("--f", o.f_path, "CSV cross proximity matrix (M x N)");
  cmd->add_option("--ux", o.ux_path, "CSV origin proximities of X (single column)");
  cmd->add_option("--uy", o.uy_path, "CSV origin proximities of Y (single column)");
  cmd->add_flag("--no-origin", o.no_origin, "exclude the theoretical origin point");
  cmd->add_option("--tol", o.tol, "relative PSD tolerance (default 1e-9)");
}

qee::JobConfig resolve_config(const CommonOptions& o) {
  qee::JobConfig cfg;
  if (!o.config_path.empty()) cfg = qee::load_job_config(o.config_path);
  if (!o.dx_path.empty()) cfg.paths.dX = o.dx_path;
  if (!o.dy_path.empty()) cfg.paths.dY = o.dy_path;
  if (!o.f_path.empty()) cfg.paths.F = o.f_path;
  if (!o.ux_path.empty()) cfg.paths.uX = o.ux_path;
  if (!o.uy_path.empty()) cfg.paths.uY = o.uy_path;
  if (o.no_origin) cfg.include_origin = false;
  if (o.tol >= 0.0) cfg.psd_tolerance = o.tol;
  if (cfg.paths.dX.empty() || cfg.paths.dY.empty() || cfg.paths.F.empty())
    throw qee::ValidationError("--dx, --dy and --f are required (via flags or config)");
  return cfg;
}

int run_check(const CommonOptions& o) {
  const qee::JobConfig cfg = resolve_config(o);
  const qee::ProblemInstance inst = qee::load_instance(cfg.paths, cfg.origin_enabled());

  struct SetRef {
    const char* name;
    const qee::MatrixXd* d;
  };
  bool any = false;
  for (const SetRef set : {SetRef{"X", &inst.dX}, SetRef{"Y", &inst.dY}}) {
    const std::string name = set.name;
    const qee::MatrixXd& d = *set.d;
    int psd_count = 0;
    double min_eig = 0.0;
    const qee::Index n = d.rows();
    for (qee::Index a = 0; a < n; ++a) {
      const auto verdict = qee::is_psd(qee::build_cosine_law(d, a).entries, cfg.psd_tolerance);
      if (verdict.psd) ++psd_count;
      if (a == 0) min_eig = verdict.summary.min_eigenvalue;
    }
    std::string state;
    if (psd_count == n) state = "EUCLIDEAN (all references agree)";
    else if (psd_count == 0) state = "NOT EUCLIDEAN (all references agree)";
    else
      state = "INCONCLUSIVE (references disagree: " + std::to_string(psd_count) + "/" +
              std::to_string(n) + " PSD)";
    std::cout << name << ": " << state << "  [min eigenvalue at reference 1: " << min_eig
              << "]\n";
    if (psd_count == n) any = true;
  }
  if (!any) {
    std::cout << "neither set is Euclidean-embeddable\n";
    return kExitSearchFailed;
  }
  return kExitOk;
}

int run_embed(const CommonOptions& o, const std::optional<double>& c1,
              const std::optional<double>& c2, const std::optional<double>& c3,
              int max_doublings_flag, bool truncate_rank, const std::string& out_path,
              const std::string& report_path) {
  qee::JobConfig cfg = resolve_config(o);
  if (c1) cfg.c1 = c1;
  if (c2) cfg.c2 = c2;
  if (c3) cfg.c3 = c3;
  if (max_doublings_flag >= 0) cfg.max_doublings = max_doublings_flag;

  const auto start = std::chrono::steady_clock::now();
  const qee::ProblemInstance inst = qee::load_instance(cfg.paths, cfg.origin_enabled());
  const auto ctx = qee::compute_zeta_f(
      qee::select_embeddable_set(inst, cfg.psd_tolerance));
  const auto idx = qee::build_indexing(ctx.instance());

  const bool overridden = cfg.c1 && cfg.c2 && cfg.c3;
  qee::ConstantSearchResult search;
  if (overridden) {
    search = qee::validate_constants(ctx, idx, *cfg.c1, *cfg.c2, *cfg.c3, cfg.psd_tolerance);
  } else {
    search = qee::find_constants(ctx, idx, cfg.psd_tolerance, cfg.max_doublings,
                                 cfg.c1.value_or(1.0), cfg.c2.value_or(2.0),
                                 cfg.c3.value_or(5.0));
  }

  const auto emb =
      qee::embed_joint(ctx, idx, search.constants, cfg.psd_tolerance, truncate_rank);
  const auto verification = qee::verify_embedding(emb, idx);
  const auto stop = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(stop - start).count();

  const qee::RunReport report =
      qee::assemble_report(inst, ctx, search, emb, verification, overridden, ms);
  if (!out_path.empty()) qee::write_labeled_csv(out_path, emb.labels, emb.coords);
  if (!report_path.empty()) qee::write_report(report_path, report);

  std::cout << "embeddable set: " << report.embeddable_set
            << (report.relabeled ? " (labels swapped)" : "") << "; zeta_f = " << report.zeta_f
            << "\n";
  std::cout << "constants: c1=" << report.c1 << " c2=" << report.c2 << " c3=" << report.c3
            << " epsilon=" << report.epsilon << " (" << report.doublings << " doublings, "
            << report.certified_by << ")\n";
  std::cout << "effective rank: " << report.effective_rank << " of " << idx.Q() << "\n";
  std::cout << "verification: " << (verification.passed ? "PASSED" : "FAILED")
            << " (max relative error " << verification.max_rel_error << ")\n";
  if (!out_path.empty()) std::cout << "coordinates written to " << out_path << "\n";
  if (!report_path.empty()) std::cout << "report written to " << report_path << "\n";
  return verification.passed ? kExitOk : kExitInternal;
}

int run_verify(const CommonOptions& o, const std::string& coords_path,
               const std::string& report_path) {
  const qee::JobConfig cfg = resolve_config(o);
  const qee::ProblemInstance inst = qee::load_instance(cfg.paths, cfg.origin_enabled());
  const qee::RunReport report = qee::read_report(report_path);

  if (report.points_x != inst.M() || report.points_y != inst.N() ||
      report.include_origin != inst.include_origin)
    throw qee::ValidationError("report does not match the instance shape");

  const auto ctx = qee::compute_zeta_f(
      qee::select_embeddable_set(inst, cfg.psd_tolerance));
  if ((ctx.selection.swapped ? "Y" : "X") != report.embeddable_set)
    throw qee::ValidationError("report embeddable set does not match the instance");
  if (std::abs(ctx.zeta_f - report.zeta_f) > 1e-9 * std::max(1.0, ctx.zeta_f))
    throw qee::ValidationError("report zeta_f does not match the instance");

  const auto idx = qee::build_indexing(ctx.instance());
  const qee::MatrixXd target =
      qee::build_h_tilde(ctx, idx, report.epsilon, report.c1, report.c2);

  const qee::LabeledMatrix coords = qee::read_labeled_csv(coords_path);
  const auto& expected = ctx.selection.labels;

  std::vector<qee::RoleRef> roles;
  qee::MatrixXd use_target;
  const qee::Index rows = coords.values.rows();
  if (rows == idx.Q() &&
      std::equal(expected.begin(), expected.end(), coords.labels.begin())) {
    for (qee::Index q = 0; q < idx.Q(); ++q) roles.push_back(idx.role_of(q));
    use_target = target;
  } else if (rows == idx.S() &&
             std::equal(expected.begin() + 1, expected.end(), coords.labels.begin())) {
    // W-only coordinates (no z row), e.g. a third-party embedding of W
    for (qee::Index s = 0; s < idx.S(); ++s) roles.push_back(idx.w_role_of(s));
    use_target = target.bottomRightCorner(idx.S(), idx.S());
  } else {
    throw qee::ValidationError("coordinate rows/labels do not match the instance layout");
  }

  const auto verification = qee::verify_pairs(coords.values, use_target, roles);
  std::cout << "verification: " << (verification.passed ? "PASSED" : "FAILED")
            << " (max relative error " << verification.max_rel_error << ")\n";
  if (!verification.passed) {
    std::cout << "worst pair: " << coords.labels[static_cast<size_t>(verification.worst_row1)]
              << " <-> " << coords.labels[static_cast<size_t>(verification.worst_row2)] << "\n";
  }
  for (const auto& b : verification.blocks)
    std::cout << "  block " << b.block << ": max_abs " << b.max_abs << ", max_rel " << b.max_rel
              << " over " << b.pairs << " pairs\n";
  return verification.passed ? kExitOk : kExitSearchFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint Euclidean embedding of two disjoint point sets"};
  app.require_subcommand(1);

  CommonOptions check_opts;
  auto* check = app.add_subcommand("check", "Schoenberg test of both sets, all references");
  add_common_flags(check, check_opts);

  CommonOptions embed_opts;
  std::optional<double> c1, c2, c3;
  int max_doublings = -1;
  bool truncate_rank = false;
  std::string out_path = "coords.csv";
  std::string report_path = "report.json";
  auto* embed = app.add_subcommand("embed", "construct the joint embedding");
  add_common_flags(embed, embed_opts);
  embed->add_option("--c1", c1, "constant c1 (with --c2/--c3: validate instead of search)");
  embed->add_option("--c2", c2, "constant c2");
  embed->add_option("--c3", c3, "constant c3");
  embed->add_option("--max-doublings", max_doublings, "doubling budget (default 64)");
  embed->add_flag("--truncate-rank", truncate_rank, "drop zero-eigenvalue coordinate columns");
  embed->add_option("--out", out_path, "output coordinates CSV (default coords.csv)");
  embed->add_option("--report", report_path, "output report JSON (default report.json)");

  CommonOptions verify_opts;
  std::string coords_path;
  std::string verify_report_path;
  auto* verify = app.add_subcommand("verify", "audit a coordinate file against an instance");
  add_common_flags(verify, verify_opts);
  verify->add_option("--coords", coords_path, "coordinates CSV to audit")->required();
  verify->add_option("--report", verify_report_path, "report JSON of the run that produced them")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (check->parsed()) return run_check(check_opts);
    if (embed->parsed())
      return run_embed(embed_opts, c1, c2, c3, max_doublings, truncate_rank, out_path,
                       report_path);
    return run_verify(verify_opts, coords_path, verify_report_path);
  } catch (const qee::SearchExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSearchFailed;
  } catch (const qee::NotPsdError& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const qee::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
