#include "qee/report.hpp"

#include <fstream>

#include <json.hpp>

namespace qee {

using nlohmann::json;

RunReport assemble_report(const ProblemInstance& original, const BaseCosineContext& ctx,
                          const ConstantSearchResult& search, const Embedding& emb,
                          const VerificationReport& verification, bool constants_overridden,
                          double wall_clock_ms) {
  RunReport r;
  r.points_x = original.M();
  r.points_y = original.N();
  r.include_origin = original.include_origin;
  r.relabeled = ctx.selection.swapped;
  r.embeddable_set = ctx.selection.swapped ? "Y" : "X";
  r.zeta_f = ctx.zeta_f;
  r.c1 = search.constants.c1;
  r.c2 = search.constants.c2;
  r.c3 = search.constants.c3;
  r.epsilon = search.constants.epsilon;
  r.doublings = search.doublings;
  if (constants_overridden)
    r.certified_by = "override";
  else
    r.certified_by = search.certified_by_split ? "split-summands" : "schoenberg-direct";
  for (const auto& s : search.split_report.summands)
    r.summands.push_back({s.name, s.psd, s.min_eigenvalue, s.worst_disc_low});
  r.mz_psd = search.mz_psd;
  r.mz_min_eigenvalue = search.mz_min_eigenvalue;
  r.verification_passed = verification.passed;
  r.max_abs_error = verification.max_abs_error;
  r.max_rel_error = verification.max_rel_error;
  r.rank_preserved_x = verification.rank_preserved_x;
  r.rank_preserved_y = verification.rank_preserved_y;
  r.effective_rank = emb.effective_rank;
  r.wall_clock_ms = wall_clock_ms;
  return r;
}

std::string report_to_json(const RunReport& r) {
  json summands = json::array();
  for (const auto& s : r.summands)
    summands.push_back({{"name", s.name},
                        {"psd", s.psd},
                        {"min_eigenvalue", s.min_eigenvalue},
                        {"worst_disc_low", s.worst_disc_low}});
  const json j = {
      {"schema_version", r.schema_version},
      {"instance", {{"M", r.points_x}, {"N", r.points_y}, {"include_origin", r.include_origin}}},
      {"embeddable_set", r.embeddable_set},
      {"relabeled", r.relabeled},
      {"zeta_f", r.zeta_f},
      {"constants",
       {{"c1", r.c1}, {"c2", r.c2}, {"c3", r.c3}, {"epsilon", r.epsilon}}},
      {"doublings", r.doublings},
      {"certified_by", r.certified_by},
      {"summands", summands},
      {"mz", {{"psd", r.mz_psd}, {"min_eigenvalue", r.mz_min_eigenvalue}}},
      {"verification",
       {{"passed", r.verification_passed},
        {"max_abs_error", r.max_abs_error},
        {"max_rel_error", r.max_rel_error},
        {"rank_preserved_x", r.rank_preserved_x},
        {"rank_preserved_y", r.rank_preserved_y}}},
      {"effective_rank", r.effective_rank},
      {"wall_clock_ms", r.wall_clock_ms},
  };
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("cannot parse report JSON: ") + e.what());
  }
  RunReport r;
  try {
    r.schema_version = j.at("schema_version").get<int>();
    r.points_x = j.at("instance").at("M").get<Index>();
    r.points_y = j.at("instance").at("N").get<Index>();
    r.include_origin = j.at("instance").at("include_origin").get<bool>();
    r.embeddable_set = j.at("embeddable_set").get<std::string>();
    r.relabeled = j.at("relabeled").get<bool>();
    r.zeta_f = j.at("zeta_f").get<double>();
    r.c1 = j.at("constants").at("c1").get<double>();
    r.c2 = j.at("constants").at("c2").get<double>();
    r.c3 = j.at("constants").at("c3").get<double>();
    r.epsilon = j.at("constants").at("epsilon").get<double>();
    r.doublings = j.at("doublings").get<int>();
    r.certified_by = j.at("certified_by").get<std::string>();
    for (const auto& s : j.at("summands")) {
      r.summands.push_back({s.at("name").get<std::string>(), s.at("psd").get<bool>(),
                            s.at("min_eigenvalue").get<double>(),
                            s.at("worst_disc_low").get<double>()});
    }
    r.mz_psd = j.at("mz").at("psd").get<bool>();
    r.mz_min_eigenvalue = j.at("mz").at("min_eigenvalue").get<double>();
    r.verification_passed = j.at("verification").at("passed").get<bool>();
    r.max_abs_error = j.at("verification").at("max_abs_error").get<double>();
    r.max_rel_error = j.at("verification").at("max_rel_error").get<double>();
    r.rank_preserved_x = j.at("verification").at("rank_preserved_x").get<bool>();
    r.rank_preserved_y = j.at("verification").at("rank_preserved_y").get<bool>();
    r.effective_rank = j.at("effective_rank").get<Index>();
    r.wall_clock_ms = j.at("wall_clock_ms").get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("report JSON missing fields: ") + e.what());
  }
  return r;
}

void write_report(const std::string& path, const RunReport& report) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << report_to_json(report);
}

RunReport read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return report_from_json(text);
}

}  // namespace qee
