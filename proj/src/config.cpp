#include "qee/config.hpp"

#include <fstream>

#include <json.hpp>

namespace qee {

using nlohmann::json;

JobConfig parse_job_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("cannot parse config JSON: ") + e.what());
  }

  JobConfig cfg;
  try {
    if (j.contains("dX")) cfg.paths.dX = j.at("dX").get<std::string>();
    if (j.contains("dY")) cfg.paths.dY = j.at("dY").get<std::string>();
    if (j.contains("F")) cfg.paths.F = j.at("F").get<std::string>();
    if (j.contains("uX")) cfg.paths.uX = j.at("uX").get<std::string>();
    if (j.contains("uY")) cfg.paths.uY = j.at("uY").get<std::string>();
    if (j.contains("include_origin")) cfg.include_origin = j.at("include_origin").get<bool>();
    if (j.contains("constants")) {
      const auto& k = j.at("constants");
      if (k.contains("c1")) cfg.c1 = k.at("c1").get<double>();
      if (k.contains("c2")) cfg.c2 = k.at("c2").get<double>();
      if (k.contains("c3")) cfg.c3 = k.at("c3").get<double>();
    }
    if (j.contains("psd_tolerance")) cfg.psd_tolerance = j.at("psd_tolerance").get<double>();
    if (j.contains("max_doublings")) cfg.max_doublings = j.at("max_doublings").get<int>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config JSON: ") + e.what());
  }

  if (cfg.psd_tolerance < 0.0) throw ValidationError("psd_tolerance must be nonnegative");
  if (cfg.max_doublings < 0) throw ValidationError("max_doublings must be nonnegative");
  return cfg;
}

JobConfig load_job_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_job_config(text);
}

}  // namespace qee
