#pragma once

#include <optional>
#include <string>

#include "qee/instance.hpp"

namespace qee {

// One run's worth of configuration: where the instance lives plus the knobs
// of the pipeline. Parsed from the JSON config file; CLI flags override
// individual fields afterwards.
struct JobConfig {
  InstancePaths paths;
  std::optional<bool> include_origin;  // unset: origin iff both uX and uY given
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> c3;
  double psd_tolerance = 1e-9;
  int max_doublings = 64;

  bool origin_enabled() const {
    return include_origin ? *include_origin : (paths.uX.has_value() && paths.uY.has_value());
  }
};

JobConfig parse_job_config(const std::string& json_text);
JobConfig load_job_config(const std::string& path);

}  // namespace qee
