#pragma once

#include <string>
#include <vector>

#include "qee/embed.hpp"
#include "qee/pipeline.hpp"
#include "qee/types.hpp"

namespace qee {

// Machine-readable record of one embedding run. Every field except
// wall_clock_ms is a pure function of the inputs and the configuration.
struct RunReport {
  int schema_version = 1;

  Index points_x = 0;  // M and N of the ORIGINAL instance
  Index points_y = 0;
  bool include_origin = false;

  std::string embeddable_set;  // "X" or "Y", original labels
  bool relabeled = false;

  double zeta_f = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double epsilon = 0.0;
  int doublings = 0;
  std::string certified_by;  // split-summands | schoenberg-direct | override

  struct MatrixVerdict {
    std::string name;
    bool psd = false;
    double min_eigenvalue = 0.0;
    double worst_disc_low = 0.0;
  };
  std::vector<MatrixVerdict> summands;
  bool mz_psd = false;
  double mz_min_eigenvalue = 0.0;

  bool verification_passed = false;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  bool rank_preserved_x = true;
  bool rank_preserved_y = true;
  Index effective_rank = 0;

  double wall_clock_ms = 0.0;
};

RunReport assemble_report(const ProblemInstance& original, const BaseCosineContext& ctx,
                          const ConstantSearchResult& search, const Embedding& emb,
                          const VerificationReport& verification, bool constants_overridden,
                          double wall_clock_ms);

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

void write_report(const std::string& path, const RunReport& report);
RunReport read_report(const std::string& path);

}  // namespace qee
