#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qee/cosine_law.hpp"
#include "qee/indexing.hpp"
#include "qee/instance.hpp"
#include "qee/spectral.hpp"
#include "qee/types.hpp"

namespace qee {

// Outcome of the Schoenberg test on the two input sets. The instance is
// relabeled so that the set that passed plays the role of X, and the chosen
// reference point is moved to the front of X. Labels keep the original names
// so downstream output stays traceable after a swap.
struct SetSelection {
  ProblemInstance instance;
  bool swapped = false;                 // original Y is now X
  Index reference_original = 0;         // 0-based member picked as x1 (pre-permutation)
  std::vector<std::string> labels;      // V^z order: z, x.., (o), y..
  SpectralSummary<double> x_summary;    // spectrum of the cosine-law test on the selected set
  std::optional<SpectralSummary<double>> rejected_summary;  // the set that failed, if any
};

// Runs the Schoenberg test on X (then Y if X fails) and relabels so the
// passing set is X. Throws NeitherSetEuclideanError when both fail.
// `reference` picks which member of the passing set becomes x1.
SetSelection select_embeddable_set(const ProblemInstance& inst, double tol, Index reference = 0);

// The shifted proximity matrix over W: off-diagonal entries are
// sqrt(raw^2 + alpha) with raw drawn from dX / dY / uX / uY / F by role pair.
MatrixXd build_f_alpha(const ProblemInstance& inst, const AugmentedIndexing& idx, double alpha);

struct BaseCosineContext {
  SetSelection selection;
  CosineLawMatrix<double> M0;  // cosine-law matrix of (W, f^0) with reference x1
  double zeta_f = 0.0;

  const ProblemInstance& instance() const { return selection.instance; }
};

// Builds M0 and the cross-block statistic zeta_f (the maximum over rows of
// the absolute row sums of the X-by-Y blocks of M0). Throws
// ZetaNonpositiveError when zeta_f <= 1e-12.
BaseCosineContext compute_zeta_f(SetSelection selection);

// Proximities of the W points to the connecting point z.
VectorXd build_g_tilde(const BaseCosineContext& ctx, double c1, double c2);

// The full Q x Q proximity over V^z: slot 0 carries g-tilde, the interior
// block is f^alpha.
MatrixXd build_h_tilde(const BaseCosineContext& ctx, const AugmentedIndexing& idx, double alpha,
                       double c1, double c2);

// Four-way split of the cosine-law matrix of (V^z, h-tilde^alpha): a padded
// copy of the X cosine-law matrix, the cross-coupling block G, and the two
// origin-coupling blocks. The four summands add up to the generic cosine-law
// construction entrywise.
struct SplitDecomposition {
  MatrixXd MX;
  MatrixXd G;
  MatrixXd CX;
  MatrixXd CY;
};

SplitDecomposition build_split(const BaseCosineContext& ctx, const AugmentedIndexing& idx,
                               double alpha, double c1, double c2);

struct SummandVerdict {
  std::string name;
  bool psd = false;
  double min_eigenvalue = 0.0;
  double worst_disc_low = 0.0;  // min over rows of center - radius
  Index worst_disc_row = 0;     // 0-based
};

struct ConditionReport {
  bool all_psd = false;
  std::array<SummandVerdict, 4> summands;  // MX, G, CX, CY
};

// The sufficient condition: all four summands PSD (then the sum is PSD too).
// base_mx_psd short-circuits the MX verdict when the Schoenberg test already
// certified the base set. Diagnostics are reported for every summand.
ConditionReport check_sufficient_condition(const SplitDecomposition& split, bool base_mx_psd,
                                           double tol);

struct EmbeddingConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double zeta_f = 0.0;
  double epsilon = 0.0;  // c3 * zeta_f
};

struct ConstantSearchResult {
  EmbeddingConstants constants;
  int doublings = 0;               // schedule updates performed
  bool certified_by_split = false; // true: all four summands PSD; false: direct Schoenberg
  ConditionReport split_report;    // at the accepted constants
  bool mz_psd = false;
  double mz_min_eigenvalue = 0.0;
};

// Doubling search for workable constants. Starts from the deterministic seed
// (1, 2, 5) unless overridden, and applies the schedule
//   c1 <- c2; c2 <- 2*c1; c3 <- 2 + c1 + c2
// until the constants are certified. Certification first tries the four-way
// summand condition; if that fails, the exact Schoenberg condition on the
// assembled cosine-law matrix decides (the summand route is sufficient but
// not necessary, and cannot hold for every geometry this schedule visits).
// Throws SearchExhaustedError after max_doublings schedule updates.
ConstantSearchResult find_constants(const BaseCosineContext& ctx, const AugmentedIndexing& idx,
                                    double tol, int max_doublings, double seed_c1 = 1.0,
                                    double seed_c2 = 2.0, double seed_c3 = 5.0);

// Validates a caller-supplied triplet by the same operational check instead
// of trusting it; throws SearchExhaustedError with diagnostics on rejection.
ConstantSearchResult validate_constants(const BaseCosineContext& ctx,
                                        const AugmentedIndexing& idx, double c1, double c2,
                                        double c3, double tol);

}  // namespace qee
