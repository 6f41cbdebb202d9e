#pragma once

#include <string>
#include <vector>

#include "qee/indexing.hpp"
#include "qee/pipeline.hpp"
#include "qee/types.hpp"

namespace qee {

// Coordinates for the V^z points together with the proximity matrix they must
// reproduce. Row q embeds v_q; row 0 is z, which sits at the origin of the
// factorization frame.
struct Embedding {
  MatrixXd coords;       // Q x Q, or Q x rank when truncated
  MatrixXd target;       // Q x Q h-tilde^epsilon values
  double epsilon = 0.0;
  Index effective_rank = 0;  // eigenvalues above tolerance
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  std::vector<std::string> labels;  // V^z order, original set names
};

// Factorizes the certified cosine-law matrix into coordinates and records the
// residuals against h-tilde^epsilon. With truncate_rank, trailing
// zero-eigenvalue directions are dropped (distances are unaffected).
Embedding embed_joint(const BaseCosineContext& ctx, const AugmentedIndexing& idx,
                      const EmbeddingConstants& constants, double tol,
                      bool truncate_rank = false);

struct BlockResidual {
  std::string block;  // X-X, Y-Y, X-Y, origin, z
  double max_abs = 0.0;
  double max_rel = 0.0;
  Index pairs = 0;
};

struct VerificationReport {
  bool passed = false;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  Index worst_row1 = 0;  // 0-based rows of the worst pair
  Index worst_row2 = 0;
  std::vector<BlockResidual> blocks;
  bool rank_preserved_x = true;
  bool rank_preserved_y = true;
};

// Checks coordinate rows against a target proximity matrix: recomputes every
// pairwise distance, reports per-block residuals, and verifies that the
// within-set distance rankings survive (modulo ties). roles[i] names the
// point behind row i. FAILED when the relative error exceeds 1e-6.
VerificationReport verify_pairs(const MatrixXd& coords, const MatrixXd& target,
                                const std::vector<RoleRef>& roles);

// Convenience wrapper over verify_pairs for a freshly built embedding.
VerificationReport verify_embedding(const Embedding& emb, const AugmentedIndexing& idx);

}  // namespace qee
