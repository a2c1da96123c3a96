#pragma once
// ---------------------------------------------------------------------------
// gospa.hpp -- GOSPA metric with optimal assignment and localization /
// missed / false decomposition.  total^p = sum over assigned pairs of
// min(d, c)^p + (c^p / alpha) * (#missed + #false), minimized over
// assignments (solved exactly with a shortest-augmenting-path solver).
// ---------------------------------------------------------------------------

#include "tbd/common.hpp"

#include <vector>

namespace tbd {

struct GospaParams {
  double c = 5.0;       // cutoff (m)
  double p = 1.0;       // order >= 1
  double alpha = 2.0;   // in (0, 2]
};

struct GospaResult {
  double total = 0.0;
  double localization = 0.0;  // sum of min(d, c)^p over kept pairs
  double missed = 0.0;        // (c^p / alpha) * #missed
  double false_objects = 0.0; // (c^p / alpha) * #false
  std::vector<std::pair<int, int>> assignment;  // (truth idx, estimate idx)
};

GospaResult gospa(const std::vector<Vec2d>& truth,
                  const std::vector<Vec2d>& est, const GospaParams& params);

/// Elementwise gospa over aligned step lists plus the mean total over a
/// window [win_lo, win_hi] (inclusive, 0-based step indices).
struct GospaSeries {
  std::vector<GospaResult> per_step;
  double window_mean = 0.0;
};

GospaSeries gospa_series(const std::vector<std::vector<Vec2d>>& truth,
                         const std::vector<std::vector<Vec2d>>& est,
                         const GospaParams& params, int win_lo, int win_hi);

/// Exact min-cost square-assignment solver (exposed for the GNN step of the
/// baseline tracker).  cost is n x n; returns column assigned to each row.
std::vector<int> solve_assignment(const MatXd& cost);

}  // namespace tbd
