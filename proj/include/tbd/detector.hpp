#pragma once
// ---------------------------------------------------------------------------
// detector.hpp -- matched-filter (Bartlett) spectrum over a position grid,
// greedy matching-pursuit detection with per-snapshot residual peeling, and
// a global-nearest-neighbor Kalman baseline tracker fed by those detections.
// ---------------------------------------------------------------------------

#include "tbd/common.hpp"
#include "tbd/gospa.hpp"
#include "tbd/models.hpp"
#include "tbd/radar.hpp"
#include "tbd/scenario.hpp"

#include <vector>

namespace tbd {

/// Steering vectors of every sensor evaluated over a fixed position grid
/// (built once, reused across frames).
struct GridDictionary {
  std::vector<Vec2d> centers;      // Q cell centers
  std::vector<MatXc> A;            // per sensor: M x Q steering matrix
};

GridDictionary build_grid_dictionary(const std::vector<RadarSensor>& sensors,
                                     const BirthModel& birth);

/// Bartlett spectrum power(q) = prod_i sum_j |a^(i)(p_q)^H z_j^(i)|^2.
struct SpectrumGrid {
  const std::vector<Vec2d>* centers = nullptr;
  VecXd powers;
};

SpectrumGrid bartlett(const MeasurementFrame& frame, const GridDictionary& gd);

struct Detection {
  Vec2d position{0.0, 0.0};
  double score = 0.0;
  int cell = -1;
};

struct MpConfig {
  int max_detections = 10;
  double gain_threshold = 0.05;  // stop when relative residual-energy drop is below
};

/// Greedy matching pursuit: repeatedly take the Bartlett peak of the current
/// residual, subtract the orthogonal projection of every (i, j) residual onto
/// the peak cell's steering vector, and stop when the candidate's relative
/// residual-energy reduction falls below gain_threshold (the candidate is then
/// discarded) or max_detections is reached.
std::vector<Detection> matching_pursuit(const MeasurementFrame& frame,
                                        const GridDictionary& gd,
                                        const MpConfig& mp);

// --- detect-then-track baseline (GNN gating + Kalman filter) -----------------
//
// Deliberately simple stand-in for a full BP-based DTT tracker: constant-
// velocity Kalman filters, global-nearest-neighbor association on gated
// Mahalanobis costs, 2-hit confirmation, deletion after consecutive misses.

struct DttConfig {
  double meas_var = 1.0 / 12.0;   // detection position variance (1 m cell)
  double gate = 13.82;            // chi-square 2-dof 99.9% gate on d^2
  int confirm_hits = 2;
  int delete_misses = 3;
  double process_noise_var = 1e-4;
  Eigen::Matrix2d velocity_prior_cov = 0.25 * Eigen::Matrix2d::Identity();
};

struct DttTrack {
  int id = 0;
  Vec4d x = Vec4d::Zero();
  Eigen::Matrix4d P = Eigen::Matrix4d::Identity();
  int hits = 1;
  int misses = 0;
  bool confirmed = false;
};

class DttTracker {
 public:
  DttTracker(DttConfig cfg = {}) : cfg_(cfg), cv_(1.0, cfg.process_noise_var) {}

  /// Advance one step with this frame's detections; returns confirmed tracks.
  std::vector<DttTrack> step(const std::vector<Detection>& detections);

  const std::vector<DttTrack>& tracks() const { return tracks_; }

 private:
  DttConfig cfg_;
  KinematicTransition cv_;
  std::vector<DttTrack> tracks_;
  int next_id_ = 1;
};

}  // namespace tbd
