#pragma once
// ---------------------------------------------------------------------------
// scenario.hpp -- ground-truth trajectory scripting and measurement synthesis
// for the superpositional signal model: per-snapshot Swerling-1 amplitudes,
// white circular noise, global dataset normalization.
// ---------------------------------------------------------------------------

#include "tbd/common.hpp"
#include "tbd/models.hpp"
#include "tbd/radar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tbd {

struct GroundTruthTrack {
  int id = 0;
  int birth_step = 0;              // first step with a defined state
  int death_step = 0;              // last step with a defined state
  std::vector<Vec4d> states;       // index k - birth_step

  bool alive(int k) const { return k >= birth_step && k <= death_step; }
  const Vec4d& state(int k) const { return states[size_t(k - birth_step)]; }
};

/// One time step of data: per dictionary an M x J matrix (snapshot columns).
struct MeasurementFrame {
  int step = 0;
  std::vector<MatXc> data;            // data[i] is M_i x J
  double normalization_scale = 1.0;   // global scale s applied to all entries
};

/// Script entry for one object: either a fixed initial state or a sampling
/// law (uniform position box, zero-mean Gaussian velocity).
struct TrackScript {
  int birth_step = 0;
  int death_step = 0;
  bool fixed = true;
  Vec4d init_state = Vec4d::Zero();
  // sampling-law alternative:
  Vec2d pos_min{0.0, 0.0}, pos_max{0.0, 0.0};
  Eigen::Matrix2d velocity_cov = Eigen::Matrix2d::Zero();
};

struct ScenarioConfig {
  std::vector<RadarSensor> sensors;
  int J = 3;
  int K = 80;
  std::vector<double> noise_power;   // eta per dictionary, raw (pre-scale) units
  std::vector<TrackScript> scripts;
  Vec2d roi_min{0.0, 0.0};
  Vec2d roi_max{50.0, 50.0};
  double process_noise_var = 1e-4;   // CV driving noise covariance q I_2
  std::uint64_t rng_seed = 1;
};

struct Dataset {
  std::vector<GroundTruthTrack> tracks;
  std::vector<MeasurementFrame> frames;
};

/// Realize trajectories, synthesize measurements, and apply the global
/// normalization s = 1/sqrt(P_max) where P_max is the maximum radar-range
/// power over dictionaries and realized track lifetimes (s = 1 when there
/// are no tracks).  Deterministic given config.rng_seed.
Dataset simulate(const ScenarioConfig& config);

/// The normalization scale the simulate call would apply, given realized
/// tracks (exposed for reporting input SNR per dictionary).
double normalization_scale_for(const ScenarioConfig& config,
                               const std::vector<GroundTruthTrack>& tracks);

}  // namespace tbd
