#include "tbd/scenario.hpp"

namespace tbd {

namespace {

constexpr std::uint64_t kTagTracks = 0x54524143;  // stream tags
constexpr std::uint64_t kTagFrame = 0x4652414D;

std::vector<GroundTruthTrack> realize_tracks(const ScenarioConfig& cfg) {
  KinematicTransition cv(1.0, cfg.process_noise_var);
  std::vector<GroundTruthTrack> tracks;
  int next_id = 1;
  for (size_t s = 0; s < cfg.scripts.size(); ++s) {
    const TrackScript& ts = cfg.scripts[s];
    auto rng = substream({cfg.rng_seed, kTagTracks, std::uint64_t(s)});
    GroundTruthTrack tr;
    tr.id = next_id++;
    tr.birth_step = ts.birth_step;
    Vec4d x;
    if (ts.fixed) {
      x = ts.init_state;
    } else {
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      std::normal_distribution<double> n01(0.0, 1.0);
      x[0] = ts.pos_min.x() + u01(rng) * (ts.pos_max.x() - ts.pos_min.x());
      x[1] = ts.pos_min.y() + u01(rng) * (ts.pos_max.y() - ts.pos_min.y());
      Eigen::LLT<Eigen::Matrix2d> llt(ts.velocity_cov);
      Eigen::Matrix2d Lv = llt.info() == Eigen::Success
                               ? Eigen::Matrix2d(llt.matrixL())
                               : Eigen::Matrix2d(ts.velocity_cov.cwiseSqrt());
      Vec2d v = Lv * Vec2d(n01(rng), n01(rng));
      x[2] = v.x();
      x[3] = v.y();
    }
    tr.states.push_back(x);
    tr.death_step = ts.birth_step;
    for (int k = ts.birth_step + 1; k <= std::min(ts.death_step, cfg.K); ++k) {
      x = cv_sample(cv, x, rng);
      Vec2d p = x.head<2>();
      // Death on region exit: the track ends at the last inside step.
      if (p.x() < cfg.roi_min.x() || p.x() > cfg.roi_max.x() ||
          p.y() < cfg.roi_min.y() || p.y() > cfg.roi_max.y())
        break;
      tr.states.push_back(x);
      tr.death_step = k;
    }
    tracks.push_back(std::move(tr));
  }
  return tracks;
}

}  // namespace

double normalization_scale_for(const ScenarioConfig& cfg,
                               const std::vector<GroundTruthTrack>& tracks) {
  double p_max = 0.0;
  for (const auto& sensor : cfg.sensors) {
    for (const auto& tr : tracks) {
      for (const auto& x : tr.states) {
        double d = (Vec2d(x[0], x[1]) - sensor.position).norm();
        if (d > 0) p_max = std::max(p_max, amplitude_power(sensor, d));
      }
    }
  }
  return p_max > 0 ? 1.0 / std::sqrt(p_max) : 1.0;
}

Dataset simulate(const ScenarioConfig& cfg) {
  if (cfg.sensors.empty())
    throw std::invalid_argument("simulate: at least one sensor required");
  if (cfg.noise_power.size() != cfg.sensors.size())
    throw std::invalid_argument(
        "simulate: noise_power must list one eta per dictionary");
  Dataset ds;
  ds.tracks = realize_tracks(cfg);
  const double s = normalization_scale_for(cfg, ds.tracks);
  const int I = int(cfg.sensors.size());

  ds.frames.resize(cfg.K);
  for (int k = 1; k <= cfg.K; ++k) {
    MeasurementFrame& fr = ds.frames[size_t(k - 1)];
    fr.step = k;
    fr.normalization_scale = s;
    fr.data.resize(I);
    auto rng = substream({cfg.rng_seed, kTagFrame, std::uint64_t(k)});
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int i = 0; i < I; ++i) {
      const RadarSensor& sensor = cfg.sensors[size_t(i)];
      const int M = sensor.dim();
      MatXc& Z = fr.data[size_t(i)];
      Z.setZero(M, cfg.J);
      for (const auto& tr : ds.tracks) {
        if (!tr.alive(k)) continue;
        const Vec4d& x = tr.state(k);
        Vec2d p(x[0], x[1]);
        double d = (p - sensor.position).norm();
        if (!(d > 0)) continue;
        double pow_raw = amplitude_power(sensor, d);
        double sigma = std::sqrt(pow_raw / 2.0);  // per real component
        VecXc a = dictionary_eval(sensor, p);
        for (int j = 0; j < cfg.J; ++j) {
          cxd rho(sigma * n01(rng), sigma * n01(rng));
          Z.col(j) += rho * a;
        }
      }
      double nsig = std::sqrt(cfg.noise_power[size_t(i)] / 2.0);
      for (int j = 0; j < cfg.J; ++j)
        for (int m = 0; m < M; ++m)
          Z(m, j) += cxd(nsig * n01(rng), nsig * n01(rng));
      Z *= s;
    }
  }
  return ds;
}

}  // namespace tbd
