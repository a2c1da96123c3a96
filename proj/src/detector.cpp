#include "tbd/detector.hpp"

namespace tbd {

GridDictionary build_grid_dictionary(const std::vector<RadarSensor>& sensors,
                                     const BirthModel& birth) {
  GridDictionary gd;
  const int Q = birth.cells();
  gd.centers.resize(size_t(Q));
  for (int q = 0; q < Q; ++q) gd.centers[size_t(q)] = birth.cell_center(q);
  gd.A.resize(sensors.size());
  for (size_t i = 0; i < sensors.size(); ++i) {
    gd.A[i].resize(sensors[i].dim(), Q);
    for (int q = 0; q < Q; ++q)
      dictionary_eval_into(sensors[i], gd.centers[size_t(q)], gd.A[i], q);
  }
  return gd;
}

namespace {

VecXd bartlett_of(const std::vector<MatXc>& data, const GridDictionary& gd) {
  const int Q = int(gd.centers.size());
  VecXd powers = VecXd::Ones(Q);
  for (size_t i = 0; i < gd.A.size(); ++i) {
    MatXc G = gd.A[i].adjoint() * data[i];              // Q x J
    powers.array() *= G.rowwise().squaredNorm().array();  // sum_j |.|^2
  }
  return powers;
}

}  // namespace

SpectrumGrid bartlett(const MeasurementFrame& frame, const GridDictionary& gd) {
  if (frame.data.size() != gd.A.size())
    throw std::invalid_argument("bartlett: frame/dictionary count mismatch");
  SpectrumGrid out;
  out.centers = &gd.centers;
  out.powers = bartlett_of(frame.data, gd);
  return out;
}

std::vector<Detection> matching_pursuit(const MeasurementFrame& frame,
                                        const GridDictionary& gd,
                                        const MpConfig& mp) {
  std::vector<MatXc> residual = frame.data;
  const int I = int(residual.size());
  double energy = 0.0;
  for (const auto& R : residual) energy += R.squaredNorm();
  std::vector<Detection> dets;
  if (!(energy > 0)) return dets;
  const double energy_floor = 1e-12 * energy;

  while (int(dets.size()) < mp.max_detections) {
    VecXd powers = bartlett_of(residual, gd);
    int q_star = 0;
    powers.maxCoeff(&q_star);

    // Energy the candidate's orthogonal projections would remove.
    double gain = 0.0;
    for (int i = 0; i < I; ++i) {
      const double M = double(gd.A[i].rows());
      VecXc proj = gd.A[i].col(q_star).adjoint() * residual[size_t(i)];
      gain += proj.squaredNorm() / M;
    }
    if (energy <= energy_floor || gain < mp.gain_threshold * energy) break;

    for (int i = 0; i < I; ++i) {
      const double M = double(gd.A[i].rows());
      auto a = gd.A[i].col(q_star);
      VecXc proj = a.adjoint() * residual[size_t(i)];  // length J
      residual[size_t(i)].noalias() -= a * (proj.transpose() / M);
    }
    energy -= gain;

    Detection d;
    d.cell = q_star;
    d.position = gd.centers[size_t(q_star)];
    d.score = powers[q_star];
    dets.push_back(d);
  }
  return dets;
}

// --- DTT baseline ---------------------------------------------------------------

std::vector<DttTrack> DttTracker::step(const std::vector<Detection>& detections) {
  const Eigen::Matrix<double, 2, 4> H = [] {
    Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
    h(0, 0) = h(1, 1) = 1.0;
    return h;
  }();
  const Eigen::Matrix2d R = cfg_.meas_var * Eigen::Matrix2d::Identity();

  // Predict.
  for (auto& t : tracks_) {
    t.x = cv_.F * t.x;
    t.P = cv_.F * t.P * cv_.F.transpose() + cv_.noise_cov();
  }

  const int nT = int(tracks_.size()), nD = int(detections.size());
  std::vector<int> det_of_track(size_t(nT), -1);
  std::vector<char> det_used(size_t(nD), 0);
  if (nT > 0 && nD > 0) {
    // Square GNN cost: gated Mahalanobis^2 with dummy cost at the gate.
    const int n = nT + nD;
    MatXd cost = MatXd::Constant(n, n, cfg_.gate);
    std::vector<Eigen::Matrix2d> Sinv(size_t(nT));
    for (int ti = 0; ti < nT; ++ti) {
      Eigen::Matrix2d S = H * tracks_[size_t(ti)].P * H.transpose() + R;
      Sinv[size_t(ti)] = S.inverse();
      for (int di = 0; di < nD; ++di) {
        Vec2d r = detections[size_t(di)].position - H * tracks_[size_t(ti)].x;
        double d2 = r.dot(Sinv[size_t(ti)] * r);
        if (d2 < cfg_.gate) cost(ti, di) = d2;
      }
    }
    for (int i = nT; i < n; ++i)
      for (int j = nD; j < n; ++j) cost(i, j) = 0.0;
    std::vector<int> asg = solve_assignment(cost);
    for (int ti = 0; ti < nT; ++ti) {
      int di = asg[size_t(ti)];
      if (di < nD && cost(ti, di) < cfg_.gate) {
        det_of_track[size_t(ti)] = di;
        det_used[size_t(di)] = 1;
      }
    }
  }

  // Update / miss bookkeeping.
  std::vector<DttTrack> kept;
  kept.reserve(tracks_.size());
  for (int ti = 0; ti < nT; ++ti) {
    DttTrack& t = tracks_[size_t(ti)];
    int di = det_of_track[size_t(ti)];
    if (di >= 0) {
      Eigen::Matrix2d S = H * t.P * H.transpose() + R;
      Eigen::Matrix<double, 4, 2> K = t.P * H.transpose() * S.inverse();
      Vec2d r = detections[size_t(di)].position - H * t.x;
      t.x += K * r;
      t.P = (Eigen::Matrix4d::Identity() - K * H) * t.P;
      t.hits += 1;
      t.misses = 0;
      if (t.hits >= cfg_.confirm_hits) t.confirmed = true;
    } else {
      t.misses += 1;
    }
    if (t.misses < cfg_.delete_misses) kept.push_back(t);
  }
  tracks_ = std::move(kept);

  // New tentative tracks from unused detections.
  for (int di = 0; di < nD; ++di) {
    if (det_used[size_t(di)]) continue;
    DttTrack t;
    t.id = next_id_++;
    t.x.head<2>() = detections[size_t(di)].position;
    t.x.tail<2>().setZero();
    t.P.setZero();
    t.P.topLeftCorner<2, 2>() = R;
    t.P.bottomRightCorner<2, 2>() = cfg_.velocity_prior_cov;
    tracks_.push_back(t);
  }

  std::vector<DttTrack> confirmed;
  for (const auto& t : tracks_)
    if (t.confirmed) confirmed.push_back(t);
  return confirmed;
}

}  // namespace tbd
