#pragma once
// ---------------------------------------------------------------------------
// models.hpp -- prior, state-transition, and birth models shared by the
// simulator and the tracker: constant-velocity kinematics, mean-preserving
// gamma transitions for power states, survival model, and the cell-gridded
// Poisson birth model.
// ---------------------------------------------------------------------------

#include "tbd/common.hpp"

#include <stdexcept>

namespace tbd {

// --- constant-velocity kinematics -------------------------------------------

/// x' = F x + W q, q ~ N(0, driving_noise_cov).  State is [px py vx vy].
struct KinematicTransition {
  double dt = 1.0;
  Eigen::Matrix4d F;
  Eigen::Matrix<double, 4, 2> W;
  Eigen::Matrix2d driving_noise_cov;

  explicit KinematicTransition(double dt_ = 1.0, double q_var = 1e-4) {
    dt = dt_;
    F.setIdentity();
    F(0, 2) = dt;
    F(1, 3) = dt;
    W.setZero();
    W(0, 0) = W(1, 1) = 0.5 * dt * dt;
    W(2, 0) = W(3, 1) = dt;
    driving_noise_cov = q_var * Eigen::Matrix2d::Identity();
  }

  Vec4d mean(const Vec4d& x) const { return F * x; }
  /// Process-noise covariance W Q W^T as seen in state space.
  Eigen::Matrix4d noise_cov() const {
    return W * driving_noise_cov * W.transpose();
  }
};

Vec4d cv_sample(const KinematicTransition& t, const Vec4d& x,
                std::mt19937_64& rng);

// --- gamma power transition ---------------------------------------------------

/// Mean-preserving gamma transition G(next; prev/c, c): mean prev,
/// variance prev*c.
struct GammaTransition {
  double c = 1e3;
};

double gamma_sample(const GammaTransition& t, double prev, std::mt19937_64& rng);
double gamma_logpdf(const GammaTransition& t, double prev, double next);

// --- survival -----------------------------------------------------------------

struct SurvivalModel {
  double p_s = 0.9;
};

/// Predicted existence probability p_s * r_prev.
inline double survival_transition(const SurvivalModel& s, double r_prev) {
  return s.p_s * r_prev;
}

// --- birth ----------------------------------------------------------------------

/// Poisson births over a cell grid: one candidate PO per cell with existence
/// probability p_Bn = mu_Bn / (mu_Bn + 1).
struct BirthModel {
  Vec2d roi_min{0.0, 0.0};
  Vec2d roi_max{50.0, 50.0};
  Vec2d cell_size{1.0, 1.0};
  int   nx = 50, ny = 50;          // cells per axis
  double mu_b = 1e-6;              // expected births per step over the ROI
  VecXd mu_bn;                     // per-cell mean (length Q)
  VecXd p_bn;                      // per-cell existence probability
  Eigen::Matrix2d velocity_cov = 0.25 * Eigen::Matrix2d::Identity();
  double power_max = 1.0;          // gamma prior U[0, power_max]

  int cells() const { return nx * ny; }
  Vec2d cell_center(int q) const {
    int qx = q % nx, qy = q / nx;
    return roi_min + Vec2d((qx + 0.5) * cell_size.x(), (qy + 0.5) * cell_size.y());
  }
  Vec2d cell_min(int q) const {
    int qx = q % nx, qy = q / nx;
    return roi_min + Vec2d(qx * cell_size.x(), qy * cell_size.y());
  }
  int cell_of(const Vec2d& p) const {
    int qx = int(std::floor((p.x() - roi_min.x()) / cell_size.x()));
    int qy = int(std::floor((p.y() - roi_min.y()) / cell_size.y()));
    qx = std::clamp(qx, 0, nx - 1);
    qy = std::clamp(qy, 0, ny - 1);
    return qy * nx + qx;
  }
  bool inside(const Vec2d& p) const {
    return p.x() >= roi_min.x() && p.x() <= roi_max.x() &&
           p.y() >= roi_min.y() && p.y() <= roi_max.y();
  }
};

/// Build the grid birth model with a spatially uniform birth density.
BirthModel build_birth(const Vec2d& roi_min, const Vec2d& roi_max,
                       const Vec2d& cell_size, double mu_b,
                       const Eigen::Matrix2d& velocity_cov,
                       double power_max = 1.0);

/// Samples drawn for one new PO in cell q: positions uniform in the cell,
/// velocities from the Gaussian prior, per-dictionary powers U[0, power_max].
struct BirthSample {
  MatXd kin;              // 4 x n_particles
  std::vector<VecXd> power;  // per dictionary, length n_power each
  double existence = 0.0;
};

BirthSample birth_sample(const BirthModel& b, int cell, int n_kin, int n_power,
                         int n_dict, std::mt19937_64& rng);

}  // namespace tbd
