#include "tbd/models.hpp"

#include <cmath>

namespace tbd {

Vec4d cv_sample(const KinematicTransition& t, const Vec4d& x,
                std::mt19937_64& rng) {
  // driving_noise_cov is diagonal in every configuration we ship; support the
  // general PSD case via its Cholesky factor anyway.
  Eigen::LLT<Eigen::Matrix2d> llt(t.driving_noise_cov);
  Eigen::Matrix2d Lq;
  if (llt.info() == Eigen::Success) {
    Lq = llt.matrixL();
  } else {
    // PSD but singular (e.g. zero matrix): fall back to sqrt of diagonal.
    Lq = t.driving_noise_cov.cwiseMax(0.0).cwiseSqrt();
  }
  std::normal_distribution<double> n01(0.0, 1.0);
  Vec2d q(n01(rng), n01(rng));
  return t.F * x + t.W * (Lq * q);
}

double gamma_sample(const GammaTransition& t, double prev,
                    std::mt19937_64& rng) {
  if (!(t.c > 0)) throw std::invalid_argument("gamma_sample: c must be > 0");
  if (!(prev >= 0)) throw std::invalid_argument("gamma_sample: prev must be >= 0");
  double p = std::max(prev, 1e-12);  // shape parameter must stay positive
  std::gamma_distribution<double> g(p / t.c, t.c);
  return g(rng);
}

double gamma_logpdf(const GammaTransition& t, double prev, double next) {
  if (!(t.c > 0)) throw std::invalid_argument("gamma_logpdf: c must be > 0");
  if (!(prev >= 0)) throw std::invalid_argument("gamma_logpdf: prev must be >= 0");
  double a = std::max(prev, 1e-12) / t.c;
  double b = t.c;
  if (!(next > 0)) return kNegInf;
  return (a - 1.0) * std::log(next) - next / b - std::lgamma(a) -
         a * std::log(b);
}

BirthModel build_birth(const Vec2d& roi_min, const Vec2d& roi_max,
                       const Vec2d& cell_size, double mu_b,
                       const Eigen::Matrix2d& velocity_cov, double power_max) {
  if (!(roi_max.x() > roi_min.x()) || !(roi_max.y() > roi_min.y()))
    throw std::invalid_argument("build_birth: empty ROI");
  BirthModel b;
  b.roi_min = roi_min;
  b.roi_max = roi_max;
  b.cell_size = cell_size;
  b.nx = std::max(1, int(std::ceil((roi_max.x() - roi_min.x()) / cell_size.x() - 1e-9)));
  b.ny = std::max(1, int(std::ceil((roi_max.y() - roi_min.y()) / cell_size.y() - 1e-9)));
  b.mu_b = mu_b;
  b.velocity_cov = velocity_cov;
  b.power_max = power_max;
  const int Q = b.cells();
  b.mu_bn = VecXd::Constant(Q, mu_b / Q);  // uniform spatial birth density
  b.p_bn.resize(Q);
  for (int q = 0; q < Q; ++q) b.p_bn[q] = b.mu_bn[q] / (b.mu_bn[q] + 1.0);
  return b;
}

BirthSample birth_sample(const BirthModel& b, int cell, int n_kin, int n_power,
                         int n_dict, std::mt19937_64& rng) {
  if (cell < 0 || cell >= b.cells())
    throw std::invalid_argument("birth_sample: cell index out of range");
  BirthSample out;
  out.existence = b.p_bn[cell];
  out.kin.resize(4, n_kin);
  Vec2d lo = b.cell_min(cell);
  Eigen::LLT<Eigen::Matrix2d> llt(b.velocity_cov);
  Eigen::Matrix2d Lv = llt.matrixL();
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (int p = 0; p < n_kin; ++p) {
    out.kin(0, p) = lo.x() + u01(rng) * b.cell_size.x();
    out.kin(1, p) = lo.y() + u01(rng) * b.cell_size.y();
    Vec2d v = Lv * Vec2d(n01(rng), n01(rng));
    out.kin(2, p) = v.x();
    out.kin(3, p) = v.y();
  }
  out.power.resize(n_dict);
  for (int i = 0; i < n_dict; ++i) {
    out.power[i].resize(n_power);
    for (int p = 0; p < n_power; ++p)
      out.power[i][p] = u01(rng) * b.power_max;
  }
  return out;
}

}  // namespace tbd
