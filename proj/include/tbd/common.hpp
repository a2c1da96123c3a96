#pragma once
// ---------------------------------------------------------------------------
// common.hpp -- shared aliases and small numeric helpers used across the
// toolkit: log-domain reductions, deterministic RNG sub-stream derivation,
// and a few convenience typedefs on top of Eigen.
// ---------------------------------------------------------------------------

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace tbd {

using cxd   = std::complex<double>;
using VecXd = Eigen::VectorXd;
using VecXc = Eigen::VectorXcd;
using MatXd = Eigen::MatrixXd;
using MatXc = Eigen::MatrixXcd;
using Vec2d = Eigen::Vector2d;
using Vec4d = Eigen::Vector4d;

inline constexpr double kLogPi  = 1.1447298858494001741;  // log(pi)
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// --- log-domain reductions -------------------------------------------------

/// Numerically stable log(sum(exp(v))). Empty input yields -inf.
inline double log_sum_exp(std::span<const double> v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;  // all -inf (or empty)
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

inline double log_sum_exp(const std::vector<double>& v) {
  return log_sum_exp(std::span<const double>(v.data(), v.size()));
}

/// log(exp(a) + exp(b)) without leaving the log domain.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

/// In-place: shift log weights so they exponentiate to a unit-sum vector.
/// Returns the normalizer log(sum(exp(w))) that was subtracted.
inline double normalize_log_weights(std::vector<double>& w) {
  double lse = log_sum_exp(w);
  if (std::isfinite(lse)) {
    for (double& x : w) x -= lse;
  } else {
    // Degenerate table (all -inf): fall back to uniform so downstream
    // expectations stay defined.
    double u = -std::log(double(w.size()));
    for (double& x : w) x = u;
  }
  return lse;
}

// --- deterministic RNG sub-streams ------------------------------------------

/// splitmix64 step; used to hash tuples of indices into seeds so that every
/// stochastic site in the pipeline draws from its own reproducible stream,
/// independent of evaluation order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Mix an arbitrary list of 64-bit designators into a single seed.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = 0x6A09E667F3BCC909ULL;  // arbitrary non-zero start
  for (std::uint64_t p : parts) {
    s ^= p + 0x9E3779B97F4A7C15ULL + (s << 6) + (s >> 2);
    (void)splitmix64(s);
  }
  return splitmix64(s);
}

/// Seed a fresh engine for one stochastic site.
inline std::mt19937_64 substream(std::initializer_list<std::uint64_t> parts) {
  return std::mt19937_64(mix_seed(parts));
}

// --- misc -------------------------------------------------------------------

/// Systematic resampling: N indices drawn with a single uniform offset.
/// `logw` need not be normalized. Deterministic given `u01`.
inline std::vector<int> systematic_resample(const std::vector<double>& logw,
                                            int n_out, double u01) {
  const int n = int(logw.size());
  std::vector<double> w(n);
  double lse = log_sum_exp(logw);
  if (!std::isfinite(lse)) {
    for (int i = 0; i < n; ++i) w[i] = 1.0 / n;
  } else {
    for (int i = 0; i < n; ++i) w[i] = std::exp(logw[i] - lse);
  }
  std::vector<int> idx(n_out);
  double cum = 0.0;
  int j = 0;
  double step = 1.0 / n_out;
  double u = u01 * step;
  for (int i = 0; i < n; ++i) {
    cum += w[i];
    while (j < n_out && u < cum) {
      idx[j++] = i;
      u += step;
    }
  }
  while (j < n_out) idx[j++] = n - 1;  // guard against fp round-off at the tail
  return idx;
}

}  // namespace tbd
