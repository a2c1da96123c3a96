#pragma once
// ---------------------------------------------------------------------------
// radar.hpp -- LFMCW radar dictionary: delay/angle steering vectors, their
// vectorized outer product a(p), and the radar-range amplitude power law.
// ---------------------------------------------------------------------------

#include "tbd/common.hpp"

#include <stdexcept>

namespace tbd {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

/// One LFMCW sensor with a uniform linear array.
struct RadarSensor {
  Vec2d  position{0.0, 0.0};   // m
  double orientation = 0.0;    // rad, array boresight offset
  double chirp_rate = 8e12;    // Hz/s
  double sample_interval = 2e-7;  // s
  int    n_delay = 20;         // M_d
  int    n_elements = 10;      // M_theta
  double carrier = 77e9;       // Hz

  int dim() const { return n_delay * n_elements; }  // M = M_d * M_theta
};

/// Delay steering vector, entries exp(j 4 pi m mu T_s d / c), m = 0..M_d-1.
VecXc steering_delay(const RadarSensor& s, const Vec2d& p);

/// Angle steering vector, entries exp(j pi m sin theta) with
/// theta = atan2(p - p_sensor) - orientation, m = 0..M_theta-1.
VecXc steering_angle(const RadarSensor& s, const Vec2d& p);

/// Vectorized outer product vec(a_d a_theta^T), delay-major ordering:
/// entry index m = m_d * M_theta + m_theta.
VecXc dictionary_eval(const RadarSensor& s, const Vec2d& p);

/// Write dictionary_eval(s, p) into the given column of a preallocated
/// matrix without temporary allocations (hot path for particle sweeps).
void dictionary_eval_into(const RadarSensor& s, const Vec2d& p,
                          MatXc& out, int col);

/// Radar-range amplitude power c^2 / (f_c^2 (4 pi)^3 d^4).
double amplitude_power(const RadarSensor& s, double d);

}  // namespace tbd
