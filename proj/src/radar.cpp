#include "tbd/radar.hpp"

namespace tbd {

namespace {

void check_geometry(const RadarSensor& s, const Vec2d& p, const char* who) {
  if ((p - s.position).squaredNorm() <= 0.0)
    throw std::invalid_argument(std::string(who) +
                                ": target coincides with sensor position");
}

// Fill out[0..n-1] with exp(j * m * phase_step) via complex recurrence
// (one trig evaluation per vector instead of per entry).
template <typename Out>
void phase_ramp(double phase_step, int n, Out&& out) {
  cxd w = std::polar(1.0, phase_step);
  cxd cur(1.0, 0.0);
  for (int m = 0; m < n; ++m) {
    out(m) = cur;
    cur *= w;
  }
}

}  // namespace

VecXc steering_delay(const RadarSensor& s, const Vec2d& p) {
  check_geometry(s, p, "steering_delay");
  double d = (p - s.position).norm();
  double step = 4.0 * M_PI * s.chirp_rate * s.sample_interval * d / kSpeedOfLight;
  VecXc a(s.n_delay);
  phase_ramp(step, s.n_delay, [&](int m) -> cxd& { return a[m]; });
  return a;
}

VecXc steering_angle(const RadarSensor& s, const Vec2d& p) {
  check_geometry(s, p, "steering_angle");
  Vec2d rel = p - s.position;
  double theta = std::atan2(rel.y(), rel.x()) - s.orientation;
  double step = M_PI * std::sin(theta);
  VecXc a(s.n_elements);
  phase_ramp(step, s.n_elements, [&](int m) -> cxd& { return a[m]; });
  return a;
}

VecXc dictionary_eval(const RadarSensor& s, const Vec2d& p) {
  VecXc ad = steering_delay(s, p);
  VecXc at = steering_angle(s, p);
  VecXc a(s.dim());
  for (int md = 0; md < s.n_delay; ++md)
    for (int mt = 0; mt < s.n_elements; ++mt)
      a[md * s.n_elements + mt] = ad[md] * at[mt];
  return a;
}

void dictionary_eval_into(const RadarSensor& s, const Vec2d& p, MatXc& out,
                          int col) {
  check_geometry(s, p, "dictionary_eval");
  Vec2d rel = p - s.position;
  double d = rel.norm();
  double dstep = 4.0 * M_PI * s.chirp_rate * s.sample_interval * d / kSpeedOfLight;
  double theta = std::atan2(rel.y(), rel.x()) - s.orientation;
  double tstep = M_PI * std::sin(theta);

  cxd wd = std::polar(1.0, dstep);
  cxd wt = std::polar(1.0, tstep);
  cxd ad(1.0, 0.0);
  auto c = out.col(col);
  for (int md = 0; md < s.n_delay; ++md) {
    cxd cur = ad;
    for (int mt = 0; mt < s.n_elements; ++mt) {
      c[md * s.n_elements + mt] = cur;
      cur *= wt;
    }
    ad *= wd;
  }
}

double amplitude_power(const RadarSensor& s, double d) {
  if (!(d > 0))
    throw std::invalid_argument("amplitude_power: distance must be > 0");
  double fourpi = 4.0 * M_PI;
  return kSpeedOfLight * kSpeedOfLight /
         (s.carrier * s.carrier * fourpi * fourpi * fourpi * d * d * d * d);
}

}  // namespace tbd
