#include "tbd/gospa.hpp"

#include <stdexcept>

namespace tbd {

// Shortest-augmenting-path assignment (Jonker-Volgenant style, O(n^3)).
std::vector<int> solve_assignment(const MatXd& cost) {
  const int n = int(cost.rows());
  if (cost.cols() != n) throw std::invalid_argument("solve_assignment: not square");
  // 1-based potentials, standard formulation.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = -1;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[size_t(p[j] - 1)] = j - 1;
  return row_to_col;
}

GospaResult gospa(const std::vector<Vec2d>& truth, const std::vector<Vec2d>& est,
                  const GospaParams& params) {
  if (!(params.c > 0) || !(params.p >= 1) || !(params.alpha > 0) ||
      !(params.alpha <= 2))
    throw std::invalid_argument("gospa: invalid parameters");
  const int T = int(truth.size()), E = int(est.size());
  const double cp = std::pow(params.c, params.p);
  const double unass = cp / params.alpha;

  GospaResult r;
  if (T == 0 && E == 0) return r;

  // Square padded cost matrix: real pair costs top-left, unassignment cost
  // for every dummy pairing, zero for dummy-dummy.
  const int n = T + E;
  MatXd cost = MatXd::Zero(n, n);
  for (int i = 0; i < T; ++i)
    for (int j = 0; j < E; ++j)
      cost(i, j) = std::pow(std::min((truth[size_t(i)] - est[size_t(j)]).norm(),
                                     params.c),
                            params.p);
  for (int i = 0; i < T; ++i)
    for (int j = E; j < n; ++j) cost(i, j) = unass;
  for (int i = T; i < n; ++i)
    for (int j = 0; j < E; ++j) cost(i, j) = unass;

  std::vector<int> asg = solve_assignment(cost);

  int miss = 0, fal = 0;
  std::vector<char> est_used(size_t(E), 0);
  for (int i = 0; i < T; ++i) {
    int j = asg[size_t(i)];
    double d = (j < E) ? (truth[size_t(i)] - est[size_t(j)]).norm()
                       : std::numeric_limits<double>::infinity();
    if (j < E && d < params.c) {
      r.localization += std::pow(d, params.p);
      r.assignment.emplace_back(i, j);
      est_used[size_t(j)] = 1;
    } else {
      ++miss;  // cut pairs (d >= c) decompose as one miss + one false
    }
  }
  for (int j = 0; j < E; ++j)
    if (!est_used[size_t(j)]) ++fal;

  r.missed = unass * miss;
  r.false_objects = unass * fal;
  r.total = std::pow(r.localization + r.missed + r.false_objects, 1.0 / params.p);
  return r;
}

GospaSeries gospa_series(const std::vector<std::vector<Vec2d>>& truth,
                         const std::vector<std::vector<Vec2d>>& est,
                         const GospaParams& params, int win_lo, int win_hi) {
  if (truth.size() != est.size())
    throw std::invalid_argument("gospa_series: step count mismatch");
  GospaSeries out;
  out.per_step.reserve(truth.size());
  for (size_t k = 0; k < truth.size(); ++k)
    out.per_step.push_back(gospa(truth[k], est[k], params));
  double acc = 0.0;
  int cnt = 0;
  for (int k = win_lo; k <= win_hi && k < int(out.per_step.size()); ++k) {
    if (k < 0) continue;
    acc += out.per_step[size_t(k)].total;
    ++cnt;
  }
  out.window_mean = cnt > 0 ? acc / cnt : 0.0;
  return out;
}

}  // namespace tbd
