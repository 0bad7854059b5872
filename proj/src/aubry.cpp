#include <weakkam/aubry.hpp>

#include <weakkam/errors.hpp>
#include <weakkam/torus.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace weakkam {

namespace {

struct Run {
  int lo, hi;  // inclusive node range; hi may exceed n-1 when the run wraps
};

// Merge sorted candidate node indices into cyclic runs; gaps of at most
// gap_cells cells join neighbours.
std::vector<Run> cluster_cyclic(const std::vector<int>& cand, int n, int gap_cells) {
  std::vector<Run> runs;
  for (int idx : cand) {
    if (!runs.empty() && idx - runs.back().hi <= gap_cells)
      runs.back().hi = idx;
    else
      runs.push_back({idx, idx});
  }
  if (runs.size() > 1) {
    const int wrap_gap = runs.front().lo + n - runs.back().hi;
    if (wrap_gap <= gap_cells) {
      runs.back().hi = runs.front().hi + n;
      runs.erase(runs.begin());
    }
  }
  return runs;
}

template <class F>
double golden_max(F&& f, double lo, double hi, int iters) {
  const double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c1 = b - invphi * (b - a);
  double c2 = a + invphi * (b - a);
  double f1 = f(c1), f2 = f(c2);
  for (int it = 0; it < iters; ++it) {
    if (f1 < f2) {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + invphi * (b - a);
      f2 = f(c2);
    } else {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - invphi * (b - a);
      f1 = f(c1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

AubryEstimate aubry_reversible(const HamiltonianSpec& spec, double c, const Grid& grid,
                               double tol) {
  if (!spec.reversible())
    throw NotReversibleError("aubry_reversible: spec has a drift term");
  AubryEstimate est;
  est.method = "reversible_argmax";
  est.tolerance = tol;

  std::vector<int> cand;
  for (int i = 0; i < grid.n; ++i)
    if (c - spec.U(grid.x(i)) <= tol) cand.push_back(i);
  if (cand.empty()) return est;
  if ((int)cand.size() == grid.n) {
    est.degenerate = true;
    return est;
  }

  const double h = grid.h;
  for (const Run& r : cluster_cyclic(cand, grid.n, 3)) {
    const double xs =
        golden_max([&](double x) { return spec.U(x); }, r.lo * h - h, r.hi * h + h, 60);
    est.points.push_back(wrap(xs));
  }
  std::sort(est.points.begin(), est.points.end());
  return est;
}

AubryEstimate loop_cost_scan(const HamiltonianSpec& spec, double c, const Grid& grid,
                             const SemigroupConfig& cfg, int t_max) {
  if (t_max < 1) throw PreconditionError("loop_cost_scan: t_max must be >= 1");
  const double dt = resolve_dt(cfg, grid);
  const long per_unit = std::lround(1.0 / dt);
  if (per_unit < 1 || std::abs(per_unit * dt - 1.0) > 1e-9)
    throw ConfigError("loop_cost_scan: dt must divide the unit period");

  AubryEstimate est;
  est.method = "loop_cost";
  est.loop_costs.assign(grid.n, 0.0);

  // Paths that start anywhere but the probed node begin with a large penalty,
  // so the minimizing chain must close up at y.
  const double big = 50.0;
  for (int y = 0; y < grid.n; ++y) {
    GridFunction u = constant_function(grid, big);
    u[y] = 0.0;
    double best = big;
    for (int t = 1; t <= t_max; ++t) {
      for (long s = 0; s < per_unit; ++s) u = backward_step(u, spec, 0.0, c, cfg);
      best = std::min(best, u[y]);
    }
    est.loop_costs[y] = best;
  }

  est.tolerance = 20.0 * (grid.h + dt);
  std::vector<int> cand;
  for (int i = 0; i < grid.n; ++i)
    if (est.loop_costs[i] <= est.tolerance) cand.push_back(i);
  if (cand.empty()) return est;
  if ((int)cand.size() == grid.n) {
    est.degenerate = true;
    return est;
  }
  for (const Run& r : cluster_cyclic(cand, grid.n, 3)) {
    int arg = ((r.lo % grid.n) + grid.n) % grid.n;
    for (int i = r.lo; i <= r.hi; ++i) {
      const int j = ((i % grid.n) + grid.n) % grid.n;
      if (est.loop_costs[j] < est.loop_costs[arg]) arg = j;
    }
    est.points.push_back(grid.x(arg));
  }
  std::sort(est.points.begin(), est.points.end());
  return est;
}

double max_abs_on_points(const GridFunction& u, const AubryEstimate& est) {
  double m = 0.0;
  for (double y : est.points) m = std::max(m, std::abs(interpolate(u, y)));
  return m;
}

}  // namespace weakkam
