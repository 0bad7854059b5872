#include <weakkam/lax_oleinik.hpp>

#include <weakkam/char_flow.hpp>
#include <weakkam/errors.hpp>

#include <cmath>
#include <limits>
#include <utility>

namespace weakkam {

double resolve_dt(const SemigroupConfig& cfg, const Grid& g) {
  return cfg.dt > 0.0 ? cfg.dt : g.h;
}

double resolve_v_max(const SemigroupConfig& cfg, const HamiltonianSpec& spec, double c) {
  if (cfg.v_max > 0.0) return cfg.v_max;
  double bmax = max_abs_on_circle(spec.b);
  double umin = min_on_circle(spec.U);
  return 2.0 * (1.0 + bmax + std::sqrt(2.0 * (c - umin + 1.0)));
}

DiscountWeights discount_weights(double lambda, double dt) {
  DiscountWeights w;
  double a = lambda * dt;
  w.shrink = std::exp(-a);
  w.grow = std::exp(a);
  w.beta_back = lambda > 0.0 ? -std::expm1(-a) / lambda : dt;
  w.beta_fwd = lambda > 0.0 ? std::expm1(a) / lambda : dt;
  return w;
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Minimize g over [lo0, hi0] from k uniform samples scanned outward from the
// middle (so exact ties keep the smallest |v|), then golden-section refinement
// of the bracket around the best sample.
template <typename F>
std::pair<double, double> minimize_velocity(const F& g, double lo0, double hi0, int k,
                                            int refine) {
  const double span = (hi0 - lo0) / double(k - 1);
  const int mid = (k - 1) / 2;
  double best_v = lo0 + mid * span;
  double best_g = g(best_v);
  for (int off = 1; off <= mid; ++off) {
    for (int sgn : {1, -1}) {
      int j = mid + sgn * off;
      if (j < 0 || j >= k) continue;
      double v = lo0 + j * span;
      double gv = g(v);
      if (gv < best_g) {
        best_g = gv;
        best_v = v;
      }
    }
  }
  double lo = std::max(lo0, best_v - span);
  double hi = std::min(hi0, best_v + span);
  double a = hi - kInvPhi * (hi - lo);
  double b = lo + kInvPhi * (hi - lo);
  double ga = g(a);
  double gb = g(b);
  for (int it = 0; it < refine; ++it) {
    if (ga <= gb) {
      hi = b;
      b = a;
      gb = ga;
      a = hi - kInvPhi * (hi - lo);
      ga = g(a);
    } else {
      lo = a;
      a = b;
      ga = gb;
      b = lo + kInvPhi * (hi - lo);
      gb = g(b);
    }
  }
  double inner_v = ga <= gb ? a : b;
  double inner_g = std::min(ga, gb);
  if (inner_g < best_g) return {inner_v, inner_g};
  return {best_v, best_g};
}

struct StepKernel {
  Grid grid;
  std::vector<double> bv, Uv;
  double lambda = 0.0;
  double c = 0.0;
  double dt = 0.0;
  double v_max = 0.0;
  int k_vel = 17;
  int refine = 40;
  DiscountWeights w;

  StepKernel(const HamiltonianSpec& spec, double lambda_, double c_, const Grid& g,
             const SemigroupConfig& cfg)
      : grid(g), lambda(lambda_), c(c_) {
    if (lambda < 0.0) throw PreconditionError("semigroup step needs lambda >= 0");
    if (cfg.k_vel < 9 || cfg.k_vel % 2 == 0)
      throw ConfigError("k_vel must be odd and at least 9");
    dt = resolve_dt(cfg, g);
    v_max = resolve_v_max(cfg, spec, c);
    k_vel = cfg.k_vel;
    refine = cfg.refine_iters;
    w = discount_weights(lambda, dt);
    bv.resize(std::size_t(g.n));
    Uv.resize(std::size_t(g.n));
    for (int i = 0; i < g.n; ++i) {
      bv[std::size_t(i)] = spec.b(g.x(i));
      Uv[std::size_t(i)] = spec.U(g.x(i));
    }
  }

  void backward(const GridFunction& u, GridFunction& out, StepStats* stats) const {
    const int n = grid.n;
    const double* uv = u.values.data();
    auto interp = [n, uv](double y) {
      double s = (y - std::floor(y)) * n;
      int j = int(s);
      if (j >= n) j = n - 1;
      double t = s - j;
      int jn = j + 1 == n ? 0 : j + 1;
      return (1.0 - t) * uv[j] + t * uv[jn];
    };
    for (int i = 0; i < n; ++i) {
      const double xi = grid.x(i);
      const double bi = bv[std::size_t(i)];
      const double base = c - Uv[std::size_t(i)];
      auto g = [&](double v) {
        double q = v + bi;
        return w.shrink * interp(xi - v * dt) + w.beta_back * (0.5 * q * q + base);
      };
      auto [v, gv] = minimize_velocity(g, -v_max, v_max, k_vel, refine);
      if (stats && std::fabs(v) >= v_max * (1.0 - 1e-9)) ++stats->boundary_min_hits;
      out[i] = gv;
    }
  }

  void forward(const GridFunction& u, GridFunction& out, StepStats* stats) const {
    const int n = grid.n;
    const double* uv = u.values.data();
    auto interp = [n, uv](double y) {
      double s = (y - std::floor(y)) * n;
      int j = int(s);
      if (j >= n) j = n - 1;
      double t = s - j;
      int jn = j + 1 == n ? 0 : j + 1;
      return (1.0 - t) * uv[j] + t * uv[jn];
    };
    for (int i = 0; i < n; ++i) {
      const double xi = grid.x(i);
      const double bi = bv[std::size_t(i)];
      const double base = c - Uv[std::size_t(i)];
      auto g = [&](double v) {
        double q = v + bi;
        return -(w.grow * interp(xi + v * dt) - w.beta_fwd * (0.5 * q * q + base));
      };
      auto [v, gv] = minimize_velocity(g, -v_max, v_max, k_vel, refine);
      if (stats && std::fabs(v) >= v_max * (1.0 - 1e-9)) ++stats->boundary_max_hits;
      out[i] = -gv;
    }
  }
};

double residual_sup_of(const GridFunction& u, const HamiltonianSpec& spec, double lambda,
                       double c) {
  return sup_norm(residual(u, spec, lambda, c));
}

}  // namespace

GridFunction backward_step(const GridFunction& u, const HamiltonianSpec& spec, double lambda,
                           double c, const SemigroupConfig& cfg, StepStats* stats) {
  StepKernel k(spec, lambda, c, u.grid, cfg);
  GridFunction out = u;
  k.backward(u, out, stats);
  return out;
}

GridFunction forward_step(const GridFunction& u, const HamiltonianSpec& spec, double lambda,
                          double c, const SemigroupConfig& cfg, StepStats* stats) {
  StepKernel k(spec, lambda, c, u.grid, cfg);
  GridFunction out = u;
  k.forward(u, out, stats);
  return out;
}

SolveReport solve_discounted(const HamiltonianSpec& spec, double lambda, double c,
                             const SemigroupConfig& cfg, const GridFunction& u_init) {
  if (lambda <= 0.0) throw PreconditionError("solve_discounted needs lambda > 0");
  StepKernel kernel(spec, lambda, c, u_init.grid, cfg);
  const double q = kernel.w.shrink;
  const double tol = cfg.tol_fix;
  StepStats stats;

  GridFunction u = u_init;
  GridFunction unew = u_init;
  for (long iter = 1; iter <= cfg.max_steps; ++iter) {
    kernel.backward(u, unew, &stats);
    double m = std::numeric_limits<double>::infinity();
    double M = -m;
    for (int i = 0; i < u.n(); ++i) {
      double d = unew[i] - u[i];
      m = std::min(m, d);
      M = std::max(M, d);
    }
    // u* is sandwiched between unew + q m/(1-q) and unew + q M/(1-q)
    double gap = q * (M - m) / (2.0 * (1.0 - q));
    if (gap <= 0.5 * tol) {
      double shift = q * (M + m) / (2.0 * (1.0 - q));
      for (double& v : unew.values) v += shift;
      GridFunction uver = unew;
      kernel.backward(unew, uver, nullptr);
      double r = sup_dist(uver, unew);
      SolveReport rep;
      rep.solution = std::move(unew);
      rep.iterations = iter;
      rep.final_update_norm = r;
      rep.residual_sup = residual_sup_of(rep.solution, spec, lambda, c);
      rep.converged = r <= tol;
      if (stats.boundary_min_hits > 0)
        rep.warnings.push_back("boundary_minimizer: velocity box hit " +
                               std::to_string(stats.boundary_min_hits) + " times");
      return rep;
    }
    std::swap(u.values, unew.values);
  }
  throw NoConvergenceError("solve_discounted: step cap reached before the fixed point");
}

SolveReport forward_iterate(const GridFunction& u_start, const HamiltonianSpec& spec,
                            double lambda, double c, const SemigroupConfig& cfg,
                            const GridFunction* clamp) {
  StepKernel kernel(spec, lambda, c, u_start.grid, cfg);
  const double scale = 1.0 + sup_norm(u_start);
  const double tol = cfg.tol_fix * scale;
  const double bound = cfg.blowup_factor * scale;
  StepStats stats;

  GridFunction u = u_start;
  GridFunction unew = u_start;
  long iter = 0;
  double delta = std::numeric_limits<double>::infinity();
  for (iter = 1; iter <= cfg.max_steps; ++iter) {
    kernel.forward(u, unew, &stats);
    if (cfg.stabilize_forward && clamp)
      for (int i = 0; i < unew.n(); ++i) unew[i] = std::min(unew[i], (*clamp)[i]);
    delta = sup_dist(unew, u);
    std::swap(u.values, unew.values);
    if (sup_norm(u) > bound)
      throw DivergenceError("forward_iterate: sup norm left the blow-up window");
    if (delta <= tol) break;
  }
  if (iter > cfg.max_steps)
    throw NoConvergenceError("forward_iterate: step cap reached before stabilizing");

  SolveReport rep;
  // unclamped fixed-point defect of the answer
  kernel.forward(u, unew, nullptr);
  double defect = sup_dist(unew, u);
  rep.solution = std::move(u);
  rep.iterations = iter;
  rep.final_update_norm = delta;
  rep.residual_sup = residual_sup_of(rep.solution, spec, lambda, c);
  rep.converged = delta <= tol;
  if (defect > 10.0 * tol)
    rep.warnings.push_back("forward fixed-point defect " + std::to_string(defect));
  if (stats.boundary_max_hits > 0)
    rep.warnings.push_back("boundary_maximizer: velocity box hit " +
                           std::to_string(stats.boundary_max_hits) + " times");
  return rep;
}

ForwardLimitReport forward_limit(const HamiltonianSpec& spec, double lambda, double c,
                                 const Grid& grid, const SemigroupConfig& cfg) {
  ForwardLimitReport rep;
  rep.backward = solve_discounted(spec, lambda, c, cfg, constant_function(grid, 0.0));
  // The limit from u_lambda is dominated by u_lambda; anything the scheme puts
  // above it is noise that e^{lambda dt} amplifies without bound. Cap there and
  // rely on the unclamped defect check of forward_iterate for honesty.
  SemigroupConfig fcfg = cfg;
  fcfg.stabilize_forward = true;
  rep.forward =
      forward_iterate(rep.backward.solution, spec, lambda, c, fcfg, &rep.backward.solution);
  return rep;
}

SolveReport minimal_solution_negative(const HamiltonianSpec& spec, double lambda, double c,
                                      const Grid& grid, const SemigroupConfig& cfg) {
  ForwardLimitReport fl = forward_limit(spec, lambda, c, grid, cfg);
  SolveReport rep = std::move(fl.forward);
  for (double& v : rep.solution.values) v = -v;
  return rep;
}

GridFunction residual(const GridFunction& u, const HamiltonianSpec& spec, double lambda,
                      double c) {
  GridFunction r = u;
  for (int i = 0; i < u.n(); ++i) {
    double x = u.grid.x(i);
    double bi = spec.b(x);
    double dm = diff_backward(u, i);
    double dp = diff_forward(u, i);
    double pbar = 0.5 * (dm + dp);
    double theta = std::max(std::fabs(dm - bi), std::fabs(dp - bi));
    r[i] = lambda * u[i] + eval_H_check(spec, x, pbar) - theta * 0.5 * (dp - dm) - c;
  }
  return r;
}

double calibration_defect(const GridFunction& u, const Trajectory& traj,
                          const HamiltonianSpec& spec, double lambda, double c) {
  if (traj.points.size() < 2) return 0.0;
  const double dt = traj.dt_flow;
  double u0 = interpolate(u, traj.points.front().x);
  double defect = 0.0;
  double quad = 0.0;
  auto running = [&](std::size_t k) {
    const PhasePoint& q = traj.points[k];
    double v = q.p - spec.b(q.x);
    return std::exp(lambda * (double(k) * dt)) * (eval_L_check(spec, q.x, v) + c);
  };
  double prev = running(0);
  for (std::size_t k = 1; k < traj.points.size(); ++k) {
    double cur = running(k);
    quad += 0.5 * dt * (prev + cur);
    prev = cur;
    double t = double(k) * dt;
    double lhs = std::exp(lambda * t) * interpolate(u, traj.points[k].x) - u0;
    defect = std::max(defect, std::fabs(lhs - quad));
  }
  return defect;
}

}  // namespace weakkam
