#include <weakkam/critical.hpp>

#include <weakkam/errors.hpp>
#include <weakkam/torus.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace weakkam {

namespace {

// Golden-section maximum of f on [lo, hi].
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

CriticalReport critical_value_reversible(const HamiltonianSpec& spec) {
  if (!spec.reversible())
    throw NotReversibleError("critical_value_reversible: spec has a drift term");
  const int samples = 4096;
  int best = 0;
  double best_val = spec.U(0.0);
  for (int i = 1; i < samples; ++i) {
    const double v = spec.U(double(i) / samples);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double h = 1.0 / samples;
  const double xs =
      golden_max([&](double x) { return spec.U(x); }, best * h - h, best * h + h, 50);
  CriticalReport rep;
  rep.method = "reversible_max";
  rep.c = std::max(best_val, spec.U(xs));
  return rep;
}

CriticalReport critical_value_ergodic(const HamiltonianSpec& spec,
                                      const std::vector<double>& lambdas, const Grid& grid,
                                      const SemigroupConfig& cfg, double stab_tol) {
  if (lambdas.empty()) throw PreconditionError("critical_value_ergodic: empty lambda list");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0) || lambdas[k] > 1.0)
      throw PreconditionError("critical_value_ergodic: lambdas must lie in (0, 1]");
    if (k > 0 && !(lambdas[k] < lambdas[k - 1]))
      throw PreconditionError("critical_value_ergodic: lambdas must decrease");
  }

  CriticalReport rep;
  rep.method = "ergodic_limit";

  // The estimate -lambda w(0) inherits an error of order lambda * tol from the
  // fixed point tolerance, so the inner solves may relax as lambda shrinks.
  const double ctol = std::max(cfg.tol_fix, std::min(1e-4, 0.02 * stab_tol));

  GridFunction w = constant_function(grid, 0.0);
  double prev_lambda = 0.0;
  double prev_est = 0.0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double lambda = lambdas[k];
    if (k > 0) {
      const double shift = -prev_est * (1.0 / lambda - 1.0 / prev_lambda);
      for (double& v : w.values) v += shift;
    }
    SemigroupConfig inner = cfg;
    inner.tol_fix = std::max(cfg.tol_fix, ctol / lambda);
    const SolveReport sol = solve_discounted(spec, lambda, 0.0, inner, w);
    w = sol.solution;
    const double est = -lambda * w[0];
    rep.lambda_trace.emplace_back(lambda, est);
    prev_lambda = lambda;
    prev_est = est;
  }

  const std::size_t m = rep.lambda_trace.size();
  if (m == 1) {
    rep.c = rep.lambda_trace[0].second;
    return rep;
  }
  const auto [l1, e1] = rep.lambda_trace[m - 2];
  const auto [l2, e2] = rep.lambda_trace[m - 1];
  if (std::abs(e2 - e1) > stab_tol)
    throw NoConvergenceError("critical_value_ergodic: estimates did not stabilize");
  // Linear extrapolation to lambda = 0.
  rep.c = e2 + (e2 - e1) * l2 / (l1 - l2);
  return rep;
}

SubsolutionCheck check_constant_subsolution(const HamiltonianSpec& spec, double c, double tol) {
  const int samples = 4096;
  double margin = c - spec.U(0.0);
  for (int i = 1; i < samples; ++i)
    margin = std::min(margin, c - spec.U(double(i) / samples));
  SubsolutionCheck out;
  out.margin = margin;
  out.ok = margin >= -tol;
  return out;
}

}  // namespace weakkam
