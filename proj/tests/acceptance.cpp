// End-to-end acceptance gate. Each criterion prints one line:
//   [PASS] criterion N: <measured numbers>
//   [FAIL] criterion N: <measured numbers>
// and the process exits 0 iff every criterion it ran passed.
// Tolerances are pinned here on purpose; do not read them from config.

#include <weakkam/aubry.hpp>
#include <weakkam/char_flow.hpp>
#include <weakkam/critical.hpp>
#include <weakkam/errors.hpp>
#include <weakkam/experiments.hpp>
#include <weakkam/hamiltonian.hpp>
#include <weakkam/lax_oleinik.hpp>
#include <weakkam/torus.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace weakkam;

namespace {

constexpr double pi = std::numbers::pi;

using stclock = std::chrono::steady_clock;

double secs(stclock::time_point t0) {
  return std::chrono::duration<double>(stclock::now() - t0).count();
}

double phase_dist(PhasePoint a, PhasePoint b) {
  return std::hypot(torus_dist(a.x, b.x), a.p - b.p);
}

struct Line {
  bool pass = false;
  std::string text;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const Verdict* verdict(const ExperimentReport& rep, const char* invariant) {
  for (const Verdict& v : rep.verdicts)
    if (v.invariant == invariant) return &v;
  return nullptr;
}

double summary_value(const ExperimentReport& rep, const std::string& key) {
  for (const auto& [k, v] : rep.summary)
    if (k == key) return v;
  throw PreconditionError("missing summary entry " + key);
}

double record_scalar(const RunRecord& rec, const char* key) {
  for (const auto& [k, v] : rec.scalars)
    if (k == key) return v;
  throw PreconditionError(std::string("missing record scalar ") + key);
}

// 1. pendulum critical value by both methods, Aubry set {0}, under 5 s
Line criterion_1() {
  auto t0 = stclock::now();
  const HamiltonianSpec pend = make_pendulum();
  const Grid g = Grid::uniform(1024);

  const double c_rev = critical_value_reversible(pend).c;
  SemigroupConfig cfg;
  cfg.dt = 0.05;
  const double c_erg =
      critical_value_ergodic(pend, {0.5, 0.2, 0.1, 0.05, 0.02}, g, cfg).c;
  AubryEstimate est = aubry_reversible(pend, c_rev, g, 1e-8);

  const double err_rev = std::fabs(c_rev - 1.0);
  const double err_erg = std::fabs(c_erg - 1.0);
  const double aubry_off =
      est.points.size() == 1 ? torus_dist(est.points[0], 0.0) : 1.0;
  const double el = secs(t0);

  Line r;
  r.pass = err_rev <= 5e-3 && err_erg <= 5e-3 && est.points.size() == 1 &&
           aubry_off <= g.h && el < 5.0;
  std::ostringstream m;
  m << "critical value errors " << num(err_rev) << " (closed form), " << num(err_erg)
    << " (discounted limit) vs 5e-3; aubry point off by " << num(aubry_off) << " vs h = "
    << num(g.h) << "; " << num(el) << " s vs 5 s";
  r.text = m.str();
  return r;
}

// 2. backward sweep: nonnegative, monotone, differences shrinking, u(0) small
Line criterion_2() {
  auto t0 = stclock::now();
  ExperimentConfig cfg;
  cfg.experiment = "vanishing_plus";
  ExperimentReport rep = run_vanishing_plus(cfg);

  const double neg = verdict(rep, "backward_solutions_nonnegative")->measured;
  const Verdict* mono = verdict(rep, "backward_sweep_monotone_in_discount");
  const double d_mid = summary_value(rep, "sup_dist_0.2_0.1");
  const double d_late = summary_value(rep, "sup_dist_0.05_0.02");
  double worst_at0 = 0.0;
  for (const RunRecord& rec : rep.records)
    worst_at0 = std::max(worst_at0, std::fabs(record_scalar(rec, "value_at_node0")));
  const double el = secs(t0);

  Line r;
  r.pass = neg <= 1e-6 && mono->pass && d_late < d_mid && worst_at0 <= 5e-3 && el < 60.0;
  std::ostringstream m;
  m << "min value " << num(-neg) << " vs -1e-6; monotone slack " << num(mono->measured)
    << " vs " << num(mono->bound) << "; sup dists " << num(d_late) << " (late) < "
    << num(d_mid) << " (mid); worst |u(0)| " << num(worst_at0) << " vs 5e-3; " << num(el)
    << " s vs 60 s";
  r.text = m.str();
  return r;
}

// 3. forward sweep: dominated by backward, u+(0) small, minus branch Cauchy,
//    one Lipschitz constant for the whole sweep
Line criterion_3() {
  ExperimentConfig cfg;
  cfg.experiment = "vanishing_minus";
  ExperimentReport rep = run_vanishing_minus(cfg);

  const double dom = verdict(rep, "forward_below_backward")->measured;
  const Verdict* cauchy = verdict(rep, "minus_sweep_cauchy");
  const Verdict* lip = verdict(rep, "equi_lipschitz");
  double worst_at0 = 0.0;
  for (const RunRecord& rec : rep.records)
    worst_at0 =
        std::max(worst_at0, std::fabs(record_scalar(rec, "forward_value_at_node0")));

  Line r;
  r.pass = dom <= 1e-6 && worst_at0 <= 5e-3 && cauchy->pass && lip->pass;
  std::ostringstream m;
  m << "max(u+ - u) " << num(dom) << " vs 1e-6; worst |u+(0)| " << num(worst_at0)
    << " vs 5e-3; cauchy increase " << num(cauchy->measured) << " vs 1e-9; lipschitz "
    << num(lip->measured) << " vs " << num(lip->bound);
  r.text = m.str();
  return r;
}

// 4. nonuniqueness: zero solution exact, off-kink residual first order,
//    minimal solution vanishes
Line criterion_4() {
  ExperimentConfig cfg;
  cfg.experiment = "nonuniqueness_demo";
  ExperimentReport rep = run_nonuniqueness_demo(cfg);

  const double exact = verdict(rep, "zero_solution_residual_exact")->measured;
  const double ratio_cm = summary_value(rep, "offkink_ratio_coarse_mid");
  const double ratio_mf = summary_value(rep, "offkink_ratio_mid_fine");
  const double minimal = summary_value(rep, "minimal_solution_sup");

  Line r;
  r.pass = exact == 0.0 && std::fabs(ratio_cm - 2.0) <= 0.5 &&
           std::fabs(ratio_mf - 2.0) <= 0.5 && minimal <= 5e-3;
  std::ostringstream m;
  m << "zero-solution residual " << num(exact) << " (must be exactly 0); refinement ratios "
    << num(ratio_cm) << ", " << num(ratio_mf) << " vs [1.5, 2.5]; minimal solution sup "
    << num(minimal) << " vs 5e-3";
  r.text = m.str();
  return r;
}

// 5. hyperbolicity at the pendulum saddle: eigenvalues to 1e-8, manifold
//    samples flow back to the saddle within 1e-6 at horizon 20/|mu-|
Line criterion_5() {
  auto t0 = stclock::now();
  const HamiltonianSpec pend = make_pendulum();
  const double lambda = 0.1;

  LinearizationReport lin = linearize(pend, lambda, {0.0, 0.0});
  const double root = std::sqrt(lambda * lambda + 16.0 * pi * pi);
  const double gap = std::max(std::fabs(lin.mu_minus - (-lambda - root) / 2.0),
                              std::fabs(lin.mu_plus - (-lambda + root) / 2.0));

  ManifoldPatch patch = stable_manifold_local(pend, lambda, lin, 0.1);
  const double T = 20.0 / std::fabs(lin.mu_minus);
  double worst = 0.0;
  for (std::size_t k = 0; k < patch.xs.size(); k += 8) {
    PhasePoint e = flow_endpoint(pend, lambda, {wrap(patch.xs[k]), patch.hs[k]}, T, 1e-4);
    worst = std::max(worst, phase_dist(e, {0.0, 0.0}));
  }
  const double el = secs(t0);

  Line r;
  r.pass = lin.saddle && gap <= 1e-8 && worst <= 1e-6;
  std::ostringstream m;
  m << "eigenvalue gap " << num(gap) << " vs 1e-8; manifold flow-back worst "
    << num(worst) << " vs 1e-6 at horizon " << num(T) << " (" << num(el) << " s)";
  r.text = m.str();
  return r;
}

// 6. uniqueness experiment at lambda = 0.1
Line criterion_6() {
  ExperimentConfig cfg;
  cfg.experiment = "pendulum_uniqueness";
  ExperimentReport rep = run_pendulum_uniqueness(cfg);

  const Verdict* multi = verdict(rep, "forward_limit_unique_from_perturbed_starts");
  const Verdict* grad = verdict(rep, "forward_gradient_matches_stable_manifold");
  const Verdict* val0 = verdict(rep, "forward_value_zero_at_marked_point");
  const Verdict* slope0 = verdict(rep, "forward_gradient_zero_at_marked_point");

  Line r;
  r.pass = multi->pass && grad != nullptr && grad->pass && val0->pass && slope0->pass;
  std::ostringstream m;
  m << "multistart spread " << num(multi->measured) << " vs " << num(multi->bound)
    << "; |Du+ - manifold| " << num(grad ? grad->measured : -1.0) << " vs 0.05; |u+(0)| "
    << num(val0->measured) << ", |Du+(0)| " << num(slope0->measured) << " vs 5e-3";
  r.text = m.str();
  return r;
}

// 7. two-rest-point construction at discount 1: sampled residual of the
//    smooth solution on n = 4096, both rest points pinned to 1e-10
Line criterion_7() {
  ExperimentConfig cfg;
  cfg.experiment = "remark_counterexample";
  cfg.spec = make_remark();
  ExperimentReport rep = run_remark_counterexample(cfg);

  const Verdict* res = verdict(rep, "smooth_solution_residual");
  const Verdict* marked = verdict(rep, "marked_rest_points");
  const double ratio_cm = summary_value(rep, "residual_ratio_coarse_mid");
  const double ratio_mf = summary_value(rep, "residual_ratio_mid_fine");

  Line r;
  r.pass = res->pass && marked->pass;
  std::ostringstream m;
  m << "smooth-solution residual " << num(res->measured)
    << " vs 1e-4 (refinement ratios " << num(ratio_cm) << ", " << num(ratio_mf)
    << "); rest points off by " << num(marked->measured) << " vs 1e-10";
  r.text = m.str();
  return r;
}

// 8. property suites: step-map contraction / monotonicity / constant shift on
//    100 random pairs, dissipation on 20 random starts, Fenchel round trip on
//    a 50 x 50 lattice, RK4 order ratio
Line criterion_8() {
  auto t0 = stclock::now();
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const HamiltonianSpec pend = make_pendulum();
  const Grid g = Grid::uniform(256);
  SemigroupConfig cfg;
  const double dt = resolve_dt(cfg, g);
  const double shrink = discount_weights(0.3, dt).shrink;

  auto random_smooth = [&] {
    double a[4], b[4];
    for (int k = 0; k < 4; ++k) {
      a[k] = 0.5 * coef(rng) / (k + 1);
      b[k] = 0.5 * coef(rng) / (k + 1);
    }
    return sample(g, [&](double x) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k)
        s += a[k] * std::cos(2.0 * pi * (k + 1) * x) + b[k] * std::sin(2.0 * pi * (k + 1) * x);
      return s;
    });
  };

  double contr = 0.0, mono = 0.0, comm = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    GridFunction u = random_smooth();
    GridFunction w = random_smooth();
    GridFunction Tu = backward_step(u, pend, 0.3, 1.0, cfg);
    GridFunction Tw = backward_step(w, pend, 0.3, 1.0, cfg);
    contr = std::max(contr, sup_dist(Tu, Tw) - shrink * sup_dist(u, w));

    GridFunction above = u;
    for (int i = 0; i < g.n; ++i) above[i] += std::fabs(w[i]);
    GridFunction Ta = backward_step(above, pend, 0.3, 1.0, cfg);
    for (int i = 0; i < g.n; ++i) mono = std::max(mono, Tu[i] - Ta[i]);

    GridFunction shifted = u;
    for (int i = 0; i < g.n; ++i) shifted[i] += 0.37;
    GridFunction Ts = backward_step(shifted, pend, 0.3, 1.0, cfg);
    for (int i = 0; i < g.n; ++i)
      comm = std::max(comm, std::fabs(Ts[i] - Tu[i] - shrink * 0.37));
  }

  double diss = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    PhasePoint q0{unit(rng), 4.0 * coef(rng)};
    Trajectory tr = integrate(pend, 0.1, q0, 10.0, 1e-3);
    auto prof = dissipation_profile(tr, pend, 0.1);
    for (std::size_t k = 0; k + 1 < prof.size(); ++k)
      diss = std::max(diss, prof[k + 1].second - prof[k].second);
  }

  HamiltonianSpec mixed =
      make_custom(trig_field("drift", TrigPoly{0.0, {}, {0.3}}), pendulum_cos());
  double fen = 0.0;
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      double x = i / 50.0;
      double p = -2.0 + 4.0 * j / 49.0;
      double v = -2.0 + 4.0 * j / 49.0;
      double vstar = p + mixed.b(x);  // argmax of p v - L(x, v)
      fen = std::max(fen, std::fabs(p * vstar - eval_L(mixed, x, vstar) - eval_H(mixed, x, p)));
      double pstar = v - mixed.b(x);  // argmax of p v - H(x, p)
      fen = std::max(fen, std::fabs(pstar * v - eval_H(mixed, x, pstar) - eval_L(mixed, x, v)));
    }

  auto final_at = [&](double h) {
    Trajectory tr = integrate(pend, 0.0, {0.25, 0.5}, 1.0, h);
    return tr.points.back();
  };
  PhasePoint ref = final_at(1e-4);
  const double ratio = phase_dist(final_at(4e-3), ref) / phase_dist(final_at(2e-3), ref);
  const double el = secs(t0);

  Line r;
  r.pass = contr <= 1e-10 && mono <= 1e-10 && comm <= 1e-11 && diss <= 1e-8 &&
           fen <= 1e-8 && ratio >= 14.0 && ratio <= 18.0;
  std::ostringstream m;
  m << "contraction excess " << num(contr) << " vs 1e-10; monotonicity violation "
    << num(mono) << " vs 1e-10; constant-shift defect " << num(comm)
    << " vs 1e-11; dissipation increase " << num(diss) << " vs 1e-8; fenchel gap "
    << num(fen) << " vs 1e-8; rk4 ratio " << num(ratio) << " vs [14, 18] (" << num(el)
    << " s)";
  r.text = m.str();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 8) {
        std::fprintf(stderr, "usage: %s [--criterion 1..8]\n", argv[0]);
        return 2;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--criterion 1..8]\n", argv[0]);
      return 2;
    }
  }

  Line (*crits[8])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                        criterion_5, criterion_6, criterion_7, criterion_8};
  bool all = true;
  for (int k = 1; k <= 8; ++k) {
    if (only != 0 && k != only) continue;
    Line line;
    try {
      line = crits[k - 1]();
    } catch (const std::exception& e) {
      line.pass = false;
      line.text = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s\n", line.pass ? "PASS" : "FAIL", k,
                line.text.c_str());
    all = all && line.pass;
  }
  return all ? 0 : 1;
}
