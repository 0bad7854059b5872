#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <weakkam/char_flow.hpp>
#include <weakkam/errors.hpp>
#include <weakkam/hamiltonian.hpp>
#include <weakkam/torus.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace weakkam;

namespace {

constexpr double pi = std::numbers::pi;

double phase_dist(PhasePoint a, PhasePoint b) {
  const double dx = torus_dist(a.x, b.x);
  return std::sqrt(dx * dx + (a.p - b.p) * (a.p - b.p));
}

HamiltonianSpec mane_sin() {
  TrigPoly s;
  s.ac = {0.0};
  s.as = {1.0};
  return make_mane(trig_field("sin", s));
}

}  // namespace

TEST_CASE("characteristic field values") {
  HamiltonianSpec pend = make_pendulum();
  PhasePoint f = vector_field(pend, 0.1, {0.25, 2.0});
  CHECK(f.x == doctest::Approx(2.0));
  CHECK(f.p == doctest::Approx(2 * pi - 0.2).epsilon(1e-13));

  // the second rest point of the perturbed-profile spec
  PhasePoint g = vector_field(make_remark(), 1.0, {0.5, 0.0});
  CHECK(std::abs(g.x) <= 1e-14);
  CHECK(std::abs(g.p) <= 1e-12);

  HamiltonianSpec mane = mane_sin();
  PhasePoint m = vector_field(mane, 0.2, {0.25, 1.0});
  CHECK(m.x == doctest::Approx(0.0));  // p = b(1/4) = 1
  CHECK(m.p == doctest::Approx(0.0 - 0.2));  // b' p - lambda p, b'(1/4) = 0
}

TEST_CASE("integrator converges at fourth order") {
  HamiltonianSpec pend = make_pendulum();
  const PhasePoint q0{0.25, 0.5};
  const double T = 1.0;
  auto final_at = [&](double dt) {
    Trajectory tr = integrate(pend, 0.0, q0, T, dt);
    return tr.points.back();
  };
  PhasePoint ref = final_at(1e-4);
  const double e1 = phase_dist(final_at(4e-3), ref);
  const double e2 = phase_dist(final_at(2e-3), ref);
  const double ratio = e1 / e2;
  CHECK(ratio >= 14.0);
  CHECK(ratio <= 18.0);
}

TEST_CASE("trajectory bookkeeping and time reversal") {
  HamiltonianSpec pend = make_pendulum();
  Trajectory tr = integrate(pend, 0.2, {0.1, 0.3}, 1.0, 1e-3);
  CHECK(tr.points.size() == 1001);
  CHECK(tr.dt_flow == doctest::Approx(1e-3));
  CHECK(tr.t(1000) == doctest::Approx(1.0));
  for (const PhasePoint& q : tr.points) {
    CHECK(q.x >= 0.0);
    CHECK(q.x < 1.0);
  }
  Trajectory back = integrate(pend, 0.2, tr.points.back(), -1.0, 1e-3);
  CHECK(phase_dist(back.points.back(), {0.1, 0.3}) <= 1e-9);
}

TEST_CASE("undamped reversible flow conserves the energy") {
  HamiltonianSpec pend = make_pendulum();
  Trajectory tr = integrate(pend, 0.0, {0.25, 0.5}, 5.0, 1e-3);
  auto prof = dissipation_profile(tr, pend, 0.0);
  const double first = prof.front().second;
  for (auto& [t, e] : prof) CHECK(std::abs(e - first) <= 1e-8);
}

TEST_CASE("damped reversible flow dissipates the energy") {
  HamiltonianSpec pend = make_pendulum();
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> xs(0.0, 1.0), ps(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    Trajectory tr = integrate(pend, 0.3, {xs(rng), ps(rng)}, 3.0, 1e-3);
    auto prof = dissipation_profile(tr, pend, 0.3);
    for (std::size_t k = 1; k < prof.size(); ++k)
      CHECK(prof[k].second <= prof[k - 1].second + 1e-8);
  }
  CHECK_THROWS_AS(dissipation_profile(integrate(mane_sin(), 0.3, {0.1, 0.0}, 1.0, 1e-3),
                                      mane_sin(), 0.3),
                  NotReversibleError);
}

TEST_CASE("momentum guard aborts runaway integrations") {
  HamiltonianSpec pend = make_pendulum();
  // the released orbit picks up |p| ~ 0.06, above the tightened guard
  CHECK_THROWS_AS(integrate(pend, 0.0, {0.51, 0.0}, 3.0, 1e-3, 0.05), BlowupError);
}

TEST_CASE("rest point scan on the built-in specs") {
  HamiltonianSpec pend = make_pendulum();
  FixedPointScan scan = find_fixed_points(pend, 0.1);
  REQUIRE(scan.points.size() == 2);
  CHECK_FALSE(scan.degenerate_continuum);
  CHECK(torus_dist(scan.points[0].x, 0.0) <= 1e-10);
  CHECK(std::abs(scan.points[0].p) <= 1e-12);
  CHECK(torus_dist(scan.points[1].x, 0.5) <= 1e-10);

  FixedPointScan free_scan = find_fixed_points(make_mechanical(zero_field()), 0.2);
  CHECK(free_scan.degenerate_continuum);

  // b = sin(2 pi x): rest points at the zeros of b and where b' = lambda
  FixedPointScan mane_scan = find_fixed_points(mane_sin(), 0.1);
  REQUIRE(mane_scan.points.size() == 4);
  bool saw0 = false, saw_half = false;
  for (const PhasePoint& q : mane_scan.points) {
    PhasePoint f = vector_field(mane_sin(), 0.1, q);
    CHECK(std::hypot(f.x, f.p) <= 1e-10);
    if (torus_dist(q.x, 0.0) <= 1e-10) saw0 = true;
    if (torus_dist(q.x, 0.5) <= 1e-10) saw_half = true;
  }
  CHECK(saw0);
  CHECK(saw_half);

  FixedPointScan rem = find_fixed_points(make_remark(), 1.0);
  bool r0 = false, r_half = false;
  for (const PhasePoint& q : rem.points) {
    if (torus_dist(q.x, 0.0) <= 1e-10 && std::abs(q.p) <= 1e-10) r0 = true;
    if (torus_dist(q.x, 0.5) <= 1e-10 && std::abs(q.p) <= 1e-10) r_half = true;
  }
  CHECK(r0);
  CHECK(r_half);
}

TEST_CASE("linearization at the pendulum rest points") {
  HamiltonianSpec pend = make_pendulum();
  const double lambda = 0.1;

  LinearizationReport top = linearize(pend, lambda, {0.0, 0.0});
  CHECK(top.real_eigs);
  CHECK(top.hyperbolic);
  CHECK(top.saddle);
  const double disc = std::sqrt(lambda * lambda + 16 * pi * pi);
  CHECK(top.mu_plus == doctest::Approx((-lambda + disc) / 2).epsilon(1e-12));
  CHECK(top.mu_minus == doctest::Approx((-lambda - disc) / 2).epsilon(1e-12));
  // trace is -lambda for every linearization of this field
  CHECK(top.J[0][0] + top.J[1][1] == doctest::Approx(-lambda).epsilon(1e-13));
  REQUIRE(top.has_stable_dir);
  CHECK(top.stable_dir[1] / top.stable_dir[0] == doctest::Approx(top.mu_minus).epsilon(1e-10));

  LinearizationReport bottom = linearize(pend, lambda, {0.5, 0.0});
  CHECK_FALSE(bottom.real_eigs);
  CHECK(bottom.hyperbolic);
  CHECK_FALSE(bottom.saddle);
  CHECK(bottom.re == doctest::Approx(-lambda / 2).epsilon(1e-12));
  CHECK(std::abs(bottom.im) ==
        doctest::Approx(std::sqrt(16 * pi * pi - lambda * lambda) / 2).epsilon(1e-12));

  CHECK_THROWS_AS(linearize(pend, lambda, {0.25, 0.3}), NotFixedPointError);
}

TEST_CASE("local stable manifold of the damped pendulum saddle") {
  HamiltonianSpec pend = make_pendulum();
  const double lambda = 0.1, delta = 0.1;
  LinearizationReport rep = linearize(pend, lambda, {0.0, 0.0});
  ManifoldPatch patch = stable_manifold_local(pend, lambda, rep, delta);
  CHECK(patch.x0 == 0.0);
  CHECK(patch.delta == doctest::Approx(delta));
  CHECK(std::abs(patch.eval(0.0)) <= 1e-12);

  // tangent to the stable eigendirection at the rest point
  const double slope = (patch.eval(0.01) - patch.eval(-0.01)) / 0.02;
  CHECK(slope == doctest::Approx(rep.mu_minus).epsilon(0.05));

  // stored samples flow back to the rest point
  const double T = 20.0 / std::abs(rep.mu_minus);
  const std::size_t m = patch.xs.size();
  for (std::size_t k = 0; k < m; k += 64) {
    PhasePoint e = flow_endpoint(pend, lambda, {wrap(patch.xs[k]), patch.hs[k]}, T, 1e-4);
    CHECK(phase_dist(e, {0.0, 0.0}) <= 1e-6);
  }

  CHECK_THROWS_AS(stable_manifold_local(pend, lambda, linearize(pend, lambda, {0.5, 0.0}), delta),
                  NotSaddleError);
}

TEST_CASE("undamped stable manifold matches the separatrix") {
  HamiltonianSpec pend = make_pendulum();
  LinearizationReport rep = linearize(pend, 0.0, {0.0, 0.0});
  ManifoldPatch patch = stable_manifold_local(pend, 0.0, rep, 0.12);
  for (double x : {-0.1, -0.05, 0.02, 0.08}) {
    const double sep = -(x > 0 ? 1.0 : -1.0) * std::sqrt(2.0 - 2.0 * std::cos(2 * pi * x));
    CHECK(patch.eval(x) == doctest::Approx(sep).epsilon(1e-6));
  }
}

TEST_CASE("long-run occupation statistics concentrate at the attractor") {
  HamiltonianSpec pend = make_pendulum();
  EmpiricalMeasure mu = empirical_measure(pend, 0.3, {0.25, 0.0}, 200.0, 1e-3, 0.5);
  CHECK(mu.mass_total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mu.samples > 0);
  CHECK(mu.mass_near(0.5, 0.0, 0.05) >= 0.95);
  CHECK(mu.mean_p2 <= 0.01);

  CHECK_THROWS_AS(empirical_measure(pend, 0.3, {0.25, 0.0}, 200.0, 1e-3, 1.0),
                  PreconditionError);
  CHECK_THROWS_AS(empirical_measure(pend, 0.3, {0.25, 0.0}, 5.0, 1e-3, 0.0),
                  PreconditionError);
}
