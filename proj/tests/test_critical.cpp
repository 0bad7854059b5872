#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <weakkam/critical.hpp>
#include <weakkam/errors.hpp>
#include <weakkam/hamiltonian.hpp>
#include <weakkam/scalar_field.hpp>

#include <cmath>

using namespace weakkam;

namespace {

HamiltonianSpec mane_sin() {
  TrigPoly s;
  s.ac = {0.0};
  s.as = {1.0};
  return make_mane(trig_field("sin", s));
}

}  // namespace

TEST_CASE("reversible critical value is the potential maximum") {
  CriticalReport pend = critical_value_reversible(make_pendulum());
  CHECK(pend.method == "reversible_max");
  CHECK(pend.c == doctest::Approx(1.0).epsilon(1e-12));

  CriticalReport rem = critical_value_reversible(make_remark());
  CHECK(rem.c == doctest::Approx(0.0).epsilon(1e-10));

  // off-node maximum: U = 0.3 + 0.2 sin(2 pi x) + 0.1 cos(4 pi x)
  TrigPoly p;
  p.a0 = 0.3;
  p.ac = {0.0, 0.1};
  p.as = {0.2};
  ScalarField U = trig_field("bumpy", p);
  double ref = U(0.0);
  for (int i = 1; i < 200000; ++i) ref = std::max(ref, U(i / 200000.0));
  CriticalReport bumpy = critical_value_reversible(make_mechanical(U));
  CHECK(bumpy.c == doctest::Approx(ref).epsilon(1e-9));

  CHECK_THROWS_AS(critical_value_reversible(mane_sin()), NotReversibleError);
}

TEST_CASE("constant subsolution margin") {
  SubsolutionCheck ok = check_constant_subsolution(make_pendulum(), 1.0);
  CHECK(ok.ok);
  CHECK(ok.margin == doctest::Approx(0.0).epsilon(1e-9));
  SubsolutionCheck low = check_constant_subsolution(make_pendulum(), 0.9);
  CHECK_FALSE(low.ok);
  CHECK(low.margin == doctest::Approx(-0.1).epsilon(1e-9));
}

TEST_CASE("lambda list validation") {
  Grid g = Grid::uniform(128);
  SemigroupConfig cfg;
  CHECK_THROWS_AS(critical_value_ergodic(make_pendulum(), {}, g, cfg), PreconditionError);
  CHECK_THROWS_AS(critical_value_ergodic(make_pendulum(), {0.1, 0.2}, g, cfg),
                  PreconditionError);
  CHECK_THROWS_AS(critical_value_ergodic(make_pendulum(), {2.0, 0.5}, g, cfg),
                  PreconditionError);
  CHECK_THROWS_AS(critical_value_ergodic(make_pendulum(), {0.5, -0.1}, g, cfg),
                  PreconditionError);
}

TEST_CASE("discounted sweep recovers the critical value") {
  Grid g = Grid::uniform(1024);
  SemigroupConfig cfg;
  cfg.dt = 0.05;  // the reference-node estimate does not see the time step
  const std::vector<double> lambdas{0.5, 0.2, 0.1, 0.05, 0.02};

  CriticalReport pend = critical_value_ergodic(make_pendulum(), lambdas, g, cfg);
  CHECK(pend.method == "ergodic_limit");
  CHECK(pend.lambda_trace.size() == lambdas.size());
  CHECK(pend.c == doctest::Approx(1.0).epsilon(5e-3));

  CriticalReport rem = critical_value_ergodic(make_remark(), lambdas, g, cfg);
  CHECK(rem.c == doctest::Approx(0.0).epsilon(5e-3));

  // drift-only spec with zeros: the zero function solves every lambda level,
  // so the critical value sits at 0
  CriticalReport mane = critical_value_ergodic(mane_sin(), lambdas, g, cfg);
  CHECK(std::abs(mane.c) <= 5e-3);
}

TEST_CASE("both critical methods agree on reversible specs") {
  Grid g = Grid::uniform(512);
  SemigroupConfig cfg;
  cfg.dt = 0.05;
  const std::vector<double> lambdas{0.2, 0.1, 0.05, 0.02};
  for (HamiltonianSpec spec : {make_pendulum(), make_remark()}) {
    const double exact = critical_value_reversible(spec).c;
    const double swept = critical_value_ergodic(spec, lambdas, g, cfg).c;
    CHECK(swept == doctest::Approx(exact).epsilon(5e-3));
  }
}
