#include <weakkam/scalar_field.hpp>

#include <cmath>
#include <numbers>

namespace weakkam {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double TrigPoly::eval(double x) const {
  double s = a0;
  for (std::size_t k = 0; k < ac.size(); ++k)
    if (ac[k] != 0.0) s += ac[k] * std::cos(two_pi * double(k + 1) * x);
  for (std::size_t k = 0; k < as.size(); ++k)
    if (as[k] != 0.0) s += as[k] * std::sin(two_pi * double(k + 1) * x);
  return s;
}

double TrigPoly::deriv1(double x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < ac.size(); ++k) {
    if (ac[k] == 0.0) continue;
    double w = two_pi * double(k + 1);
    s -= ac[k] * w * std::sin(w * x);
  }
  for (std::size_t k = 0; k < as.size(); ++k) {
    if (as[k] == 0.0) continue;
    double w = two_pi * double(k + 1);
    s += as[k] * w * std::cos(w * x);
  }
  return s;
}

double TrigPoly::deriv2(double x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < ac.size(); ++k) {
    if (ac[k] == 0.0) continue;
    double w = two_pi * double(k + 1);
    s -= ac[k] * w * w * std::cos(w * x);
  }
  for (std::size_t k = 0; k < as.size(); ++k) {
    if (as[k] == 0.0) continue;
    double w = two_pi * double(k + 1);
    s -= as[k] * w * w * std::sin(w * x);
  }
  return s;
}

bool TrigPoly::zero() const {
  if (a0 != 0.0) return false;
  for (double c : ac)
    if (c != 0.0) return false;
  for (double c : as)
    if (c != 0.0) return false;
  return true;
}

ScalarField zero_field() { return ScalarField{"zero", {}}; }

ScalarField pendulum_cos() {
  TrigPoly p;
  p.ac = {1.0};
  return ScalarField{"pendulum_cos", p};
}

ScalarField remark_w() {
  // 0.1 (1 - cos(2 pi x))
  TrigPoly p;
  p.a0 = 0.1;
  p.ac = {-0.1};
  return ScalarField{"remark_w", p};
}

ScalarField remark_potential() {
  // U = -w - w'^2/2 with w = 0.1(1 - cos(2 pi x)).
  // w'^2/2 = 0.02 pi^2 sin^2(2 pi x) = 0.01 pi^2 (1 - cos(4 pi x)), so U stays a
  // trig polynomial: U = (-0.1 - 0.01 pi^2) + 0.1 cos(2 pi x) + 0.01 pi^2 cos(4 pi x).
  const double pi2 = std::numbers::pi * std::numbers::pi;
  TrigPoly p;
  p.a0 = -0.1 - 0.01 * pi2;
  p.ac = {0.1, 0.01 * pi2};
  return ScalarField{"remark_potential", p};
}

ScalarField trig_field(std::string name, TrigPoly poly) {
  return ScalarField{std::move(name), std::move(poly)};
}

double max_on_circle(const ScalarField& f, int samples) {
  double m = f(0.0);
  for (int i = 1; i < samples; ++i) m = std::max(m, f(double(i) / samples));
  return m;
}

double min_on_circle(const ScalarField& f, int samples) {
  double m = f(0.0);
  for (int i = 1; i < samples; ++i) m = std::min(m, f(double(i) / samples));
  return m;
}

double max_abs_on_circle(const ScalarField& f, int samples) {
  double m = std::fabs(f(0.0));
  for (int i = 1; i < samples; ++i) m = std::max(m, std::fabs(f(double(i) / samples)));
  return m;
}

}  // namespace weakkam
