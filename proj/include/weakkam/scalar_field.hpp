#pragma once

#include <string>
#include <vector>

namespace weakkam {

// Trigonometric polynomial a0 + sum_k ac[k-1] cos(2 pi k x) + as[k-1] sin(2 pi k x).
// Smooth and exactly 1-periodic, with closed-form derivatives.
struct TrigPoly {
  double a0 = 0.0;
  std::vector<double> ac;
  std::vector<double> as;

  double eval(double x) const;
  double deriv1(double x) const;
  double deriv2(double x) const;
  bool zero() const;
};

struct ScalarField {
  std::string name = "zero";
  TrigPoly poly;

  double operator()(double x) const { return poly.eval(x); }
  double d1(double x) const { return poly.deriv1(x); }
  double d2(double x) const { return poly.deriv2(x); }
  bool zero() const { return poly.zero(); }
};

ScalarField zero_field();
ScalarField pendulum_cos();      // cos(2 pi x)
ScalarField remark_w();          // 0.1 (1 - cos(2 pi x))
ScalarField remark_potential();  // -w - |w'|^2 / 2
ScalarField trig_field(std::string name, TrigPoly poly);

double max_on_circle(const ScalarField& f, int samples = 4096);
double min_on_circle(const ScalarField& f, int samples = 4096);
double max_abs_on_circle(const ScalarField& f, int samples = 4096);

}  // namespace weakkam
