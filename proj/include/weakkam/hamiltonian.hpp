#pragma once

#include <weakkam/scalar_field.hpp>

#include <string>

namespace weakkam {

// H(x,p) = p^2/2 + b(x) p + U(x) on T^1 x R.
struct HamiltonianSpec {
  std::string family = "mechanical";
  ScalarField b;
  ScalarField U;

  bool reversible() const { return b.zero(); }
};

inline double eval_H(const HamiltonianSpec& s, double x, double p) {
  return 0.5 * p * p + s.b(x) * p + s.U(x);
}

// Reflected Hamiltonian H(x,-p); the drift changes sign.
inline double eval_H_check(const HamiltonianSpec& s, double x, double p) {
  return 0.5 * p * p - s.b(x) * p + s.U(x);
}

// Legendre transform of H in p: L(x,v) = (v - b)^2/2 - U.
inline double eval_L(const HamiltonianSpec& s, double x, double v) {
  double w = v - s.b(x);
  return 0.5 * w * w - s.U(x);
}

// Legendre transform of the reflected Hamiltonian: (v + b)^2/2 - U.
inline double eval_L_check(const HamiltonianSpec& s, double x, double v) {
  double w = v + s.b(x);
  return 0.5 * w * w - s.U(x);
}

struct LagrangianView {
  const HamiltonianSpec* spec = nullptr;

  double L(double x, double v) const { return eval_L(*spec, x, v); }
  double L_check(double x, double v) const { return eval_L_check(*spec, x, v); }
};

inline LagrangianView lagrangian(const HamiltonianSpec& s) { return LagrangianView{&s}; }

HamiltonianSpec make_pendulum();               // b = 0, U = cos(2 pi x)
HamiltonianSpec make_mechanical(ScalarField U);
HamiltonianSpec make_mane(ScalarField X);      // b = X, U = 0
HamiltonianSpec make_remark();                 // b = 0, U = -w - w'^2/2
HamiltonianSpec make_custom(ScalarField b, ScalarField U);

}  // namespace weakkam
