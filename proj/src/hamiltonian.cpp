#include <weakkam/hamiltonian.hpp>

namespace weakkam {

HamiltonianSpec make_pendulum() { return HamiltonianSpec{"pendulum", zero_field(), pendulum_cos()}; }

HamiltonianSpec make_mechanical(ScalarField U) {
  return HamiltonianSpec{"mechanical", zero_field(), std::move(U)};
}

HamiltonianSpec make_mane(ScalarField X) {
  return HamiltonianSpec{"mane", std::move(X), zero_field()};
}

HamiltonianSpec make_remark() { return HamiltonianSpec{"remark", zero_field(), remark_potential()}; }

HamiltonianSpec make_custom(ScalarField b, ScalarField U) {
  return HamiltonianSpec{"custom", std::move(b), std::move(U)};
}

}  // namespace weakkam
