#pragma once

#include <weakkam/hamiltonian.hpp>
#include <weakkam/lax_oleinik.hpp>

#include <string>
#include <utility>
#include <vector>

namespace weakkam {

struct CriticalReport {
  double c = 0.0;
  std::string method;
  std::vector<std::pair<double, double>> lambda_trace;  // (lambda, estimate)
};

// Reversible specs only: c = max_x H(x,0) = max_x U(x), from a dense scan plus
// golden-section refinement around the best node.
CriticalReport critical_value_reversible(const HamiltonianSpec& spec);

// Solves lambda w + H_check(x, Dw) = 0 down a decreasing lambda list and reads
// the estimate -lambda w(x_ref) at the reference node x_ref = 0; consecutive
// solves are warm started through the 1/lambda shift. The final value linearly
// extrapolates the last two trace entries to lambda = 0.
CriticalReport critical_value_ergodic(const HamiltonianSpec& spec,
                                      const std::vector<double>& lambdas, const Grid& grid,
                                      const SemigroupConfig& cfg, double stab_tol = 5e-3);

struct SubsolutionCheck {
  double margin = 0.0;  // min over the circle of c - H(x,0)
  bool ok = false;
};

SubsolutionCheck check_constant_subsolution(const HamiltonianSpec& spec, double c,
                                            double tol = 1e-8);

}  // namespace weakkam
