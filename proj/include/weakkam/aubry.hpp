#pragma once

#include <weakkam/grid.hpp>
#include <weakkam/hamiltonian.hpp>
#include <weakkam/lax_oleinik.hpp>

#include <string>
#include <vector>

namespace weakkam {

struct AubryEstimate {
  std::vector<double> points;      // representatives, sorted in [0,1)
  std::string method;              // "reversible_argmax" or "loop_cost"
  double tolerance = 0.0;          // threshold used for candidate selection
  bool degenerate = false;         // every node qualified, no isolated points
  std::vector<double> loop_costs;  // per-node costs when method == "loop_cost"
};

// Reversible specs: points where U touches its maximum c, i.e. c - U(x) <= tol,
// clustered and refined by a local golden-section maximum of U.
AubryEstimate aubry_reversible(const HamiltonianSpec& spec, double c, const Grid& grid,
                               double tol);

// Direct minimal-loop-cost scan: for each node y the cheapest closed discrete
// path through y over integer horizons 1..t_max, computed by undiscounted
// backward dynamic programming. Nodes whose cost vanishes up to the scheme
// resolution are Aubry candidates. Meant for coarse grids; cost grows like
// n^2 * t_max / (h * dt).
AubryEstimate loop_cost_scan(const HamiltonianSpec& spec, double c, const Grid& grid,
                             const SemigroupConfig& cfg, int t_max = 8);

// Largest |u| over the estimate's points (linear interpolation).
double max_abs_on_points(const GridFunction& u, const AubryEstimate& est);

}  // namespace weakkam
