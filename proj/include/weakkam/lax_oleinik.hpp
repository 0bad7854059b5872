#pragma once

#include <weakkam/grid.hpp>
#include <weakkam/hamiltonian.hpp>

#include <string>
#include <vector>

namespace weakkam {

struct Trajectory;

struct SemigroupConfig {
  double dt = 0.0;     // 0: use the grid spacing
  double v_max = 0.0;  // 0: 2 (1 + max|b| + sqrt(2 (c - min U + 1)))
  int k_vel = 17;      // odd and >= 9, so v = 0 is always sampled
  int refine_iters = 40;
  double tol_fix = 1e-8;
  long max_steps = 1000000;
  bool stabilize_forward = false;
  double blowup_factor = 1e3;
};

double resolve_dt(const SemigroupConfig& cfg, const Grid& g);
double resolve_v_max(const SemigroupConfig& cfg, const HamiltonianSpec& spec, double c);

struct DiscountWeights {
  double shrink = 1.0;     // e^{-lambda dt}
  double grow = 1.0;       // e^{+lambda dt}
  double beta_back = 0.0;  // (1 - e^{-lambda dt}) / lambda, dt at lambda = 0
  double beta_fwd = 0.0;   // (e^{+lambda dt} - 1) / lambda, dt at lambda = 0
};

DiscountWeights discount_weights(double lambda, double dt);

struct StepStats {
  long boundary_min_hits = 0;
  long boundary_max_hits = 0;
};

// One discounted backward step:
//   u'(x_i) = min_v [ e^{-lambda dt} u(x_i - v dt) + beta (L_check(x_i,v) + c) ].
// Velocity search: k_vel uniform samples on [-v_max, v_max] scanned outward from
// v = 0 (ties go to the smallest |v|), then golden-section refinement.
GridFunction backward_step(const GridFunction& u, const HamiltonianSpec& spec, double lambda,
                           double c, const SemigroupConfig& cfg, StepStats* stats = nullptr);

// One discounted forward step:
//   u'(x_i) = max_v [ e^{+lambda dt} u(x_i + v dt) - beta (L_check(x_i,v) + c) ].
GridFunction forward_step(const GridFunction& u, const HamiltonianSpec& spec, double lambda,
                          double c, const SemigroupConfig& cfg, StepStats* stats = nullptr);

struct SolveReport {
  GridFunction solution;
  long iterations = 0;
  double final_update_norm = 0.0;
  double residual_sup = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;
};

// Fixed point of backward_step (the discrete discounted solution). The step map
// contracts by e^{-lambda dt} per iteration and commutes with constants, so the
// remaining distance to the fixed point is bracketed by the min/max of the last
// update; iteration stops once that bracket is below tol_fix and the certified
// midpoint is returned.
SolveReport solve_discounted(const HamiltonianSpec& spec, double lambda, double c,
                             const SemigroupConfig& cfg, const GridFunction& u_init);

// Forward iteration from u_start until the sup change per step drops below
// tol_fix * (1 + sup|u_start|). With stabilize_forward the iterates are clamped
// below clamp (pass u_lambda); the reported residual check is always unclamped.
SolveReport forward_iterate(const GridFunction& u_start, const HamiltonianSpec& spec,
                            double lambda, double c, const SemigroupConfig& cfg,
                            const GridFunction* clamp = nullptr);

// Backward solve followed by the forward iteration started at u_lambda.
struct ForwardLimitReport {
  SolveReport backward;
  SolveReport forward;
};

ForwardLimitReport forward_limit(const HamiltonianSpec& spec, double lambda, double c,
                                 const Grid& grid, const SemigroupConfig& cfg);

// -u_plus; the minimal solution of the sign-flipped discounted equation.
SolveReport minimal_solution_negative(const HamiltonianSpec& spec, double lambda, double c,
                                      const Grid& grid, const SemigroupConfig& cfg);

// Node-wise Lax-Friedrichs residual of lambda u + H_check(x, du) - c, with the
// local dissipation coefficient theta_i = max(|D-u_i - b_i|, |D+u_i - b_i|).
GridFunction residual(const GridFunction& u, const HamiltonianSpec& spec, double lambda,
                      double c);

// Max over trajectory sample times of
//   | e^{lambda t} u(x(t)) - u(x(0)) - int_0^t e^{lambda s} (L_check + c) ds |
// with trapezoid quadrature along the trajectory.
double calibration_defect(const GridFunction& u, const Trajectory& traj,
                          const HamiltonianSpec& spec, double lambda, double c);

}  // namespace weakkam
