#pragma once

#include <weakkam/hamiltonian.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace weakkam {

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

// Characteristic field of the discounted equation:
//   dx/dt = p - b(x),  dp/dt = b'(x) p - U'(x) - lambda p.
PhasePoint vector_field(const HamiltonianSpec& spec, double lambda, PhasePoint q);

struct Trajectory {
  double dt_flow = 0.0;
  std::vector<PhasePoint> points;  // sampled at t_k = k dt_flow

  double t(std::size_t k) const { return double(k) * dt_flow; }
};

// Classical fixed-step RK4. Negative T integrates the time-reversed field.
// Positions are stored wrapped to [0,1).
Trajectory integrate(const HamiltonianSpec& spec, double lambda, PhasePoint q0, double T,
                     double dt_flow = 1e-3, double p_abort = 1e3);

// Endpoint of the flow only, carried in extended precision. Orbits that pass
// near a hyperbolic point amplify early roundoff by the unstable rate, so a
// double-precision trajectory cannot certify endpoint distances near 1e-6;
// this one can.
PhasePoint flow_endpoint(const HamiltonianSpec& spec, double lambda, PhasePoint q0, double T,
                         double dt_flow = 1e-4, double p_abort = 1e3);

struct FixedPointScan {
  std::vector<PhasePoint> points;
  bool degenerate_continuum = false;  // the whole circle consists of rest points
};

FixedPointScan find_fixed_points(const HamiltonianSpec& spec, double lambda,
                                 int samples = 8192);

struct LinearizationReport {
  PhasePoint at;
  double J[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  bool real_eigs = false;
  double mu_minus = 0.0;  // real case, mu_minus <= mu_plus
  double mu_plus = 0.0;
  double re = 0.0;  // complex case re +- i im
  double im = 0.0;
  bool hyperbolic = false;
  bool saddle = false;
  bool has_stable_dir = false;
  double stable_dir[2] = {0.0, 0.0};
};

LinearizationReport linearize(const HamiltonianSpec& spec, double lambda, PhasePoint q);

// Local stable manifold of a saddle as a graph p = h(x) for |x - x0| <= delta,
// from backward shooting along the stable eigendirection (seed offset eps,
// grown geometrically if the shot stalls). Extended precision is used
// internally so the samples can be flowed back through the saddle.
struct ManifoldPatch {
  double x0 = 0.0;
  double delta = 0.0;
  std::vector<double> xs;  // unwrapped, centered at x0
  std::vector<double> hs;

  double eval(double x) const;  // linear interpolation between samples
};

ManifoldPatch stable_manifold_local(const HamiltonianSpec& spec, double lambda,
                                    const LinearizationReport& rep, double delta,
                                    double eps = 1e-6, double dt_flow = 1e-4);

struct EmpiricalMeasure {
  int nx = 0;
  int np = 0;
  double p_max = 0.0;
  std::vector<double> mass;  // nx * np, total mass 1
  long samples = 0;
  double transient = 0.0;
  double mean_p2 = 0.0;  // second moment of the p marginal, from raw samples

  double mass_total() const;
  // total mass of bins whose center lies within the given phase-space radius
  double mass_near(double x, double p, double radius) const;
};

EmpiricalMeasure empirical_measure(const HamiltonianSpec& spec, double lambda, PhasePoint q0,
                                   double T, double dt_flow, double transient, int nx = 192,
                                   int np = 193, double p_max = 0.0);

// (t_k, H_check(x_k, p_k)) along a trajectory; reversible specs only.
std::vector<std::pair<double, double>> dissipation_profile(const Trajectory& traj,
                                                           const HamiltonianSpec& spec,
                                                           double lambda);

}  // namespace weakkam
