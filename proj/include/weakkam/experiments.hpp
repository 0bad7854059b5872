#pragma once

#include <weakkam/grid.hpp>
#include <weakkam/hamiltonian.hpp>
#include <weakkam/lax_oleinik.hpp>

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace weakkam {

// One experiment = config in, report out. Runners are pure given the config,
// so identical config and seed reproduce the report body bit for bit.
// Wall-clock timings are kept beside the report and written to a separate
// sidecar file; the main artifact stays deterministic.

struct ExperimentConfig {
  std::string experiment;
  HamiltonianSpec spec = make_pendulum();
  std::vector<double> lambdas;  // empty: per-experiment default
  int n = 0;                    // 0: per-experiment default
  SemigroupConfig semi;
  std::string out_dir;  // consumed by the CLI, not by the runners
  unsigned seed = 1;
  // NaN: compute the critical value from the spec
  double c_override = std::numeric_limits<double>::quiet_NaN();
};

// Flat key = value text with [hamiltonian] and [semigroup] sections.
// Unknown keys and sections are errors.
ExperimentConfig parse_config_file(const std::string& path);

// A verdict measures a violation and compares it against a bound;
// pass iff measured <= bound. Each one names the module invariant it
// instantiates.
struct Verdict {
  std::string module;
  std::string invariant;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
};

struct RunRecord {
  std::string label;  // e.g. "lambda=0.1" or "n=256"
  std::vector<std::pair<std::string, double>> scalars;
};

// Numeric table dumped as one CSV file; meta goes into the header comment.
struct OutputTable {
  std::string name;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> cols;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  std::string experiment;
  std::string family;
  int n = 0;
  double dt = 0.0;
  double c = 0.0;
  unsigned seed = 0;
  std::vector<double> lambdas;
  std::vector<RunRecord> records;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  std::vector<OutputTable> tables;
  std::vector<std::pair<std::string, double>> timings_ms;  // sidecar only

  bool all_pass() const;
};

// Backward sweep u_lambda over a decreasing discount list: nonnegativity,
// nodewise monotonicity in lambda, Cauchy sup-differences, vanishing at the
// computed Aubry points.
ExperimentReport run_vanishing_plus(const ExperimentConfig& cfg);

// Forward sweep u_lambda^+ (and u_lambda^- = -u_lambda^+): domination by
// u_lambda, vanishing at the Aubry points, Cauchy sup-differences of the
// minus branch, equi-Lipschitz bound.
ExperimentReport run_vanishing_minus(const ExperimentConfig& cfg);

// Two exact solutions of -u + |u'|^2/2 = 0 on the circle (0 and the
// periodized parabola) plus the computed minimal solution; residual
// refinement study.
ExperimentReport run_nonuniqueness_demo(const ExperimentConfig& cfg);

// Multi-start forward limits at one small discount; gradient of the limit
// against the stable-manifold graph through the Aubry point.
ExperimentReport run_pendulum_uniqueness(const ExperimentConfig& cfg);

// The two-rest-point potential at discount 1: smooth-solution residual,
// both marked rest points, static orbits there.
ExperimentReport run_remark_counterexample(const ExperimentConfig& cfg);

// Fixed points, linearizations, a trajectory fan, dissipation profile,
// stable manifold, and an occupation histogram for one discount value.
ExperimentReport run_flow_portrait(const ExperimentConfig& cfg);

// Dispatch on cfg.experiment.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Deterministic JSON body of the report (timings excluded).
std::string report_to_json(const ExperimentReport& rep);

// report.json, one CSV per table, plot.gp and timings.json under dir.
void write_report(const ExperimentReport& rep, const std::string& dir);

}  // namespace weakkam
