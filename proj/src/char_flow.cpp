#include <weakkam/char_flow.hpp>

#include <weakkam/errors.hpp>
#include <weakkam/torus.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weakkam {

namespace {

template <typename Real>
Real tp_eval(const TrigPoly& f, Real x) {
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  Real s = Real(f.a0);
  for (std::size_t k = 0; k < f.ac.size(); ++k)
    if (f.ac[k] != 0.0) s += Real(f.ac[k]) * std::cos(two_pi * Real(k + 1) * x);
  for (std::size_t k = 0; k < f.as.size(); ++k)
    if (f.as[k] != 0.0) s += Real(f.as[k]) * std::sin(two_pi * Real(k + 1) * x);
  return s;
}

template <typename Real>
Real tp_d1(const TrigPoly& f, Real x) {
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  Real s = 0;
  for (std::size_t k = 0; k < f.ac.size(); ++k) {
    if (f.ac[k] == 0.0) continue;
    Real w = two_pi * Real(k + 1);
    s -= Real(f.ac[k]) * w * std::sin(w * x);
  }
  for (std::size_t k = 0; k < f.as.size(); ++k) {
    if (f.as[k] == 0.0) continue;
    Real w = two_pi * Real(k + 1);
    s += Real(f.as[k]) * w * std::cos(w * x);
  }
  return s;
}

template <typename Real>
struct FState {
  Real x = 0;
  Real p = 0;
};

template <typename Real>
FState<Real> field(const HamiltonianSpec& spec, Real lambda, FState<Real> q, Real dir) {
  Real b = tp_eval(spec.b.poly, q.x);
  Real db = tp_d1(spec.b.poly, q.x);
  Real dU = tp_d1(spec.U.poly, q.x);
  return {dir * (q.p - b), dir * (db * q.p - dU - lambda * q.p)};
}

template <typename Real>
FState<Real> rk4_step(const HamiltonianSpec& spec, Real lambda, FState<Real> q, Real dt,
                      Real dir) {
  auto add = [](FState<Real> a, FState<Real> b, Real s) {
    return FState<Real>{a.x + s * b.x, a.p + s * b.p};
  };
  FState<Real> k1 = field(spec, lambda, q, dir);
  FState<Real> k2 = field(spec, lambda, add(q, k1, dt / 2), dir);
  FState<Real> k3 = field(spec, lambda, add(q, k2, dt / 2), dir);
  FState<Real> k4 = field(spec, lambda, add(q, k3, dt), dir);
  FState<Real> out = q;
  out.x += dt / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
  out.p += dt / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
  return out;
}

}  // namespace

PhasePoint vector_field(const HamiltonianSpec& spec, double lambda, PhasePoint q) {
  FState<double> f = field<double>(spec, lambda, {q.x, q.p}, 1.0);
  return {f.x, f.p};
}

Trajectory integrate(const HamiltonianSpec& spec, double lambda, PhasePoint q0, double T,
                     double dt_flow, double p_abort) {
  if (dt_flow <= 0.0) throw PreconditionError("integrate needs dt_flow > 0");
  const double dir = T >= 0.0 ? 1.0 : -1.0;
  const long steps = std::lround(std::fabs(T) / dt_flow);
  Trajectory traj;
  traj.dt_flow = dt_flow;
  traj.points.reserve(std::size_t(steps) + 1);
  FState<double> q{wrap(q0.x), q0.p};
  traj.points.push_back({q.x, q.p});
  for (long k = 0; k < steps; ++k) {
    q = rk4_step<double>(spec, lambda, q, dt_flow, dir);
    q.x = wrap(q.x);
    if (std::fabs(q.p) > p_abort)
      throw BlowupError("integrate: momentum left the admissible window");
    traj.points.push_back({q.x, q.p});
  }
  return traj;
}

PhasePoint flow_endpoint(const HamiltonianSpec& spec, double lambda, PhasePoint q0, double T,
                         double dt_flow, double p_abort) {
  if (dt_flow <= 0.0) throw PreconditionError("flow_endpoint needs dt_flow > 0");
  const long double dir = T >= 0.0 ? 1.0L : -1.0L;
  const long steps = std::lround(std::fabs(T) / dt_flow);
  FState<long double> q{(long double)q0.x, (long double)q0.p};
  for (long k = 0; k < steps; ++k) {
    q = rk4_step<long double>(spec, (long double)lambda, q, (long double)dt_flow, dir);
    if (std::fabs((double)q.p) > p_abort)
      throw BlowupError("flow_endpoint: momentum left the admissible window");
  }
  return {wrap((double)q.x), (double)q.p};
}

FixedPointScan find_fixed_points(const HamiltonianSpec& spec, double lambda, int samples) {
  // rest points satisfy p = b(x) and g(x) = b'(x) b(x) - U'(x) - lambda b(x) = 0
  auto g = [&](double x) {
    double b = spec.b(x);
    return spec.b.d1(x) * b - spec.U.d1(x) - lambda * b;
  };
  FixedPointScan scan;
  double gmax = 0.0;
  std::vector<double> gv(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    gv[std::size_t(i)] = g(double(i) / samples);
    gmax = std::max(gmax, std::fabs(gv[std::size_t(i)]));
  }
  if (gmax < 1e-13) {
    scan.degenerate_continuum = true;
    return scan;
  }
  std::vector<double> roots;
  for (int i = 0; i < samples; ++i) {
    double a = gv[std::size_t(i)];
    double b = gv[std::size_t((i + 1) % samples)];
    double xa = double(i) / samples;
    double xb = double(i + 1) / samples;
    if (a == 0.0) {
      roots.push_back(xa);
      continue;
    }
    if (a * b >= 0.0) continue;
    for (int it = 0; it < 100; ++it) {
      double xm = 0.5 * (xa + xb);
      double gm = g(xm);
      if (gm == 0.0) {
        xa = xb = xm;
        break;
      }
      if (a * gm < 0.0)
        xb = xm;
      else {
        xa = xm;
        a = gm;
      }
    }
    roots.push_back(wrap(0.5 * (xa + xb)));
  }
  std::sort(roots.begin(), roots.end());
  for (double x : roots) {
    if (!scan.points.empty() && torus_dist(scan.points.back().x, x) < 1e-8) continue;
    scan.points.push_back({x, spec.b(x)});
  }
  if (scan.points.size() > 1 &&
      torus_dist(scan.points.front().x, scan.points.back().x) < 1e-8)
    scan.points.pop_back();
  return scan;
}

LinearizationReport linearize(const HamiltonianSpec& spec, double lambda, PhasePoint q) {
  PhasePoint f = vector_field(spec, lambda, q);
  if (std::hypot(f.x, f.p) >= 1e-10)
    throw NotFixedPointError("linearize: point is not a rest point of the flow");
  LinearizationReport rep;
  rep.at = q;
  double db = spec.b.d1(q.x);
  double ddb = spec.b.d2(q.x);
  double ddU = spec.U.d2(q.x);
  rep.J[0][0] = -db;
  rep.J[0][1] = 1.0;
  rep.J[1][0] = ddb * q.p - ddU;
  rep.J[1][1] = db - lambda;
  double tr = rep.J[0][0] + rep.J[1][1];  // always -lambda
  double det = rep.J[0][0] * rep.J[1][1] - rep.J[0][1] * rep.J[1][0];
  double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    rep.real_eigs = true;
    double s = std::sqrt(disc);
    rep.mu_minus = 0.5 * (tr - s);
    rep.mu_plus = 0.5 * (tr + s);
    rep.hyperbolic = std::fabs(rep.mu_minus) > 1e-12 && std::fabs(rep.mu_plus) > 1e-12;
    rep.saddle = rep.mu_minus < 0.0 && rep.mu_plus > 0.0;
    if (rep.mu_minus < 0.0) {
      rep.has_stable_dir = true;
      // J row one is (-b', 1), so (1, mu - J00) spans the mu eigenspace
      double v2 = rep.mu_minus - rep.J[0][0];
      double nrm = std::hypot(1.0, v2);
      rep.stable_dir[0] = 1.0 / nrm;
      rep.stable_dir[1] = v2 / nrm;
    }
  } else {
    rep.real_eigs = false;
    rep.re = 0.5 * tr;
    rep.im = 0.5 * std::sqrt(-disc);
    rep.hyperbolic = std::fabs(rep.re) > 1e-12;
  }
  return rep;
}

double ManifoldPatch::eval(double x) const {
  if (xs.size() < 2) throw GraphFailureError("manifold patch is empty");
  if (x <= xs.front()) return hs.front();
  if (x >= xs.back()) return hs.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t j = std::size_t(it - xs.begin()) - 1;
  double t = (x - xs[j]) / (xs[j + 1] - xs[j]);
  return (1.0 - t) * hs[j] + t * hs[j + 1];
}

namespace {

struct BranchPoint {
  long double x, p, dpdx;
};

// Backward shot along the stable eigendirection; returns samples with
// monotone |x - x0| excursion up to delta, or an empty list if it stalls.
std::vector<BranchPoint> shoot_branch(const HamiltonianSpec& spec, long double lambda,
                                      long double x0, long double p0, long double vx,
                                      long double vp, long double eps, long double delta,
                                      long double dt) {
  std::vector<BranchPoint> pts;
  FState<long double> q{x0 + eps * vx, p0 + eps * vp};
  const long steps_cap = 4000000;
  long double prev_exc = 0;
  auto record = [&](FState<long double> s) {
    FState<long double> f = field<long double>(spec, lambda, s, 1.0L);
    if (std::fabs((double)f.x) < 1e-300) return false;
    pts.push_back({s.x, s.p, f.p / f.x});
    return true;
  };
  if (!record(q)) return {};
  for (long k = 0; k < steps_cap; ++k) {
    q = rk4_step<long double>(spec, lambda, q, dt, -1.0L);
    long double exc = std::fabs((double)(q.x - x0));
    if (exc < prev_exc - 16 * eps && exc < delta)
      throw GraphFailureError("stable manifold folds before covering the window");
    prev_exc = std::max(prev_exc, exc);
    if (!record(q)) return {};
    if (exc >= delta * 1.02L) return pts;
    if (std::fabs((double)q.p) > 1e6) return {};
  }
  return {};
}

long double hermite(long double x, const BranchPoint& a, const BranchPoint& b) {
  long double w = b.x - a.x;
  long double t = (x - a.x) / w;
  long double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * a.p + (t3 - 2 * t2 + t) * w * a.dpdx +
         (-2 * t3 + 3 * t2) * b.p + (t3 - t2) * w * b.dpdx;
}

}  // namespace

ManifoldPatch stable_manifold_local(const HamiltonianSpec& spec, double lambda,
                                    const LinearizationReport& rep, double delta, double eps,
                                    double dt_flow) {
  if (!rep.saddle || !rep.has_stable_dir)
    throw NotSaddleError("stable_manifold_local needs a saddle with a stable direction");
  const long double x0 = rep.at.x;
  const long double p0 = rep.at.p;
  const long double vx = rep.stable_dir[0];
  const long double vp = rep.stable_dir[1];

  ManifoldPatch patch;
  patch.x0 = rep.at.x;
  patch.delta = delta;
  // odd, so x0 itself is a sample; dense enough that eval() interpolation
  // stays well below the transverse accuracy of the shot samples
  const int m = 2049;
  patch.xs.resize(m);
  patch.hs.resize(m);

  for (int side : {+1, -1}) {
    std::vector<BranchPoint> pts;
    long double e = eps;
    for (int attempt = 0; attempt < 7 && pts.empty(); ++attempt, e *= 10) {
      if (e > delta) break;
      pts = shoot_branch(spec, lambda, x0, p0, side * vx, side * vp, e, delta, dt_flow);
    }
    if (pts.empty())
      throw GraphFailureError("backward shooting stalled before covering the window");
    bool increasing = pts.back().x > pts.front().x;
    if (!increasing) std::reverse(pts.begin(), pts.end());
    for (std::size_t k = 1; k < pts.size(); ++k)
      if (pts[k].x <= pts[k - 1].x)
        throw GraphFailureError("stable manifold is not a graph over the window");

    for (int j = 0; j < m; ++j) {
      long double xt = x0 + (long double)(delta) * (2.0L * j / (m - 1) - 1.0L);
      bool on_side = side > 0 ? xt > x0 : xt < x0;
      if (!on_side) continue;
      auto it = std::lower_bound(pts.begin(), pts.end(), xt,
                                 [](const BranchPoint& a, long double v) { return a.x < v; });
      if (it == pts.begin() || it == pts.end()) {
        // the seed gap next to x0; the eigenline is accurate there
        patch.xs[std::size_t(j)] = double(xt);
        patch.hs[std::size_t(j)] = double(p0 + (xt - x0) * (vp / vx));
        continue;
      }
      patch.xs[std::size_t(j)] = double(xt);
      patch.hs[std::size_t(j)] = double(hermite(xt, *(it - 1), *it));
    }
  }
  patch.xs[std::size_t((m - 1) / 2)] = double(x0);
  patch.hs[std::size_t((m - 1) / 2)] = double(p0);
  return patch;
}

double EmpiricalMeasure::mass_total() const {
  double s = 0.0;
  for (double v : mass) s += v;
  return s;
}

double EmpiricalMeasure::mass_near(double x, double p, double radius) const {
  double s = 0.0;
  for (int i = 0; i < nx; ++i) {
    double xc = (i + 0.5) / nx;
    double dx = torus_dist(xc, x);
    for (int j = 0; j < np; ++j) {
      double pc = -p_max + (j + 0.5) * (2.0 * p_max / np);
      if (std::hypot(dx, pc - p) <= radius) s += mass[std::size_t(i) * np + j];
    }
  }
  return s;
}

EmpiricalMeasure empirical_measure(const HamiltonianSpec& spec, double lambda, PhasePoint q0,
                                   double T, double dt_flow, double transient, int nx, int np,
                                   double p_max) {
  if (transient < 0.0 || transient >= 1.0)
    throw PreconditionError("empirical_measure needs transient in [0,1)");
  if ((1.0 - transient) * T < 10.0)
    throw PreconditionError("empirical_measure needs (1 - transient) T >= 10");
  Trajectory traj = integrate(spec, lambda, q0, T, dt_flow);
  std::size_t first = std::size_t(transient * double(traj.points.size()));
  std::size_t kept = traj.points.size() - first;

  EmpiricalMeasure mu;
  mu.nx = nx;
  mu.np = np;
  mu.transient = transient;
  mu.samples = long(kept);
  if (p_max <= 0.0) {
    double pm = 0.0;
    for (std::size_t k = first; k < traj.points.size(); ++k)
      pm = std::max(pm, std::fabs(traj.points[k].p));
    p_max = 1.05 * pm + 1e-9;
  }
  mu.p_max = p_max;
  mu.mass.assign(std::size_t(nx) * np, 0.0);
  const double wgt = 1.0 / double(kept);
  double p2 = 0.0;
  for (std::size_t k = first; k < traj.points.size(); ++k) {
    const PhasePoint& q = traj.points[k];
    int i = int(wrap(q.x) * nx);
    if (i >= nx) i = nx - 1;
    int j = int((q.p + p_max) / (2.0 * p_max) * np);
    j = std::clamp(j, 0, np - 1);
    mu.mass[std::size_t(i) * np + j] += wgt;
    p2 += q.p * q.p;
  }
  mu.mean_p2 = p2 / double(kept);
  return mu;
}

std::vector<std::pair<double, double>> dissipation_profile(const Trajectory& traj,
                                                           const HamiltonianSpec& spec,
                                                           double lambda) {
  (void)lambda;
  if (!spec.reversible())
    throw NotReversibleError("dissipation_profile is defined for reversible specs");
  std::vector<std::pair<double, double>> out;
  out.reserve(traj.points.size());
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    const PhasePoint& q = traj.points[k];
    out.emplace_back(traj.t(k), eval_H_check(spec, q.x, q.p));
  }
  return out;
}

}  // namespace weakkam
