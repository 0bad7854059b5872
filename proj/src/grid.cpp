#include <weakkam/grid.hpp>

#include <weakkam/errors.hpp>

#include <algorithm>
#include <cmath>

namespace weakkam {

Grid Grid::uniform(int n) {
  if (n < 2) throw ConfigError("grid needs at least 2 nodes");
  return Grid{n, 1.0 / n};
}

GridFunction constant_function(const Grid& g, double value) {
  return GridFunction{g, std::vector<double>(std::size_t(g.n), value)};
}

GridFunction sample(const Grid& g, const std::function<double(double)>& f) {
  GridFunction u{g, std::vector<double>(std::size_t(g.n))};
  for (int i = 0; i < g.n; ++i) u[i] = f(g.x(i));
  return u;
}

double interpolate(const GridFunction& f, double x) {
  const int n = f.n();
  double s = wrap(x) * n;
  int j = int(s);
  if (j >= n) j = n - 1;  // s can round up to n
  double t = s - j;
  int jn = j + 1 == n ? 0 : j + 1;
  return (1.0 - t) * f[j] + t * f[jn];
}

double diff_forward(const GridFunction& f, int i) {
  const int n = f.n();
  int j = i + 1 == n ? 0 : i + 1;
  return (f[j] - f[i]) / f.h();
}

double diff_backward(const GridFunction& f, int i) {
  const int n = f.n();
  int j = i == 0 ? n - 1 : i - 1;
  return (f[i] - f[j]) / f.h();
}

double grad_central(const GridFunction& f, int i) {
  const int n = f.n();
  int jp = i + 1 == n ? 0 : i + 1;
  int jm = i == 0 ? n - 1 : i - 1;
  return (f[jp] - f[jm]) / (2.0 * f.h());
}

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::fabs(v));
  return m;
}

double sup_dist(const GridFunction& f, const GridFunction& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    m = std::max(m, std::fabs(f.values[i] - g.values[i]));
  return m;
}

double min_value(const GridFunction& f) {
  return *std::min_element(f.values.begin(), f.values.end());
}

double max_value(const GridFunction& f) {
  return *std::max_element(f.values.begin(), f.values.end());
}

double lipschitz_constant(const GridFunction& f) {
  const int n = f.n();
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    int j = i + 1 == n ? 0 : i + 1;
    m = std::max(m, std::fabs(f[j] - f[i]));
  }
  return m / f.h();
}

}  // namespace weakkam
