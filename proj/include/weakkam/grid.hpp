#pragma once

#include <weakkam/torus.hpp>

#include <cstddef>
#include <functional>
#include <vector>

namespace weakkam {

// Uniform periodic grid x_i = i/n, i = 0..n-1.
struct Grid {
  int n = 0;
  double h = 0.0;

  static Grid uniform(int n);
  double x(int i) const { return i * h; }
};

struct GridFunction {
  Grid grid;
  std::vector<double> values;

  double operator[](int i) const { return values[std::size_t(i)]; }
  double& operator[](int i) { return values[std::size_t(i)]; }
  int n() const { return grid.n; }
  double h() const { return grid.h; }
};

GridFunction constant_function(const Grid& g, double value);
GridFunction sample(const Grid& g, const std::function<double(double)>& f);

// Periodic piecewise-linear interpolation; exact at the nodes.
double interpolate(const GridFunction& f, double x);

double diff_forward(const GridFunction& f, int i);
double diff_backward(const GridFunction& f, int i);
double grad_central(const GridFunction& f, int i);

double sup_norm(const GridFunction& f);
double sup_dist(const GridFunction& f, const GridFunction& g);
double min_value(const GridFunction& f);
double max_value(const GridFunction& f);

// max_i |f_{i+1} - f_i| / h over the periodic grid
double lipschitz_constant(const GridFunction& f);

}  // namespace weakkam
