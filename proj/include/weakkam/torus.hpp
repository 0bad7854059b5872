#pragma once

#include <cmath>

namespace weakkam {

// Point on the flat circle R/Z, stored as its representative in [0,1).
struct TorusPoint {
  double x = 0.0;
};

inline double wrap(double x) {
  double y = x - std::floor(x);
  // floor can leave y == 1.0 for tiny negative x
  return y < 1.0 ? y : 0.0;
}

inline TorusPoint torus(double x) { return TorusPoint{wrap(x)}; }

inline double torus_dist(double a, double b) {
  double d = std::fabs(wrap(a) - wrap(b));
  return d <= 0.5 ? d : 1.0 - d;
}

inline double torus_dist(TorusPoint a, TorusPoint b) { return torus_dist(a.x, b.x); }

}  // namespace weakkam
