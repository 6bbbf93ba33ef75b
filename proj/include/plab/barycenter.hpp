#pragma once

#include <cstdint>
#include <vector>

#include "plab/spaces.hpp"

namespace plab {

// Finitely supported probability measure on a space.
struct FiniteMeasure {
  std::vector<Point> support;
  std::vector<double> weights;

  void validate(const Space& space) const;
};

struct BarycenterResult {
  Point center;
  double moment = 0.0;  // d_p(sigma, center)^p
  int iterations = 0;
  bool converged = false;
};

// d_p(sigma, y)^p
double moment_at(const Space& space, const FiniteMeasure& sigma, const Point& y, double p);

// Geometric p-center of mass. Stochastic midpoint phase (p = 2), geodesic
// line-search descent toward support points, then a per-space refinement
// pass where the space supports one.
BarycenterResult p_center(const Space& space, const FiniteMeasure& sigma, double p, double tol,
                          uint64_t seed = 0);

// Minimizer of the radius function r_A(y) = max_a d(y, a). Softmax
// smoothing with a decreasing temperature ladder avoids oscillation
// between tied farthest points.
Point circumcenter(const Space& space, const std::vector<Point>& a, double tol);

struct GrowthReport {
  double min_slack = 0.0;
  Point witness;
  Point center;
  double center_moment = 0.0;
};

// Minimum over sampled y of d_p(sigma,y)^p - d_p(sigma,c)^p - c_conv * d(c,y)^p.
GrowthReport growth_check(const Space& space, const FiniteMeasure& sigma, double p, int y_samples,
                          uint64_t seed);

}  // namespace plab
