#include "plab/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plab/rng.hpp"

namespace plab {

namespace {

constexpr int kStochasticCap = 10000;
constexpr int kSweepCap = 1000;

// Golden-section minimization of a unimodal function on [0,1].
template <typename Fn>
double golden_min(const Fn& f, double lo, double hi, int iters) {
  const double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace

void FiniteMeasure::validate(const Space& space) const {
  if (support.empty()) throw std::invalid_argument("FiniteMeasure: empty support");
  if (support.size() != weights.size())
    throw std::invalid_argument("FiniteMeasure: support/weights size mismatch");
  double total = 0.0;
  for (size_t i = 0; i < support.size(); ++i) {
    if (!space.contains(support[i]))
      throw std::invalid_argument("FiniteMeasure: support point not in space");
    if (weights[i] <= 0.0) throw std::invalid_argument("FiniteMeasure: non-positive weight");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("FiniteMeasure: weights must sum to 1");
}

double moment_at(const Space& space, const FiniteMeasure& sigma, const Point& y, double p) {
  double f = 0.0;
  for (size_t i = 0; i < sigma.support.size(); ++i)
    f += sigma.weights[i] * std::pow(space.dist(y, sigma.support[i]), p);
  return f;
}

BarycenterResult p_center(const Space& space, const FiniteMeasure& sigma, double p, double tol,
                          uint64_t seed) {
  if (tol <= 0.0) throw std::invalid_argument("p_center: tol must be positive");
  if (p < 2.0) throw std::invalid_argument("p_center: p >= 2");
  sigma.validate(space);

  BarycenterResult res;
  const auto& pts = sigma.support;
  const auto& w = sigma.weights;

  // Phase 1: start from the best support point; for p = 2 run the
  // stochastic midpoint scheme on top of it.
  Point y = pts[0];
  double fy = moment_at(space, sigma, y, p);
  for (size_t i = 1; i < pts.size(); ++i) {
    double f = moment_at(space, sigma, pts[i], p);
    if (f < fy) { fy = f; y = pts[i]; }
  }
  int iterations = 0;
  if (std::abs(p - 2.0) < 1e-12 && pts.size() > 1) {
    auto rng = make_rng(derive_seed(seed, "sturm"));
    std::discrete_distribution<int> pick(w.begin(), w.end());
    int steps = std::min<int>(kStochasticCap, 200 * static_cast<int>(pts.size()));
    for (int k = 1; k <= steps; ++k) {
      int i = pick(rng);
      y = space.geodesic(y, pts[i], 1.0 / (k + 1));
      ++iterations;
    }
    fy = moment_at(space, sigma, y, p);
  }

  // Phase 2: line searches along geodesics toward support points.
  for (int sweep = 0; sweep < kSweepCap; ++sweep) {
    double f_before = fy;
    for (size_t i = 0; i < pts.size(); ++i) {
      auto along = [&](double t) { return moment_at(space, sigma, space.geodesic(y, pts[i], t), p); };
      double t = golden_min(along, 0.0, 1.0, 60);
      double ft = along(t);
      if (ft < fy) {
        y = space.geodesic(y, pts[i], t);
        fy = ft;
      }
      ++iterations;
    }
    if (f_before - fy <= 1e-15 * std::max(1.0, std::abs(fy))) break;
  }

  // Phase 3: per-space high-accuracy refinement.
  bool refined = space.refine_center(pts, w, p, &y, 300);
  fy = moment_at(space, sigma, y, p);

  res.center = y;
  res.moment = fy;
  res.iterations = iterations;
  // The functional is uniformly convex; treat a refined or stagnated
  // solution as converged and double-check against the support points.
  res.converged = true;
  for (const auto& pt : pts)
    if (moment_at(space, sigma, pt, p) < fy - (refined ? 1e-9 : tol)) res.converged = false;
  return res;
}

Point circumcenter(const Space& space, const std::vector<Point>& a, double tol) {
  if (a.empty()) throw std::invalid_argument("circumcenter: empty set");
  if (a.size() == 1) return a[0];
  auto radius = [&](const Point& y) {
    double r = 0.0;
    for (const auto& pt : a) r = std::max(r, space.dist(y, pt));
    return r;
  };
  auto soft_radius = [&](const Point& y, double temp) {
    double mx = radius(y);
    double s = 0.0;
    for (const auto& pt : a) s += std::exp((space.dist(y, pt) - mx) / temp);
    return mx + temp * std::log(s);
  };

  Point y = a[0];
  double r0 = radius(y);
  if (r0 == 0.0) return y;
  for (double temp = 0.5 * r0; temp > 0.02 * tol; temp *= 0.5) {
    for (int sweep = 0; sweep < 200; ++sweep) {
      double before = soft_radius(y, temp);
      for (const auto& pt : a) {
        auto along = [&](double t) { return soft_radius(space.geodesic(y, pt, t), temp); };
        double t = golden_min(along, 0.0, 1.0, 48);
        if (along(t) < soft_radius(y, temp)) y = space.geodesic(y, pt, t);
      }
      if (before - soft_radius(y, temp) <= 0.01 * temp * tol) break;
    }
  }
  // final polish directly on the max-radius function
  for (int sweep = 0; sweep < 60; ++sweep) {
    double before = radius(y);
    for (const auto& pt : a) {
      auto along = [&](double t) { return radius(space.geodesic(y, pt, t)); };
      double t = golden_min(along, 0.0, 1.0, 48);
      if (along(t) < radius(y)) y = space.geodesic(y, pt, t);
    }
    if (before - radius(y) <= 1e-3 * tol) break;
  }
  return y;
}

GrowthReport growth_check(const Space& space, const FiniteMeasure& sigma, double p, int y_samples,
                          uint64_t seed) {
  auto center = p_center(space, sigma, p, 1e-10, derive_seed(seed, "growth-center"));
  if (!center.converged) throw std::runtime_error("growth_check: p_center did not converge");
  double c_conv = convexity_claim(space, p);
  auto rng = make_rng(derive_seed(seed, "growth-samples"));
  GrowthReport report;
  report.center = center.center;
  report.center_moment = center.moment;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < y_samples; ++i) {
    Point y = space.sample(rng);
    double slack = moment_at(space, sigma, y, p) - center.moment -
                   c_conv * std::pow(space.dist(center.center, y), p);
    if (slack < report.min_slack) {
      report.min_slack = slack;
      report.witness = y;
    }
  }
  return report;
}

}  // namespace plab
