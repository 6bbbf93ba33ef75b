#include <doctest.h>

#include <cmath>

#include "plab/rng.hpp"
#include "plab/spaces.hpp"

#include <nlohmann/json.hpp>

using namespace plab;

namespace {

MetricTree small_tree() {
  // star with two extra path vertices: 0-1, 1-2, 1-3, 3-4 (unit weights)
  return MetricTree(5, {{0, 1, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {3, 4, 1.0}});
}

void check_triangle_inequality(const Space& space, int samples, uint64_t seed, double tol) {
  auto rng = make_rng(seed);
  for (int i = 0; i < samples; ++i) {
    Point x = space.sample(rng), y = space.sample(rng), z = space.sample(rng);
    CHECK(space.dist(x, y) <= space.dist(x, z) + space.dist(z, y) + tol);
    CHECK(space.dist(x, y) == doctest::Approx(space.dist(y, x)).epsilon(1e-12));
    CHECK(space.dist(x, x) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("euclidean distance and midpoint") {
  EuclideanSpace e2(2);
  CHECK(e2.dist({0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
  auto mid = e2.geodesic({0, 0}, {2, 6}, 0.5);
  CHECK(mid[0] == doctest::Approx(1.0));
  CHECK(mid[1] == doctest::Approx(3.0));
  CHECK_THROWS_AS(e2.geodesic({0, 0}, {1, 1}, 1.5), std::invalid_argument);
}

TEST_CASE("hyperbolic distance closed forms") {
  HyperbolicPlane h;
  CHECK(h.dist({0, 0}, {0, 0}) == doctest::Approx(0.0));
  // independent evaluation: acosh(1 + 2*0.25/0.75) = log 3
  CHECK(h.dist({0, 0}, {0.5, 0}) == doctest::Approx(1.0986122886681096).epsilon(1e-12));
  // production form must agree with the acosh formula on random pairs
  auto rng = make_rng(31);
  for (int i = 0; i < 2000; ++i) {
    Point u = h.sample(rng), v = h.sample(rng);
    double nu = u[0] * u[0] + u[1] * u[1];
    double nv = v[0] * v[0] + v[1] * v[1];
    double duv = (u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]);
    double ref = std::acosh(1.0 + 2.0 * duv / ((1.0 - nu) * (1.0 - nv)));
    CHECK(h.dist(u, v) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("hyperbolic radial geodesic") {
  HyperbolicPlane h;
  auto p = h.geodesic({0, 0}, {0.5, 0}, 0.5);
  CHECK(p[0] == doctest::Approx(0.2679491924311227).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-15));
  // parametrization proportional to arc length
  auto rng = make_rng(77);
  for (int i = 0; i < 500; ++i) {
    Point y = h.sample(rng), z = h.sample(rng);
    double d = h.dist(y, z);
    for (double t : {0.0, 0.25, 0.7, 1.0}) {
      Point g = h.geodesic(y, z, t);
      CHECK(h.dist(y, g) == doctest::Approx(t * d).epsilon(1e-9));
    }
  }
}

TEST_CASE("tree distances and geodesics") {
  auto tree = small_tree();
  Point v0 = tree.vertex_point(0), v2 = tree.vertex_point(2), v4 = tree.vertex_point(4);
  CHECK(tree.dist(v0, v2) == doctest::Approx(2.0));
  CHECK(tree.dist(v0, v4) == doctest::Approx(3.0));
  // midpoint of the path 0-1-2 is vertex 1
  Point mid = tree.geodesic(v0, v2, 0.5);
  CHECK(tree.dist(mid, tree.vertex_point(1)) == doctest::Approx(0.0).epsilon(1e-12));
  // interior points
  Point a{0.0, 0.25};  // on edge 0-1
  Point b{3.0, 0.5};   // on edge 3-4
  CHECK(tree.dist(a, b) == doctest::Approx(0.75 + 1.0 + 0.5));
  for (double t : {0.0, 0.3, 0.6, 1.0}) {
    Point g = tree.geodesic(a, b, t);
    CHECK(tree.dist(a, g) == doctest::Approx(t * tree.dist(a, b)).epsilon(1e-10));
    CHECK(tree.dist(g, b) == doctest::Approx((1 - t) * tree.dist(a, b)).epsilon(1e-10));
  }
}

TEST_CASE("geodesic endpoint and proportionality properties") {
  auto rng = make_rng(5);
  std::vector<SpacePtr> spaces{std::make_shared<EuclideanSpace>(3),
                               std::make_shared<LpSpace>(2, 4.0),
                               std::make_shared<HyperbolicPlane>(),
                               std::make_shared<MetricTree>(small_tree())};
  for (const auto& sp : spaces) {
    for (int i = 0; i < 200; ++i) {
      Point y = sp->sample(rng), z = sp->sample(rng);
      CHECK(sp->dist(sp->geodesic(y, z, 0.0), y) == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(sp->dist(sp->geodesic(y, z, 1.0), z) == doctest::Approx(0.0).epsilon(1e-9));
      double t = 0.37;
      CHECK(sp->dist(y, sp->geodesic(y, z, t)) ==
            doctest::Approx(t * sp->dist(y, z)).epsilon(1e-9));
    }
  }
}

TEST_CASE("triangle inequality across the catalog") {
  check_triangle_inequality(EuclideanSpace(2), 10000, 1, 1e-10);
  check_triangle_inequality(LpSpace(3, 3.0), 10000, 2, 1e-10);
  check_triangle_inequality(HyperbolicPlane(), 10000, 3, 1e-10);
  check_triangle_inequality(small_tree(), 10000, 4, 1e-10);
}

TEST_CASE("lp product distance identity") {
  auto e2 = std::make_shared<EuclideanSpace>(2);
  auto h = std::make_shared<HyperbolicPlane>();
  LpProductSpace prod({e2, h}, 2.0);
  auto rng = make_rng(9);
  for (int i = 0; i < 1000; ++i) {
    Point x = prod.sample(rng), y = prod.sample(rng);
    Point xe(x.begin(), x.begin() + 2), xh(x.begin() + 2, x.end());
    Point ye(y.begin(), y.begin() + 2), yh(y.begin() + 2, y.end());
    double expect = std::pow(e2->dist(xe, ye), 2.0) + std::pow(h->dist(xh, yh), 2.0);
    CHECK(std::pow(prod.dist(x, y), 2.0) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("p-convexity: euclidean p=2 c=1 is an identity") {
  auto report = verify_p_convexity(EuclideanSpace(2), 2.0, 1.0, 20000, 13);
  CHECK(std::abs(report.min_slack) < 1e-10);
}

TEST_CASE("p-convexity: c above 1 fails in euclidean with a witness") {
  auto report = verify_p_convexity(EuclideanSpace(2), 2.0, 1.5, 20000, 14);
  CHECK(report.min_slack < -1e-9);
  // witness triple reproduces the violation
  EuclideanSpace e2(2);
  Point m = e2.geodesic(report.y, report.z, report.t);
  double lhs = std::pow(e2.dist(report.x, m), 2.0);
  double rhs = (1 - report.t) * std::pow(e2.dist(report.x, report.y), 2.0) +
               report.t * std::pow(e2.dist(report.x, report.z), 2.0) -
               1.5 * report.t * (1 - report.t) * std::pow(e2.dist(report.y, report.z), 2.0);
  CHECK(rhs - lhs == doctest::Approx(report.min_slack).epsilon(1e-12));
}

TEST_CASE("p-convexity: hyperbolic plane passes (2,1) over 1e5 samples") {
  auto report = verify_p_convexity(HyperbolicPlane(), 2.0, 1.0, 100000, 15);
  CHECK(report.min_slack >= -1e-9);
}

TEST_CASE("p-convexity: CAT(0) members pass (p, c) at p in {3,4} via bisection") {
  std::vector<SpacePtr> spaces{std::make_shared<EuclideanSpace>(2),
                               std::make_shared<HyperbolicPlane>(),
                               std::make_shared<MetricTree>(small_tree())};
  for (const auto& sp : spaces) {
    for (double p : {3.0, 4.0}) {
      double c = certify_convexity(*sp, p, 4000, 16);
      CHECK(c > 0.0);
      auto report = verify_p_convexity(*sp, p, c, 4000, 16);
      CHECK(report.min_slack >= -1e-9);
      // the Clarkson-style claim is within reach of the certified constant
      CHECK(c >= 0.5 * std::pow(2.0, 2.0 - p));
    }
  }
}

TEST_CASE("lp convexity constant certified at the Clarkson seed") {
  LpSpace l3(2, 3.0);
  auto report = verify_p_convexity(l3, 3.0, l3.claimed_c(), 50000, 17);
  CHECK(report.min_slack >= -1e-9);
}

TEST_CASE("space json descriptors round trip") {
  auto tree = std::make_shared<MetricTree>(small_tree());
  auto prod = std::make_shared<LpProductSpace>(
      std::vector<SpacePtr>{std::make_shared<EuclideanSpace>(2), tree}, 2.0);
  for (SpacePtr sp : {SpacePtr(std::make_shared<LpSpace>(3, 4.0)), SpacePtr(tree), SpacePtr(prod)}) {
    auto j = space_to_json(*sp);
    auto back = space_from_json(j);
    CHECK(back->kind() == sp->kind());
    CHECK(back->point_dim() == sp->point_dim());
    auto rng = make_rng(21);
    for (int i = 0; i < 50; ++i) {
      Point x = sp->sample(rng), y = sp->sample(rng);
      CHECK(back->dist(x, y) == doctest::Approx(sp->dist(x, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("invalid points rejected") {
  HyperbolicPlane h;
  CHECK(!h.contains({1.2, 0.0}));
  CHECK_THROWS_AS(h.dist({1.2, 0.0}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(h.geodesic({0.0, 0.0}, {1.2, 0.0}, 0.5), std::invalid_argument);
  MetricTree tree = small_tree();
  CHECK(!tree.contains({9.0, 0.0}));
  CHECK(!tree.contains({0.0, 5.0}));
  CHECK_THROWS_AS(tree.dist({9.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
}
