#include <doctest.h>

#include <cmath>

#include "plab/fixed_point.hpp"
#include "plab/rng.hpp"
#include "plab/tree_walk.hpp"

using namespace plab;

TEST_CASE("group tables: cyclic and dihedral") {
  auto c4 = FiniteGroup::cyclic(4);
  CHECK(c4.mult[1][3] == 0);
  CHECK(c4.inverse[1] == 3);
  auto d3 = FiniteGroup::dihedral(3);
  CHECK(d3.order == 6);
  // t r t = r^{-1}
  int t = 3, r = 1;
  CHECK(d3.mult[d3.mult[t][r]][t] == d3.inverse[r]);
  for (int g = 0; g < 6; ++g) CHECK(d3.mult[g][d3.inverse[g]] == 0);
}

TEST_CASE("actions validate as isometric homomorphisms") {
  GroupAction::dihedral_euclidean(3).validate(300, 1);
  GroupAction::dihedral_hyperbolic(3).validate(300, 2);
  GroupAction::cyclic_euclidean(5).validate(300, 3);
}

TEST_CASE("energy: reflection action on the line through a plane embedding") {
  // Z/2 acting on R^2 by y -> -y in the first coordinate; S = {s, s}
  auto group = FiniteGroup::cyclic(2);
  std::vector<std::function<Point(const Point&)>> rho{
      [](const Point& x) { return x; },
      [](const Point& x) { return Point{-x[0], x[1]}; }};
  GroupAction action(group, {1, 1}, std::make_shared<EuclideanSpace>(2), rho);
  Point f0{0.7, 0.0};
  auto mu = action.generator_walk();
  // E = 1/2 * (2 y0)^2 = 2 y0^2
  CHECK(energy(action, f0, mu, 2.0) == doctest::Approx(2.0 * 0.49).epsilon(1e-12));
  // scaling: E(lambda f) = lambda^p E(f) for linear actions
  Point f1{1.4, 0.0};
  CHECK(energy(action, f1, mu, 2.0) == doctest::Approx(4.0 * energy(action, f0, mu, 2.0)));
  // constant at a fixed point
  CHECK(energy(action, Point{0.0, 0.3}, mu, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("average_map: Hilbert p=2 is the linear average") {
  auto action = GroupAction::dihedral_euclidean(3);
  Point f0{1.0, 0.0};
  // uniform measure on the two rotations r, r^{-1}
  std::vector<double> mu(action.group().order, 0.0);
  mu[1] = mu[2] = 0.5;
  Point avg = average_map(action, f0, mu, 2.0, 1e-12);
  Point a = action.apply(1, f0), b = action.apply(2, f0);
  Point mid{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
  CHECK(action.space().dist(avg, mid) < 1e-10);
}

TEST_CASE("average_map: fixed point is unchanged") {
  auto action = GroupAction::dihedral_euclidean(4);
  Point origin{0.0, 0.0};
  auto mu = action.generator_walk();
  Point avg = average_map(action, origin, mu, 2.0, 1e-12);
  CHECK(action.space().dist(avg, origin) < 1e-10);
}

TEST_CASE("iterate_to_fixed_point: D3 on the plane reaches the origin") {
  auto action = GroupAction::dihedral_euclidean(3);
  auto res = iterate_to_fixed_point(action, {1.0, 0.0}, 1, 2.0, 1e-14, 200);
  CHECK(res.converged);
  CHECK(action.space().dist(res.value, {0.0, 0.0}) < 1e-6);
  // energy decays monotonically
  for (size_t i = 1; i < res.energy_trace.size(); ++i)
    CHECK(res.energy_trace[i] <= res.energy_trace[i - 1] + 1e-12);
}

TEST_CASE("iterate_to_fixed_point: starting at the fixed point takes no steps") {
  auto action = GroupAction::dihedral_euclidean(3);
  auto res = iterate_to_fixed_point(action, {0.0, 0.0}, 1, 2.0, 1e-12, 50);
  CHECK(res.converged);
  CHECK(res.iterations == 0);
}

TEST_CASE("iterate_to_fixed_point: D3 on the hyperbolic plane") {
  auto action = GroupAction::dihedral_hyperbolic(3);
  auto res = iterate_to_fixed_point(action, {0.3, 0.2}, 1, 2.0, 1e-14, 200);
  CHECK(res.converged);
  CHECK(action.space().dist(res.value, {0.0, 0.0}) < 1e-6);
}

TEST_CASE("iterate trace: geometric decay of step distances") {
  // with a per-round contraction factor bounded below 1, the step distances
  // d(f_{k+1}, f_k)^p follow a geometric envelope fitted on the early rounds
  auto action = GroupAction::dihedral_euclidean(3);
  auto res = iterate_to_fixed_point(action, {1.0, 0.0}, 1, 2.0, 1e-30, 40);
  REQUIRE(res.value_trace.size() >= 20);
  double c = 0.0;
  for (size_t i = 1; i < res.contraction.size(); ++i)
    if (res.energy_trace[i] > 1e-25) c = std::max(c, res.contraction[i]);
  REQUIRE(c < 1.0);
  std::vector<double> steps;
  for (size_t k = 0; k + 1 < res.value_trace.size(); ++k)
    steps.push_back(std::pow(action.space().dist(res.value_trace[k + 1], res.value_trace[k]), 2.0));
  size_t half = steps.size() / 2;
  double fitted_k = 0.0;
  for (size_t k = 0; k < half; ++k) fitted_k = std::max(fitted_k, steps[k] / std::pow(c, k));
  for (size_t k = half; k < steps.size(); ++k) {
    if (steps[k] < 1e-28) continue;
    CHECK(steps[k] <= fitted_k * std::pow(c, k) * 1.05);
  }
}

TEST_CASE("energy inequality suite: constant maps give zeros") {
  auto action = GroupAction::dihedral_euclidean(3);
  auto report = energy_inequality_suite(action, {0.0, 0.0}, 2.0, 2);
  CHECK(report.convolution_energy == doctest::Approx(0.0));
  CHECK(report.displacement_lhs == doctest::Approx(0.0));
  CHECK(report.cancellation_integral == doctest::Approx(0.0));
  CHECK(report.all_hold);
}

TEST_CASE("energy inequality suite: reflection walk returns at n=2") {
  auto group = FiniteGroup::cyclic(2);
  std::vector<std::function<Point(const Point&)>> rho{
      [](const Point& x) { return x; },
      [](const Point& x) { return Point{-x[0]}; }};
  GroupAction action(group, {1, 1}, std::make_shared<EuclideanSpace>(1), rho);
  Point f0{0.8};
  auto mu2 = action.convolve_walk(action.generator_walk(), 2);
  CHECK(energy(action, f0, mu2, 2.0) == doctest::Approx(0.0));  // walk returns
  auto report = energy_inequality_suite(action, f0, 2.0, 2);
  CHECK(report.all_hold);
}

TEST_CASE("energy inequality suite: dihedral configurations at p in {2,4}") {
  auto euclid = GroupAction::dihedral_euclidean(3);
  auto hyper = GroupAction::dihedral_hyperbolic(4);
  auto rng = make_rng(5);
  for (int n = 1; n <= 3; ++n)
    for (double p : {2.0, 4.0}) {
      Point f0 = euclid.space().sample(rng);
      auto report = energy_inequality_suite(euclid, f0, p, n);
      CHECK(report.all_hold);
      Point h0 = hyper.space().sample(rng);
      auto hreport = energy_inequality_suite(hyper, h0, p, n);
      CHECK(hreport.all_hold);
    }
}

TEST_CASE("contraction report: Hilbert averaging never raises energy at n=1") {
  auto action = GroupAction::dihedral_euclidean(3);
  auto rng = make_rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    Point f0 = action.space().sample(rng);
    auto report = contraction_report(action, f0, 2.0, {1});
    REQUIRE(report.rows.size() == 1);
    if (!report.rows[0].degenerate) CHECK(report.rows[0].ratio <= 1.0 + 1e-9);
  }
}

TEST_CASE("contraction report: degenerate input and decreasing ratios") {
  auto action = GroupAction::dihedral_euclidean(3);
  auto fixed = contraction_report(action, {0.0, 0.0}, 2.0, {1, 2});
  for (const auto& row : fixed.rows) CHECK(row.degenerate);

  auto report = contraction_report(action, {0.9, 0.1}, 2.0, {1, 2, 3, 4, 5, 6});
  for (size_t i = 1; i < report.rows.size(); ++i)
    CHECK(report.rows[i].ratio <= report.rows[i - 1].ratio + 1e-9);
}

TEST_CASE("factor action evaluates words through the quotient") {
  auto action = GroupAction::dihedral_euclidean(3);
  FactorAction fa{action, {1, 3}};  // s1 -> r, s2 -> t
  CHECK(fa.evaluate(Word()) == 0);
  CHECK(fa.evaluate(Word::parse("a", 2)) == 1);
  CHECK(fa.evaluate(Word::parse("aA", 2)) == 0);
  // t r t = r^{-1}
  CHECK(fa.evaluate(Word::parse("bab", 2)) == action.group().inverse[1]);
}

TEST_CASE("tree-walk energy matches brute-force word enumeration") {
  auto action = GroupAction::dihedral_euclidean(3);
  FactorAction fa{action, {1, 3}};
  Point f0{0.8, 0.2};
  int k = 2;
  for (int m : {1, 2, 3}) {
    double lib = tree_walk_energy(fa, f0, k, m, 2.0);
    auto dist = tree_walk(k, m);
    double ref = 0.0;
    for (const auto& [w, mass] : dist.mass) {
      int g = fa.evaluate(w);
      ref += mass.to_double() * std::pow(action.space().dist(f0, action.apply(g, f0)), 2.0);
    }
    CHECK(lib == doctest::Approx(0.5 * ref).epsilon(1e-12));
  }
}

TEST_CASE("transfer experiment with a dihedral factor") {
  // needs a graph with enough edges for the effective-simulation lower
  // condition to be satisfiable (C5 with k=2, j=2 has too few labels)
  auto g = petersen_graph();
  auto action = GroupAction::dihedral_euclidean(3);
  FactorAction fa{action, {1, 3}};
  Point f0{1.0, 0.0};
  for (uint64_t seed = 0; seed < 60; ++seed) {
    auto alpha = sample_labeling(g, 2, 2, seed);
    if (!effective_simulation_check(alpha, g, 1, 2, 2).ok) continue;
    auto report = transfer_experiment(g, alpha, 2, 2, fa, 2.0, f0, 1, 6, seed);
    CHECK(report.effective_simulation_ok);
    CHECK(report.best_m == 1);
    CHECK(report.lambda > 0.0);
    CHECK(report.base_energy > 0.0);
    CHECK(std::isfinite(report.best_ratio));
    // homogeneity: scaling the start scales both sides by lambda^p
    Point f1{2.0, 0.0};
    auto scaled = transfer_experiment(g, alpha, 2, 2, fa, 2.0, f1, 1, 6, seed);
    CHECK(scaled.best_ratio == doctest::Approx(report.best_ratio).epsilon(1e-9));
    return;
  }
  FAIL("no labeling passed effective simulation at q0=1");
}

TEST_CASE("transfer experiment: constant maps give zero ratios") {
  auto g = petersen_graph();
  auto action = GroupAction::dihedral_euclidean(3);
  FactorAction fa{action, {1, 3}};
  for (uint64_t seed = 0; seed < 60; ++seed) {
    auto alpha = sample_labeling(g, 2, 2, seed);
    if (!effective_simulation_check(alpha, g, 1, 2, 2).ok) continue;
    auto report = transfer_experiment(g, alpha, 2, 2, fa, 2.0, {0.0, 0.0}, 1, 4, seed);
    CHECK(report.base_energy == doctest::Approx(0.0));
    CHECK(report.best_ratio == doctest::Approx(0.0));
    return;
  }
  FAIL("no labeling passed effective simulation at q0=1");
}

TEST_CASE("transfer experiment rejects odd j") {
  auto g = petersen_graph();
  auto action = GroupAction::dihedral_euclidean(3);
  FactorAction fa{action, {1, 3}};
  auto alpha = sample_labeling(g, 2, 1, 1);
  CHECK_THROWS_AS(transfer_experiment(g, alpha, 2, 1, fa, 2.0, {1.0, 0.0}, 1, 4, 1),
                  std::invalid_argument);
}
