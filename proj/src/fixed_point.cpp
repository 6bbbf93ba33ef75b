#include "plab/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "plab/markov.hpp"
#include "plab/poincare.hpp"
#include "plab/rng.hpp"
#include "plab/tree_walk.hpp"

namespace plab {

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::cyclic(int m) {
  if (m < 1) throw std::invalid_argument("cyclic: m >= 1");
  FiniteGroup g;
  g.order = m;
  g.mult.assign(m, std::vector<int>(m));
  g.inverse.resize(m);
  for (int a = 0; a < m; ++a) {
    g.inverse[a] = (m - a) % m;
    for (int b = 0; b < m; ++b) g.mult[a][b] = (a + b) % m;
  }
  g.validate();
  return g;
}

FiniteGroup FiniteGroup::dihedral(int m) {
  if (m < 2) throw std::invalid_argument("dihedral: m >= 2");
  FiniteGroup g;
  g.order = 2 * m;
  g.mult.assign(2 * m, std::vector<int>(2 * m));
  g.inverse.resize(2 * m);
  auto enc = [m](int rot, int flip) { return flip ? m + rot : rot; };
  for (int a = 0; a < 2 * m; ++a) {
    int ra = a % m, fa = a / m;
    for (int b = 0; b < 2 * m; ++b) {
      int rb = b % m, fb = b / m;
      int rot = fa ? ((ra - rb) % m + m) % m : (ra + rb) % m;
      g.mult[a][b] = enc(rot, fa ^ fb);
    }
    g.inverse[a] = fa ? a : (m - ra) % m;
  }
  g.validate();
  return g;
}

void FiniteGroup::validate() const {
  for (int a = 0; a < order; ++a) {
    if (mult[0][a] != a || mult[a][0] != a) throw std::logic_error("group: identity broken");
    if (mult[a][inverse[a]] != 0) throw std::logic_error("group: inverse broken");
  }
}

// ---------------------------------------------------------------------------
// GroupAction

GroupAction::GroupAction(FiniteGroup group, std::vector<int> generators, SpacePtr space,
                         std::vector<std::function<Point(const Point&)>> rho)
    : group_(std::move(group)), gens_(std::move(generators)), space_(std::move(space)),
      rho_(std::move(rho)) {
  if (static_cast<int>(rho_.size()) != group_.order)
    throw std::invalid_argument("GroupAction: one isometry per element required");
  if (gens_.empty() || gens_.size() % 2 != 0)
    throw std::invalid_argument("GroupAction: S must have even size 2k");
  std::map<int, int> count;
  for (int s : gens_) ++count[s];
  for (auto [s, c] : count)
    if (count[group_.inverse[s]] != c)
      throw std::invalid_argument("GroupAction: S must be symmetric as a multiset");
}

std::vector<double> GroupAction::generator_walk() const {
  std::vector<double> mu(group_.order, 0.0);
  for (int s : gens_) mu[s] += 1.0 / gens_.size();
  return mu;
}

std::vector<double> GroupAction::convolve_walk(const std::vector<double>& mu, int n) const {
  std::vector<double> cur(group_.order, 0.0);
  cur[0] = 1.0;
  for (int step = 0; step < n; ++step) {
    std::vector<double> next(group_.order, 0.0);
    for (int g = 0; g < group_.order; ++g) {
      if (cur[g] == 0.0) continue;
      for (int h = 0; h < group_.order; ++h)
        if (mu[h] > 0.0) next[group_.mult[g][h]] += cur[g] * mu[h];
    }
    cur = std::move(next);
  }
  return cur;
}

void GroupAction::validate(int samples, uint64_t seed) const {
  auto rng = make_rng(derive_seed(seed, "action-validate"));
  std::uniform_int_distribution<int> pick(0, group_.order - 1);
  for (int i = 0; i < samples; ++i) {
    int g = pick(rng), h = pick(rng);
    Point x = space_->sample(rng), y = space_->sample(rng);
    Point lhs = apply(g, apply(h, x));
    Point rhs = apply(group_.mult[g][h], x);
    if (space_->dist(lhs, rhs) > 1e-10)
      throw std::logic_error("GroupAction: rho is not a homomorphism");
    if (std::abs(space_->dist(apply(g, x), apply(g, y)) - space_->dist(x, y)) > 1e-10)
      throw std::logic_error("GroupAction: rho(g) is not an isometry");
  }
}

namespace {

std::function<Point(const Point&)> planar_map(int rot, int flip, int m) {
  double theta = 2.0 * M_PI * rot / m;
  double c = std::cos(theta), s = std::sin(theta);
  return [c, s, flip](const Point& x) {
    double px = x[0], py = flip ? -x[1] : x[1];
    return Point{c * px - s * py, s * px + c * py};
  };
}

}  // namespace

GroupAction GroupAction::dihedral_euclidean(int m) {
  auto group = FiniteGroup::dihedral(m);
  std::vector<std::function<Point(const Point&)>> rho;
  for (int g = 0; g < group.order; ++g) rho.push_back(planar_map(g % m, g / m, m));
  std::vector<int> gens{1 % m, (m - 1) % m, m, m};  // r, r^{-1}, t, t
  return GroupAction(group, gens, std::make_shared<EuclideanSpace>(2), rho);
}

GroupAction GroupAction::dihedral_hyperbolic(int m) {
  auto group = FiniteGroup::dihedral(m);
  std::vector<std::function<Point(const Point&)>> rho;
  // rotations about the origin and reflection across the real axis are
  // isometries of the disk
  for (int g = 0; g < group.order; ++g) rho.push_back(planar_map(g % m, g / m, m));
  std::vector<int> gens{1 % m, (m - 1) % m, m, m};
  return GroupAction(group, gens, std::make_shared<HyperbolicPlane>(), rho);
}

GroupAction GroupAction::cyclic_euclidean(int m) {
  auto group = FiniteGroup::cyclic(m);
  std::vector<std::function<Point(const Point&)>> rho;
  for (int g = 0; g < group.order; ++g) rho.push_back(planar_map(g, 0, m));
  std::vector<int> gens{1 % m, (m - 1) % m};
  return GroupAction(group, gens, std::make_shared<EuclideanSpace>(2), rho);
}

// ---------------------------------------------------------------------------
// Energies and averaging

double energy(const GroupAction& action, const Point& f0, const std::vector<double>& mu, double p) {
  double e = 0.0;
  for (int g = 0; g < action.group().order; ++g) {
    if (mu[g] == 0.0) continue;
    e += mu[g] * std::pow(action.space().dist(f0, action.apply(g, f0)), p);
  }
  return 0.5 * e;
}

Point average_map(const GroupAction& action, const Point& f0, const std::vector<double>& mu,
                  double p, double tol, uint64_t seed) {
  FiniteMeasure sigma;
  for (int g = 0; g < action.group().order; ++g) {
    if (mu[g] <= 0.0) continue;
    sigma.support.push_back(action.apply(g, f0));
    sigma.weights.push_back(mu[g]);
  }
  double total = 0.0;
  for (double w : sigma.weights) total += w;
  for (double& w : sigma.weights) w /= total;
  auto res = p_center(action.space(), sigma, p, tol, derive_seed(seed, "average-map"));
  if (!res.converged) throw std::runtime_error("average_map: barycenter did not converge");
  return res.center;
}

IterateResult iterate_to_fixed_point(const GroupAction& action, const Point& f0, int n, double p,
                                     double tol, int max_iter) {
  auto mu = action.generator_walk();
  auto mu_n = action.convolve_walk(mu, n);
  IterateResult res;
  res.value = f0;
  res.energy_trace.push_back(energy(action, res.value, mu, p));
  res.value_trace.push_back(res.value);
  auto orbit_diameter = [&](const Point& y) {
    double d = 0.0;
    for (int g = 0; g < action.group().order; ++g)
      d = std::max(d, action.space().dist(y, action.apply(g, y)));
    return d;
  };
  for (int it = 0; it < max_iter; ++it) {
    if (res.energy_trace.back() < tol &&
        orbit_diameter(res.value) < std::pow(tol, 1.0 / p)) {
      res.converged = true;
      return res;
    }
    res.value = average_map(action, res.value, mu_n, p, 1e-12, derive_seed(0, "iterate", it));
    ++res.iterations;
    double e = energy(action, res.value, mu, p);
    double prev = res.energy_trace.back();
    res.energy_trace.push_back(e);
    res.value_trace.push_back(res.value);
    res.contraction.push_back(prev > 0 ? e / prev : 0.0);
  }
  res.converged = res.energy_trace.back() < tol &&
                  orbit_diameter(res.value) < std::pow(tol, 1.0 / p);
  return res;
}

EnergySuiteReport energy_inequality_suite(const GroupAction& action, const Point& f0, double p,
                                          int n) {
  auto mu = action.generator_walk();
  auto mu_n = action.convolve_walk(mu, n);
  double c_conv = convexity_claim(action.space(), p);

  EnergySuiteReport report;
  double e_mu = energy(action, f0, mu, p);
  double e_mun = energy(action, f0, mu_n, p);
  report.convolution_energy = e_mun;
  report.convolution_bound = std::pow(n, p - 1.0) * e_mu;

  Point af = average_map(action, f0, mu, p, 1e-13);
  report.displacement_lhs = c_conv * std::pow(action.space().dist(f0, af), p);
  report.displacement_rhs = 2.0 * e_mu;

  Point an = average_map(action, f0, mu_n, p, 1e-13);
  double integral = 0.0;
  for (int g = 0; g < action.group().order; ++g) {
    if (mu_n[g] == 0.0) continue;
    integral += mu_n[g] * std::pow(action.space().dist(an, action.apply(g, f0)), p);
  }
  report.cancellation_integral = integral;
  report.cancellation_bound = std::pow(2.0, p - 1.0) * (1.0 + 2.0 / c_conv) * e_mun;

  report.all_hold = report.convolution_energy <= report.convolution_bound + 1e-9 &&
                    report.displacement_lhs <= report.displacement_rhs + 1e-9 &&
                    report.cancellation_integral <= report.cancellation_bound + 1e-9;
  return report;
}

ContractionReport contraction_report(const GroupAction& action, const Point& f0, double p,
                                     const std::vector<int>& n_list) {
  auto mu = action.generator_walk();
  ContractionReport report;
  double e_mu = energy(action, f0, mu, p);
  for (int n : n_list) {
    ContractionRow row;
    row.n = n;
    if (e_mu <= 0.0) {
      row.degenerate = true;
      report.rows.push_back(row);
      continue;
    }
    auto mu_n = action.convolve_walk(mu, n);
    Point an = average_map(action, f0, mu_n, p, 1e-12);
    row.ratio = energy(action, an, mu, p) / e_mu;
    double e_mun = energy(action, f0, mu_n, p);
    row.shape_sqrt = n > 1 ? std::sqrt(std::log(static_cast<double>(n)) / n) * e_mun / e_mu : 0.0;
    row.shape_inv = 1.0 / n;
    report.rows.push_back(row);
  }
  // least-squares fit ratio ~ c1 * shape_sqrt + c2 * shape_inv
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (const auto& row : report.rows) {
    if (row.degenerate) continue;
    a11 += row.shape_sqrt * row.shape_sqrt;
    a12 += row.shape_sqrt * row.shape_inv;
    a22 += row.shape_inv * row.shape_inv;
    b1 += row.shape_sqrt * row.ratio;
    b2 += row.shape_inv * row.ratio;
  }
  double det = a11 * a22 - a12 * a12;
  if (std::abs(det) > 1e-30) {
    report.fit_c1 = (b1 * a22 - b2 * a12) / det;
    report.fit_c2 = (a11 * b2 - a12 * b1) / det;
  } else if (a22 > 0) {
    report.fit_c2 = b2 / a22;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Transfer experiment

int FactorAction::evaluate(const Word& w) const {
  int g = 0;  // identity
  const auto& group = action.group();
  for (int8_t l : w.letters()) {
    int img = l > 0 ? generator_images[l - 1] : group.inverse[generator_images[-l - 1]];
    g = group.mult[g][img];
  }
  return g;
}

double tree_walk_energy(const FactorAction& fa, const Point& f0, int k, int m, double p) {
  auto radial = tree_walk_radial(k, m);
  const auto& group = fa.action.group();
  int letters = 2 * k;
  auto letter_image = [&](int idx) {
    // idx 0..k-1 are s_1..s_k; k..2k-1 their inverses
    return idx < k ? fa.generator_images[idx] : group.inverse[fa.generator_images[idx - k]];
  };
  // counts of reduced words by (group image, last letter); last = letters
  // marks the empty word
  std::vector<std::vector<double>> cur(group.order, std::vector<double>(letters + 1, 0.0));
  cur[0][letters] = 1.0;
  std::vector<double> distance_cost(group.order);
  for (int g = 0; g < group.order; ++g)
    distance_cost[g] = std::pow(fa.action.space().dist(f0, fa.action.apply(g, f0)), p);

  double e = 0.0;
  if (!radial[0].is_zero()) e += radial[0].to_double() * distance_cost[0];
  for (int l = 1; l <= m; ++l) {
    std::vector<std::vector<double>> next(group.order, std::vector<double>(letters + 1, 0.0));
    for (int g = 0; g < group.order; ++g)
      for (int last = 0; last <= letters; ++last) {
        double c = cur[g][last];
        if (c == 0.0) continue;
        for (int idx = 0; idx < letters; ++idx) {
          // skip the inverse of the previous letter to keep words reduced
          if (last != letters && idx == (last + k) % letters) continue;
          next[group.mult[g][letter_image(idx)]][idx] += c;
        }
      }
    cur = std::move(next);
    if (radial[l].is_zero()) continue;
    double per_word = radial[l].to_double() / tree_word_count(k, l).to_double();
    for (int g = 0; g < group.order; ++g) {
      double count = 0.0;
      for (int last = 0; last < letters; ++last) count += cur[g][last];
      e += per_word * count * distance_cost[g];
    }
  }
  return 0.5 * e;
}

TransferReport transfer_experiment(const UndirectedGraph& g, const Labeling& alpha, int k, int j,
                                   const FactorAction& fa, double p, const Point& f0, int q0,
                                   int restarts, uint64_t seed) {
  if (j % 2 != 0) throw std::invalid_argument("transfer_experiment: j must be even");
  if (static_cast<int>(fa.generator_images.size()) != k)
    throw std::invalid_argument("transfer_experiment: need one image per generator");
  auto effsim = effective_simulation_check(alpha, g, q0, k, j);
  if (!effsim.ok) throw std::runtime_error("transfer_experiment: effective simulation check failed");

  TransferReport report;
  report.effective_simulation_ok = true;
  auto chain = standard_walk(g);
  auto est = modulus_estimate(chain, fa.action.space(), p, restarts, seed);
  report.lambda = est.lambda;
  report.sigma = est.sigma;
  report.base_energy = tree_walk_energy(fa, f0, k, j, p);

  double lam_p = std::pow(est.lambda, p);
  report.best_ratio = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= q0; ++m) {
    TransferRow row;
    row.m = m;
    row.lhs = tree_walk_energy(fa, f0, k, j * m, p);
    double denom = lam_p * report.base_energy;
    row.ratio = denom > 0 ? row.lhs / denom : 0.0;
    report.rows.push_back(row);
    if (row.ratio < report.best_ratio) {
      report.best_ratio = row.ratio;
      report.best_m = m;
    }
  }
  if (report.rows.empty()) {
    report.best_ratio = 0.0;
    report.best_m = 0;
  }
  return report;
}

}  // namespace plab
