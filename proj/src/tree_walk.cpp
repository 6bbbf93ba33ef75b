#include "plab/tree_walk.hpp"

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace plab {

Rational TreeDistribution::total() const {
  Rational t(0);
  for (const auto& [w, m] : mass) t += m;
  return t;
}

Rational TreeDistribution::at(const Word& w) const {
  auto it = mass.find(w);
  return it == mass.end() ? Rational(0) : it->second;
}

void TreeDistribution::add(const Word& w, const Rational& m) {
  if (m.is_zero()) return;
  auto it = mass.find(w);
  if (it == mass.end())
    mass.emplace(w, m);
  else
    it->second += m;
}

double TreeDistribution::tv_distance(const TreeDistribution& o) const {
  double s = 0.0;
  for (const auto& [w, m] : mass) s += std::abs(m.to_double() - o.at(w).to_double());
  for (const auto& [w, m] : o.mass)
    if (mass.find(w) == mass.end()) s += std::abs(m.to_double());
  return 0.5 * s;
}

nlohmann::json TreeDistribution::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [w, m] : mass) j[w.str().empty() ? "" : w.str()] = m.to_double();
  return j;
}

std::vector<Rational> tree_walk_radial(int k, int m) {
  if (k < 1 || m < 0) throw std::invalid_argument("tree_walk_radial: bad parameters");
  std::vector<Rational> cur(m + 1, Rational(0));
  cur[0] = Rational(1);
  Rational back(1, 2 * k), fwd(2 * k - 1, 2 * k);
  for (int step = 0; step < m; ++step) {
    std::vector<Rational> next(m + 1, Rational(0));
    for (int l = 0; l <= m; ++l) {
      if (cur[l].is_zero()) continue;
      if (l == 0) {
        next[1] += cur[0];
      } else {
        if (l + 1 <= m) next[l + 1] += cur[l] * fwd;
        next[l - 1] += cur[l] * back;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Rational tree_word_count(int k, int l) {
  if (l == 0) return Rational(1);
  Rational c(2 * k);
  for (int i = 1; i < l; ++i) c *= Rational(2 * k - 1);
  return c;
}

namespace {

void enumerate_words(int k, int max_len, std::vector<int8_t>* prefix,
                     const std::function<void(const Word&)>& visit) {
  visit(Word(std::vector<int8_t>(*prefix)));
  if (static_cast<int>(prefix->size()) == max_len) return;
  for (int l = 1; l <= k; ++l) {
    for (int8_t letter : {static_cast<int8_t>(l), static_cast<int8_t>(-l)}) {
      if (!prefix->empty() && prefix->back() == -letter) continue;
      prefix->push_back(letter);
      enumerate_words(k, max_len, prefix, visit);
      prefix->pop_back();
    }
  }
}

constexpr size_t kSupportCap = 2'000'000;

}  // namespace

TreeDistribution tree_walk(int k, int m) {
  auto radial = tree_walk_radial(k, m);
  double support = 0.0;
  for (int l = 0; l <= m; ++l)
    if (!radial[l].is_zero()) support += tree_word_count(k, l).to_double();
  if (support > static_cast<double>(kSupportCap))
    throw std::invalid_argument("tree_walk: support too large for word-level enumeration");
  TreeDistribution out;
  std::vector<int8_t> prefix;
  enumerate_words(k, m, &prefix, [&](const Word& w) {
    int l = w.length();
    if (l <= m && !radial[l].is_zero()) out.add(w, radial[l] / tree_word_count(k, l));
  });
  return out;
}

TreeDistribution simulate_walk(const Labeling& alpha, const UndirectedGraph& g, int q,
                               const Word& basepoint) {
  if (!g.connected()) throw std::invalid_argument("simulate_walk: graph must be connected");
  if (q < 0) throw std::invalid_argument("simulate_walk: q >= 0");
  int girth_val = girth(g);
  if (girth_val != kGirthInfinite && 2 * q >= girth_val)
    throw std::invalid_argument("simulate_walk: need q < girth/2");
  int n = g.vertex_count();
  Rational two_m(2 * g.edge_count());
  TreeDistribution out;
  for (int u = 0; u < n; ++u) {
    Rational nu = Rational(g.degree(u)) / two_m;
    // exact q-step law from u over the radius-q ball
    std::map<int, Rational> cur;
    cur[u] = Rational(1);
    for (int step = 0; step < q; ++step) {
      std::map<int, Rational> next;
      for (const auto& [v, m] : cur) {
        Rational share = m / Rational(g.degree(v));
        for (int w : g.neighbors(v)) {
          auto it = next.find(w);
          if (it == next.end()) next.emplace(w, share);
          else it->second += share;
        }
      }
      cur = std::move(next);
    }
    // BFS parents for the unique shortest paths inside the ball
    std::vector<int> parent(n, -2), dist(n, -1);
    std::deque<int> queue{u};
    dist[u] = 0;
    parent[u] = -1;
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      if (dist[a] >= q) continue;
      for (int b : g.neighbors(a)) {
        if (dist[b] < 0) {
          dist[b] = dist[a] + 1;
          parent[b] = a;
          queue.push_back(b);
        }
      }
    }
    for (const auto& [v, m] : cur) {
      // beta_{u -> x}(v) = x * alpha(shortest path u -> v)
      std::vector<int> path{v};
      while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());  // u .. v
      Word w = basepoint * alpha_path(alpha, g, path);
      out.add(w, nu * m);
    }
  }
  return out;
}

MeanWalk mean_walk(const UndirectedGraph& g, int q, int j, int k) {
  if (q < 0 || j < 1 || k < 1) throw std::invalid_argument("mean_walk: bad parameters");
  int girth_val = girth(g);
  if (girth_val != kGirthInfinite && 2 * q >= girth_val)
    throw std::invalid_argument("mean_walk: need q < girth/2");
  MeanWalk out;
  out.weights = distance_distribution_exact(g, q);
  for (const auto& [l, weight] : out.weights) {
    if (weight.is_zero()) continue;
    TreeDistribution conv = tree_walk(k, j * l);
    for (const auto& [w, m] : conv.mass) out.dist.add(w, weight * m);
  }
  return out;
}

EffSimReport effective_simulation_check(const Labeling& alpha, const UndirectedGraph& g, int q0,
                                        int k, int j) {
  int girth_val = girth(g);
  if (girth_val != kGirthInfinite && 2 * q0 >= girth_val)
    throw std::invalid_argument("effective_simulation_check: need q0 < girth/2");
  EffSimReport report;
  report.q0 = q0;
  report.lower_ok = true;
  report.worst_ratio_low = std::numeric_limits<double>::infinity();
  Rational half(1, 2), two(2);
  for (int q = 1; q <= q0; ++q) {
    TreeDistribution sim = simulate_walk(alpha, g, q);
    MeanWalk mean = mean_walk(g, q, j, k);
    for (const auto& [w, mbar] : mean.dist.mass) {
      if (mbar.is_zero()) continue;
      Rational m = sim.at(w);
      if (m < half * mbar) report.lower_ok = false;
      report.worst_ratio_low = std::min(report.worst_ratio_low, m.to_double() / mbar.to_double());
    }
  }
  // mu^1 <= 2 mu_X^j everywhere, checked at q = 1 regardless of q0
  TreeDistribution sim1 = simulate_walk(alpha, g, 1);
  TreeDistribution base = tree_walk(k, j);
  report.upper_ok = true;
  report.worst_ratio_high = 0.0;
  for (const auto& [w, m] : sim1.mass) {
    if (m.is_zero()) continue;
    Rational b = base.at(w);
    if (b.is_zero() || m > two * b) report.upper_ok = false;
    if (!b.is_zero())
      report.worst_ratio_high = std::max(report.worst_ratio_high, m.to_double() / b.to_double());
  }
  if (q0 < 1) report.worst_ratio_low = 0.0;
  report.ok = report.lower_ok && report.upper_ok;
  return report;
}

double azuma_epsilon(int d, int k, int j) {
  return 1.0 / (d * std::pow(2.0 * k, j));
}

double azuma_tau(int q, int d, int n_vertices) {
  return (4.0 * q / (3.0 * n_vertices)) * std::pow(d / 3.0, q);
}

double azuma_failure_bound(int d, int k, int j, int q0, int n_vertices, int edge_count) {
  if (d < 1 || k < 1 || j < 1 || q0 < 1 || n_vertices < 1 || edge_count < 1)
    throw std::invalid_argument("azuma_failure_bound: positive parameters required");
  double eps = azuma_epsilon(d, k, j);
  double total = 0.0;
  for (int q = 1; q <= q0; ++q) {
    double tau = azuma_tau(q, d, n_vertices);
    double tail = std::exp(-std::pow(eps, 2.0 * q) / (8.0 * edge_count * tau * tau));
    total += std::pow(2.0 * k, static_cast<double>(q) * j) * tail;
  }
  return total;
}

}  // namespace plab
