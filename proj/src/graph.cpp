#include "plab/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "plab/rng.hpp"

namespace plab {

namespace {

bool check_connected(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  return reached == n;
}

}  // namespace

UndirectedGraph UndirectedGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 0) throw std::invalid_argument("graph: vertex count must be positive");
  UndirectedGraph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("graph: vertex id out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) throw std::invalid_argument("graph: duplicate edge");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  g.m_ = static_cast<int>(edges.size());
  g.connected_ = check_connected(g.adj_);
  return g;
}

UndirectedGraph UndirectedGraph::read_edge_list(std::istream& in) {
  std::string line;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m)) throw std::runtime_error("edge list: bad header line");
      continue;
    }
    int u, v;
    if (!(ls >> u >> v)) throw std::runtime_error("edge list: bad edge line: " + line);
    edges.emplace_back(u, v);
  }
  if (n < 0) throw std::runtime_error("edge list: missing header");
  if (static_cast<int>(edges.size()) != m)
    throw std::runtime_error("edge list: edge count mismatch with header");
  return from_edges(n, edges);
}

UndirectedGraph UndirectedGraph::read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_edge_list(in);
}

void UndirectedGraph::write_edge_list(std::ostream& out) const {
  out << n_ << " " << m_ << "\n";
  for (auto [u, v] : edges()) out << u << " " << v << "\n";
}

int UndirectedGraph::min_degree() const {
  int d = n_;
  for (int u = 0; u < n_; ++u) d = std::min(d, degree(u));
  return d;
}

int UndirectedGraph::max_degree() const {
  int d = 0;
  for (int u = 0; u < n_; ++u) d = std::max(d, degree(u));
  return d;
}

bool UndirectedGraph::has_edge(int u, int v) const {
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

UndirectedGraph gen_random_regular(int n, int d, uint64_t seed) {
  if (d >= n) throw std::invalid_argument("gen_random_regular: need d < n");
  if (d < 1) throw std::invalid_argument("gen_random_regular: need d >= 1");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("gen_random_regular: n*d must be even");

  auto rng = make_rng(derive_seed(seed, "regular-graph"));
  const int attempts = 5000;
  std::vector<int> stubs(static_cast<size_t>(n) * d);
  for (int a = 0; a < attempts; ++a) {
    for (int u = 0; u < n; ++u)
      for (int i = 0; i < d; ++i) stubs[static_cast<size_t>(u) * d + i] = u;
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<int, int>> edge_set;
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) { ok = false; break; }
      if (!edge_set.insert(std::minmax(u, v)).second) { ok = false; break; }
    }
    if (!ok) continue;
    std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
    auto g = UndirectedGraph::from_edges(n, edges);
    if (g.connected()) return g;
  }
  throw std::runtime_error("gen_random_regular: rejection budget exhausted");
}

std::vector<int> bfs_distances(const UndirectedGraph& g, int source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

int girth(const UndirectedGraph& g) {
  // BFS from every vertex; the shortest cycle through the root is detected
  // when an edge closes between two reached vertices.
  int best = kGirthInfinite;
  int n = g.vertex_count();
  std::vector<int> dist(n), parent(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        } else if (v != parent[u]) {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
  }
  return best;
}

DistanceTable distances(const UndirectedGraph& g) {
  if (!g.connected()) throw std::invalid_argument("distances: graph must be connected");
  DistanceTable t;
  int n = g.vertex_count();
  t.dist.resize(n);
  for (int s = 0; s < n; ++s) {
    t.dist[s] = bfs_distances(g, s);
    for (int v = 0; v < n; ++v) t.diameter = std::max(t.diameter, t.dist[s][v]);
  }
  return t;
}

std::map<int, Rational> distance_distribution_exact(const UndirectedGraph& g, int q) {
  if (!g.connected()) throw std::invalid_argument("distance_distribution: graph must be connected");
  if (q < 0) throw std::invalid_argument("distance_distribution: q must be >= 0");
  int n = g.vertex_count();
  Rational two_m(2 * g.edge_count());
  std::map<int, Rational> out;
  for (int u = 0; u < n; ++u) {
    // nu(u) = deg(u) / 2|E|
    Rational nu = Rational(g.degree(u)) / two_m;
    // sparse q-step propagation from u
    std::map<int, Rational> cur;
    cur[u] = Rational(1);
    for (int step = 0; step < q; ++step) {
      std::map<int, Rational> next;
      for (const auto& [v, mass] : cur) {
        Rational share = mass / Rational(g.degree(v));
        for (int w : g.neighbors(v)) {
          auto it = next.find(w);
          if (it == next.end()) next.emplace(w, share);
          else it->second += share;
        }
      }
      cur = std::move(next);
    }
    auto dist = bfs_distances(g, u);
    for (const auto& [v, mass] : cur) {
      Rational contrib = nu * mass;
      auto it = out.find(dist[v]);
      if (it == out.end()) out.emplace(dist[v], contrib);
      else it->second += contrib;
    }
  }
  return out;
}

std::map<int, double> distance_distribution(const UndirectedGraph& g, int q) {
  std::map<int, double> out;
  for (const auto& [l, p] : distance_distribution_exact(g, q)) out[l] = p.to_double();
  return out;
}

double walk_concentration(const UndirectedGraph& g, int q) {
  double total = 0.0;
  for (const auto& [l, p] : distance_distribution(g, q))
    if (6 * l <= q) total += p;
  return total;
}

UndirectedGraph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return UndirectedGraph::from_edges(n, edges);
}

UndirectedGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return UndirectedGraph::from_edges(n, edges);
}

UndirectedGraph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return UndirectedGraph::from_edges(n, edges);
}

UndirectedGraph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return UndirectedGraph::from_edges(10, edges);
}

}  // namespace plab
