#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "plab/rational.hpp"

namespace plab {

inline constexpr int kGirthInfinite = std::numeric_limits<int>::max();

// Finite simple undirected graph. Immutable after construction.
class UndirectedGraph {
 public:
  static UndirectedGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
  static UndirectedGraph read_edge_list(std::istream& in);
  static UndirectedGraph read_edge_list_file(const std::string& path);
  void write_edge_list(std::ostream& out) const;

  int vertex_count() const { return n_; }
  int edge_count() const { return m_; }
  const std::vector<int>& neighbors(int u) const { return adj_[u]; }
  int degree(int u) const { return static_cast<int>(adj_[u].size()); }
  int min_degree() const;
  int max_degree() const;
  bool connected() const { return connected_; }
  bool has_edge(int u, int v) const;
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<int>> adj_;
  bool connected_ = false;
};

struct DistanceTable {
  std::vector<std::vector<int>> dist;
  int diameter = 0;
};

// Pairing-model generator with rejection of loops, multi-edges and
// disconnected outcomes. Deterministic given seed.
UndirectedGraph gen_random_regular(int n, int d, uint64_t seed);

// Length of the shortest cycle; kGirthInfinite for forests.
int girth(const UndirectedGraph& g);

DistanceTable distances(const UndirectedGraph& g);

std::vector<int> bfs_distances(const UndirectedGraph& g, int source);

// P_G^q(l): probability that q steps of the stationary random walk travel
// graph distance l. Exact rational mode works for any graph with small q
// (per-start sparse propagation over the radius-q ball).
std::map<int, double> distance_distribution(const UndirectedGraph& g, int q);
std::map<int, Rational> distance_distribution_exact(const UndirectedGraph& g, int q);

// Q_G^q = sum_{l <= q/6} P_G^q(l).
double walk_concentration(const UndirectedGraph& g, int q);

UndirectedGraph cycle_graph(int n);
UndirectedGraph complete_graph(int n);
UndirectedGraph path_graph(int n);
UndirectedGraph petersen_graph();

}  // namespace plab
