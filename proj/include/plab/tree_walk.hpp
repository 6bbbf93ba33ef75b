#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "plab/graph.hpp"
#include "plab/labeling.hpp"
#include "plab/rational.hpp"
#include "plab/word.hpp"

namespace plab {

// Sparse exact distribution over reduced words (vertices of the 2k-regular
// tree relative to the basepoint).
struct TreeDistribution {
  std::map<Word, Rational> mass;

  Rational total() const;
  Rational at(const Word& w) const;
  void add(const Word& w, const Rational& m);
  double tv_distance(const TreeDistribution& o) const;
  nlohmann::json to_json() const;
};

// Radial law of the m-step standard walk on the 2k-regular tree:
// entry l holds the probability of ending at distance l.
std::vector<Rational> tree_walk_radial(int k, int m);

// Number of reduced words of length l over k generators.
Rational tree_word_count(int k, int l);

// Full word-level distribution of the m-step tree walk from the identity.
TreeDistribution tree_walk(int k, int m);

// Exact law of the labeled walk started from the stationary measure, pushed
// to the tree through the shortest-path labeling maps. Requires q < girth/2.
TreeDistribution simulate_walk(const Labeling& alpha, const UndirectedGraph& g, int q,
                               const Word& basepoint = Word());

struct MeanWalk {
  TreeDistribution dist;
  std::map<int, Rational> weights;  // P_G^q(l)
};

// Convex combination of tree-walk convolutions with distance-distribution
// weights. Requires q < girth/2.
MeanWalk mean_walk(const UndirectedGraph& g, int q, int j, int k);

struct EffSimReport {
  bool ok = false;
  bool lower_ok = false;   // mu^q >= mean/2 for all q <= q0
  bool upper_ok = false;   // mu^1 <= 2 mu_X^j
  double worst_ratio_low = 0.0;
  double worst_ratio_high = 0.0;
  int q0 = 0;
};

EffSimReport effective_simulation_check(const Labeling& alpha, const UndirectedGraph& g, int q0,
                                        int k, int j);

double azuma_epsilon(int d, int k, int j);
double azuma_tau(int q, int d, int n_vertices);

// Union-bound failure probability for effective simulation up to time q0.
double azuma_failure_bound(int d, int k, int j, int q0, int n_vertices, int edge_count);

}  // namespace plab
