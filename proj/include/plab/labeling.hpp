#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "plab/graph.hpp"
#include "plab/word.hpp"

namespace plab {

// Symmetric labeling of oriented edges by length-j strings over the
// generators: alpha(u,v) = alpha(v,u)^{-1}. Labels are stored unreduced.
class Labeling {
 public:
  Labeling(int k, int j) : k_(k), j_(j) {}

  int generator_count() const { return k_; }
  int word_length() const { return j_; }

  void set(int u, int v, std::vector<int8_t> letters);

  // Unreduced length-j string for the orientation u -> v.
  std::vector<int8_t> raw(int u, int v) const;

  // Reduced label alpha(u,v).
  Word alpha(int u, int v) const;

  nlohmann::json to_json() const;
  static Labeling from_json(const nlohmann::json& j);

 private:
  int k_, j_;
  std::map<std::pair<int, int>, std::vector<int8_t>> labels_;  // key u < v
};

// I.i.d. uniform length-j strings per undirected edge.
Labeling sample_labeling(const UndirectedGraph& g, int k, int j, uint64_t seed);

// Product of edge labels along a vertex path, reduced.
Word alpha_path(const Labeling& alpha, const UndirectedGraph& g, std::span<const int> path);

// Relator words of a fundamental cycle basis (one per non-tree edge of a BFS
// spanning tree). The full relator set is infinite; the basis generates the
// same normal closure.
std::vector<Word> relators(const Labeling& alpha, const UndirectedGraph& g);

}  // namespace plab
