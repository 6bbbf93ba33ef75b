#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "plab/spaces.hpp"

namespace plab {

// Finite working point set with cached pairwise distances; the metric model
// every decomposition and embedding here operates on.
class FinitePointSet {
 public:
  explicit FinitePointSet(std::vector<Point> pts);

  int size() const { return static_cast<int>(pts_.size()); }
  const std::vector<Point>& points() const { return pts_; }
  double dist(int i, int j) const { return dist_[i][j]; }
  double min_distance() const;
  double max_distance() const;

  // closed ball around i over the finite set
  std::vector<int> ball(int i, double r) const;

 private:
  std::vector<Point> pts_;
  std::vector<std::vector<double>> dist_;
};

struct Partition {
  std::vector<int> cluster;  // cluster id per point index
  int count = 0;

  double max_cluster_diameter(const FinitePointSet& pts) const;
};

struct PaddingReport {
  double min_padding = 0.0;   // worst per-point empirical padding probability
  double stderr_bound = 0.0;  // binomial standard error at the sample budget
  bool certified = false;
};

// Delta-bounded random partition scheme over a finite point set with a
// declared padding pair (epsilon, delta).
class DecompositionScheme {
 public:
  using Sampler = std::function<Partition(const FinitePointSet&, double, uint64_t)>;

  DecompositionScheme(std::string kind, FinitePointSet pts, double epsilon, double delta,
                      Sampler sampler);

  const std::string& kind() const { return kind_; }
  const FinitePointSet& points() const { return pts_; }
  double epsilon() const { return eps_; }
  double delta() const { return delta_; }

  // Always Delta-bounded; enforced on every draw.
  Partition sample(double delta_scale, uint64_t seed) const;

  // Empirical padding: per point, the fraction of draws with
  // B(x, eps*Delta) inside the cluster of x must reach delta - 3*stderr.
  PaddingReport certify(double delta_scale, int samples, uint64_t seed) const;

 private:
  std::string kind_;
  FinitePointSet pts_;
  double eps_, delta_;
  Sampler sampler_;
};

// Randomly shifted axis-aligned grid of cell side Delta/sqrt(dim).
// Declared padding: eps = 1/(4 dim), delta = (1 - 2 eps sqrt(dim))^dim.
DecompositionScheme shifted_grid_scheme(int dim, std::vector<Point> pts);

// Family-of-families cover at one scale: every ball of radius ball_radius
// sits inside some member; members of one family are disjoint with diameter
// at most diam_bound.
struct NagataCover {
  FinitePointSet pts;
  std::vector<std::vector<std::vector<int>>> families;  // families[i] = disjoint member sets
  double ball_radius = 0.0;
  double diam_bound = 0.0;

  void validate() const;
  int dimension() const { return static_cast<int>(families.size()) - 1; }
};

// Random-permutation peeling of the cover's families into a partition.
// Bounded by diam_bound; each point keeps its ball with probability at
// least 1/(d+1).
Partition nagata_peeling(const NagataCover& cover, uint64_t seed);

}  // namespace plab
