#pragma once

#include <Eigen/Dense>
#include <string>

#include "plab/graph.hpp"

#include <nlohmann/json_fwd.hpp>

namespace plab {

// Reversible finite Markov chain: row-stochastic kernel plus stationary
// measure. Validated at construction; immutable afterwards.
class MarkovChain {
 public:
  MarkovChain(Eigen::MatrixXd kernel, Eigen::VectorXd nu, bool reversible);

  int state_count() const { return static_cast<int>(kernel_.rows()); }
  const Eigen::MatrixXd& kernel() const { return kernel_; }
  const Eigen::VectorXd& nu() const { return nu_; }
  bool reversible() const { return reversible_; }

  // Strong connectivity of the positive-entry digraph.
  bool ergodic() const;

  nlohmann::json to_json() const;
  static MarkovChain from_json(const nlohmann::json& j);

 private:
  Eigen::MatrixXd kernel_;
  Eigen::VectorXd nu_;
  bool reversible_;
};

struct SpectralReport {
  double second_largest_eigenvalue = 0.0;
  double gap = 0.0;  // 1 - second largest eigenvalue
  std::string method;
};

MarkovChain standard_walk(const UndirectedGraph& g);

// Kernel raised to the n-th power; stationary measure and reversibility kept.
MarkovChain convolve(const MarkovChain& c, int n);

// Dense symmetric eigensolve for <= 2000 states, Lanczos iteration beyond.
SpectralReport spectral_gap(const MarkovChain& c);

}  // namespace plab
