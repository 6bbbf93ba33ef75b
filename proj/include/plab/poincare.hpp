#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plab/markov.hpp"
#include "plab/spaces.hpp"

namespace plab {

struct PoincareEstimate {
  double lambda = 0.0;      // estimated modulus (lower bound unless exact)
  double best_ratio = 0.0;  // lambda^p
  bool exact = false;       // true only for the (R, p=2) eigenvector route
  std::vector<Point> witness;
  double sigma = 0.0;
  double p = 2.0;
  std::string space_kind;
};

// LHS / RHS of the chain-level Poincare inequality for the map f.
// RHS = 0 yields 0 with *degenerate set.
double rayleigh_ratio(const MarkovChain& chain, const Space& space, double p,
                      const std::vector<Point>& f, bool* degenerate = nullptr);

// Maximizes the ratio over maps f : V -> Y by multi-start coordinate ascent.
// For the real line at p = 2 the exact value 1/sqrt(gap) is returned via the
// eigenvector route and marked exact.
PoincareEstimate modulus_estimate(const MarkovChain& chain, const Space& space, double p,
                                  int restarts, uint64_t seed, int workers = 1);

// Optimizer-only variant (no exact shortcut); used to validate the ascent
// against the eigenvector value.
PoincareEstimate modulus_estimate_optimizer(const MarkovChain& chain, const Space& space, double p,
                                            int restarts, uint64_t seed, int workers = 1);

// Extrapolation of a modulus between exponents, normalized so that the
// p-modulus is A*p: returns 4*A*q for q >= p and A*q for q <= p.
double matousek_bound(double modulus_p, double p, double q);

// Modulus estimate with witness maps restricted to N sampled target points.
PoincareEstimate local_modulus(const MarkovChain& chain, const Space& space, double p, int n_points,
                               int restarts, uint64_t seed, int workers = 1);

// Second eigenvector of the walk (in the nu-weighted sense); the witness
// achieving the Hilbert modulus.
std::vector<double> second_eigenvector(const MarkovChain& chain);

}  // namespace plab
