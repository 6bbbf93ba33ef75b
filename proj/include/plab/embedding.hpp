#pragma once

#include <cstdint>
#include <vector>

#include "plab/decomp.hpp"

namespace plab {

// Empirical realization of the multi-scale random embedding: coordinates
// indexed by (scale k, sample s), pre-scaled by 2^{-k(1-theta)}/sqrt(samples).
struct SnowflakeEmbedding {
  int kmin = 0, kmax = 0;
  int samples = 0;
  double theta = 0.5;
  // coords[point][(k - kmin) * samples + s]
  std::vector<std::vector<double>> coords;
  // raw per-draw data for diagnostics: value[point] = sign * min{d_out, 2^k}
  std::vector<std::vector<double>> raw;  // raw[(k - kmin) * samples + s][point]

  double pair_distance(int i, int j) const;
  std::vector<double> block_sq_difference(int i, int j, int k) const;  // per-sample at scale k
};

// Builds the embedding from independent partition draws with i.i.d. cluster
// signs. Certifies the scheme's declared padding at each scale first and
// throws if certification fails.
SnowflakeEmbedding snowflake_embed(const DecompositionScheme& scheme, double theta, int kmin,
                                   int kmax, int samples, uint64_t seed, int certify_samples = 200,
                                   int workers = 1);

struct DistortionReport {
  double expansion = 0.0;    // max ||F(x)-F(y)|| / d(x,y)^theta
  double contraction = 0.0;  // min of the same ratio
  double distortion = 0.0;   // expansion / contraction
  int pairs = 0;
};

DistortionReport distortion(const FinitePointSet& pts, const SnowflakeEmbedding& emb);

// Largest per-coordinate difference violation of the scale-j Lipschitz bound
// |f_j(x) - f_j(y)| <= 2 min{d(x,y), 2^j}; non-positive means the bound holds.
double scale_lipschitz_violation(const FinitePointSet& pts, const SnowflakeEmbedding& emb);

// Upper bound on the squared contribution of the scales dropped outside
// [kmin, kmax] for a pair at distance d (geometric tails of the per-scale
// cutoff bound).
double truncation_tail_bound(double d, double theta, int kmin, int kmax);

// theta minimizing the chained modulus bound
// ((p/(theta sqrt(sigma))) * (c/(eps sqrt(delta theta(1-theta)))))^{1/theta}.
double theta_bound_value(double theta, double eps, double delta, double p, double sigma, double c);
double optimize_theta(double eps, double delta, double p, double sigma, double c = 1.0);

// Chained bound at theta = 1/2: (distortion * 2*(2p)/sqrt(sigma))^2 with the
// snowflake distortion 1/(eps sqrt(delta/4)).
double modulus_via_embedding(double eps, double delta, double p, double sigma);

}  // namespace plab
