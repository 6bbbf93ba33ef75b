#include "plab/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plab/parallel.hpp"
#include "plab/rng.hpp"

namespace plab {

double SnowflakeEmbedding::pair_distance(int i, int j) const {
  double s = 0.0;
  for (size_t c = 0; c < coords[i].size(); ++c) {
    double d = coords[i][c] - coords[j][c];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<double> SnowflakeEmbedding::block_sq_difference(int i, int j, int k) const {
  std::vector<double> out(samples);
  for (int s = 0; s < samples; ++s) {
    double a = raw[(k - kmin) * samples + s][i];
    double b = raw[(k - kmin) * samples + s][j];
    out[s] = (a - b) * (a - b);
  }
  return out;
}

SnowflakeEmbedding snowflake_embed(const DecompositionScheme& scheme, double theta, int kmin,
                                   int kmax, int samples, uint64_t seed, int certify_samples,
                                   int workers) {
  if (theta <= 0.0 || theta >= 1.0) throw std::invalid_argument("snowflake_embed: theta in (0,1)");
  if (kmin > kmax) throw std::invalid_argument("snowflake_embed: empty scale range");
  if (samples < 1) throw std::invalid_argument("snowflake_embed: samples >= 1");
  const auto& pts = scheme.points();
  int n = pts.size();

  for (int k = kmin; k <= kmax; ++k) {
    auto report = scheme.certify(std::ldexp(1.0, k), certify_samples,
                                 derive_seed(seed, "scale-cert", static_cast<uint64_t>(k - kmin)));
    if (!report.certified)
      throw std::runtime_error("snowflake_embed: scheme failed padding certification at scale " +
                               std::to_string(k));
  }

  SnowflakeEmbedding emb;
  emb.kmin = kmin;
  emb.kmax = kmax;
  emb.samples = samples;
  emb.theta = theta;
  int scales = kmax - kmin + 1;
  emb.raw.assign(static_cast<size_t>(scales) * samples, std::vector<double>(n, 0.0));
  emb.coords.assign(n, std::vector<double>(static_cast<size_t>(scales) * samples, 0.0));

  parallel_for(static_cast<size_t>(scales) * samples, workers, [&](size_t idx) {
    int k = kmin + static_cast<int>(idx) / samples;
    int s = static_cast<int>(idx) % samples;
    double delta_scale = std::ldexp(1.0, k);
    // draws and signs are keyed by the absolute scale, so extending the
    // scale range keeps the shared blocks identical
    uint64_t scale_key = static_cast<uint64_t>(k + 1024);
    Partition part =
        scheme.sample(delta_scale, derive_seed(seed, "draw", scale_key * 1000003ull + s));
    // cluster representative = smallest member index; keys the sign
    std::vector<int> rep(part.count, n);
    for (int i = 0; i < n; ++i) rep[part.cluster[i]] = std::min(rep[part.cluster[i]], i);
    for (int i = 0; i < n; ++i) {
      double d_out = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j)
        if (part.cluster[j] != part.cluster[i]) d_out = std::min(d_out, pts.dist(i, j));
      // finite-model convention: a cluster holding the whole set contributes 0
      if (!std::isfinite(d_out)) d_out = 0.0;
      double sign = hash_sign(seed, scale_key, static_cast<uint64_t>(s),
                              static_cast<uint64_t>(rep[part.cluster[i]]));
      emb.raw[idx][i] = sign * std::min(d_out, delta_scale);
    }
  });

  double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(samples));
  for (int k = kmin; k <= kmax; ++k) {
    double scale_factor = std::pow(2.0, -static_cast<double>(k) * (1.0 - theta)) * inv_sqrt;
    for (int s = 0; s < samples; ++s) {
      size_t idx = static_cast<size_t>(k - kmin) * samples + s;
      for (int i = 0; i < n; ++i) emb.coords[i][idx] = scale_factor * emb.raw[idx][i];
    }
  }
  return emb;
}

DistortionReport distortion(const FinitePointSet& pts, const SnowflakeEmbedding& emb) {
  if (pts.size() < 2) throw std::invalid_argument("distortion: need >= 2 points");
  DistortionReport report;
  report.contraction = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pts.size(); ++i)
    for (int j = i + 1; j < pts.size(); ++j) {
      double d = pts.dist(i, j);
      if (d <= 0.0) continue;  // coincident points skipped
      double ratio = emb.pair_distance(i, j) / std::pow(d, emb.theta);
      report.expansion = std::max(report.expansion, ratio);
      report.contraction = std::min(report.contraction, ratio);
      ++report.pairs;
    }
  if (report.pairs == 0) throw std::invalid_argument("distortion: all points coincide");
  report.distortion = report.contraction > 0
                          ? report.expansion / report.contraction
                          : std::numeric_limits<double>::infinity();
  return report;
}

double scale_lipschitz_violation(const FinitePointSet& pts, const SnowflakeEmbedding& emb) {
  double worst = -std::numeric_limits<double>::infinity();
  int scales = emb.kmax - emb.kmin + 1;
  for (int ks = 0; ks < scales; ++ks) {
    double two_j = std::ldexp(1.0, emb.kmin + ks);
    for (int s = 0; s < emb.samples; ++s) {
      const auto& row = emb.raw[static_cast<size_t>(ks) * emb.samples + s];
      for (int i = 0; i < pts.size(); ++i)
        for (int j = i + 1; j < pts.size(); ++j) {
          double bound = 2.0 * std::min(pts.dist(i, j), two_j);
          worst = std::max(worst, std::abs(row[i] - row[j]) - bound);
        }
    }
  }
  return worst;
}

double truncation_tail_bound(double d, double theta, int kmin, int kmax) {
  // below kmin each scale j contributes at most 4^{-j(1-theta)} (2*2^j)^2
  double below = 4.0 * std::pow(4.0, (kmin - 1) * theta) / (1.0 - std::pow(4.0, -theta));
  // above kmax each scale contributes at most 4^{-j(1-theta)} (2d)^2
  double above = 4.0 * d * d * std::pow(4.0, -(kmax + 1) * (1.0 - theta)) /
                 (1.0 - std::pow(4.0, -(1.0 - theta)));
  return below + above;
}

double theta_bound_value(double theta, double eps, double delta, double p, double sigma, double c) {
  double inner = (p / (theta * std::sqrt(sigma))) *
                 (c / (eps * std::sqrt(delta * theta * (1.0 - theta))));
  return std::pow(inner, 1.0 / theta);
}

double optimize_theta(double eps, double delta, double p, double sigma, double c) {
  if (sigma <= 0.0 || sigma >= 1.0 || eps <= 0.0 || eps >= 1.0 || delta <= 0.0 || delta >= 1.0 ||
      p <= 0.0 || c <= 0.0)
    throw std::invalid_argument("optimize_theta: parameters out of range");
  auto log_bound = [&](double theta) {
    return (std::log(p / (theta * std::sqrt(sigma))) +
            std::log(c / (eps * std::sqrt(delta * theta * (1.0 - theta))))) /
           theta;
  };
  const double invphi = 0.6180339887498949;
  double a = 1e-6, b = 1.0 - 1e-6;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = log_bound(x1), f2 = log_bound(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = log_bound(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = log_bound(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

double modulus_via_embedding(double eps, double delta, double p, double sigma) {
  double dist_bound = 1.0 / (eps * std::sqrt(delta * 0.25));
  double hilbert = 2.0 * (2.0 * p) / std::sqrt(sigma);
  double chained = dist_bound * hilbert;
  return chained * chained;  // exponent 1/theta with theta = 1/2
}

}  // namespace plab
