#include "plab/poincare.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plab/parallel.hpp"
#include "plab/rng.hpp"

namespace plab {

namespace {

// Pair sums behind the ratio, maintained incrementally while one value moves.
struct RatioState {
  const MarkovChain* chain;
  const Space* space;
  double p;
  std::vector<Point> f;
  double lhs = 0.0;  // sum over ordered pairs nu_u nu_v d^p
  double rhs = 0.0;  // sum over ordered pairs nu_u mu(u,v) d^p

  void rebuild() {
    lhs = rhs = 0.0;
    int n = chain->state_count();
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        double d = std::pow(space->dist(f[u], f[v]), p);
        lhs += chain->nu()(u) * chain->nu()(v) * d;
        rhs += chain->nu()(u) * chain->kernel()(u, v) * d;
      }
  }

  // contributions of all pairs involving u, for a hypothetical value at u
  void contrib(int u, const Point& value, double* l, double* r) const {
    *l = *r = 0.0;
    int n = chain->state_count();
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      double d = std::pow(space->dist(value, f[v]), p);
      *l += (chain->nu()(u) * chain->nu()(v) + chain->nu()(v) * chain->nu()(u)) * d;
      *r += (chain->nu()(u) * chain->kernel()(u, v) + chain->nu()(v) * chain->kernel()(v, u)) * d;
    }
  }

  double ratio() const { return rhs > 1e-300 ? lhs / rhs : 0.0; }

  double ratio_with(int u, const Point& value, double l_old, double r_old) const {
    double l_new, r_new;
    contrib(u, value, &l_new, &r_new);
    double r = rhs - r_old + r_new;
    return r > 1e-300 ? (lhs - l_old + l_new) / r : 0.0;
  }

  void apply(int u, const Point& value, double l_old, double r_old) {
    double l_new, r_new;
    contrib(u, value, &l_new, &r_new);
    lhs += l_new - l_old;
    rhs += r_new - r_old;
    f[u] = value;
  }
};

bool is_real_line(const Space& space) {
  return space.kind() == "euclidean" && space.point_dim() == 1;
}

// Closed-form best response for the real line at p = 2: the ratio is a
// quotient of two quadratics in f(u); candidates are the critical points.
double best_response_line(const RatioState& st, int u) {
  int n = st.chain->state_count();
  double a1 = 0, b1 = 0, c1 = 0, a2 = 0, b2 = 0, c2 = 0;
  for (int v = 0; v < n; ++v) {
    if (v == u) continue;
    double wl = 2.0 * st.chain->nu()(u) * st.chain->nu()(v);
    double wr = st.chain->nu()(u) * st.chain->kernel()(u, v) +
                st.chain->nu()(v) * st.chain->kernel()(v, u);
    double x = st.f[v][0];
    a1 += wl; b1 += -2.0 * wl * x; c1 += wl * x * x;
    a2 += wr; b2 += -2.0 * wr * x; c2 += wr * x * x;
  }
  double l_old, r_old;
  st.contrib(u, st.f[u], &l_old, &r_old);
  c1 += st.lhs - l_old;
  c2 += st.rhs - r_old;
  // maximize (a1 x^2 + b1 x + c1)/(a2 x^2 + b2 x + c2)
  double qa = a1 * b2 - a2 * b1;
  double qb = 2.0 * (a1 * c2 - a2 * c1);
  double qc = b1 * c2 - b2 * c1;
  std::vector<double> cands{st.f[u][0]};
  if (std::abs(qa) > 1e-300) {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      double s = std::sqrt(disc);
      cands.push_back((-qb + s) / (2.0 * qa));
      cands.push_back((-qb - s) / (2.0 * qa));
    }
  } else if (std::abs(qb) > 1e-300) {
    cands.push_back(-qc / qb);
  }
  double best_x = st.f[u][0];
  double best = -1.0;
  for (double x : cands) {
    if (!std::isfinite(x)) continue;
    double den = a2 * x * x + b2 * x + c2;
    if (den < 1e-300) continue;
    double val = (a1 * x * x + b1 * x + c1) / den;
    if (val > best) { best = val; best_x = x; }
  }
  return best_x;
}

std::vector<Point> random_map(const MarkovChain& chain, const Space& space, std::mt19937_64& rng) {
  std::vector<Point> f(chain.state_count());
  for (auto& pt : f) pt = space.sample(rng);
  return f;
}

// Maps the second eigenvector onto an isometric line inside the space:
// axis 0 for flat spaces, the diameter path for trees.
bool eigenvector_seed(const MarkovChain& chain, const Space& space, std::vector<Point>* out) {
  std::vector<double> phi;
  try {
    phi = second_eigenvector(chain);
  } catch (const std::exception&) {
    return false;
  }
  int n = chain.state_count();
  if (space.kind() == "euclidean" || space.kind() == "lp") {
    out->assign(n, Point(space.point_dim(), 0.0));
    for (int u = 0; u < n; ++u) (*out)[u][0] = phi[u];
    return true;
  }
  if (space.kind() == "tree") {
    const auto& tree = static_cast<const MetricTree&>(space);
    int a = 0, b = 0;
    double best = -1.0;
    for (int u = 0; u < tree.vertex_count(); ++u)
      for (int v = 0; v < tree.vertex_count(); ++v)
        if (tree.vertex_distance(u, v) > best) { best = tree.vertex_distance(u, v); a = u; b = v; }
    if (best <= 0.0) return false;
    double lo = *std::min_element(phi.begin(), phi.end());
    double hi = *std::max_element(phi.begin(), phi.end());
    if (hi - lo < 1e-30) return false;
    Point pa = tree.vertex_point(a), pb = tree.vertex_point(b);
    out->resize(n);
    for (int u = 0; u < n; ++u)
      (*out)[u] = tree.geodesic(pa, pb, (phi[u] - lo) / (hi - lo));
    return true;
  }
  return false;
}

PoincareEstimate run_ascent(const MarkovChain& chain, const Space& space, double p, int restarts,
                            uint64_t seed, int workers) {
  if (!chain.reversible() || !chain.ergodic())
    throw std::invalid_argument("modulus_estimate: chain must be reversible and ergodic");
  int n = chain.state_count();
  bool line2 = is_real_line(space) && std::abs(p - 2.0) < 1e-12;

  std::vector<double> results(restarts, 0.0);
  std::vector<std::vector<Point>> witnesses(restarts);

  parallel_for(restarts, workers, [&](size_t r) {
    auto rng = make_rng(derive_seed(seed, "modulus-restart", r));
    RatioState st{&chain, &space, p, {}, 0, 0};
    if (r == 0 && std::abs(p - 2.0) < 1e-12 && eigenvector_seed(chain, space, &st.f)) {
      // eigenvector start
    } else {
      st.f = random_map(chain, space, rng);
    }
    st.rebuild();
    for (int attempt = 0; attempt < 4 && st.rhs < 1e-300; ++attempt) {
      st.f = random_map(chain, space, rng);  // degenerate start, re-seed
      st.rebuild();
    }

    std::uniform_int_distribution<int> pick_v(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int sweep_cap = line2 ? 500 : 80;
    for (int sweep = 0; sweep < sweep_cap; ++sweep) {
      double before = st.ratio();
      for (int u = 0; u < n; ++u) {
        double l_old, r_old;
        st.contrib(u, st.f[u], &l_old, &r_old);
        if (line2) {
          double x = best_response_line(st, u);
          Point cand{x};
          if (st.ratio_with(u, cand, l_old, r_old) > st.ratio())
            st.apply(u, cand, l_old, r_old);
          continue;
        }
        Point best_pt = st.f[u];
        double best_ratio = st.ratio();
        auto try_candidate = [&](const Point& cand) {
          double val = st.ratio_with(u, cand, l_old, r_old);
          if (val > best_ratio) { best_ratio = val; best_pt = cand; }
        };
        for (int c = 0; c < 6; ++c) {
          int v = pick_v(rng);
          if (v == u) continue;
          try_candidate(space.geodesic(st.f[u], st.f[v], unit(rng)));
          try_candidate(st.f[v]);
        }
        for (int c = 0; c < 4; ++c) {
          Point z = space.sample(rng);
          try_candidate(z);
          try_candidate(space.geodesic(st.f[u], z, 0.2 * unit(rng)));
        }
        if (best_ratio > st.ratio()) st.apply(u, best_pt, l_old, r_old);
      }
      if (st.ratio() - before <= 1e-14 * std::max(1.0, before)) break;
    }
    results[r] = st.ratio();
    witnesses[r] = st.f;
  });

  size_t best = 0;
  for (size_t r = 1; r < results.size(); ++r)
    if (results[r] > results[best]) best = r;  // ties resolved by restart index

  PoincareEstimate est;
  est.best_ratio = results[best];
  est.lambda = std::pow(std::max(results[best], 0.0), 1.0 / p);
  est.exact = false;
  est.witness = witnesses[best];
  est.sigma = spectral_gap(chain).gap;
  est.p = p;
  est.space_kind = space.kind();
  return est;
}

}  // namespace

double rayleigh_ratio(const MarkovChain& chain, const Space& space, double p,
                      const std::vector<Point>& f, bool* degenerate) {
  if (static_cast<int>(f.size()) != chain.state_count())
    throw std::invalid_argument("rayleigh_ratio: map size mismatch");
  RatioState st{&chain, &space, p, f, 0, 0};
  st.rebuild();
  if (degenerate) *degenerate = st.rhs <= 1e-300;
  return st.ratio();
}

std::vector<double> second_eigenvector(const MarkovChain& chain) {
  int n = chain.state_count();
  if (n < 2) throw std::invalid_argument("second_eigenvector: need >= 2 states");
  Eigen::VectorXd sqrt_nu = chain.nu().cwiseSqrt();
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double denom = sqrt_nu(j) > 0 ? sqrt_nu(j) : 1.0;
      s(i, j) = sqrt_nu(i) * chain.kernel()(i, j) / denom;
    }
  s = 0.5 * (s + s.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  Eigen::VectorXd phi = es.eigenvectors().col(n - 2);
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = phi(i) / (sqrt_nu(i) > 0 ? sqrt_nu(i) : 1.0);
  return f;
}

PoincareEstimate modulus_estimate(const MarkovChain& chain, const Space& space, double p,
                                  int restarts, uint64_t seed, int workers) {
  if (is_real_line(space) && std::abs(p - 2.0) < 1e-12) {
    PoincareEstimate est;
    est.sigma = spectral_gap(chain).gap;
    est.lambda = 1.0 / std::sqrt(est.sigma);
    est.best_ratio = 1.0 / est.sigma;
    est.exact = true;
    auto phi = second_eigenvector(chain);
    est.witness.resize(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) est.witness[i] = Point{phi[i]};
    est.p = p;
    est.space_kind = space.kind();
    return est;
  }
  return run_ascent(chain, space, p, restarts, seed, workers);
}

PoincareEstimate modulus_estimate_optimizer(const MarkovChain& chain, const Space& space, double p,
                                            int restarts, uint64_t seed, int workers) {
  return run_ascent(chain, space, p, restarts, seed, workers);
}

double matousek_bound(double modulus_p, double p, double q) {
  if (q <= 1.0) throw std::invalid_argument("matousek_bound: q > 1");
  double a = modulus_p / p;
  // both branches apply at q == p; the downward one is tighter there
  return q > p ? 4.0 * a * q : a * q;
}

PoincareEstimate local_modulus(const MarkovChain& chain, const Space& space, double p, int n_points,
                               int restarts, uint64_t seed, int workers) {
  if (n_points < 1) throw std::invalid_argument("local_modulus: N >= 1");
  int n = chain.state_count();
  if (n_points >= n) return modulus_estimate(chain, space, p, restarts, seed, workers);
  if (n_points == 1) {
    PoincareEstimate est;
    est.lambda = 0.0;
    est.best_ratio = 0.0;
    est.sigma = spectral_gap(chain).gap;
    est.p = p;
    est.space_kind = space.kind();
    return est;  // all maps constant
  }

  std::vector<double> results(restarts, 0.0);
  std::vector<std::vector<Point>> witnesses(restarts);
  parallel_for(restarts, workers, [&](size_t r) {
    auto rng = make_rng(derive_seed(seed, "local-modulus", r));
    std::vector<Point> palette(n_points);
    for (auto& pt : palette) pt = space.sample(rng);
    std::uniform_int_distribution<int> pick(0, n_points - 1);
    RatioState st{&chain, &space, p, {}, 0, 0};
    st.f.resize(n);
    for (auto& pt : st.f) pt = palette[pick(rng)];
    st.rebuild();
    for (int sweep = 0; sweep < 60; ++sweep) {
      double before = st.ratio();
      for (int u = 0; u < n; ++u) {
        double l_old, r_old;
        st.contrib(u, st.f[u], &l_old, &r_old);
        Point best_pt = st.f[u];
        double best_val = st.ratio();
        for (const auto& cand : palette) {
          double val = st.ratio_with(u, cand, l_old, r_old);
          if (val > best_val) { best_val = val; best_pt = cand; }
        }
        if (best_val > st.ratio()) st.apply(u, best_pt, l_old, r_old);
      }
      if (st.ratio() - before <= 1e-14 * std::max(1.0, before)) break;
    }
    results[r] = st.ratio();
    witnesses[r] = st.f;
  });

  size_t best = 0;
  for (size_t r = 1; r < results.size(); ++r)
    if (results[r] > results[best]) best = r;
  PoincareEstimate est;
  est.best_ratio = results[best];
  est.lambda = std::pow(std::max(results[best], 0.0), 1.0 / p);
  est.witness = witnesses[best];
  est.sigma = spectral_gap(chain).gap;
  est.p = p;
  est.space_kind = space.kind();
  return est;
}

}  // namespace plab
