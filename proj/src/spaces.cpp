#include "plab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "plab/rng.hpp"

namespace plab {

namespace {

double sq(double x) { return x * x; }

// Barzilai-Borwein gradient iteration for flat vector spaces. The moment
// functional is convex; near the optimum its values are flat to machine
// precision, so progress is tracked by gradient norm, not value acceptance.
template <typename GradFn>
void bb_descent(Point* y, const GradFn& grad, int max_iter) {
  size_t d = y->size();
  Point cur = *y, g = grad(cur), y_prev, g_prev;
  double step = 1e-3;
  auto norm2 = [](const Point& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
  };
  Point best = cur;
  double best_g2 = norm2(g);
  for (int it = 0; it < max_iter; ++it) {
    double g2 = norm2(g);
    if (g2 < best_g2) {
      best_g2 = g2;
      best = cur;
    }
    if (g2 < 1e-30) break;
    if (g2 > 1e12 * best_g2 + 1e-30) {
      // runaway step; restart cautiously from the best point
      cur = best;
      g = grad(cur);
      step = 1e-6;
      y_prev.clear();
    }
    if (!y_prev.empty()) {
      double sy = 0.0, ss = 0.0;
      for (size_t i = 0; i < d; ++i) {
        double s = cur[i] - y_prev[i];
        double dg = g[i] - g_prev[i];
        sy += s * dg;
        ss += s * s;
      }
      if (sy > 1e-300 && ss > 0.0) step = std::clamp(ss / sy, 1e-12, 1e12);
    }
    y_prev = cur;
    g_prev = g;
    for (size_t i = 0; i < d; ++i) cur[i] -= step * g[i];
    g = grad(cur);
  }
  if (norm2(g) < best_g2) best = cur;
  *y = best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Euclidean

EuclideanSpace::EuclideanSpace(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("EuclideanSpace: dim >= 1");
  claimed_p_ = 2.0;
  claimed_c_ = 1.0;
}

bool EuclideanSpace::contains(const Point& x) const {
  return static_cast<int>(x.size()) == dim_;
}

double EuclideanSpace::dist(const Point& x, const Point& y) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += sq(x[i] - y[i]);
  return std::sqrt(s);
}

Point EuclideanSpace::geodesic(const Point& y, const Point& z, double t) const {
  if (t < -1e-12 || t > 1 + 1e-12) throw std::invalid_argument("geodesic: t out of [0,1]");
  Point p(dim_);
  for (int i = 0; i < dim_; ++i) p[i] = (1 - t) * y[i] + t * z[i];
  return p;
}

Point EuclideanSpace::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Point p(dim_);
  for (int i = 0; i < dim_; ++i) p[i] = u(rng);
  return p;
}

bool EuclideanSpace::refine_center(const std::vector<Point>& support,
                                   const std::vector<double>& weights, double p, Point* y,
                                   int max_iter) const {
  auto grad = [&](const Point& q) {
    Point g(dim_, 0.0);
    for (size_t i = 0; i < support.size(); ++i) {
      double d = dist(q, support[i]);
      if (d < 1e-300) continue;
      double coef = weights[i] * p * std::pow(d, p - 2.0);
      for (int c = 0; c < dim_; ++c) g[c] += coef * (q[c] - support[i][c]);
    }
    return g;
  };
  bb_descent(y, grad, max_iter);
  return true;
}

// ---------------------------------------------------------------------------
// Lp

LpSpace::LpSpace(int dim, double p) : dim_(dim), p_(p) {
  if (dim < 1) throw std::invalid_argument("LpSpace: dim >= 1");
  if (p < 2.0) throw std::invalid_argument("LpSpace: p >= 2");
  claimed_p_ = p;
  claimed_c_ = std::pow(2.0, 2.0 - p);  // Clarkson two-point constant
}

bool LpSpace::contains(const Point& x) const { return static_cast<int>(x.size()) == dim_; }

double LpSpace::dist(const Point& x, const Point& y) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += std::pow(std::abs(x[i] - y[i]), p_);
  return std::pow(s, 1.0 / p_);
}

Point LpSpace::geodesic(const Point& y, const Point& z, double t) const {
  if (t < -1e-12 || t > 1 + 1e-12) throw std::invalid_argument("geodesic: t out of [0,1]");
  Point p(dim_);
  for (int i = 0; i < dim_; ++i) p[i] = (1 - t) * y[i] + t * z[i];
  return p;
}

Point LpSpace::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Point p(dim_);
  for (int i = 0; i < dim_; ++i) p[i] = u(rng);
  return p;
}

bool LpSpace::refine_center(const std::vector<Point>& support, const std::vector<double>& weights,
                            double p, Point* y, int max_iter) const {
  // Moment functional for the lp metric is coordinatewise separable only at
  // p == p_; handle the general case with a full gradient anyway.
  auto grad = [&](const Point& q) {
    Point g(dim_, 0.0);
    for (size_t i = 0; i < support.size(); ++i) {
      double d = dist(q, support[i]);
      if (d < 1e-300) continue;
      double outer = weights[i] * (p / p_) * std::pow(d, p - p_);
      for (int c = 0; c < dim_; ++c) {
        double diff = q[c] - support[i][c];
        g[c] += outer * p_ * std::pow(std::abs(diff), p_ - 1.0) * (diff >= 0 ? 1.0 : -1.0);
      }
    }
    return g;
  };
  bb_descent(y, grad, max_iter);
  return true;
}

// ---------------------------------------------------------------------------
// Hyperbolic plane (Poincare disk)

namespace {

using Cx = std::complex<double>;

Cx to_c(const Point& p) { return Cx(p[0], p[1]); }
Point from_c(Cx z) { return Point{z.real(), z.imag()}; }

// Moebius map sending a to the origin.
Cx mobius_to_zero(Cx a, Cx z) { return (z - a) / (1.0 - std::conj(a) * z); }
Cx mobius_from_zero(Cx a, Cx z) { return (z + a) / (1.0 + std::conj(a) * z); }

}  // namespace

HyperbolicPlane::HyperbolicPlane() {
  claimed_p_ = 2.0;
  claimed_c_ = 1.0;
}

bool HyperbolicPlane::contains(const Point& x) const {
  return x.size() == 2 && sq(x[0]) + sq(x[1]) < 1.0;
}

double HyperbolicPlane::dist(const Point& x, const Point& y) const {
  if (!contains(x) || !contains(y)) throw std::invalid_argument("hyperbolic: point outside the disk");
  Cx u = to_c(x), v = to_c(y);
  double rho = std::abs(u - v) / std::abs(1.0 - std::conj(u) * v);
  return 2.0 * std::atanh(std::min(rho, 1.0 - 1e-17));
}

Point HyperbolicPlane::geodesic(const Point& y, const Point& z, double t) const {
  if (t < -1e-12 || t > 1 + 1e-12) throw std::invalid_argument("geodesic: t out of [0,1]");
  if (!contains(y) || !contains(z)) throw std::invalid_argument("hyperbolic: point outside the disk");
  Cx a = to_c(y);
  Cx w = mobius_to_zero(a, to_c(z));
  double r = std::abs(w);
  if (r < 1e-300) return y;
  double d = 2.0 * std::atanh(std::min(r, 1.0 - 1e-17));
  double rt = std::tanh(0.5 * t * d);
  Cx pt = rt * (w / r);
  return from_c(mobius_from_zero(a, pt));
}

Point HyperbolicPlane::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = 0.85 * std::sqrt(u(rng));
  double phi = 2.0 * M_PI * u(rng);
  return Point{r * std::cos(phi), r * std::sin(phi)};
}

bool HyperbolicPlane::refine_center(const std::vector<Point>& support,
                                    const std::vector<double>& weights, double p, Point* y,
                                    int max_iter) const {
  // Gradient iteration in the tangent plane: log/exp computed after Moebius
  // transport of the base point to the origin, where geodesics are radial.
  // Step size 1/L with L an upper bound on the geodesic Hessian keeps the
  // iteration a contraction; progress is tracked by the tangent gradient,
  // since moment values flatten out to machine precision near the center.
  Point best = *y;
  double best_u = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    Cx a = to_c(*y);
    Cx u(0.0, 0.0);
    double hess_bound = 1e-12;
    for (size_t i = 0; i < support.size(); ++i) {
      Cx zi = mobius_to_zero(a, to_c(support[i]));
      double r = std::abs(zi);
      double d = 2.0 * std::atanh(std::min(r, 1.0 - 1e-17));
      // d^{p-2} -> 1 as d -> 0 when p = 2; atoms at the base point still
      // contribute curvature there
      hess_bound += weights[i] * p * (p - 1.0) * std::pow(d, p - 2.0) * (1.0 + d) + 1e-300;
      if (r < 1e-300) continue;
      u += weights[i] * p * std::pow(d, p - 1.0) * (zi / r);
    }
    double unorm = std::abs(u);
    if (unorm < best_u) {
      best_u = unorm;
      best = *y;
    }
    if (unorm < 1e-15) break;
    double s = std::min(unorm / hess_bound, 5.0);
    Cx step = std::tanh(0.5 * s) * (u / unorm);
    *y = from_c(mobius_from_zero(a, step));
  }
  if (best_u < std::numeric_limits<double>::infinity()) *y = best;
  return true;
}

// ---------------------------------------------------------------------------
// Metric tree

MetricTree::MetricTree(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (static_cast<int>(edges_.size()) != n_ - 1)
    throw std::invalid_argument("MetricTree: a tree on n vertices has n-1 edges");
  incident_.assign(n_, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const auto& ed = edges_[e];
    if (ed.u < 0 || ed.u >= n_ || ed.v < 0 || ed.v >= n_ || ed.u == ed.v || ed.w <= 0.0)
      throw std::invalid_argument("MetricTree: bad edge");
    incident_[ed.u].emplace_back(e, ed.v);
    incident_[ed.v].emplace_back(e, ed.u);
  }
  // BFS from each root fills distances and next-hop pointers.
  vdist_.assign(n_, std::vector<double>(n_, -1.0));
  next_.assign(n_, std::vector<int>(n_, -1));
  for (int r = 0; r < n_; ++r) {
    std::vector<int> parent(n_, -1);
    vdist_[r][r] = 0.0;
    std::deque<int> queue{r};
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (auto [e, b] : incident_[a]) {
        if (vdist_[r][b] < 0.0) {
          vdist_[r][b] = vdist_[r][a] + edges_[e].w;
          parent[b] = a;
          queue.push_back(b);
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (v == r) continue;
      if (vdist_[r][v] < 0.0) throw std::invalid_argument("MetricTree: not connected");
      int cur = v;
      while (parent[cur] != r && parent[cur] != -1) cur = parent[cur];
      next_[r][v] = cur;  // neighbor of r on the path r -> v
    }
  }
  claimed_p_ = 2.0;
  claimed_c_ = 1.0;
}

Point MetricTree::vertex_point(int v) const {
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    if (edges_[e].u == v) return Point{static_cast<double>(e), 0.0};
    if (edges_[e].v == v) return Point{static_cast<double>(e), edges_[e].w};
  }
  throw std::invalid_argument("MetricTree::vertex_point: isolated vertex");
}

bool MetricTree::contains(const Point& x) const {
  if (x.size() != 2) return false;
  int e = static_cast<int>(std::llround(x[0]));
  if (e < 0 || e >= static_cast<int>(edges_.size())) return false;
  return x[1] >= -1e-12 && x[1] <= edges_[e].w + 1e-12;
}

void MetricTree::endpoint_distances(const Point& x, int* u, int* v, double* du, double* dv) const {
  int e = static_cast<int>(std::llround(x[0]));
  if (e < 0 || e >= static_cast<int>(edges_.size()))
    throw std::invalid_argument("tree: edge id out of range");
  *u = edges_[e].u;
  *v = edges_[e].v;
  *du = std::clamp(x[1], 0.0, edges_[e].w);
  *dv = edges_[e].w - *du;
}

double MetricTree::dist(const Point& x, const Point& y) const {
  int ex = static_cast<int>(std::llround(x[0]));
  int ey = static_cast<int>(std::llround(y[0]));
  if (ex < 0 || ex >= static_cast<int>(edges_.size()) || ey < 0 ||
      ey >= static_cast<int>(edges_.size()))
    throw std::invalid_argument("tree: edge id out of range");
  if (ex == ey) return std::abs(x[1] - y[1]);
  int xu, xv, yu, yv;
  double dxu, dxv, dyu, dyv;
  endpoint_distances(x, &xu, &xv, &dxu, &dxv);
  endpoint_distances(y, &yu, &yv, &dyu, &dyv);
  double best = dxu + vdist_[xu][yu] + dyu;
  best = std::min(best, dxu + vdist_[xu][yv] + dyv);
  best = std::min(best, dxv + vdist_[xv][yu] + dyu);
  best = std::min(best, dxv + vdist_[xv][yv] + dyv);
  return best;
}

Point MetricTree::geodesic(const Point& y, const Point& z, double t) const {
  if (t < -1e-12 || t > 1 + 1e-12) throw std::invalid_argument("geodesic: t out of [0,1]");
  t = std::clamp(t, 0.0, 1.0);
  int ey = static_cast<int>(std::llround(y[0]));
  int ez = static_cast<int>(std::llround(z[0]));
  if (ey < 0 || ey >= static_cast<int>(edges_.size()) || ez < 0 ||
      ez >= static_cast<int>(edges_.size()))
    throw std::invalid_argument("tree: edge id out of range");
  if (ey == ez) return Point{y[0], (1 - t) * y[1] + t * z[1]};

  int yu, yv, zu, zv;
  double dyu, dyv, dzu, dzv;
  endpoint_distances(y, &yu, &yv, &dyu, &dyv);
  endpoint_distances(z, &zu, &zv, &dzu, &dzv);
  // pick the endpoint pair realizing the distance
  struct Option {
    int a, b;
    double head, tail, total;
  };
  Option best{yu, zu, dyu, dzu, dyu + vdist_[yu][zu] + dzu};
  auto consider = [&](int a, int b, double head, double tail) {
    double tot = head + vdist_[a][b] + tail;
    if (tot < best.total) best = {a, b, head, tail, tot};
  };
  consider(yu, zv, dyu, dzv);
  consider(yv, zu, dyv, dzu);
  consider(yv, zv, dyv, dzv);

  double s = t * best.total;
  // segment y -> exit vertex
  if (s <= best.head) {
    double off = y[1] + (best.a == edges_[ey].u ? -s : s);
    return Point{y[0], std::clamp(off, 0.0, edges_[ey].w)};
  }
  s -= best.head;
  // vertex path
  int cur = best.a;
  while (cur != best.b) {
    int nxt = next_[cur][best.b];
    int eid = -1;
    for (auto [e, other] : incident_[cur])
      if (other == nxt) { eid = e; break; }
    double w = edges_[eid].w;
    if (s <= w) {
      double off = (edges_[eid].u == cur) ? s : w - s;
      return Point{static_cast<double>(eid), std::clamp(off, 0.0, w)};
    }
    s -= w;
    cur = nxt;
  }
  // segment entry vertex -> z
  double off = (best.b == edges_[ez].u) ? s : edges_[ez].w - s;
  return Point{z[0], std::clamp(off, 0.0, edges_[ez].w)};
}

Point MetricTree::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> edge_pick(0, static_cast<int>(edges_.size()) - 1);
  int e = edge_pick(rng);
  std::uniform_real_distribution<double> u(0.0, edges_[e].w);
  return Point{static_cast<double>(e), u(rng)};
}

bool MetricTree::refine_center(const std::vector<Point>& support,
                               const std::vector<double>& weights, double p, Point* y,
                               int max_iter) const {
  (void)max_iter;
  if (std::abs(p - 2.0) > 1e-12) return false;
  // For p = 2 the moment functional restricted to an edge is piecewise
  // quadratic in the offset; scan all edges and minimize each piece exactly.
  double best_val = std::numeric_limits<double>::infinity();
  Point best;
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    double w = edges_[e].w;
    // d_i(s) for support point i: either |s - off_i| (same edge) or
    // min(s + A_i, (w - s) + B_i).
    std::vector<double> breaks{0.0, w};
    std::vector<double> A(support.size()), B(support.size());
    std::vector<bool> same(support.size());
    for (size_t i = 0; i < support.size(); ++i) {
      int ei = static_cast<int>(std::llround(support[i][0]));
      if (ei == e) {
        same[i] = true;
        breaks.push_back(std::clamp(support[i][1], 0.0, w));
      } else {
        same[i] = false;
        Point pu{static_cast<double>(e), 0.0}, pv{static_cast<double>(e), w};
        A[i] = dist(pu, support[i]);
        B[i] = dist(pv, support[i]);
        double sb = 0.5 * (w + B[i] - A[i]);
        if (sb > 0.0 && sb < w) breaks.push_back(sb);
      }
    }
    std::sort(breaks.begin(), breaks.end());
    for (size_t cell = 0; cell + 1 < breaks.size(); ++cell) {
      double lo = breaks[cell], hi = breaks[cell + 1];
      if (hi - lo < 1e-15) continue;
      double mid = 0.5 * (lo + hi);
      // F(s) = sum w_i (eps_i s + c_i)^2 on this cell
      double qa = 0.0, qb = 0.0;  // F = qa s^2 + 2 qb s + const
      for (size_t i = 0; i < support.size(); ++i) {
        double eps, ci;
        if (same[i]) {
          double off = std::clamp(support[i][1], 0.0, w);
          if (mid >= off) { eps = 1.0; ci = -off; }
          else { eps = -1.0; ci = off; }
        } else if (mid + A[i] <= (w - mid) + B[i]) {
          eps = 1.0; ci = A[i];
        } else {
          eps = -1.0; ci = w + B[i];
        }
        qa += weights[i];
        qb += weights[i] * eps * ci;
      }
      double s_star = qa > 0 ? std::clamp(-qb / qa, lo, hi) : mid;
      for (double s : {s_star, lo, hi}) {
        Point cand{static_cast<double>(e), s};
        double val = 0.0;
        for (size_t i = 0; i < support.size(); ++i) val += weights[i] * sq(dist(cand, support[i]));
        if (val < best_val) {
          best_val = val;
          best = cand;
        }
      }
    }
  }
  *y = best;
  return true;
}

// ---------------------------------------------------------------------------
// Lp product

LpProductSpace::LpProductSpace(std::vector<SpacePtr> factors, double p)
    : factors_(std::move(factors)), p_(p) {
  if (factors_.empty()) throw std::invalid_argument("LpProductSpace: no factors");
  dim_ = 0;
  double c = std::numeric_limits<double>::infinity();
  for (const auto& f : factors_) {
    offsets_.push_back(dim_);
    dim_ += f->point_dim();
    c = std::min(c, convexity_claim(*f, p));
  }
  claimed_p_ = p;
  claimed_c_ = c;
}

Point LpProductSpace::slice(const Point& x, size_t f) const {
  int off = offsets_[f];
  int d = factors_[f]->point_dim();
  return Point(x.begin() + off, x.begin() + off + d);
}

bool LpProductSpace::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  for (size_t f = 0; f < factors_.size(); ++f)
    if (!factors_[f]->contains(slice(x, f))) return false;
  return true;
}

double LpProductSpace::dist(const Point& x, const Point& y) const {
  double s = 0.0;
  for (size_t f = 0; f < factors_.size(); ++f)
    s += std::pow(factors_[f]->dist(slice(x, f), slice(y, f)), p_);
  return std::pow(s, 1.0 / p_);
}

Point LpProductSpace::geodesic(const Point& y, const Point& z, double t) const {
  Point out;
  out.reserve(dim_);
  for (size_t f = 0; f < factors_.size(); ++f) {
    Point part = factors_[f]->geodesic(slice(y, f), slice(z, f), t);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Point LpProductSpace::sample(std::mt19937_64& rng) const {
  Point out;
  out.reserve(dim_);
  for (const auto& f : factors_) {
    Point part = f->sample(rng);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool LpProductSpace::refine_center(const std::vector<Point>& support,
                                   const std::vector<double>& weights, double p, Point* y,
                                   int max_iter) const {
  if (std::abs(p - p_) > 1e-12) return false;  // the moment splits only at the shared exponent
  Point out;
  out.reserve(dim_);
  for (size_t f = 0; f < factors_.size(); ++f) {
    std::vector<Point> sub(support.size());
    for (size_t i = 0; i < support.size(); ++i) sub[i] = slice(support[i], f);
    Point part = slice(*y, f);
    if (!factors_[f]->refine_center(sub, weights, p, &part, max_iter)) return false;
    out.insert(out.end(), part.begin(), part.end());
  }
  *y = out;
  return true;
}

// ---------------------------------------------------------------------------
// Convexity verification

ConvexityReport verify_p_convexity(const Space& space, double p, double c, int sample_count,
                                   uint64_t seed) {
  if (p < 2.0) throw std::invalid_argument("verify_p_convexity: p >= 2");
  if (c <= 0.0) throw std::invalid_argument("verify_p_convexity: c > 0");
  auto rng = make_rng(derive_seed(seed, "convexity"));
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  ConvexityReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sample_count; ++i) {
    Point x = space.sample(rng), y = space.sample(rng), z = space.sample(rng);
    double t = ut(rng);
    Point m = space.geodesic(y, z, t);
    double lhs = std::pow(space.dist(x, m), p);
    double rhs = (1 - t) * std::pow(space.dist(x, y), p) + t * std::pow(space.dist(x, z), p) -
                 c * t * (1 - t) * std::pow(space.dist(y, z), p);
    double slack = rhs - lhs;
    if (slack < report.min_slack) {
      report.min_slack = slack;
      report.x = x;
      report.y = y;
      report.z = z;
      report.t = t;
    }
  }
  return report;
}

double certify_convexity(const Space& space, double p, int sample_count, uint64_t seed) {
  double lo = 0.0, hi = 4.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (verify_p_convexity(space, p, mid, sample_count, seed).min_slack >= -1e-9)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double convexity_claim(const Space& space, double p) {
  if (std::abs(p - space.claimed_p()) < 1e-12) return space.claimed_c();
  if (std::abs(space.claimed_p() - 2.0) < 1e-12 && std::abs(space.claimed_c() - 1.0) < 1e-12 &&
      p > 2.0)
    return std::pow(2.0, 2.0 - p);  // CAT(0) compared against the plane inside L_p
  throw std::invalid_argument("convexity_claim: no claim at this exponent");
}

// ---------------------------------------------------------------------------
// JSON descriptors

SpacePtr space_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") return std::make_shared<EuclideanSpace>(j.at("dim").get<int>());
  if (kind == "lp") return std::make_shared<LpSpace>(j.at("dim").get<int>(), j.at("p").get<double>());
  if (kind == "hyperbolic") return std::make_shared<HyperbolicPlane>();
  if (kind == "tree") {
    std::vector<MetricTree::Edge> edges;
    int n = 0;
    for (const auto& e : j.at("edges")) {
      MetricTree::Edge ed{e.at(0).get<int>(), e.at(1).get<int>(),
                          e.size() > 2 ? e.at(2).get<double>() : 1.0};
      n = std::max({n, ed.u + 1, ed.v + 1});
      edges.push_back(ed);
    }
    return std::make_shared<MetricTree>(n, edges);
  }
  if (kind == "product") {
    std::vector<SpacePtr> factors;
    for (const auto& f : j.at("factors")) factors.push_back(space_from_json(f));
    return std::make_shared<LpProductSpace>(factors, j.at("p").get<double>());
  }
  throw std::invalid_argument("space_from_json: unknown kind " + kind);
}

nlohmann::json space_to_json(const Space& space) {
  nlohmann::json j;
  j["kind"] = space.kind();
  if (space.kind() == "euclidean" || space.kind() == "lp") j["dim"] = space.point_dim();
  if (space.kind() == "lp") j["p"] = static_cast<const LpSpace&>(space).exponent();
  if (space.kind() == "tree") {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : static_cast<const MetricTree&>(space).edge_list())
      edges.push_back({e.u, e.v, e.w});
    j["edges"] = edges;
  }
  if (space.kind() == "product") {
    const auto& prod = static_cast<const LpProductSpace&>(space);
    j["p"] = prod.claimed_p();
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : prod.factors()) factors.push_back(space_to_json(*f));
    j["factors"] = factors;
  }
  return j;
}

}  // namespace plab
