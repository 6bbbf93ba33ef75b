#include "plab/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "plab/rng.hpp"

namespace plab {

FinitePointSet::FinitePointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
  if (pts_.empty()) throw std::invalid_argument("FinitePointSet: empty");
  size_t dim = pts_[0].size();
  int n = size();
  dist_.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    if (pts_[i].size() != dim) throw std::invalid_argument("FinitePointSet: mixed dimensions");
    for (int j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (size_t c = 0; c < dim; ++c) s += (pts_[i][c] - pts_[j][c]) * (pts_[i][c] - pts_[j][c]);
      dist_[i][j] = dist_[j][i] = std::sqrt(s);
    }
  }
}

double FinitePointSet::min_distance() const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j) m = std::min(m, dist_[i][j]);
  return m;
}

double FinitePointSet::max_distance() const {
  double m = 0.0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j) m = std::max(m, dist_[i][j]);
  return m;
}

std::vector<int> FinitePointSet::ball(int i, double r) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (dist_[i][j] <= r) out.push_back(j);
  return out;
}

double Partition::max_cluster_diameter(const FinitePointSet& pts) const {
  double m = 0.0;
  for (int i = 0; i < pts.size(); ++i)
    for (int j = i + 1; j < pts.size(); ++j)
      if (cluster[i] == cluster[j]) m = std::max(m, pts.dist(i, j));
  return m;
}

DecompositionScheme::DecompositionScheme(std::string kind, FinitePointSet pts, double epsilon,
                                         double delta, Sampler sampler)
    : kind_(std::move(kind)), pts_(std::move(pts)), eps_(epsilon), delta_(delta),
      sampler_(std::move(sampler)) {
  if (eps_ <= 0.0 || eps_ >= 1.0 || delta_ <= 0.0 || delta_ > 1.0)
    throw std::invalid_argument("DecompositionScheme: need eps in (0,1), delta in (0,1]");
}

Partition DecompositionScheme::sample(double delta_scale, uint64_t seed) const {
  Partition part = sampler_(pts_, delta_scale, seed);
  if (part.max_cluster_diameter(pts_) > delta_scale + 1e-12)
    throw std::logic_error("DecompositionScheme: sampled partition is not Delta-bounded");
  return part;
}

PaddingReport DecompositionScheme::certify(double delta_scale, int samples, uint64_t seed) const {
  int n = pts_.size();
  std::vector<int> padded(n, 0);
  std::vector<std::vector<int>> balls(n);
  for (int i = 0; i < n; ++i) balls[i] = pts_.ball(i, eps_ * delta_scale);
  for (int s = 0; s < samples; ++s) {
    Partition part = sample(delta_scale, derive_seed(seed, "certify", s));
    for (int i = 0; i < n; ++i) {
      bool ok = true;
      for (int j : balls[i])
        if (part.cluster[j] != part.cluster[i]) { ok = false; break; }
      if (ok) ++padded[i];
    }
  }
  PaddingReport report;
  report.min_padding = 1.0;
  for (int i = 0; i < n; ++i)
    report.min_padding = std::min(report.min_padding, static_cast<double>(padded[i]) / samples);
  report.stderr_bound = std::sqrt(delta_ * (1.0 - delta_) / samples) + 1e-12;
  report.certified = report.min_padding >= delta_ - 3.0 * report.stderr_bound;
  return report;
}

DecompositionScheme shifted_grid_scheme(int dim, std::vector<Point> pts) {
  if (dim < 1) throw std::invalid_argument("shifted_grid_scheme: dim >= 1");
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("shifted_grid_scheme: point dimension mismatch");
  double eps = 1.0 / (4.0 * dim);
  // exact continuum padding of the shifted grid at this eps
  double delta = std::pow(1.0 - 2.0 * eps * std::sqrt(static_cast<double>(dim)), dim);
  auto sampler = [dim](const FinitePointSet& ps, double delta_scale, uint64_t seed) {
    double side = delta_scale / std::sqrt(static_cast<double>(dim));
    auto rng = make_rng(derive_seed(seed, "shifted-grid"));
    std::uniform_real_distribution<double> u(0.0, side);
    std::vector<double> shift(dim);
    for (int c = 0; c < dim; ++c) shift[c] = u(rng);
    std::map<std::vector<long long>, int> ids;
    Partition part;
    part.cluster.resize(ps.size());
    for (int i = 0; i < ps.size(); ++i) {
      std::vector<long long> cell(dim);
      for (int c = 0; c < dim; ++c)
        cell[c] = static_cast<long long>(std::floor((ps.points()[i][c] - shift[c]) / side));
      auto [it, inserted] = ids.emplace(cell, part.count);
      if (inserted) ++part.count;
      part.cluster[i] = it->second;
    }
    return part;
  };
  return DecompositionScheme("shifted-grid", FinitePointSet(std::move(pts)), eps, delta, sampler);
}

void NagataCover::validate() const {
  if (families.empty()) throw std::invalid_argument("NagataCover: no families");
  int n = pts.size();
  for (const auto& family : families) {
    std::vector<char> used(n, 0);
    for (const auto& member : family) {
      if (member.empty()) throw std::invalid_argument("NagataCover: empty member");
      for (int i : member) {
        if (i < 0 || i >= n) throw std::invalid_argument("NagataCover: index out of range");
        if (used[i]) throw std::invalid_argument("NagataCover: family members overlap");
        used[i] = 1;
      }
      for (size_t a = 0; a < member.size(); ++a)
        for (size_t b = a + 1; b < member.size(); ++b)
          if (pts.dist(member[a], member[b]) > diam_bound + 1e-12)
            throw std::invalid_argument("NagataCover: member exceeds diameter bound");
    }
  }
  // every ball B(x, ball_radius) inside some member
  for (int i = 0; i < n; ++i) {
    auto ball = pts.ball(i, ball_radius);
    bool covered = false;
    for (const auto& family : families) {
      for (const auto& member : family) {
        std::vector<char> in(n, 0);
        for (int idx : member) in[idx] = 1;
        bool all_in = true;
        for (int b : ball)
          if (!in[b]) { all_in = false; break; }
        if (all_in) { covered = true; break; }
      }
      if (covered) break;
    }
    if (!covered) throw std::invalid_argument("NagataCover: ball not contained in any member");
  }
}

Partition nagata_peeling(const NagataCover& cover, uint64_t seed) {
  cover.validate();
  int n = cover.pts.size();
  int d1 = static_cast<int>(cover.families.size());
  std::vector<int> order(d1);
  for (int i = 0; i < d1; ++i) order[i] = i;
  auto rng = make_rng(derive_seed(seed, "peeling"));
  std::shuffle(order.begin(), order.end(), rng);

  Partition part;
  part.cluster.assign(n, -1);
  for (int idx : order) {
    for (const auto& member : cover.families[idx]) {
      bool nonempty = false;
      for (int i : member)
        if (part.cluster[i] < 0) { nonempty = true; break; }
      if (!nonempty) continue;
      for (int i : member)
        if (part.cluster[i] < 0) part.cluster[i] = part.count;
      ++part.count;
    }
  }
  for (int i = 0; i < n; ++i)
    if (part.cluster[i] < 0) throw std::logic_error("nagata_peeling: cover does not cover");
  return part;
}

}  // namespace plab
