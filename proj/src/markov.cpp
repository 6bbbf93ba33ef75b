#include "plab/markov.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "plab/rng.hpp"

namespace plab {

namespace {

bool strongly_connected_support(const Eigen::MatrixXd& kernel) {
  int n = static_cast<int>(kernel.rows());
  auto reach = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < n; ++v) {
        double w = transpose ? kernel(v, u) : kernel(u, v);
        if (w > 0.0 && !seen[v]) {
          seen[v] = 1;
          ++count;
          queue.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach(false) && reach(true);
}

}  // namespace

MarkovChain::MarkovChain(Eigen::MatrixXd kernel, Eigen::VectorXd nu, bool reversible)
    : kernel_(std::move(kernel)), nu_(std::move(nu)), reversible_(reversible) {
  int n = static_cast<int>(kernel_.rows());
  if (kernel_.cols() != n || nu_.size() != n || n == 0)
    throw std::invalid_argument("MarkovChain: shape mismatch");
  for (int i = 0; i < n; ++i) {
    if (std::abs(kernel_.row(i).sum() - 1.0) > 1e-12)
      throw std::invalid_argument("MarkovChain: kernel row does not sum to 1");
    for (int j = 0; j < n; ++j)
      if (kernel_(i, j) < 0.0) throw std::invalid_argument("MarkovChain: negative entry");
    if (nu_(i) < 0.0) throw std::invalid_argument("MarkovChain: negative stationary mass");
  }
  if (std::abs(nu_.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("MarkovChain: stationary measure does not sum to 1");
  Eigen::VectorXd stat = kernel_.transpose() * nu_;
  if ((stat - nu_).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("MarkovChain: nu is not stationary");
  if (reversible_) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(nu_(i) * kernel_(i, j) - nu_(j) * kernel_(j, i)) > 1e-12)
          throw std::invalid_argument("MarkovChain: detailed balance violated");
  }
}

bool MarkovChain::ergodic() const { return strongly_connected_support(kernel_); }

nlohmann::json MarkovChain::to_json() const {
  nlohmann::json j;
  int n = state_count();
  j["n"] = n;
  std::vector<double> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) flat[static_cast<size_t>(i) * n + k] = kernel_(i, k);
  j["kernel"] = flat;
  std::vector<double> nu(n);
  for (int i = 0; i < n; ++i) nu[i] = nu_(i);
  j["nu"] = nu;
  j["reversible"] = reversible_;
  return j;
}

MarkovChain MarkovChain::from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  auto flat = j.at("kernel").get<std::vector<double>>();
  auto nu = j.at("nu").get<std::vector<double>>();
  if (static_cast<int>(flat.size()) != n * n || static_cast<int>(nu.size()) != n)
    throw std::invalid_argument("MarkovChain::from_json: shape mismatch");
  Eigen::MatrixXd kernel(n, n);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    v(i) = nu[i];
    for (int k = 0; k < n; ++k) kernel(i, k) = flat[static_cast<size_t>(i) * n + k];
  }
  return MarkovChain(kernel, v, j.at("reversible").get<bool>());
}

MarkovChain standard_walk(const UndirectedGraph& g) {
  if (!g.connected()) throw std::invalid_argument("standard_walk: graph must be connected");
  int n = g.vertex_count();
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd nu(n);
  double total = 2.0 * g.edge_count();
  for (int u = 0; u < n; ++u) {
    nu(u) = g.degree(u) / total;
    for (int v : g.neighbors(u)) kernel(u, v) = 1.0 / g.degree(u);
  }
  return MarkovChain(kernel, nu, /*reversible=*/true);
}

MarkovChain convolve(const MarkovChain& c, int n) {
  if (n < 1) throw std::invalid_argument("convolve: need n >= 1");
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(c.state_count(), c.state_count());
  Eigen::MatrixXd base = c.kernel();
  int e = n;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  // renormalize rows against accumulated roundoff
  for (int i = 0; i < result.rows(); ++i) result.row(i) /= result.row(i).sum();
  return MarkovChain(result, c.nu(), c.reversible());
}

namespace {

// Symmetrized operator S = D^{1/2} M D^{-1/2}; shares eigenvalues with M.
Eigen::MatrixXd symmetrize(const MarkovChain& c) {
  int n = c.state_count();
  Eigen::VectorXd sqrt_nu = c.nu().cwiseSqrt();
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double denom = sqrt_nu(j) > 0 ? sqrt_nu(j) : 1.0;
      s(i, j) = sqrt_nu(i) * c.kernel()(i, j) / denom;
    }
  // Clean up asymmetry from roundoff.
  return 0.5 * (s + s.transpose());
}

double lanczos_second_eigenvalue(const Eigen::MatrixXd& s, const Eigen::VectorXd& top) {
  // Lanczos with full reorthogonalization on (S + I), deflating the known
  // top eigenvector. Spectrum of S+I lies in [0,2]. The basis grows until
  // the leading Ritz value stabilizes, so clustered spectra (cycles) fall
  // back to a complete tridiagonalization.
  int n = static_cast<int>(s.rows());
  Eigen::VectorXd t = top.normalized();
  std::vector<Eigen::VectorXd> basis;
  auto rng = make_rng(0x1a2c305);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  v -= t * t.dot(v);
  v.normalize();
  std::vector<double> alpha, beta;
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
  double beta_prev = 0.0;
  auto ritz_max = [&]() {
    int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    return es.eigenvalues().maxCoeff();
  };
  double estimate = 0.0;
  int stable = 0;
  for (int it = 0; it < n; ++it) {
    basis.push_back(v);
    Eigen::VectorXd w = s * v + v;
    w -= t * t.dot(w);
    double a = v.dot(w);
    alpha.push_back(a);
    w -= a * v + beta_prev * prev;
    for (const auto& b : basis) w -= b * b.dot(w);
    double bnorm = w.norm();
    if (bnorm < 1e-13) break;
    if ((it + 1) % 80 == 0) {
      double current = ritz_max();
      stable = std::abs(current - estimate) < 1e-9 ? stable + 1 : 0;
      estimate = current;
      if (stable >= 2) break;
    }
    beta.push_back(bnorm);
    prev = v;
    v = w / bnorm;
    beta_prev = bnorm;
  }
  return ritz_max() - 1.0;
}

}  // namespace

SpectralReport spectral_gap(const MarkovChain& c) {
  if (!c.reversible()) throw std::invalid_argument("spectral_gap: chain must be reversible");
  if (!c.ergodic()) throw std::invalid_argument("spectral_gap: chain must be ergodic");
  Eigen::MatrixXd s = symmetrize(c);
  SpectralReport report;
  if (c.state_count() <= 2000) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const auto& ev = es.eigenvalues();  // ascending
    int n = static_cast<int>(ev.size());
    if (n >= 2 && ev(n - 2) > 1.0 - 1e-10)
      throw std::invalid_argument("spectral_gap: eigenvalue 1 is not simple");
    report.second_largest_eigenvalue = n >= 2 ? ev(n - 2) : -1.0;
    report.method = "exact-dense";
  } else {
    report.second_largest_eigenvalue = lanczos_second_eigenvalue(s, c.nu().cwiseSqrt());
    report.method = "iterative";
  }
  report.gap = 1.0 - report.second_largest_eigenvalue;
  return report;
}

}  // namespace plab
