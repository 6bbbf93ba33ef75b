#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "plab/barycenter.hpp"
#include "plab/graph.hpp"
#include "plab/labeling.hpp"
#include "plab/spaces.hpp"

namespace plab {

// Finite group given by an explicit multiplication table. Element 0 is the
// identity.
struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> mult;  // mult[g][h] = g*h
  std::vector<int> inverse;

  static FiniteGroup cyclic(int m);
  // Dihedral group of order 2m: rotations 0..m-1, reflections m..2m-1.
  static FiniteGroup dihedral(int m);

  void validate() const;
};

// Isometric action of a finite group on a space, together with a symmetric
// generating multiset S (size 2k, inverses included, involutions repeated).
class GroupAction {
 public:
  GroupAction(FiniteGroup group, std::vector<int> generators, SpacePtr space,
              std::vector<std::function<Point(const Point&)>> rho);

  const FiniteGroup& group() const { return group_; }
  const std::vector<int>& generators() const { return gens_; }
  const Space& space() const { return *space_; }
  SpacePtr space_ptr() const { return space_; }

  Point apply(int g, const Point& x) const { return rho_[g](x); }

  // Walk induced by S: distribution over group elements.
  std::vector<double> generator_walk() const;
  std::vector<double> convolve_walk(const std::vector<double>& mu, int n) const;

  // Spot-checks: rho is a homomorphism and each rho(g) preserves distances.
  void validate(int samples, uint64_t seed) const;

  static GroupAction dihedral_euclidean(int m);
  static GroupAction dihedral_hyperbolic(int m);
  static GroupAction cyclic_euclidean(int m);

 private:
  FiniteGroup group_;
  std::vector<int> gens_;
  SpacePtr space_;
  std::vector<std::function<Point(const Point&)>> rho_;
};

// E_mu(f) = 1/2 sum_g mu(g) d(f0, rho(g) f0)^p for the single-orbit setup
// where the map is determined by its basepoint value f0.
double energy(const GroupAction& action, const Point& f0, const std::vector<double>& mu, double p);

// (A_mu f)(x0) = p-center of the pushforward of mu under g -> rho(g) f0.
Point average_map(const GroupAction& action, const Point& f0, const std::vector<double>& mu,
                  double p, double tol, uint64_t seed = 0);

struct IterateResult {
  Point value;
  bool converged = false;
  int iterations = 0;
  std::vector<double> energy_trace;
  std::vector<Point> value_trace;   // basepoint value per round
  std::vector<double> contraction;  // energy ratios between rounds
};

// Iterates f <- A_{mu^n} f until the S-walk energy and the generator-orbit
// diameter fall below tolerance.
IterateResult iterate_to_fixed_point(const GroupAction& action, const Point& f0, int n, double p,
                                     double tol, int max_iter);

struct EnergySuiteReport {
  // E_{mu^n}(f) <= n^{p-1} E_mu(f)
  double convolution_energy = 0.0, convolution_bound = 0.0;
  // c^p-style control: c_conv * d(f, A_mu f)^p <= 2 E_mu(f)
  double displacement_lhs = 0.0, displacement_rhs = 0.0;
  // integral of d(A_{mu^n} f(x), f(x'))^p dmu^n <= 2^{p-1}(1 + 2/c_conv) E_{mu^n}(f)
  double cancellation_integral = 0.0, cancellation_bound = 0.0;
  bool all_hold = false;
};

EnergySuiteReport energy_inequality_suite(const GroupAction& action, const Point& f0, double p,
                                          int n);

struct ContractionRow {
  int n = 0;
  double ratio = 0.0;        // E_mu(A_{mu^n} f) / E_mu(f)
  double shape_sqrt = 0.0;   // sqrt(log n / n) * E_{mu^n}(f) / E_mu(f)
  double shape_inv = 0.0;    // 1/n
  bool degenerate = false;
};

struct ContractionReport {
  std::vector<ContractionRow> rows;
  double fit_c1 = 0.0, fit_c2 = 0.0;  // least-squares fit ratio ~ c1*shape_sqrt + c2*shape_inv
};

ContractionReport contraction_report(const GroupAction& action, const Point& f0, double p,
                                     const std::vector<int>& n_list);

// Free-group action factoring through a finite quotient: generator i maps to
// a group element; words evaluate through the quotient.
struct FactorAction {
  GroupAction action;
  std::vector<int> generator_images;  // size k, images of s_1..s_k

  int evaluate(const Word& w) const;
};

// Energy of the equivariant map under the radial m-step tree walk, pushed
// through the finite factor action.
double tree_walk_energy(const FactorAction& fa, const Point& f0, int k, int m, double p);

struct TransferRow {
  int m = 0;
  double lhs = 0.0;    // E_{mu_X^{jm}}(f)
  double ratio = 0.0;  // lhs / (lambda^p * rhs)
};

struct TransferReport {
  bool effective_simulation_ok = false;
  double lambda = 0.0;
  double sigma = 0.0;
  double base_energy = 0.0;  // E_{mu_X^j}(f)
  std::vector<TransferRow> rows;
  int best_m = 0;
  double best_ratio = 0.0;
};

// Scans m <= q0 and compares E_{mu_X^{jm}}(f) against lambda^p E_{mu_X^j}(f)
// with lambda estimated from the graph chain. Requires even j.
TransferReport transfer_experiment(const UndirectedGraph& g, const Labeling& alpha, int k, int j,
                                   const FactorAction& fa, double p, const Point& f0, int q0,
                                   int restarts, uint64_t seed);

}  // namespace plab
