#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace plab {

// Space-specific coordinate vector. Euclidean/Lp: coordinates; hyperbolic
// plane: disk coordinates (norm < 1); tree: {edge id, offset along edge};
// product: concatenation of factor points.
using Point = std::vector<double>;

// Uniformly convex geodesic metric space oracle.
class Space {
 public:
  virtual ~Space() = default;

  virtual std::string kind() const = 0;
  virtual int point_dim() const = 0;
  virtual bool contains(const Point& x) const = 0;
  virtual double dist(const Point& x, const Point& y) const = 0;

  // The unique geodesic point [y,z]_t, t in [0,1].
  virtual Point geodesic(const Point& y, const Point& z, double t) const = 0;

  virtual Point sample(std::mt19937_64& rng) const = 0;

  // Claimed uniform-convexity parameters (p, c).
  double claimed_p() const { return claimed_p_; }
  double claimed_c() const { return claimed_c_; }

  // High-accuracy local refinement of the moment-functional minimizer, for
  // spaces with usable smooth or piecewise structure. Returns false when
  // unsupported; the caller then keeps its search result.
  virtual bool refine_center(const std::vector<Point>& support, const std::vector<double>& weights,
                             double p, Point* y, int max_iter) const {
    (void)support; (void)weights; (void)p; (void)y; (void)max_iter;
    return false;
  }

 protected:
  double claimed_p_ = 2.0;
  double claimed_c_ = 1.0;
};

using SpacePtr = std::shared_ptr<const Space>;

class EuclideanSpace : public Space {
 public:
  explicit EuclideanSpace(int dim);
  std::string kind() const override { return "euclidean"; }
  int point_dim() const override { return dim_; }
  bool contains(const Point& x) const override;
  double dist(const Point& x, const Point& y) const override;
  Point geodesic(const Point& y, const Point& z, double t) const override;
  Point sample(std::mt19937_64& rng) const override;
  bool refine_center(const std::vector<Point>&, const std::vector<double>&, double,
                     Point*, int) const override;

 private:
  int dim_;
};

// R^dim with the l_p norm, p >= 2. Linear segments are geodesics; the
// convexity constant is seeded from the Clarkson two-point inequality.
class LpSpace : public Space {
 public:
  LpSpace(int dim, double p);
  std::string kind() const override { return "lp"; }
  int point_dim() const override { return dim_; }
  bool contains(const Point& x) const override;
  double dist(const Point& x, const Point& y) const override;
  Point geodesic(const Point& y, const Point& z, double t) const override;
  Point sample(std::mt19937_64& rng) const override;
  bool refine_center(const std::vector<Point>&, const std::vector<double>&, double,
                     Point*, int) const override;
  double exponent() const { return p_; }

 private:
  int dim_;
  double p_;
};

// Poincare disk model. Geodesics via Moebius transport of one endpoint to
// the origin, where geodesics are radial.
class HyperbolicPlane : public Space {
 public:
  HyperbolicPlane();
  std::string kind() const override { return "hyperbolic"; }
  int point_dim() const override { return 2; }
  bool contains(const Point& x) const override;
  double dist(const Point& x, const Point& y) const override;
  Point geodesic(const Point& y, const Point& z, double t) const override;
  Point sample(std::mt19937_64& rng) const override;
  bool refine_center(const std::vector<Point>&, const std::vector<double>&, double,
                     Point*, int) const override;
};

// Finite weighted metric tree; points may sit in edge interiors.
class MetricTree : public Space {
 public:
  struct Edge {
    int u, v;
    double w;
  };

  MetricTree(int vertex_count, std::vector<Edge> edges);
  std::string kind() const override { return "tree"; }
  int point_dim() const override { return 2; }  // {edge id, offset from u}
  bool contains(const Point& x) const override;
  double dist(const Point& x, const Point& y) const override;
  Point geodesic(const Point& y, const Point& z, double t) const override;
  Point sample(std::mt19937_64& rng) const override;
  bool refine_center(const std::vector<Point>&, const std::vector<double>&, double,
                     Point*, int) const override;

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edge_list() const { return edges_; }
  Point vertex_point(int v) const;
  double vertex_distance(int a, int b) const { return vdist_[a][b]; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> incident_;  // vertex -> (edge id, other end)
  std::vector<std::vector<double>> vdist_;
  std::vector<std::vector<int>> next_;  // next vertex on the path a -> b

  // distance from the point to each endpoint vertex of its edge
  void endpoint_distances(const Point& x, int* u, int* v, double* du, double* dv) const;
};

// l_p product of factor spaces sharing the exponent p.
class LpProductSpace : public Space {
 public:
  LpProductSpace(std::vector<SpacePtr> factors, double p);
  std::string kind() const override { return "product"; }
  int point_dim() const override { return dim_; }
  bool contains(const Point& x) const override;
  double dist(const Point& x, const Point& y) const override;
  Point geodesic(const Point& y, const Point& z, double t) const override;
  Point sample(std::mt19937_64& rng) const override;
  bool refine_center(const std::vector<Point>&, const std::vector<double>&, double,
                     Point*, int) const override;
  const std::vector<SpacePtr>& factors() const { return factors_; }

 private:
  std::vector<SpacePtr> factors_;
  double p_;
  int dim_;
  std::vector<int> offsets_;

  Point slice(const Point& x, size_t f) const;
};

struct ConvexityReport {
  double min_slack = 0.0;
  Point x, y, z;
  double t = 0.0;
};

// Minimum over random triples of RHS - LHS of the p-uniform-convexity
// inequality with constant c. Negative values below -1e-9 disprove the claim.
ConvexityReport verify_p_convexity(const Space& space, double p, double c, int sample_count,
                                   uint64_t seed);

// Largest constant passing verify_p_convexity at the given sample budget,
// found by bisection.
double certify_convexity(const Space& space, double p, int sample_count, uint64_t seed);

// Convexity constant usable at exponent p: the claimed constant at the
// claimed exponent, and the Clarkson-type constant 2^{2-p} for CAT(0)
// spaces at larger exponents.
double convexity_claim(const Space& space, double p);

SpacePtr space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const Space& space);

}  // namespace plab
