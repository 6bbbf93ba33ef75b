// Batch front-end: every subcommand runs one seeded experiment and writes a
// JSON report (config + result payload).

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "plab/barycenter.hpp"
#include "plab/decomp.hpp"
#include "plab/embedding.hpp"
#include "plab/fixed_point.hpp"
#include "plab/graph.hpp"
#include "plab/labeling.hpp"
#include "plab/markov.hpp"
#include "plab/poincare.hpp"
#include "plab/rng.hpp"
#include "plab/spaces.hpp"
#include "plab/tree_walk.hpp"
#include "plab/version.hpp"

using nlohmann::json;
using namespace plab;

namespace {

struct Common {
  uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

void add_common(CLI::App* cmd, Common* common) {
  cmd->add_option("--seed", common->seed, "master seed for all randomness");
  cmd->add_option("--workers", common->workers, "worker threads (results are independent of this)");
  cmd->add_option("--out", common->out, "report path (stdout when omitted)");
}

void emit(const Common& common, const std::string& command, const json& config, json result) {
  json report;
  report["version"] = kVersion;
  report["command"] = command;
  report["config"] = config;
  report["config"]["seed"] = common.seed;
  report["config"]["workers"] = common.workers;
  report["timestamp"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  report["result"] = std::move(result);
  if (common.out.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream f(common.out);
    if (!f) throw std::runtime_error("cannot write report: " + common.out);
    f << report.dump(2) << "\n";
  }
}

SpacePtr load_space(const std::string& descriptor) {
  if (!descriptor.empty() && descriptor.front() == '{')
    return space_from_json(json::parse(descriptor));
  std::ifstream f(descriptor);
  if (!f) throw std::runtime_error("cannot open space descriptor: " + descriptor);
  return space_from_json(json::parse(f));
}

std::vector<Point> load_points_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open points file: " + path);
  std::vector<Point> pts;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    Point p;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) p.push_back(std::stod(cell));
    if (!p.empty()) pts.push_back(p);
  }
  if (pts.empty()) throw std::runtime_error("no points in " + path);
  return pts;
}

Labeling load_labeling(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open labeling: " + path);
  return Labeling::from_json(json::parse(f));
}

Point parse_point(const std::string& text) {
  Point p;
  std::stringstream ls(text);
  std::string cell;
  while (std::getline(ls, cell, ',')) p.push_back(std::stod(cell));
  return p;
}

GroupAction make_action(const std::string& descriptor) {
  auto colon = descriptor.find(':');
  if (colon == std::string::npos)
    throw std::runtime_error("action descriptor must be kind:m, e.g. dihedral-euclidean:3");
  std::string kind = descriptor.substr(0, colon);
  int m = std::stoi(descriptor.substr(colon + 1));
  if (kind == "dihedral-euclidean") return GroupAction::dihedral_euclidean(m);
  if (kind == "dihedral-hyperbolic") return GroupAction::dihedral_hyperbolic(m);
  if (kind == "cyclic-euclidean") return GroupAction::cyclic_euclidean(m);
  throw std::runtime_error("unknown action kind: " + kind);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ls(text);
  std::string cell;
  while (std::getline(ls, cell, ',')) out.push_back(std::stoi(cell));
  return out;
}

json measure_json(const FiniteMeasure& sigma) {
  json j;
  j["support"] = sigma.support;
  j["weights"] = sigma.weights;
  return j;
}

FiniteMeasure load_measure(const std::string& points_path, const std::string& weights_path) {
  FiniteMeasure sigma;
  sigma.support = load_points_csv(points_path);
  if (weights_path.empty()) {
    sigma.weights.assign(sigma.support.size(), 1.0 / sigma.support.size());
  } else {
    std::ifstream f(weights_path);
    if (!f) throw std::runtime_error("cannot open weights: " + weights_path);
    double w;
    while (f >> w) sigma.weights.push_back(w);
  }
  return sigma;
}

json tree_distribution_json(const TreeDistribution& dist) {
  json j = json::object();
  for (const auto& [w, m] : dist.mass) j[w.str()] = m.to_double();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric-geometry experiment runner"};
  app.require_subcommand(1);

  // ---- graph ----------------------------------------------------------
  auto* graph = app.add_subcommand("graph", "graph generation and statistics");
  graph->require_subcommand(1);

  {
    auto* cmd = graph->add_subcommand("gen", "random regular graph via the pairing model");
    auto common = std::make_shared<Common>();
    auto n = std::make_shared<int>(10), d = std::make_shared<int>(3);
    auto save = std::make_shared<std::string>();
    cmd->add_option("--n", *n, "vertex count")->required();
    cmd->add_option("--d", *d, "degree")->required();
    cmd->add_option("--save", *save, "write the edge list here");
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = gen_random_regular(*n, *d, common->seed);
      if (!save->empty()) {
        std::ofstream f(*save);
        g.write_edge_list(f);
      }
      json result;
      result["n"] = g.vertex_count();
      result["m"] = g.edge_count();
      result["girth"] = girth(g) == kGirthInfinite ? json("infinity") : json(girth(g));
      result["connected"] = g.connected();
      json edges = json::array();
      for (auto [u, v] : g.edges()) edges.push_back({u, v});
      result["edges"] = edges;
      emit(*common, "graph gen", {{"n", *n}, {"d", *d}, {"save", *save}}, result);
    });
  }

  {
    auto* cmd = graph->add_subcommand("girth", "shortest cycle length");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    cmd->add_option("--graph", *path, "edge-list file")->required();
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      int gi = girth(g);
      json result;
      result["girth"] = gi == kGirthInfinite ? json("infinity") : json(gi);
      emit(*common, "graph girth", {{"graph", *path}}, result);
    });
  }

  {
    auto* cmd = graph->add_subcommand("distdist", "distance distribution of the stationary walk");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    auto q = std::make_shared<int>(1);
    cmd->add_option("--graph", *path)->required();
    cmd->add_option("--q", *q, "step count")->required();
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      json dist = json::object();
      for (const auto& [l, p] : distance_distribution(g, *q)) dist[std::to_string(l)] = p;
      json result;
      result["distribution"] = dist;
      result["concentration_q"] = walk_concentration(g, *q);
      result["concentration_bound"] = std::exp(-*q / 18.0);
      emit(*common, "graph distdist", {{"graph", *path}, {"q", *q}}, result);
    });
  }

  // ---- chain ----------------------------------------------------------
  auto* chain_cmd = app.add_subcommand("chain", "reversible chain computations");
  chain_cmd->require_subcommand(1);

  {
    auto* cmd = chain_cmd->add_subcommand("gap", "spectral gap of the standard walk");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    cmd->add_option("--graph", *path)->required();
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      auto report = spectral_gap(standard_walk(g));
      json result;
      result["sigma"] = report.gap;
      result["second_largest_eigenvalue"] = report.second_largest_eigenvalue;
      result["method"] = report.method;
      emit(*common, "chain gap", {{"graph", *path}}, result);
    });
  }

  {
    auto* cmd = chain_cmd->add_subcommand("convolve", "kernel power of the standard walk");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    auto n = std::make_shared<int>(2);
    cmd->add_option("--graph", *path)->required();
    cmd->add_option("--n", *n, "convolution power")->required();
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      auto convolved = convolve(standard_walk(g), *n);
      json result;
      result["chain"] = convolved.to_json();
      emit(*common, "chain convolve", {{"graph", *path}, {"n", *n}}, result);
    });
  }

  // ---- poincare -------------------------------------------------------
  auto* poincare_cmd = app.add_subcommand("poincare", "Poincare modulus estimation");
  poincare_cmd->require_subcommand(1);

  {
    auto* cmd = poincare_cmd->add_subcommand("estimate", "modulus lower bound by optimization");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    auto space_desc = std::make_shared<std::string>(R"({"kind":"euclidean","dim":1})");
    auto p = std::make_shared<double>(2.0);
    auto restarts = std::make_shared<int>(32);
    auto local_n = std::make_shared<int>(0);
    cmd->add_option("--graph", *path)->required();
    cmd->add_option("--space", *space_desc, "space descriptor (JSON or file)");
    cmd->add_option("--p", *p);
    cmd->add_option("--restarts", *restarts);
    cmd->add_option("--local-n", *local_n, "restrict witnesses to N sampled target points");
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      auto chain = standard_walk(g);
      auto space = load_space(*space_desc);
      PoincareEstimate est =
          *local_n > 0
              ? local_modulus(chain, *space, *p, *local_n, *restarts, common->seed, common->workers)
              : modulus_estimate(chain, *space, *p, *restarts, common->seed, common->workers);
      json result;
      result["lambda"] = est.lambda;
      result["exact"] = est.exact;
      result["sigma"] = est.sigma;
      result["p"] = est.p;
      result["space"] = est.space_kind;
      result["witness"] = est.witness;
      emit(*common, "poincare estimate",
           {{"graph", *path}, {"space", *space_desc}, {"p", *p}, {"restarts", *restarts},
            {"local_n", *local_n}},
           result);
    });
  }

  {
    auto* cmd = poincare_cmd->add_subcommand("matousek", "extrapolate a modulus across exponents");
    auto common = std::make_shared<Common>();
    auto lambda = std::make_shared<double>(1.0);
    auto p = std::make_shared<double>(2.0);
    auto q = std::make_shared<double>(4.0);
    cmd->add_option("--lambda", *lambda, "modulus at exponent p")->required();
    cmd->add_option("--p", *p)->required();
    cmd->add_option("--q", *q, "target exponent")->required();
    add_common(cmd, common.get());
    cmd->callback([=]() {
      json result;
      result["bound"] = matousek_bound(*lambda, *p, *q);
      result["a_parameter"] = *lambda / *p;
      emit(*common, "poincare matousek", {{"lambda", *lambda}, {"p", *p}, {"q", *q}}, result);
    });
  }

  // ---- barycenter -----------------------------------------------------
  auto* bary = app.add_subcommand("barycenter", "geometric centers of mass");
  bary->require_subcommand(1);

  {
    auto* cmd = bary->add_subcommand("solve", "p-center of a finite measure");
    auto common = std::make_shared<Common>();
    auto space_desc = std::make_shared<std::string>();
    auto points = std::make_shared<std::string>();
    auto weights = std::make_shared<std::string>();
    auto p = std::make_shared<double>(2.0);
    auto tol = std::make_shared<double>(1e-8);
    cmd->add_option("--space", *space_desc)->required();
    cmd->add_option("--points", *points, "CSV rows of point coordinates")->required();
    cmd->add_option("--weights", *weights, "optional weight file (one per line)");
    cmd->add_option("--p", *p);
    cmd->add_option("--tol", *tol);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto space = load_space(*space_desc);
      auto sigma = load_measure(*points, *weights);
      auto res = p_center(*space, sigma, *p, *tol, common->seed);
      json result;
      result["center"] = res.center;
      result["moment"] = res.moment;
      result["iterations"] = res.iterations;
      result["converged"] = res.converged;
      result["measure"] = measure_json(sigma);
      emit(*common, "barycenter solve",
           {{"space", *space_desc}, {"points", *points}, {"p", *p}, {"tol", *tol}}, result);
    });
  }

  {
    auto* cmd = bary->add_subcommand("growth", "sampled slack of the growth inequality");
    auto common = std::make_shared<Common>();
    auto space_desc = std::make_shared<std::string>();
    auto points = std::make_shared<std::string>();
    auto weights = std::make_shared<std::string>();
    auto p = std::make_shared<double>(2.0);
    auto samples = std::make_shared<int>(10000);
    cmd->add_option("--space", *space_desc)->required();
    cmd->add_option("--points", *points)->required();
    cmd->add_option("--weights", *weights);
    cmd->add_option("--p", *p);
    cmd->add_option("--samples", *samples);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto space = load_space(*space_desc);
      auto sigma = load_measure(*points, *weights);
      auto report = growth_check(*space, sigma, *p, *samples, common->seed);
      json result;
      result["min_slack"] = report.min_slack;
      result["witness"] = report.witness;
      result["center"] = report.center;
      result["center_moment"] = report.center_moment;
      json violations = json::array();
      if (report.min_slack < -1e-9) violations.push_back("growth inequality slack below -1e-9");
      result["violations"] = violations;
      emit(*common, "barycenter growth",
           {{"space", *space_desc}, {"points", *points}, {"p", *p}, {"samples", *samples}}, result);
    });
  }

  // ---- embed ----------------------------------------------------------
  auto* embed = app.add_subcommand("embed", "padded decompositions and snowflake embeddings");
  embed->require_subcommand(1);

  {
    auto* cmd = embed->add_subcommand("decompose", "sample a shifted-grid partition");
    auto common = std::make_shared<Common>();
    auto points = std::make_shared<std::string>();
    auto delta = std::make_shared<double>(1.0);
    auto samples = std::make_shared<int>(1000);
    cmd->add_option("--points", *points)->required();
    cmd->add_option("--delta", *delta, "diameter bound of the partition")->required();
    cmd->add_option("--samples", *samples, "draws for the padding certification");
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto pts = load_points_csv(*points);
      int dim = static_cast<int>(pts[0].size());
      auto scheme = shifted_grid_scheme(dim, pts);
      auto part = scheme.sample(*delta, common->seed);
      auto pad = scheme.certify(*delta, *samples, common->seed);
      json result;
      result["clusters"] = part.cluster;
      result["cluster_count"] = part.count;
      result["epsilon"] = scheme.epsilon();
      result["delta_declared"] = scheme.delta();
      result["padding_min"] = pad.min_padding;
      result["padding_certified"] = pad.certified;
      emit(*common, "embed decompose",
           {{"points", *points}, {"delta", *delta}, {"samples", *samples}}, result);
    });
  }

  {
    auto* cmd = embed->add_subcommand("snowflake", "multi-scale embedding of a point set");
    auto common = std::make_shared<Common>();
    auto points = std::make_shared<std::string>();
    auto theta = std::make_shared<double>(0.5);
    auto samples = std::make_shared<int>(200);
    cmd->add_option("--points", *points)->required();
    cmd->add_option("--theta", *theta);
    cmd->add_option("--samples", *samples);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto pts = load_points_csv(*points);
      int dim = static_cast<int>(pts[0].size());
      auto scheme = shifted_grid_scheme(dim, pts);
      const auto& fp = scheme.points();
      int kmin = static_cast<int>(std::floor(std::log2(fp.min_distance()))) - 2;
      int kmax = static_cast<int>(std::ceil(std::log2(fp.max_distance()))) + 2;
      auto emb = snowflake_embed(scheme, *theta, kmin, kmax, *samples, common->seed, 200,
                                 common->workers);
      auto rep = distortion(fp, emb);
      json result;
      result["theta"] = *theta;
      result["scales"] = {{"kmin", kmin}, {"kmax", kmax}};
      result["samples"] = *samples;
      result["vectors"] = emb.coords;
      result["distortion"] = {{"expansion", rep.expansion},
                              {"contraction", rep.contraction},
                              {"distortion", rep.distortion},
                              {"pairs", rep.pairs}};
      result["truncation_tail_bound"] =
          truncation_tail_bound(fp.max_distance(), *theta, kmin, kmax);
      emit(*common, "embed snowflake",
           {{"points", *points}, {"theta", *theta}, {"samples", *samples}}, result);
    });
  }

  {
    auto* cmd = embed->add_subcommand("distortion", "distortion summary of the embedding");
    auto common = std::make_shared<Common>();
    auto points = std::make_shared<std::string>();
    auto theta = std::make_shared<double>(0.5);
    auto samples = std::make_shared<int>(200);
    auto csv = std::make_shared<std::string>();
    cmd->add_option("--points", *points)->required();
    cmd->add_option("--theta", *theta);
    cmd->add_option("--samples", *samples);
    cmd->add_option("--csv", *csv, "write per-pair ratios as CSV for plotting");
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto pts = load_points_csv(*points);
      int dim = static_cast<int>(pts[0].size());
      auto scheme = shifted_grid_scheme(dim, pts);
      const auto& fp = scheme.points();
      int kmin = static_cast<int>(std::floor(std::log2(fp.min_distance()))) - 2;
      int kmax = static_cast<int>(std::ceil(std::log2(fp.max_distance()))) + 2;
      auto emb = snowflake_embed(scheme, *theta, kmin, kmax, *samples, common->seed, 200,
                                 common->workers);
      auto rep = distortion(fp, emb);
      if (!csv->empty()) {
        std::ofstream f(*csv);
        f << "i,j,dist,embedded,ratio\n";
        for (int i = 0; i < fp.size(); ++i)
          for (int j = i + 1; j < fp.size(); ++j) {
            double d = fp.dist(i, j);
            if (d <= 0.0) continue;
            double e = emb.pair_distance(i, j);
            f << i << "," << j << "," << d << "," << e << "," << e / std::pow(d, *theta) << "\n";
          }
      }
      double shape = 1.0 / (scheme.epsilon() * std::sqrt(scheme.delta() * *theta * (1 - *theta)));
      json result;
      result["expansion"] = rep.expansion;
      result["contraction"] = rep.contraction;
      result["distortion"] = rep.distortion;
      result["shape_bound"] = shape;
      result["fitted_constant"] = rep.distortion / shape;
      result["lipschitz_violation"] = scale_lipschitz_violation(fp, emb);
      result["truncation_tail_bound"] =
          truncation_tail_bound(fp.max_distance(), *theta, kmin, kmax);
      emit(*common, "embed distortion",
           {{"points", *points}, {"theta", *theta}, {"samples", *samples}, {"csv", *csv}}, result);
    });
  }

  {
    auto* cmd = embed->add_subcommand("theta", "optimize the chained modulus bound over theta");
    auto common = std::make_shared<Common>();
    auto eps = std::make_shared<double>(0.25);
    auto delta = std::make_shared<double>(0.5);
    auto p = std::make_shared<double>(2.0);
    auto sigma = std::make_shared<double>(0.5);
    auto c = std::make_shared<double>(1.0);
    cmd->add_option("--eps", *eps);
    cmd->add_option("--delta", *delta);
    cmd->add_option("--p", *p);
    cmd->add_option("--sigma", *sigma)->required();
    cmd->add_option("--c", *c, "universal constant in the bound");
    add_common(cmd, common.get());
    cmd->callback([=]() {
      double theta_star = optimize_theta(*eps, *delta, *p, *sigma, *c);
      json result;
      result["theta_star"] = theta_star;
      result["bound_at_theta_star"] = theta_bound_value(theta_star, *eps, *delta, *p, *sigma, *c);
      result["bound_at_half"] = theta_bound_value(0.5, *eps, *delta, *p, *sigma, *c);
      result["asymptotic_theta"] =
          1.0 - std::log(std::log(1.0 / *sigma)) / std::log(1.0 / *sigma);
      result["modulus_via_embedding_theta_half"] = modulus_via_embedding(*eps, *delta, *p, *sigma);
      emit(*common, "embed theta",
           {{"eps", *eps}, {"delta", *delta}, {"p", *p}, {"sigma", *sigma}, {"c", *c}}, result);
    });
  }

  // ---- rgm ------------------------------------------------------------
  auto* rgm = app.add_subcommand("rgm", "random group model on the free-group tree");
  rgm->require_subcommand(1);

  {
    auto* cmd = rgm->add_subcommand("label", "sample a symmetric labeling");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    auto k = std::make_shared<int>(2), j = std::make_shared<int>(1);
    cmd->add_option("--graph", *path)->required();
    cmd->add_option("--k", *k);
    cmd->add_option("--j", *j);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      auto alpha = sample_labeling(g, *k, *j, common->seed);
      emit(*common, "rgm label", {{"graph", *path}, {"k", *k}, {"j", *j}}, alpha.to_json());
    });
  }

  {
    auto* cmd = rgm->add_subcommand("walk", "exact labeled-walk distribution on the tree");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    auto labeling_path = std::make_shared<std::string>();
    auto q = std::make_shared<int>(1);
    auto k = std::make_shared<int>(2), j = std::make_shared<int>(1);
    cmd->add_option("--graph", *path)->required();
    cmd->add_option("--labeling", *labeling_path, "labeling JSON (sampled from seed when omitted)");
    cmd->add_option("--q", *q)->required();
    cmd->add_option("--k", *k);
    cmd->add_option("--j", *j);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      Labeling alpha = labeling_path->empty() ? sample_labeling(g, *k, *j, common->seed)
                                              : load_labeling(*labeling_path);
      auto dist = simulate_walk(alpha, g, *q);
      json result;
      result["distribution"] = tree_distribution_json(dist);
      result["support"] = dist.mass.size();
      emit(*common, "rgm walk",
           {{"graph", *path}, {"labeling", *labeling_path}, {"q", *q}, {"k", *k}, {"j", *j}},
           result);
    });
  }

  {
    auto* cmd = rgm->add_subcommand("meanwalk", "distance-distribution mixture of tree walks");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    auto q = std::make_shared<int>(1), j = std::make_shared<int>(1), k = std::make_shared<int>(2);
    cmd->add_option("--graph", *path)->required();
    cmd->add_option("--q", *q)->required();
    cmd->add_option("--j", *j);
    cmd->add_option("--k", *k);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      auto mean = mean_walk(g, *q, *j, *k);
      json weights = json::object();
      for (const auto& [l, w] : mean.weights) weights[std::to_string(l)] = w.to_double();
      json result;
      result["weights"] = weights;
      result["distribution"] = tree_distribution_json(mean.dist);
      emit(*common, "rgm meanwalk", {{"graph", *path}, {"q", *q}, {"j", *j}, {"k", *k}}, result);
    });
  }

  {
    auto* cmd = rgm->add_subcommand("effsim", "pointwise effective-simulation check");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    auto labeling_path = std::make_shared<std::string>();
    auto q0 = std::make_shared<int>(1), k = std::make_shared<int>(2), j = std::make_shared<int>(2);
    cmd->add_option("--graph", *path)->required();
    cmd->add_option("--labeling", *labeling_path);
    cmd->add_option("--q0", *q0);
    cmd->add_option("--k", *k);
    cmd->add_option("--j", *j);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      Labeling alpha = labeling_path->empty() ? sample_labeling(g, *k, *j, common->seed)
                                              : load_labeling(*labeling_path);
      auto report = effective_simulation_check(alpha, g, *q0, *k, *j);
      json result;
      result["ok"] = report.ok;
      result["lower_ok"] = report.lower_ok;
      result["upper_ok"] = report.upper_ok;
      result["worst_ratio_low"] = report.worst_ratio_low;
      result["worst_ratio_high"] = report.worst_ratio_high;
      json violations = json::array();
      if (!report.lower_ok) violations.push_back("labeled walk falls below half the mean walk");
      if (!report.upper_ok) violations.push_back("one-step walk exceeds twice the tree walk");
      result["violations"] = violations;
      emit(*common, "rgm effsim",
           {{"graph", *path}, {"labeling", *labeling_path}, {"q0", *q0}, {"k", *k}, {"j", *j}},
           result);
    });
  }

  {
    auto* cmd = rgm->add_subcommand("azuma", "union-bound failure probability");
    auto common = std::make_shared<Common>();
    auto d = std::make_shared<int>(3), k = std::make_shared<int>(2), j = std::make_shared<int>(2);
    auto q0 = std::make_shared<int>(1), n = std::make_shared<int>(20),
         edges = std::make_shared<int>(30);
    cmd->add_option("--d", *d);
    cmd->add_option("--k", *k);
    cmd->add_option("--j", *j);
    cmd->add_option("--q0", *q0);
    cmd->add_option("--n", *n);
    cmd->add_option("--edges", *edges);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      json result;
      result["epsilon"] = azuma_epsilon(*d, *k, *j);
      json taus = json::array();
      for (int q = 1; q <= *q0; ++q) taus.push_back(azuma_tau(q, *d, *n));
      result["tau"] = taus;
      result["bound"] = azuma_failure_bound(*d, *k, *j, *q0, *n, *edges);
      emit(*common, "rgm azuma",
           {{"d", *d}, {"k", *k}, {"j", *j}, {"q0", *q0}, {"n", *n}, {"edges", *edges}}, result);
    });
  }

  {
    auto* cmd = rgm->add_subcommand("relators", "fundamental cycle-basis relators");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    auto labeling_path = std::make_shared<std::string>();
    auto k = std::make_shared<int>(2), j = std::make_shared<int>(1);
    cmd->add_option("--graph", *path)->required();
    cmd->add_option("--labeling", *labeling_path);
    cmd->add_option("--k", *k);
    cmd->add_option("--j", *j);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto g = UndirectedGraph::read_edge_list_file(*path);
      Labeling alpha = labeling_path->empty() ? sample_labeling(g, *k, *j, common->seed)
                                              : load_labeling(*labeling_path);
      auto words = relators(alpha, g);
      json list = json::array();
      for (const auto& w : words) list.push_back(w.str());
      json result;
      result["relators"] = list;
      result["basis_size"] = words.size();
      emit(*common, "rgm relators",
           {{"graph", *path}, {"labeling", *labeling_path}, {"k", *k}, {"j", *j}}, result);
    });
  }

  // ---- fp -------------------------------------------------------------
  auto* fp = app.add_subcommand("fp", "equivariant energies and averaging");
  fp->require_subcommand(1);

  {
    auto* cmd = fp->add_subcommand("energy", "energy of an equivariant map");
    auto common = std::make_shared<Common>();
    auto action_desc = std::make_shared<std::string>("dihedral-euclidean:3");
    auto f0_text = std::make_shared<std::string>("1,0");
    auto p = std::make_shared<double>(2.0);
    auto n = std::make_shared<int>(1);
    cmd->add_option("--action", *action_desc);
    cmd->add_option("--f0", *f0_text);
    cmd->add_option("--p", *p);
    cmd->add_option("--n", *n, "convolution power of the generator walk");
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto action = make_action(*action_desc);
      Point f0 = parse_point(*f0_text);
      auto mu = action.convolve_walk(action.generator_walk(), *n);
      json result;
      result["energy"] = energy(action, f0, mu, *p);
      emit(*common, "fp energy",
           {{"action", *action_desc}, {"f0", *f0_text}, {"p", *p}, {"n", *n}}, result);
    });
  }

  {
    auto* cmd = fp->add_subcommand("iterate", "averaging iteration toward a fixed point");
    auto common = std::make_shared<Common>();
    auto action_desc = std::make_shared<std::string>("dihedral-euclidean:3");
    auto f0_text = std::make_shared<std::string>("1,0");
    auto p = std::make_shared<double>(2.0);
    auto n = std::make_shared<int>(1);
    auto tol = std::make_shared<double>(1e-12);
    auto max_iter = std::make_shared<int>(200);
    cmd->add_option("--action", *action_desc);
    cmd->add_option("--f0", *f0_text);
    cmd->add_option("--p", *p);
    cmd->add_option("--n", *n);
    cmd->add_option("--tol", *tol);
    cmd->add_option("--max-iter", *max_iter);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto action = make_action(*action_desc);
      auto res = iterate_to_fixed_point(action, parse_point(*f0_text), *n, *p, *tol, *max_iter);
      json result;
      result["fixed_point"] = res.value;
      result["converged"] = res.converged;
      result["iterations"] = res.iterations;
      result["energy_trace"] = res.energy_trace;
      result["value_trace"] = res.value_trace;
      result["contraction"] = res.contraction;
      emit(*common, "fp iterate",
           {{"action", *action_desc}, {"f0", *f0_text}, {"p", *p}, {"n", *n}, {"tol", *tol},
            {"max_iter", *max_iter}},
           result);
    });
  }

  {
    auto* cmd = fp->add_subcommand("suite", "energy inequality suite");
    auto common = std::make_shared<Common>();
    auto action_desc = std::make_shared<std::string>("dihedral-euclidean:3");
    auto f0_text = std::make_shared<std::string>("1,0");
    auto p = std::make_shared<double>(2.0);
    auto n = std::make_shared<int>(2);
    cmd->add_option("--action", *action_desc);
    cmd->add_option("--f0", *f0_text);
    cmd->add_option("--p", *p);
    cmd->add_option("--n", *n);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto action = make_action(*action_desc);
      auto report = energy_inequality_suite(action, parse_point(*f0_text), *p, *n);
      json result;
      result["convolution_energy"] = report.convolution_energy;
      result["convolution_bound"] = report.convolution_bound;
      result["displacement_lhs"] = report.displacement_lhs;
      result["displacement_rhs"] = report.displacement_rhs;
      result["cancellation_integral"] = report.cancellation_integral;
      result["cancellation_bound"] = report.cancellation_bound;
      result["all_hold"] = report.all_hold;
      json violations = json::array();
      if (!report.all_hold) violations.push_back("an energy inequality failed at 1e-9");
      result["violations"] = violations;
      emit(*common, "fp suite",
           {{"action", *action_desc}, {"f0", *f0_text}, {"p", *p}, {"n", *n}}, result);
    });
  }

  {
    auto* cmd = fp->add_subcommand("contraction", "energy ratios against the bound shape");
    auto common = std::make_shared<Common>();
    auto action_desc = std::make_shared<std::string>("dihedral-euclidean:3");
    auto f0_text = std::make_shared<std::string>("1,0");
    auto p = std::make_shared<double>(2.0);
    auto nlist = std::make_shared<std::string>("1,2,3,4,5,6");
    auto csv = std::make_shared<std::string>();
    cmd->add_option("--action", *action_desc);
    cmd->add_option("--f0", *f0_text);
    cmd->add_option("--p", *p);
    cmd->add_option("--nlist", *nlist, "comma-separated convolution powers");
    cmd->add_option("--csv", *csv, "write the contraction table as CSV for plotting");
    add_common(cmd, common.get());
    cmd->callback([=]() {
      auto action = make_action(*action_desc);
      auto report = contraction_report(action, parse_point(*f0_text), *p, parse_int_list(*nlist));
      if (!csv->empty()) {
        std::ofstream f(*csv);
        f << "n,ratio,shape_sqrt,shape_inv,degenerate\n";
        for (const auto& row : report.rows)
          f << row.n << "," << row.ratio << "," << row.shape_sqrt << "," << row.shape_inv << ","
            << (row.degenerate ? 1 : 0) << "\n";
      }
      json rows = json::array();
      for (const auto& row : report.rows)
        rows.push_back({{"n", row.n},
                        {"ratio", row.ratio},
                        {"shape_sqrt", row.shape_sqrt},
                        {"shape_inv", row.shape_inv},
                        {"degenerate", row.degenerate}});
      json result;
      result["rows"] = rows;
      result["fit_c1"] = report.fit_c1;
      result["fit_c2"] = report.fit_c2;
      emit(*common, "fp contraction",
           {{"action", *action_desc}, {"f0", *f0_text}, {"p", *p}, {"nlist", *nlist},
            {"csv", *csv}},
           result);
    });
  }

  {
    auto* cmd = fp->add_subcommand("transfer", "graph-to-tree energy comparison experiment");
    auto common = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    auto labeling_path = std::make_shared<std::string>();
    auto action_desc = std::make_shared<std::string>("dihedral-euclidean:3");
    auto images_text = std::make_shared<std::string>("1,3");
    auto f0_text = std::make_shared<std::string>("1,0");
    auto p = std::make_shared<double>(2.0);
    auto k = std::make_shared<int>(2), j = std::make_shared<int>(2), q0 = std::make_shared<int>(1);
    auto restarts = std::make_shared<int>(8);
    cmd->add_option("--graph", *path)->required();
    cmd->add_option("--labeling", *labeling_path);
    cmd->add_option("--action", *action_desc);
    cmd->add_option("--images", *images_text, "generator images in the finite group");
    cmd->add_option("--f0", *f0_text);
    cmd->add_option("--p", *p);
    cmd->add_option("--k", *k);
    cmd->add_option("--j", *j);
    cmd->add_option("--q0", *q0);
    cmd->add_option("--restarts", *restarts);
    add_common(cmd, common.get());
    cmd->callback([=]() {
      if (*j % 2 != 0) throw CLI::ValidationError("--j", "transfer experiments require even j");
      auto g = UndirectedGraph::read_edge_list_file(*path);
      Labeling alpha = labeling_path->empty() ? sample_labeling(g, *k, *j, common->seed)
                                              : load_labeling(*labeling_path);
      FactorAction fa{make_action(*action_desc), parse_int_list(*images_text)};
      auto report = transfer_experiment(g, alpha, *k, *j, fa, *p, parse_point(*f0_text), *q0,
                                        *restarts, common->seed);
      json rows = json::array();
      for (const auto& row : report.rows)
        rows.push_back({{"m", row.m}, {"lhs", row.lhs}, {"ratio", row.ratio}});
      json result;
      result["lambda"] = report.lambda;
      result["sigma"] = report.sigma;
      result["base_energy"] = report.base_energy;
      result["rows"] = rows;
      result["best_m"] = report.best_m;
      result["best_ratio"] = report.best_ratio;
      emit(*common, "fp transfer",
           {{"graph", *path}, {"labeling", *labeling_path}, {"action", *action_desc},
            {"images", *images_text}, {"f0", *f0_text}, {"p", *p}, {"k", *k}, {"j", *j},
            {"q0", *q0}, {"restarts", *restarts}},
           result);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
