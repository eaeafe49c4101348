#include "harmonet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>

#include "harmonet/errors.hpp"
#include "harmonet/orbit.hpp"

#ifndef HARMONET_DATA_DIR
#define HARMONET_DATA_DIR "."
#endif

namespace harmonet {

namespace fs = std::filesystem;

std::string scenario_dir() {
  if (const char* env = std::getenv("HARMONET_DATA_DIR")) return (fs::path(env) / "scenarios").string();
  return (fs::path(HARMONET_DATA_DIR) / "scenarios").string();
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(scenario_dir(), ec)) {
    if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Scenario load_scenario(const std::string& name) {
  fs::path path = fs::path(scenario_dir()) / (name + ".json");
  if (!fs::exists(path)) throw Error(ErrorCode::InvalidConfig, "unknown scenario " + name);
  return scenario_from_json(read_json_file(path.string()));
}

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidConfig, std::string("missing key ") + key);
  return j.at(key);
}

// A vertex point is an ambient vector, or "eta" for the base point of an orbit manifold.
Vec vertex_point(const Manifold& M, const json& pts, const std::string& id) {
  if (!pts.contains(id)) throw Error(ErrorCode::InvalidConfig, "no point for vertex " + id);
  const json& v = pts.at(id);
  if (v.is_string() && v.get<std::string>() == "eta") {
    const auto* orbit = dynamic_cast<const OrbitManifold*>(&M);
    if (orbit == nullptr) throw Error(ErrorCode::InvalidConfig, "eta needs an orbit manifold");
    return orbit->eta();
  }
  Vec x = json_vector(v);
  if (x.size() != M.ambient_dim()) throw Error(ErrorCode::InvalidConfig, "vertex point has wrong dimension");
  return M.project_point(x);
}

// A velocity is either an ambient vector or {"generator": k, "scale": s} on orbit manifolds,
// meaning s [V_k, p] with V_k the k-th (1-based) G2 basis matrix.
Vec velocity(const Manifold& M, const Vec& p, const json& v) {
  if (v.is_array()) return M.to_tangent(p, json_vector(v));
  const auto* orbit = dynamic_cast<const OrbitManifold*>(&M);
  if (orbit == nullptr) throw Error(ErrorCode::InvalidConfig, "generator velocities need an orbit manifold");
  int k = need(v, "generator").get<int>();
  if (k < 1 || k > 14) throw Error(ErrorCode::InvalidConfig, "generator index out of range");
  double s = v.contains("scale") ? json_number(v.at("scale")) : 1.0;
  Mat Z = sl7::g2_basis()[k - 1];
  return s * orbit->to_coords(sl7::bracket(Z, orbit->to_matrix(p)));
}

}  // namespace

Scenario scenario_from_json(const json& j, std::optional<std::uint64_t> seed) {
  auto manifold = manifold_from_json(need(j, "manifold"));
  auto graph = std::make_shared<const WeightedGraph>(graph_from_json(need(j, "graph")));
  int N = j.value("N", 32);
  if (N < 2) throw Error(ErrorCode::InvalidConfig, "N must be at least 2");
  int p = j.value("p", 2);
  if (p < 1) throw Error(ErrorCode::InvalidConfig, "p must be a positive integer");
  SolveOptions opts;
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    opts.tol = s.contains("tol") ? json_number(s.at("tol")) : opts.tol;
    opts.max_iters = s.value("max_iters", opts.max_iters);
  }
  opts.seed = seed ? *seed : j.value("seed", std::uint64_t{0});

  const json& init = need(j, "init");
  std::string kind = need(init, "kind").get<std::string>();
  const json& pts = need(init, "vertex_points");
  const int V = graph->vertex_count();
  std::vector<Vec> vp(V);
  for (int x = 0; x < V; ++x) vp[x] = vertex_point(*manifold, pts, graph->vertex_id(x));

  std::mt19937_64 rng(opts.seed);
  if (kind == "geodesics") {
    const json& vel = need(init, "velocities");
    if (static_cast<int>(vel.size()) != graph->unoriented_count()) {
      throw Error(ErrorCode::InvalidConfig, "one velocity per edge is required");
    }
    std::vector<Vec> vs;
    for (int k = 0; k < graph->unoriented_count(); ++k) vs.push_back(velocity(*manifold, vp[graph->origin(2 * k)], vel[k]));
    DiscreteMap f = DiscreteMap::from_geodesics(graph, manifold, N, vp, vs);
    return Scenario{j.value("name", std::string("custom")), j, manifold, graph, p, opts, std::move(f)};
  }
  if (kind == "chords") {
    // Straight chords between vertex images (plus optional lattice offsets), bent by a
    // seeded bump of size `bump` and projected back to the manifold.
    double bump = init.contains("bump") ? json_number(init.at("bump")) : 0.0;
    const json* offsets = init.contains("offsets") ? &init.at("offsets") : nullptr;
    const Nodes& nd = lgl_nodes(N);
    std::normal_distribution<double> gauss;
    std::vector<Mat> samples;
    for (int k = 0; k < graph->unoriented_count(); ++k) {
      Vec a = vp[graph->origin(2 * k)];
      Vec b = vp[graph->terminal(2 * k)];
      if (offsets) b += json_vector(offsets->at(k));
      Vec dir(manifold->ambient_dim());
      for (int c = 0; c < dir.size(); ++c) dir[c] = gauss(rng);
      Mat s(manifold->ambient_dim(), N + 1);
      for (int i = 0; i <= N; ++i) {
        double t = nd.t[i];
        Vec x = (1.0 - t) * a + t * b + bump * std::sin(M_PI * t) * dir;
        s.col(i) = manifold->project_point(x, x);
      }
      s.col(0) = a;
      s.col(N) = manifold->nearest_representative(vp[graph->terminal(2 * k)], s.col(N));
      samples.push_back(std::move(s));
    }
    DiscreteMap f(graph, manifold, N, std::move(samples));
    f.validate();
    return Scenario{j.value("name", std::string("custom")), j, manifold, graph, p, opts, std::move(f)};
  }
  throw Error(ErrorCode::InvalidConfig, "unknown init kind " + kind);
}

}  // namespace harmonet
