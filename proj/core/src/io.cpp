#include "harmonet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "harmonet/errors.hpp"
#include "harmonet/rational.hpp"

namespace harmonet {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidConfig, std::string("missing key ") + key);
  return j.at(key);
}

std::string as_id(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorCode::InvalidConfig, "vertex ids must be strings or integers");
}

}  // namespace

double json_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw Error(ErrorCode::InvalidConfig, "expected a number");
}

Vec json_vector(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidConfig, "expected an array of numbers");
  Vec v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = json_number(j[i]);
  return v;
}

json vector_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

WeightedGraph graph_from_json(const json& j) {
  std::vector<std::string> ids;
  for (const auto& v : field(j, "vertices")) ids.push_back(as_id(v));
  std::vector<EdgeInput> edges;
  for (const auto& e : field(j, "edges")) {
    EdgeInput in;
    in.u = as_id(field(e, "u"));
    in.v = as_id(field(e, "v"));
    in.w = e.contains("w") ? json_number(e.at("w")) : 1.0;
    edges.push_back(in);
  }
  return WeightedGraph::build(std::move(ids), edges);
}

json graph_to_json(const WeightedGraph& g) {
  json j;
  j["vertices"] = g.vertex_ids();
  j["edges"] = json::array();
  for (const auto& e : g.unoriented_edges()) j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"w", e.w}});
  return j;
}

std::shared_ptr<const Manifold> manifold_from_json(const json& j) {
  std::string type = field(j, "type").get<std::string>();
  if (type == "sphere") {
    int n = field(j, "n").get<int>();
    if (n < 1) throw Error(ErrorCode::InvalidConfig, "sphere dimension must be positive");
    double r = j.contains("radius") ? json_number(j.at("radius")) : 1.0;
    return make_sphere(n, r);
  }
  if (type == "flat_torus") {
    const json& L = field(j, "lattice");
    int n = static_cast<int>(L.size());
    if (n == 0) throw Error(ErrorCode::InvalidConfig, "empty lattice");
    Mat rows(n, n);
    for (int i = 0; i < n; ++i) {
      Vec r = json_vector(L[i]);
      if (r.size() != n) throw Error(ErrorCode::InvalidConfig, "lattice must be square");
      rows.row(i) = r.transpose();
    }
    return make_flat_torus(rows);
  }
  if (type == "clifford_torus") {
    double r1 = j.contains("r1") ? json_number(j.at("r1")) : std::sqrt(0.5);
    double r2 = j.contains("r2") ? json_number(j.at("r2")) : std::sqrt(0.5);
    return make_clifford_torus(r1, r2);
  }
  if (type == "berger") return make_berger_sphere(json_number(field(j, "tau")));
  if (type == "g2_orbit") return make_g2_orbit();
  if (type == "grassmann_orbit") return make_grassmann_orbit();
  throw Error(ErrorCode::InvalidConfig, "unknown manifold type " + type);
}

json map_to_json(const DiscreteMap& f, const json& manifold_config) {
  json j;
  j["graph"] = graph_to_json(f.graph());
  j["manifold"] = manifold_config;
  j["N"] = f.N();
  j["edges"] = json::array();
  for (int k = 0; k < f.graph().unoriented_count(); ++k) {
    json pts = json::array();
    for (int i = 0; i <= f.N(); ++i) pts.push_back(vector_json(f.canonical()[k].col(i)));
    j["edges"].push_back({{"id", k}, {"points", pts}});
  }
  return j;
}

DiscreteMap map_from_json(const json& j) {
  auto graph = std::make_shared<const WeightedGraph>(graph_from_json(field(j, "graph")));
  auto manifold = manifold_from_json(field(j, "manifold"));
  int N = field(j, "N").get<int>();
  const json& edges = field(j, "edges");
  if (static_cast<int>(edges.size()) != graph->unoriented_count()) {
    throw Error(ErrorCode::InvalidConfig, "edge count does not match the graph");
  }
  std::vector<Mat> samples(graph->unoriented_count());
  for (const auto& e : edges) {
    int k = field(e, "id").get<int>();
    if (k < 0 || k >= graph->unoriented_count()) throw Error(ErrorCode::InvalidConfig, "bad edge id");
    const json& pts = field(e, "points");
    if (static_cast<int>(pts.size()) != N + 1) throw Error(ErrorCode::InvalidConfig, "wrong number of points");
    Mat s(manifold->ambient_dim(), N + 1);
    for (int i = 0; i <= N; ++i) {
      Vec q = json_vector(pts[i]);
      if (q.size() != manifold->ambient_dim()) throw Error(ErrorCode::InvalidConfig, "point has wrong dimension");
      s.col(i) = q;
    }
    samples[k] = std::move(s);
  }
  DiscreteMap f(graph, manifold, N, std::move(samples));
  f.validate();
  return f;
}

json residuals_to_json(const ResidualReport& r) {
  return {{"p", r.p}, {"edge", r.edge}, {"vertex", r.vertex}, {"max_edge", r.max_edge()},
          {"max_vertex", r.max_vertex()}, {"max", r.max()}};
}

json verdict_to_json(const StabilityVerdict& v, int p, bool include_witness) {
  json j{{"p", p}, {"min_eig", v.min_eig}, {"stable", !v.unstable}, {"tol", v.tol},
         {"dimension", v.spectrum.size()}};
  if (include_witness && v.witness) {
    json w = json::array();
    for (const Mat& m : v.witness->canonical()) {
      json edge = json::array();
      for (int i = 0; i < m.cols(); ++i) edge.push_back(vector_json(m.col(i)));
      w.push_back(edge);
    }
    j["witness"] = w;
  }
  return j;
}

std::string spectrum_csv(const Vec& spectrum) {
  std::ostringstream os;
  os.precision(17);
  os << "index,eigenvalue\n";
  for (int i = 0; i < spectrum.size(); ++i) os << i << "," << spectrum[i] << "\n";
  return os.str();
}

CriteriaInput criteria_from_json(const json& j) {
  CriteriaInput in;
  in.n = field(j, "n").get<int>();
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return json_number(j.at(key));
  };
  in.r2 = opt("r2");
  in.ric_const = opt("ric_const");
  in.beta = opt("beta");
  in.gamma = opt("gamma");
  in.lambda1 = opt("lambda1");
  if (j.contains("rank") && !j.at("rank").is_null()) in.rank = j.at("rank").get<int>();
  if (j.contains("p")) in.p = j.at("p").get<int>();
  return in;
}

json criteria_to_json(const CriteriaReport& r) {
  json items = json::array();
  for (const auto& c : r.items) {
    json item{{"id", c.id}, {"property", c.property}, {"status", to_string(c.status)}, {"relation", c.relation},
              {"basis", c.basis}};
    if (c.status != CriterionStatus::Undetermined) {
      item["lhs"] = c.lhs;
      item["rhs"] = c.rhs;
    }
    if (!c.note.empty()) item["note"] = c.note;
    items.push_back(item);
  }
  return {{"criteria", items},
          {"certified", {{"N1", r.certifies("N1")}, {"N2", r.certifies("N2")}}}};
}

json constants_to_json(const ConstantReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json item{{"name", c.name}, {"computed", c.computed}, {"expected", c.expected}, {"passed", c.passed}};
    if (!c.note.empty()) item["note"] = c.note;
    checks.push_back(item);
  }
  return {{"checks", checks}, {"passed", r.passed()}};
}

std::string config_hash(const json& j) {
  std::string s = j.dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, "malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
  out << text;
}

}  // namespace harmonet
