#include "harmonet/discrete_map.hpp"

#include "harmonet/errors.hpp"

namespace harmonet {

DiscreteMap::DiscreteMap(std::shared_ptr<const WeightedGraph> graph, std::shared_ptr<const Manifold> manifold, int N,
                         std::vector<Mat> canonical_samples)
    : graph_(std::move(graph)), manifold_(std::move(manifold)), N_(N), nodes_(&lgl_nodes(N)),
      samples_(std::move(canonical_samples)) {
  if (static_cast<int>(samples_.size()) != graph_->unoriented_count()) {
    throw Error(ErrorCode::InconsistentMap, "sample count does not match the edge count");
  }
  for (const Mat& s : samples_) {
    if (s.rows() != manifold_->ambient_dim() || s.cols() != N + 1) {
      throw Error(ErrorCode::InconsistentMap, "edge samples have the wrong shape");
    }
  }
}

DiscreteMap DiscreteMap::from_geodesics(std::shared_ptr<const WeightedGraph> graph,
                                        std::shared_ptr<const Manifold> manifold, int N,
                                        const std::vector<Vec>& vertex_points, const std::vector<Vec>& velocities) {
  const Nodes& nd = lgl_nodes(N);
  std::vector<Mat> samples;
  for (int k = 0; k < graph->unoriented_count(); ++k) {
    const Vec& p = vertex_points.at(graph->origin(2 * k));
    const Vec& v = velocities.at(k);
    manifold->require_tangent(p, v, "edge velocity");
    Mat s(manifold->ambient_dim(), N + 1);
    for (int i = 0; i <= N; ++i) s.col(i) = manifold->geodesic_lift(p, v, nd.t[i]);
    s.col(0) = p;
    samples.push_back(std::move(s));
  }
  return DiscreteMap(std::move(graph), std::move(manifold), N, std::move(samples));
}

DiscreteMap DiscreteMap::constant(std::shared_ptr<const WeightedGraph> graph, std::shared_ptr<const Manifold> manifold,
                                  int N, const Vec& point) {
  std::vector<Mat> samples(graph->unoriented_count(), point.replicate(1, N + 1));
  return DiscreteMap(std::move(graph), std::move(manifold), N, std::move(samples));
}

Mat DiscreteMap::edge_points(int e) const {
  const Mat& s = samples_.at(e / 2);
  if (WeightedGraph::canonical(e)) return s;
  return s.rowwise().reverse();
}

Vec DiscreteMap::point(int e, int i) const {
  const Mat& s = samples_.at(e / 2);
  return WeightedGraph::canonical(e) ? Vec(s.col(i)) : Vec(s.col(N_ - i));
}

Vec DiscreteMap::vertex_point(int x) const {
  const auto& star = graph_->edge_star(x);
  return point(star.front(), 0);
}

int DiscreteMap::node_index(int e, int i) const {
  int k = e / 2;
  int ic = WeightedGraph::canonical(e) ? i : N_ - i;
  if (ic == 0) return graph_->origin(2 * k);
  if (ic == N_) return graph_->terminal(2 * k);
  return graph_->vertex_count() + k * (N_ - 1) + (ic - 1);
}

Vec DiscreteMap::node_point(int node) const {
  int V = graph_->vertex_count();
  if (node < V) return vertex_point(node);
  int k = (node - V) / (N_ - 1);
  int i = (node - V) % (N_ - 1) + 1;
  return samples_.at(k).col(i);
}

DiscreteMap DiscreteMap::with_graph(std::shared_ptr<const WeightedGraph> graph) const {
  return DiscreteMap(std::move(graph), manifold_, N_, samples_);
}

DiscreteMap DiscreteMap::swapped() const {
  auto g = std::make_shared<const WeightedGraph>(graph_->swapped_orientation());
  std::vector<Mat> s;
  for (const Mat& m : samples_) s.push_back(m.rowwise().reverse());
  return DiscreteMap(std::move(g), manifold_, N_, std::move(s));
}

void DiscreteMap::validate(double tol) const {
  for (int x = 0; x < graph_->vertex_count(); ++x) {
    Vec ref = vertex_point(x);
    for (int e : graph_->edge_star(x)) {
      if (!manifold_->same_point(point(e, 0), ref, tol)) {
        throw Error(ErrorCode::InconsistentMap, "edges disagree at vertex " + graph_->vertex_id(x));
      }
    }
  }
  for (const Mat& s : samples_) {
    for (int i = 0; i <= N_; ++i) {
      Vec q = s.col(i);
      if ((manifold_->project_point(q, q) - q).norm() > tol * (1.0 + q.norm())) {
        throw Error(ErrorCode::InconsistentMap, "sample is off the manifold");
      }
    }
  }
}

FieldAlongMap::FieldAlongMap(const DiscreteMap& f) : N_(f.N()) {
  values_.assign(f.graph().unoriented_count(), Mat::Zero(f.manifold().ambient_dim(), f.N() + 1));
}

FieldAlongMap FieldAlongMap::from_function(const DiscreteMap& f, const std::function<Vec(int, int, const Vec&)>& fn) {
  FieldAlongMap out(f);
  for (int k = 0; k < f.graph().unoriented_count(); ++k) {
    for (int i = 0; i <= f.N(); ++i) out.values_[k].col(i) = fn(k, i, f.canonical()[k].col(i));
  }
  return out;
}

FieldAlongMap FieldAlongMap::from_nodes(const DiscreteMap& f, const std::function<Vec(int, const Vec&)>& fn) {
  FieldAlongMap out(f);
  std::vector<Vec> cache(f.node_count());
  std::vector<bool> have(f.node_count(), false);
  for (int k = 0; k < f.graph().unoriented_count(); ++k) {
    for (int i = 0; i <= f.N(); ++i) {
      int node = f.node_index(2 * k, i);
      if (!have[node]) {
        cache[node] = fn(node, f.node_point(node));
        have[node] = true;
      }
      out.values_[k].col(i) = cache[node];
    }
  }
  return out;
}

Mat FieldAlongMap::edge_values(int e) const {
  const Mat& s = values_.at(e / 2);
  if (WeightedGraph::canonical(e)) return s;
  return s.rowwise().reverse();
}

Vec FieldAlongMap::value(int e, int i) const {
  const Mat& s = values_.at(e / 2);
  return WeightedGraph::canonical(e) ? Vec(s.col(i)) : Vec(s.col(N_ - i));
}

FieldAlongMap FieldAlongMap::operator+(const FieldAlongMap& o) const {
  FieldAlongMap r = *this;
  for (size_t k = 0; k < values_.size(); ++k) r.values_[k] += o.values_.at(k);
  return r;
}

FieldAlongMap FieldAlongMap::operator-(const FieldAlongMap& o) const { return *this + o * -1.0; }

FieldAlongMap FieldAlongMap::operator*(double s) const {
  FieldAlongMap r = *this;
  for (auto& v : r.values_) v *= s;
  return r;
}

void FieldAlongMap::validate(const DiscreteMap& f, double tol) const {
  if (values_.size() != f.canonical().size() || N_ != f.N()) {
    throw Error(ErrorCode::InconsistentField, "field does not match the map");
  }
  const Manifold& M = f.manifold();
  for (size_t k = 0; k < values_.size(); ++k) {
    for (int i = 0; i <= N_; ++i) {
      Vec q = f.canonical()[k].col(i);
      Vec v = values_[k].col(i);
      if ((v - M.to_tangent(q, v)).norm() > tol * (1.0 + v.norm())) {
        throw Error(ErrorCode::InconsistentField, "field is not tangent");
      }
    }
  }
  for (int x = 0; x < f.graph().vertex_count(); ++x) {
    const auto& star = f.graph().edge_star(x);
    Vec ref = value(star.front(), 0);
    for (int e : star) {
      if ((value(e, 0) - ref).norm() > tol * (1.0 + ref.norm())) {
        throw Error(ErrorCode::InconsistentField, "field is multivalued at vertex " + f.graph().vertex_id(x));
      }
    }
  }
}

}  // namespace harmonet
