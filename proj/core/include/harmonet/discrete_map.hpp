#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "harmonet/graph.hpp"
#include "harmonet/manifold.hpp"
#include "harmonet/nodes.hpp"

namespace harmonet {

/// Sampled map from a weighted graph into a manifold. Samples sit at the
/// Legendre-Gauss-Lobatto nodes of each edge; only canonical edges (even ids)
/// are stored and the reverse edge reads the samples backwards.
class DiscreteMap {
 public:
  DiscreteMap(std::shared_ptr<const WeightedGraph> graph, std::shared_ptr<const Manifold> manifold, int N,
              std::vector<Mat> canonical_samples);

  /// Edge k (unoriented) runs along the geodesic from vertex_points[origin] with velocity velocities[k].
  static DiscreteMap from_geodesics(std::shared_ptr<const WeightedGraph> graph,
                                    std::shared_ptr<const Manifold> manifold, int N,
                                    const std::vector<Vec>& vertex_points, const std::vector<Vec>& velocities);
  static DiscreteMap constant(std::shared_ptr<const WeightedGraph> graph, std::shared_ptr<const Manifold> manifold,
                              int N, const Vec& point);

  const WeightedGraph& graph() const { return *graph_; }
  const Manifold& manifold() const { return *manifold_; }
  std::shared_ptr<const WeightedGraph> graph_ptr() const { return graph_; }
  std::shared_ptr<const Manifold> manifold_ptr() const { return manifold_; }
  int N() const { return N_; }
  const Nodes& nodes() const { return *nodes_; }

  /// Samples of oriented edge e as columns (ambient x (N+1)).
  Mat edge_points(int e) const;
  Vec point(int e, int i) const;
  Vec vertex_point(int x) const;
  const std::vector<Mat>& canonical() const { return samples_; }
  std::vector<Mat>& canonical_mut() { return samples_; }

  /// Global node numbering: vertices first, then interior nodes of each canonical edge.
  int node_count() const { return graph_->vertex_count() + graph_->unoriented_count() * (N_ - 1); }
  int node_index(int e, int i) const;
  Vec node_point(int node) const;

  /// Same samples on a graph with identical combinatorics.
  DiscreteMap with_graph(std::shared_ptr<const WeightedGraph> graph) const;
  /// Map on graph().swapped_orientation() describing the same curves.
  DiscreteMap swapped() const;

  /// Throws InconsistentMap unless vertices agree and samples lie on the manifold.
  void validate(double tol = 1e-9) const;

 private:
  std::shared_ptr<const WeightedGraph> graph_;
  std::shared_ptr<const Manifold> manifold_;
  int N_;
  const Nodes* nodes_;
  std::vector<Mat> samples_;
};

/// Tangent vector field along a discrete map, one vector per sample.
class FieldAlongMap {
 public:
  FieldAlongMap() = default;
  explicit FieldAlongMap(const DiscreteMap& f);

  /// Field with value fn(canonical edge k, node i, point) at every sample.
  static FieldAlongMap from_function(const DiscreteMap& f, const std::function<Vec(int, int, const Vec&)>& fn);
  /// Field whose value at a node depends only on the global node index.
  static FieldAlongMap from_nodes(const DiscreteMap& f, const std::function<Vec(int, const Vec&)>& fn);

  Mat edge_values(int e) const;
  Vec value(int e, int i) const;
  const std::vector<Mat>& canonical() const { return values_; }
  std::vector<Mat>& canonical_mut() { return values_; }

  FieldAlongMap operator+(const FieldAlongMap& o) const;
  FieldAlongMap operator-(const FieldAlongMap& o) const;
  FieldAlongMap operator*(double s) const;

  /// Throws InconsistentField unless tangent everywhere and single-valued at vertices.
  void validate(const DiscreteMap& f, double tol = 1e-8) const;

 private:
  int N_ = 0;
  std::vector<Mat> values_;
};

}  // namespace harmonet
