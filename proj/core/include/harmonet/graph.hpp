#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace harmonet {

/// Unoriented edge as given by the user.
struct EdgeInput {
  std::string u;
  std::string v;
  double w = 1.0;
};

struct OrientedEdge {
  int origin = 0;
  int terminal = 0;
  double weight = 1.0;
};

/// Finite weighted graph stored as oriented edges.
/// Edge 2k and 2k+1 are reversals of each other; loops contribute both orientations.
class WeightedGraph {
 public:
  static WeightedGraph build(std::vector<std::string> vertex_ids, const std::vector<EdgeInput>& edges);

  int vertex_count() const { return static_cast<int>(ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int unoriented_count() const { return edge_count() / 2; }

  const OrientedEdge& edge(int e) const { return edges_.at(e); }
  int origin(int e) const { return edges_.at(e).origin; }
  int terminal(int e) const { return edges_.at(e).terminal; }
  double weight(int e) const { return edges_.at(e).weight; }
  static int reverse(int e) { return e ^ 1; }
  static bool canonical(int e) { return (e & 1) == 0; }

  /// Oriented edges with origin x.
  const std::vector<int>& edge_star(int x) const;
  const std::vector<int>& edge_star(const std::string& id) const;
  int degree(int x) const { return static_cast<int>(edge_star(x).size()); }

  int vertex_index(const std::string& id) const;
  const std::string& vertex_id(int x) const { return ids_.at(x); }
  const std::vector<std::string>& vertex_ids() const { return ids_; }

  /// Same combinatorics with new weights per unoriented edge.
  WeightedGraph with_weights(const std::vector<double>& unoriented_weights) const;
  /// Relabels every pair so that old edge 2k+1 becomes 2k.
  WeightedGraph swapped_orientation() const;
  std::vector<EdgeInput> unoriented_edges() const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<OrientedEdge> edges_;
  std::vector<std::vector<int>> stars_;

  void rebuild_stars();
};

}  // namespace harmonet
