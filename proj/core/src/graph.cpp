#include "harmonet/graph.hpp"

#include <cmath>

#include "harmonet/errors.hpp"

namespace harmonet {

WeightedGraph WeightedGraph::build(std::vector<std::string> vertex_ids, const std::vector<EdgeInput>& edges) {
  WeightedGraph g;
  g.ids_ = std::move(vertex_ids);
  if (g.ids_.empty()) throw Error(ErrorCode::Disconnected, "graph has no vertices");
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (!g.index_.emplace(g.ids_[i], i).second) {
      throw Error(ErrorCode::InvalidConfig, "duplicate vertex id '" + g.ids_[i] + "'");
    }
  }
  for (const auto& in : edges) {
    if (!(in.w > 0.0) || !std::isfinite(in.w)) {
      throw Error(ErrorCode::NonPositiveWeight, "edge " + in.u + "-" + in.v + " has weight " + std::to_string(in.w));
    }
    auto iu = g.index_.find(in.u);
    auto iv = g.index_.find(in.v);
    if (iu == g.index_.end() || iv == g.index_.end()) {
      throw Error(ErrorCode::DanglingEndpoint, "edge " + in.u + "-" + in.v + " references an undeclared vertex");
    }
    g.edges_.push_back({iu->second, iv->second, in.w});
    g.edges_.push_back({iv->second, iu->second, in.w});
  }
  g.rebuild_stars();

  std::vector<int> seen(g.vertex_count(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int e : g.stars_[x]) {
      int y = g.edges_[e].terminal;
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (!seen[i]) throw Error(ErrorCode::Disconnected, "vertex '" + g.ids_[i] + "' is unreachable");
  }
  return g;
}

void WeightedGraph::rebuild_stars() {
  stars_.assign(ids_.size(), {});
  for (int e = 0; e < edge_count(); ++e) stars_[edges_[e].origin].push_back(e);
}

const std::vector<int>& WeightedGraph::edge_star(int x) const {
  if (x < 0 || x >= vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(x));
  return stars_[x];
}

const std::vector<int>& WeightedGraph::edge_star(const std::string& id) const { return edge_star(vertex_index(id)); }

int WeightedGraph::vertex_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::UnknownVertex, "vertex '" + id + "'");
  return it->second;
}

WeightedGraph WeightedGraph::with_weights(const std::vector<double>& unoriented_weights) const {
  if (static_cast<int>(unoriented_weights.size()) != unoriented_count()) {
    throw Error(ErrorCode::InvalidConfig, "weight list size mismatch");
  }
  WeightedGraph g = *this;
  for (int k = 0; k < unoriented_count(); ++k) {
    double w = unoriented_weights[k];
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::NonPositiveWeight, "transmuted weight not positive");
    g.edges_[2 * k].weight = w;
    g.edges_[2 * k + 1].weight = w;
  }
  return g;
}

WeightedGraph WeightedGraph::swapped_orientation() const {
  WeightedGraph g = *this;
  for (int k = 0; k < unoriented_count(); ++k) std::swap(g.edges_[2 * k], g.edges_[2 * k + 1]);
  g.rebuild_stars();
  return g;
}

std::vector<EdgeInput> WeightedGraph::unoriented_edges() const {
  std::vector<EdgeInput> out;
  for (int k = 0; k < unoriented_count(); ++k) {
    const auto& e = edges_[2 * k];
    out.push_back({ids_[e.origin], ids_[e.terminal], e.weight});
  }
  return out;
}

}  // namespace harmonet
