#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "harmonet/io.hpp"

namespace harmonet {

/// A graph, target manifold and initial map loaded from a scenario file.
struct Scenario {
  std::string name;
  json config;
  std::shared_ptr<const Manifold> manifold;
  std::shared_ptr<const WeightedGraph> graph;
  int p = 2;
  SolveOptions solver;
  DiscreteMap initial;
};

/// Directory holding the built-in scenario files.
std::string scenario_dir();
std::vector<std::string> scenario_names();

Scenario load_scenario(const std::string& name);
/// Builds a scenario from its JSON description; `seed` overrides the file seed when set.
Scenario scenario_from_json(const json& j, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace harmonet
