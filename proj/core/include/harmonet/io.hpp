#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <string>

#include "harmonet/averaging.hpp"
#include "harmonet/discrete_map.hpp"
#include "harmonet/stability.hpp"
#include "harmonet/symspace.hpp"
#include "harmonet/variation.hpp"

namespace harmonet {

using json = nlohmann::json;

/// {"vertices":[...], "edges":[{"u":..,"v":..,"w":..}]}
WeightedGraph graph_from_json(const json& j);
json graph_to_json(const WeightedGraph& g);

/// {"type":"sphere","n":2}, {"type":"flat_torus","lattice":[[1,0],[0,1]]}, {"type":"clifford_torus"},
/// {"type":"berger","tau":0.5}, {"type":"g2_orbit"}, {"type":"grassmann_orbit"}.
std::shared_ptr<const Manifold> manifold_from_json(const json& j);

/// {"graph":..., "manifold":..., "N":..., "edges":[{"id":k, "points":[[...], ...]}]}
json map_to_json(const DiscreteMap& f, const json& manifold_config);
DiscreteMap map_from_json(const json& j);

json residuals_to_json(const ResidualReport& r);
json verdict_to_json(const StabilityVerdict& v, int p, bool include_witness = true);
std::string spectrum_csv(const Vec& spectrum);

/// Numbers or rational strings such as "1/7"; null or absent fields stay empty.
CriteriaInput criteria_from_json(const json& j);
json criteria_to_json(const CriteriaReport& r);
json constants_to_json(const ConstantReport& r);

/// Doubles written with round-trip precision.
double json_number(const json& j);
Vec json_vector(const json& j);
json vector_json(const Vec& v);

/// 64-bit FNV-1a of the canonical dump, as 16 hex digits.
std::string config_hash(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace harmonet
