#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <string>

#include "harmonet/averaging.hpp"
#include "harmonet/models.hpp"
#include "harmonet/scenario.hpp"
#include "harmonet/stability.hpp"
#include "harmonet/variation.hpp"

namespace harmonet::testing {

/// Scenario map, solved when the target has an ambient metric. Cached per (name, p).
inline const DiscreteMap& critical_map(const std::string& name, int p_override = 0) {
  static std::map<std::pair<std::string, int>, DiscreteMap> cache;
  auto key = std::make_pair(name, p_override);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Scenario s = load_scenario(name);
  int p = p_override > 0 ? p_override : s.p;
  DiscreteMap f = s.initial;
  if (s.manifold->ambient_metric() && first_variation_residuals(f, p).max() > s.solver.tol) {
    f = harmonic_solve(f, p, s.solver).map;
  }
  return cache.emplace(key, f).first->second;
}

inline int scenario_p(const std::string& name) { return load_scenario(name).p; }

inline FieldAlongMap random_field(const DiscreteMap& f, std::mt19937_64& rng) {
  return FieldAlongMap::from_nodes(f, [&](int, const Vec& q) { return f.manifold().random_tangent(q, rng); });
}

/// Tangential projection of the ambient field x -> a + B x, smooth along every edge.
inline FieldAlongMap smooth_field(const DiscreteMap& f, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const int d = f.manifold().ambient_dim();
  Vec a(d);
  Mat B(d, d);
  for (int i = 0; i < d; ++i) a[i] = g(rng);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) B(i, j) = g(rng);
  }
  return FieldAlongMap::from_nodes(f, [&](int, const Vec& q) { return f.manifold().to_tangent(q, a + B * q); });
}

/// Rotation field x -> A x with A skew, tangent to every round sphere about the origin.
inline FieldAlongMap killing_field(const DiscreteMap& f, const Mat& A) {
  return FieldAlongMap::from_nodes(f, [&](int, const Vec& q) { return Vec(A * q); });
}

inline double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

/// Order estimate from errors at step h and h/2.
inline double observed_order(double err_h, double err_half) { return std::log2(err_h / err_half); }

/// Errors below this fraction of the compared value are rounding noise and carry no order.
inline constexpr double kRoundoffFloor = 1e-9;

inline bool at_roundoff_floor(double err_h, double err_half, double scale) {
  double floor = kRoundoffFloor * (1.0 + std::abs(scale));
  return err_h <= floor && err_half <= floor;
}

/// Exact to rounding, or converging with at least the given order.
inline bool converges_with_order(double err_h, double err_half, double scale, double order = 1.9) {
  return at_roundoff_floor(err_h, err_half, scale) || observed_order(err_h, err_half) >= order;
}

}  // namespace harmonet::testing
