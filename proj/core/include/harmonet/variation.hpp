#pragma once

#include <cstdint>
#include <vector>

#include "harmonet/discrete_map.hpp"

namespace harmonet {

/// Velocities T_i of oriented edge e (ambient x (N+1)), tangent at the samples.
Mat edge_velocities(const DiscreteMap& f, int e);

/// nabla_T V along oriented edge e for per-sample values V (ambient x (N+1)).
Mat covariant_derivative(const DiscreteMap& f, int e, const Mat& V);

/// True when the maximal sample speed is below threshold.
bool is_degenerate(const Mat& T, double threshold = 1e-10);

/// Speed below which the second variation treats an edge as a point.
inline constexpr double kCollapsedSpeed = 1e-6;

/// (1/p) sum over oriented edges of m(e) int |T|^p dt.
double energy(const DiscreteMap& f, int p);

struct ResidualReport {
  int p = 2;
  std::vector<double> edge;    // per oriented edge
  std::vector<double> vertex;  // per vertex
  double max_edge() const;
  double max_vertex() const;
  double max() const;
};

ResidualReport first_variation_residuals(const DiscreteMap& f, int p);

/// Sum of m(e) int |T|^{p-2} <T, nabla_T W> dt, the derivative of E^p along W.
double first_variation_pairing(const DiscreteMap& f, int p, const FieldAlongMap& W);

/// Map with every sample q moved to exp_q(eps W).
DiscreteMap vary(const DiscreteMap& f, const FieldAlongMap& W, double eps);

/// Resamples every edge at constant speed.
DiscreteMap reparametrize_to_geodesic(const DiscreteMap& f);

/// m(e) |T_e|^{1-p} per unoriented edge for a constant-speed map.
std::vector<double> weight_transmute(const DiscreteMap& f, int p, double speed_tol = 1e-6);

struct SolveOptions {
  double tol = 1e-8;
  int max_iters = 500;
  std::uint64_t seed = 0;
};

struct SolveResult {
  DiscreteMap map;
  bool converged = false;
  int iterations = 0;
  ResidualReport residuals;
  std::vector<double> energy_history;
};

/// Preconditioned projected gradient descent with Armijo backtracking.
SolveResult harmonic_solve(const DiscreteMap& initial, int p, const SolveOptions& options = {});

}  // namespace harmonet
