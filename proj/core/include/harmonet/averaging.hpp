#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmonet/stability.hpp"

namespace harmonet {

/// Requires an embedded target; throws NotEmbedded otherwise.
const EmbeddedManifold& require_embedded(const Manifold& M);

/// Pull-back of the tangential projection of a fixed ambient vector v.
FieldAlongMap tangential_field(const DiscreteMap& f, const Vec& v);

/// q(v) = Hess(v^T, v^T).
double q_form(const HessianContext& ctx, const Vec& v);

/// Sum of q over the columns of an orthonormal ambient basis (identity by default).
double trace_q_direct(const HessianContext& ctx, const Mat& basis = Mat());

/// sum m(e) int {Q(T,T) + (p-2)|B(T~,T~)|^2 |T|^2} |T|^{p-2} dt over non-degenerate edges.
double trace_q_formula(const DiscreteMap& f, int p, double tol = 1e-8);

/// Q(X,Y) = <H, B(X,Y)> - 2 Ric(X,Y).
double q_tensor(const EmbeddedManifold& F, const Vec& point, const Vec& X, const Vec& Y);

struct BetaGamma {
  double beta = 0.0;
  double gamma = 0.0;
  int points = 0;
  int starts = 0;
};

/// Extremes of |B(Z,Z)|^2 over unit Z found by multistart projected gradient search.
BetaGamma beta_gamma_estimate(const Manifold& F, int sample_count, std::uint64_t seed, int starts = 200);

struct TangentialIdentityResidual {
  double v1 = 0.0;  // |nabla_Z v^T - A_{v^perp} Z|
  double v2 = 0.0;  // |nabla^perp_Z v^perp + B(Z, v^T)|
};

/// Finite-difference residuals of the derivative identities for v^T and v^perp at p along Z.
TangentialIdentityResidual tangential_identity_residuals(const EmbeddedManifold& F, const Vec& p, const Vec& Z,
                                                         const Vec& v, double h = 1e-3);

/// Inputs of the curvature criteria for a manifold minimally immersed in a sphere of radius^2 r2.
struct CriteriaInput {
  int n = 0;
  std::optional<double> r2;
  std::optional<double> ric_const;
  std::optional<double> beta;  // inf |B_F(Z,Z)|^2 of the Euclidean immersion
  std::optional<double> gamma;
  std::optional<double> lambda1;
  std::optional<int> rank;
  int p = 2;
};

enum class CriterionStatus { Certified, NotCertified, Undetermined };

const char* to_string(CriterionStatus s);

struct CriterionResult {
  std::string id;
  std::string property;
  CriterionStatus status = CriterionStatus::Undetermined;
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string basis = "inequality";
  std::string note;
};

struct CriteriaReport {
  std::vector<CriterionResult> items;
  const CriterionResult& get(const std::string& id) const;
  /// True when any item certifies the given property ("N1", "Np", "N2").
  bool certifies(const std::string& property) const;
};

CriteriaReport criteria_evaluate(const CriteriaInput& in);

}  // namespace harmonet
