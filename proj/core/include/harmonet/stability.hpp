#pragma once

#include <optional>
#include <vector>

#include "harmonet/discrete_map.hpp"
#include "harmonet/variation.hpp"

namespace harmonet {

struct HessianOptions {
  double tol = 1e-8;
  /// Refuse maps whose residual exceeds 10 * tol.
  bool require_critical = true;
};

struct JacobiParts {
  double interior = 0.0;
  double boundary = 0.0;
  double total() const { return interior + boundary; }
};

/// Second variation of E^p at a critical map. Covariant derivatives along an edge are
/// taken in a parallel orthonormal frame whose first vector is the unit velocity.
class HessianContext {
 public:
  HessianContext(const DiscreteMap& f, int p, const HessianOptions& options = {});

  const DiscreteMap& map() const { return f_; }
  int p() const { return p_; }
  const ResidualReport& residuals() const { return residuals_; }

  /// Oriented frame at node i of edge e (ambient x dim).
  Mat frame(int e, int i) const;
  Mat velocities(int e) const;
  bool degenerate(int e) const { return edges_.at(e / 2).degenerate; }
  /// Frame coordinates of V along oriented edge e (dim x (N+1)).
  Mat coefficients(int e, const FieldAlongMap& V) const;

  double form(const FieldAlongMap& V, const FieldAlongMap& W) const;
  double form_split(const FieldAlongMap& V, const FieldAlongMap& W) const;
  JacobiParts form_jacobi(const FieldAlongMap& V, const FieldAlongMap& W) const;
  /// sum m(e) int |nabla_T V^T|^2 |T|^{-1} dt.
  double tangential_term(const FieldAlongMap& V) const;

  /// Tangential part g(V, T~) T~ along edges, zero on degenerate edges.
  FieldAlongMap tangential_part(const FieldAlongMap& V) const;
  /// Adds minimal corrections t(1-t)^2 a near every edge origin so that
  /// sum m |T|^{p-2} (I + (p-2) T~T~^T) nabla_T V vanishes at each vertex.
  /// For p = 2 this is the balanced condition sum m nabla_T V = 0.
  FieldAlongMap balanced_projection(const FieldAlongMap& V) const;

  /// Node masses sum m(e) w_i over oriented edges through each global node.
  const Vec& node_mass() const { return mass_; }

 private:
  struct EdgeData {
    Mat T;
    Vec speed;
    std::vector<Mat> frames;
    std::vector<Mat> K;
    bool degenerate = false;
  };

  DiscreteMap f_;
  int p_;
  ResidualReport residuals_;
  std::vector<EdgeData> edges_;
  Vec mass_;

  double weight_factor(int e, int i) const;
  double tangential_factor(int e) const;
  Mat jacobi(int e, int i) const;
  double form_impl(const FieldAlongMap& V, const FieldAlongMap& W, bool split) const;
};

struct HessianAssembly {
  Mat matrix;
  int p = 2;
  /// Per global node, tangent basis scaled by 1/sqrt(node mass).
  std::vector<Mat> node_basis;
  DiscreteMap map;

  FieldAlongMap field(const Vec& coords) const;
  Vec coordinates(const FieldAlongMap& V) const;
};

HessianAssembly hessian_matrix(const HessianContext& ctx);

struct StabilityVerdict {
  double min_eig = 0.0;
  bool unstable = false;
  double tol = 0.0;
  Vec spectrum;
  Vec eigenvector;
  std::optional<FieldAlongMap> witness;
};

/// Default threshold 1e-6 (1 + ||A||_inf).
double default_stability_tol(const Mat& A);
StabilityVerdict stability_verdict(const Mat& A, double tol);
StabilityVerdict stability_verdict(const HessianAssembly& assembly, double tol);
StabilityVerdict stability_verdict(const HessianAssembly& assembly);

struct BalancedReport {
  bool balanced = false;
  double max_residual = 0.0;
  std::vector<double> vertex;
};

/// Checks sum over E_x of m(e) nabla_T V(x) = 0 at every vertex.
BalancedReport balanced_membership(const DiscreteMap& f, const FieldAlongMap& V, double tol = 1e-8);

}  // namespace harmonet
