#pragma once

#include <vector>

#include "harmonet/manifold.hpp"

namespace harmonet {

/// 7x7 matrix helpers for sl(7,R) = o(7) + p with <X,Y> = 14 tr(XY) on p.
namespace sl7 {

inline constexpr double kC = 14.0;

/// G_ij = E_ij - E_ji (1-based indices as in the usual notation).
Mat G(int i, int j);
/// P_ij = E_ij + E_ji.
Mat P(int i, int j);
/// E_ii - E_jj.
Mat Hdiff(int i, int j);
/// diag(4/7 I_3, -3/7 I_4).
Mat eta();
/// The fourteen G2 basis matrices V_1..V_14 (index 0..13).
std::vector<Mat> g2_basis();
/// Replaces every G_ij in V_k by P_ij.
Mat g2_tilde(int k);
Mat bracket(const Mat& A, const Mat& B);

}  // namespace sl7

/// Adjoint orbit Ad(K) eta in p, K = G2 or SO(7), with p in orthonormal coordinates (R^27).
class OrbitManifold : public EmbeddedManifold {
 public:
  enum class Group { G2, SO7 };

  explicit OrbitManifold(Group group);

  std::string kind() const override { return group_ == Group::G2 ? "g2_orbit" : "grassmann_orbit"; }
  int dim() const override { return group_ == Group::G2 ? 8 : 12; }
  int ambient_dim() const override { return 27; }
  Group group() const { return group_; }

  Mat to_matrix(const Vec& y) const;
  Vec to_coords(const Mat& X) const;
  Vec eta() const { return to_coords(sl7::eta()); }
  /// Generators of the acting group, orthonormal under -tr(XY).
  const std::vector<Mat>& generators() const { return gens_; }
  /// Minimal-norm Z in the generator span with [Z, p] = X.
  Mat generator_for(const Vec& p, const Vec& X) const;
  /// Coordinates of g x g^T.
  Vec conjugate(const Mat& g, const Vec& y) const;
  /// Matrix of y -> [Z, y] in coordinates.
  Mat adjoint_matrix(const Mat& Z) const;

  Mat tangent_projector(const Vec& p) const override;
  Mat projector_derivative(const Vec& p, const Vec& X) const override;
  Vec project_point(const Vec& x) const override;
  Vec project_point(const Vec& x, const Vec& hint) const override;
  Vec retract(const Vec& p, const Vec& v) const override;
  Vec geodesic_lift(const Vec& p, const Vec& v, double t) const override;
  std::vector<Mat> transport_frames(const Vec& p, const Vec& v, const std::vector<double>& times,
                                    const Mat& W) const override;
  Vec random_point(std::mt19937_64& rng) const override;

 protected:
  Vec do_geodesic(const Vec& p, const Vec& v, double t) const override;
  Vec do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const override;

 private:
  Group group_;
  std::vector<Mat> basis_;
  std::vector<Mat> gens_;

  Mat orbit_map(const Vec& p) const;
  Vec ascend(const Vec& x, Vec p) const;
};

}  // namespace harmonet
