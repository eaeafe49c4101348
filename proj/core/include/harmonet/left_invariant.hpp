#pragma once

#include <array>

#include "harmonet/manifold.hpp"

namespace harmonet {

/// S^3 = SU(2) as unit quaternions (w,x,y,z) with a left-invariant metric that is
/// diagonal, with coefficients a_k, in the frame E_k(q) = q e_k, e = (i, j, k).
class LeftInvariantManifold : public Manifold {
 public:
  using Tensor3 = std::array<std::array<std::array<double, 3>, 3>, 3>;

  explicit LeftInvariantManifold(std::array<double, 3> metric_coefficients);

  std::string kind() const override { return "left_invariant"; }
  int dim() const override { return 3; }
  int ambient_dim() const override { return 4; }

  const std::array<double, 3>& metric_coefficients() const { return a_; }
  /// [E_i, E_j] = sum_k c[k][i][j] E_k.
  const Tensor3& structure_constants() const { return c_; }
  /// nabla_{F_i} F_j = sum_k gamma[k][i][j] F_k in the orthonormal frame F_k = E_k / sqrt(a_k).
  const Tensor3& christoffel() const { return gamma_; }

  /// Orthonormal-frame coordinates of a tangent vector and back.
  Eigen::Vector3d frame_coords(const Vec& q, const Vec& u) const;
  Vec from_frame(const Vec& q, const Eigen::Vector3d& x) const;

  double inner(const Vec& p, const Vec& u, const Vec& v) const override;
  Vec to_tangent(const Vec& p, const Vec& u) const override;
  Mat tangent_basis(const Vec& p) const override;
  Vec project_point(const Vec& x) const override;
  Vec geodesic_lift(const Vec& p, const Vec& v, double t) const override;
  std::vector<Mat> transport_frames(const Vec& p, const Vec& v, const std::vector<double>& times,
                                    const Mat& W) const override;
  Vec connection_term(const Vec& p, const Vec& T, const Vec& V) const override;
  bool ambient_metric() const override;
  Vec random_point(std::mt19937_64& rng) const override;

 protected:
  Vec do_geodesic(const Vec& p, const Vec& v, double t) const override;
  Vec do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const override;
  Vec do_curvature(const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) const override;

 private:
  std::array<double, 3> a_;
  Tensor3 c_{};
  Tensor3 gamma_{};
  Tensor3 delta_{};
  std::array<Tensor3, 3> riem_{};

  struct Flow {
    std::vector<Vec> q;
    std::vector<Mat> frames;
  };
  Flow integrate(const Vec& q0, const Eigen::Vector3d& x0, const Mat& W0, const std::vector<double>& times) const;
};

/// Quaternion product of 4-vectors (w,x,y,z).
Vec quat_mul(const Vec& a, const Vec& b);

}  // namespace harmonet
