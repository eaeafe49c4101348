#pragma once

#include <Eigen/Dense>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace harmonet {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Target manifold. Points and tangent vectors live in R^ambient_dim().
/// Curvature convention: <R(X,Y)Y,X> is the sectional numerator.
class Manifold {
 public:
  virtual ~Manifold() = default;

  virtual std::string kind() const = 0;
  virtual int dim() const = 0;
  virtual int ambient_dim() const = 0;

  /// Riemannian inner product of tangent vectors at p.
  virtual double inner(const Vec& p, const Vec& u, const Vec& v) const;
  double norm(const Vec& p, const Vec& u) const;

  /// Orthogonal (Euclidean) projection of an ambient vector onto T_pM.
  virtual Vec to_tangent(const Vec& p, const Vec& u) const = 0;
  /// Columns form a g-orthonormal basis of T_pM in a deterministic order.
  virtual Mat tangent_basis(const Vec& p) const;
  bool is_tangent(const Vec& p, const Vec& u) const;
  void require_tangent(const Vec& p, const Vec& u, const char* what) const;

  virtual Vec project_point(const Vec& x) const = 0;
  /// Projection that may start from a nearby manifold point.
  virtual Vec project_point(const Vec& x, const Vec& hint) const;
  /// Point moved from p along tangent v; defaults to project_point(p + v).
  virtual Vec retract(const Vec& p, const Vec& v) const;

  /// Constant-speed geodesic; the result is reduced to a canonical representative.
  Vec geodesic(const Vec& p, const Vec& v, double t) const;
  /// Geodesic without representative reduction (differs only on quotients).
  virtual Vec geodesic_lift(const Vec& p, const Vec& v, double t) const;
  /// Parallel transport of w along t -> geodesic(p, v, t).
  Vec transport(const Vec& p, const Vec& v, double t, const Vec& w) const;
  /// Transports the columns of W to each time in `times`.
  virtual std::vector<Mat> transport_frames(const Vec& p, const Vec& v, const std::vector<double>& times,
                                            const Mat& W) const;

  Vec curvature(const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) const;
  double sectional(const Vec& p, const Vec& X, const Vec& Y) const;
  double ricci(const Vec& p, const Vec& X, const Vec& Y) const;
  /// K(k,l) = <R(E_k,T)T, E_l> for the columns E of `frame`.
  virtual Mat jacobi_matrix(const Vec& p, const Vec& T, const Mat& frame) const;

  /// Difference between the covariant derivative and the projected ambient derivative.
  virtual Vec connection_term(const Vec& p, const Vec& T, const Vec& V) const;
  /// True when inner() is the ambient dot product.
  virtual bool ambient_metric() const { return true; }

  /// Representative of the point x closest to `reference` (identity except on quotients).
  virtual Vec nearest_representative(const Vec& x, const Vec& reference) const;
  virtual bool same_point(const Vec& a, const Vec& b, double tol) const;

  virtual Vec random_point(std::mt19937_64& rng) const = 0;
  Vec random_tangent(const Vec& p, std::mt19937_64& rng) const;

 protected:
  virtual Vec do_geodesic(const Vec& p, const Vec& v, double t) const = 0;
  virtual Vec do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const = 0;
  virtual Vec do_curvature(const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) const = 0;
};

/// Isometrically embedded submanifold of Euclidean space.
class EmbeddedManifold : public Manifold {
 public:
  virtual Mat tangent_projector(const Vec& p) const = 0;
  /// Directional derivative of the tangent projector along tangent X.
  virtual Mat projector_derivative(const Vec& p, const Vec& X) const;

  Vec to_tangent(const Vec& p, const Vec& u) const override;
  Mat tangent_basis(const Vec& p) const override;

  Vec second_fundamental_form(const Vec& p, const Vec& X, const Vec& Y) const;
  Vec shape_operator(const Vec& p, const Vec& xi, const Vec& X) const;
  Vec mean_curvature(const Vec& p) const;
  /// All B(E_i,E_j) for the columns of a tangent frame; entry (i,j) in out[i*n+j].
  std::vector<Vec> second_fundamental_tensor(const Vec& p, const Mat& frame) const;

  Mat jacobi_matrix(const Vec& p, const Vec& T, const Mat& frame) const override;

 protected:
  Vec do_curvature(const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) const override;
};

/// Pivoted Gram-Schmidt of the projected coordinate axes; rank columns kept.
Mat projected_axis_basis(const Mat& P, int rank);

/// Builds a manifold from a JSON-like type description (see io.hpp).
std::unique_ptr<Manifold> make_sphere(int n, double radius = 1.0);
std::unique_ptr<Manifold> make_flat_torus(const Mat& lattice_rows);
std::unique_ptr<Manifold> make_clifford_torus(double r1 = 0.7071067811865476, double r2 = 0.7071067811865476);
std::unique_ptr<Manifold> make_berger_sphere(double tau);
std::unique_ptr<Manifold> make_g2_orbit();
std::unique_ptr<Manifold> make_grassmann_orbit();

}  // namespace harmonet
