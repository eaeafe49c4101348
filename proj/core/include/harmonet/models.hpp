#pragma once

#include "harmonet/manifold.hpp"

namespace harmonet {

/// Round sphere of radius r in R^{n+1}.
class Sphere : public EmbeddedManifold {
 public:
  explicit Sphere(int n, double radius = 1.0);

  std::string kind() const override { return "sphere"; }
  int dim() const override { return n_; }
  int ambient_dim() const override { return n_ + 1; }
  double radius() const { return r_; }
  Vec outer_normal(const Vec& p) const { return p / r_; }

  Mat tangent_projector(const Vec& p) const override;
  Mat projector_derivative(const Vec& p, const Vec& X) const override;
  Vec to_tangent(const Vec& p, const Vec& u) const override;
  Vec project_point(const Vec& x) const override;
  Vec geodesic_lift(const Vec& p, const Vec& v, double t) const override;
  Mat jacobi_matrix(const Vec& p, const Vec& T, const Mat& frame) const override;
  Vec random_point(std::mt19937_64& rng) const override;

 protected:
  Vec do_geodesic(const Vec& p, const Vec& v, double t) const override;
  Vec do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const override;
  Vec do_curvature(const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) const override;

 private:
  int n_;
  double r_;
};

/// R^n modulo the lattice spanned by the rows of L. Points are stored as lifts.
class FlatTorus : public Manifold {
 public:
  explicit FlatTorus(Mat lattice_rows);

  std::string kind() const override { return "flat_torus"; }
  int dim() const override { return static_cast<int>(L_.rows()); }
  int ambient_dim() const override { return dim(); }
  const Mat& lattice() const { return L_; }

  Vec to_tangent(const Vec& p, const Vec& u) const override;
  Mat tangent_basis(const Vec& p) const override;
  Vec project_point(const Vec& x) const override;
  Vec project_point(const Vec& x, const Vec& hint) const override;
  Vec retract(const Vec& p, const Vec& v) const override;
  Vec geodesic_lift(const Vec& p, const Vec& v, double t) const override;
  Mat jacobi_matrix(const Vec& p, const Vec& T, const Mat& frame) const override;
  Vec nearest_representative(const Vec& x, const Vec& reference) const override;
  bool same_point(const Vec& a, const Vec& b, double tol) const override;
  Vec random_point(std::mt19937_64& rng) const override;

 protected:
  Vec do_geodesic(const Vec& p, const Vec& v, double t) const override;
  Vec do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const override;
  Vec do_curvature(const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) const override;

 private:
  Mat L_;
  Mat Linv_;
};

/// Product of two circles of radii r1, r2 in R^4.
class CliffordTorus : public EmbeddedManifold {
 public:
  CliffordTorus(double r1, double r2);

  std::string kind() const override { return "clifford_torus"; }
  int dim() const override { return 2; }
  int ambient_dim() const override { return 4; }
  double r1() const { return r_[0]; }
  double r2() const { return r_[1]; }

  /// Point with angles (a, b).
  Vec point(double a, double b) const;
  /// Unit tangent and outward unit radial vector of circle k at p.
  Vec circle_tangent(const Vec& p, int k) const;
  Vec circle_normal(const Vec& p, int k) const;

  Mat tangent_projector(const Vec& p) const override;
  Mat projector_derivative(const Vec& p, const Vec& X) const override;
  Mat tangent_basis(const Vec& p) const override;
  Vec project_point(const Vec& x) const override;
  Vec geodesic_lift(const Vec& p, const Vec& v, double t) const override;
  Vec random_point(std::mt19937_64& rng) const override;

 protected:
  Vec do_geodesic(const Vec& p, const Vec& v, double t) const override;
  Vec do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const override;

 private:
  double r_[2];
};

}  // namespace harmonet
