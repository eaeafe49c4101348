#include <cmath>

#include "harmonet/errors.hpp"
#include "harmonet/models.hpp"

namespace harmonet {

Sphere::Sphere(int n, double radius) : n_(n), r_(radius) {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "sphere dimension must be >= 1");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidConfig, "sphere radius must be positive");
}

Mat Sphere::tangent_projector(const Vec& p) const {
  return Mat::Identity(n_ + 1, n_ + 1) - p * p.transpose() / (r_ * r_);
}

Mat Sphere::projector_derivative(const Vec& p, const Vec& X) const {
  return -(X * p.transpose() + p * X.transpose()) / (r_ * r_);
}

Vec Sphere::to_tangent(const Vec& p, const Vec& u) const { return u - p * (p.dot(u) / (r_ * r_)); }

Vec Sphere::project_point(const Vec& x) const {
  double nrm = x.norm();
  if (nrm == 0.0) return r_ * Vec::Unit(n_ + 1, 0);
  return x * (r_ / nrm);
}

Vec Sphere::geodesic_lift(const Vec& p, const Vec& v, double t) const { return do_geodesic(p, v, t); }

Vec Sphere::do_geodesic(const Vec& p, const Vec& v, double t) const {
  double s = v.norm();
  if (s == 0.0) return p;
  double th = s * t / r_;
  return std::cos(th) * p + (r_ * std::sin(th) / s) * v;
}

Vec Sphere::do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const {
  double s = v.norm();
  if (s == 0.0) return w;
  Vec u = v / s;
  double a = u.dot(w);
  double th = s * t / r_;
  return w - a * u + a * (std::cos(th) * u - std::sin(th) * p / r_);
}

Vec Sphere::do_curvature(const Vec&, const Vec& X, const Vec& Y, const Vec& Z) const {
  return (Y.dot(Z) * X - X.dot(Z) * Y) / (r_ * r_);
}

Mat Sphere::jacobi_matrix(const Vec&, const Vec& T, const Mat& frame) const {
  Vec ft = frame.transpose() * T;
  return (T.squaredNorm() * frame.transpose() * frame - ft * ft.transpose()) / (r_ * r_);
}

Vec Sphere::random_point(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss;
  Vec x(n_ + 1);
  for (int i = 0; i <= n_; ++i) x[i] = gauss(rng);
  return project_point(x);
}

std::unique_ptr<Manifold> make_sphere(int n, double radius) { return std::make_unique<Sphere>(n, radius); }

}  // namespace harmonet
