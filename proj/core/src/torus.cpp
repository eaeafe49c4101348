#include <cmath>

#include "harmonet/errors.hpp"
#include "harmonet/models.hpp"

namespace harmonet {

FlatTorus::FlatTorus(Mat lattice_rows) : L_(std::move(lattice_rows)) {
  if (L_.rows() != L_.cols() || L_.rows() == 0) {
    throw Error(ErrorCode::InvalidConfig, "torus lattice must be a square matrix");
  }
  if (std::abs(L_.determinant()) < 1e-12) throw Error(ErrorCode::InvalidConfig, "torus lattice is singular");
  Linv_ = L_.inverse();
}

Vec FlatTorus::to_tangent(const Vec&, const Vec& u) const { return u; }

Mat FlatTorus::tangent_basis(const Vec&) const { return Mat::Identity(dim(), dim()); }

Vec FlatTorus::project_point(const Vec& x) const {
  Eigen::RowVectorXd c = x.transpose() * Linv_;
  for (int i = 0; i < c.size(); ++i) {
    c[i] -= std::floor(c[i]);
    if (c[i] >= 1.0) c[i] = 0.0;
  }
  return (c * L_).transpose();
}

Vec FlatTorus::project_point(const Vec& x, const Vec& hint) const { return nearest_representative(x, hint); }

Vec FlatTorus::retract(const Vec& p, const Vec& v) const { return p + v; }

Vec FlatTorus::geodesic_lift(const Vec& p, const Vec& v, double t) const { return p + t * v; }

Vec FlatTorus::do_geodesic(const Vec& p, const Vec& v, double t) const { return project_point(p + t * v); }

Vec FlatTorus::do_transport(const Vec&, const Vec&, double, const Vec& w) const { return w; }

Vec FlatTorus::do_curvature(const Vec&, const Vec& X, const Vec&, const Vec&) const { return Vec::Zero(X.size()); }

Mat FlatTorus::jacobi_matrix(const Vec&, const Vec&, const Mat& frame) const {
  return Mat::Zero(frame.cols(), frame.cols());
}

Vec FlatTorus::nearest_representative(const Vec& x, const Vec& reference) const {
  Eigen::RowVectorXd c = (x - reference).transpose() * Linv_;
  for (int i = 0; i < c.size(); ++i) c[i] = std::round(c[i]);
  return x - (c * L_).transpose();
}

bool FlatTorus::same_point(const Vec& a, const Vec& b, double tol) const {
  return (nearest_representative(a, b) - b).norm() <= tol;
}

Vec FlatTorus::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Eigen::RowVectorXd c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = uni(rng);
  return (c * L_).transpose();
}

std::unique_ptr<Manifold> make_flat_torus(const Mat& lattice_rows) { return std::make_unique<FlatTorus>(lattice_rows); }

CliffordTorus::CliffordTorus(double r1, double r2) : r_{r1, r2} {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw Error(ErrorCode::InvalidConfig, "clifford torus radii must be positive");
}

Vec CliffordTorus::point(double a, double b) const {
  Vec p(4);
  p << r_[0] * std::cos(a), r_[0] * std::sin(a), r_[1] * std::cos(b), r_[1] * std::sin(b);
  return p;
}

Vec CliffordTorus::circle_normal(const Vec& p, int k) const {
  Vec n = Vec::Zero(4);
  n.segment(2 * k, 2) = p.segment(2 * k, 2) / r_[k];
  return n;
}

Vec CliffordTorus::circle_tangent(const Vec& p, int k) const {
  Vec u = Vec::Zero(4);
  u[2 * k] = -p[2 * k + 1] / r_[k];
  u[2 * k + 1] = p[2 * k] / r_[k];
  return u;
}

Mat CliffordTorus::tangent_projector(const Vec& p) const {
  Vec u1 = circle_tangent(p, 0);
  Vec u2 = circle_tangent(p, 1);
  return u1 * u1.transpose() + u2 * u2.transpose();
}

Mat CliffordTorus::projector_derivative(const Vec& p, const Vec& X) const {
  Mat out = Mat::Zero(4, 4);
  for (int k = 0; k < 2; ++k) {
    Vec u = circle_tangent(p, k);
    Vec n = circle_normal(p, k);
    double xk = X.dot(u);
    out -= (xk / r_[k]) * (n * u.transpose() + u * n.transpose());
  }
  return out;
}

Mat CliffordTorus::tangent_basis(const Vec& p) const {
  Mat E(4, 2);
  E.col(0) = circle_tangent(p, 0);
  E.col(1) = circle_tangent(p, 1);
  return E;
}

Vec CliffordTorus::project_point(const Vec& x) const {
  Vec p(4);
  for (int k = 0; k < 2; ++k) {
    double nrm = x.segment(2 * k, 2).norm();
    if (nrm == 0.0) {
      p[2 * k] = r_[k];
      p[2 * k + 1] = 0.0;
    } else {
      p.segment(2 * k, 2) = x.segment(2 * k, 2) * (r_[k] / nrm);
    }
  }
  return p;
}

Vec CliffordTorus::geodesic_lift(const Vec& p, const Vec& v, double t) const { return do_geodesic(p, v, t); }

Vec CliffordTorus::do_geodesic(const Vec& p, const Vec& v, double t) const {
  Vec q(4);
  for (int k = 0; k < 2; ++k) {
    double rate = v.dot(circle_tangent(p, k)) / r_[k];
    double c = std::cos(rate * t);
    double s = std::sin(rate * t);
    q[2 * k] = c * p[2 * k] - s * p[2 * k + 1];
    q[2 * k + 1] = s * p[2 * k] + c * p[2 * k + 1];
  }
  return q;
}

Vec CliffordTorus::do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const {
  Vec q = do_geodesic(p, v, t);
  return w.dot(circle_tangent(p, 0)) * circle_tangent(q, 0) + w.dot(circle_tangent(p, 1)) * circle_tangent(q, 1);
}

Vec CliffordTorus::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
  double a = uni(rng);
  double b = uni(rng);
  return point(a, b);
}

std::unique_ptr<Manifold> make_clifford_torus(double r1, double r2) { return std::make_unique<CliffordTorus>(r1, r2); }

}  // namespace harmonet
