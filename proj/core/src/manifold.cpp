#include "harmonet/manifold.hpp"

#include <cmath>

#include "harmonet/errors.hpp"

namespace harmonet {

double Manifold::inner(const Vec&, const Vec& u, const Vec& v) const { return u.dot(v); }

double Manifold::norm(const Vec& p, const Vec& u) const { return std::sqrt(std::max(0.0, inner(p, u, u))); }

Mat Manifold::tangent_basis(const Vec& p) const {
  const int A = ambient_dim();
  Mat cand(A, A);
  for (int a = 0; a < A; ++a) cand.col(a) = to_tangent(p, Vec::Unit(A, a));
  Mat out(A, dim());
  std::vector<bool> used(A, false);
  for (int k = 0; k < dim(); ++k) {
    int best = -1;
    double best_norm = 0.0;
    for (int a = 0; a < A; ++a) {
      if (used[a]) continue;
      double nrm = norm(p, cand.col(a));
      if (nrm > best_norm) {
        best_norm = nrm;
        best = a;
      }
    }
    used[best] = true;
    Vec e = cand.col(best) / best_norm;
    out.col(k) = e;
    for (int a = 0; a < A; ++a) {
      if (!used[a]) cand.col(a) -= inner(p, cand.col(a), e) * e;
    }
  }
  return out;
}

bool Manifold::is_tangent(const Vec& p, const Vec& u) const {
  return (u - to_tangent(p, u)).norm() <= 1e-10 * (1.0 + u.norm());
}

void Manifold::require_tangent(const Vec& p, const Vec& u, const char* what) const {
  if (u.size() != ambient_dim() || !is_tangent(p, u)) {
    throw Error(ErrorCode::NotTangent, std::string(what) + " is not tangent at the base point");
  }
}

Vec Manifold::project_point(const Vec& x, const Vec&) const { return project_point(x); }

Vec Manifold::retract(const Vec& p, const Vec& v) const { return project_point(p + v, p); }

Vec Manifold::geodesic(const Vec& p, const Vec& v, double t) const {
  require_tangent(p, v, "velocity");
  return do_geodesic(p, v, t);
}

Vec Manifold::geodesic_lift(const Vec& p, const Vec& v, double t) const { return do_geodesic(p, v, t); }

Vec Manifold::transport(const Vec& p, const Vec& v, double t, const Vec& w) const {
  require_tangent(p, v, "velocity");
  require_tangent(p, w, "transported vector");
  return do_transport(p, v, t, w);
}

std::vector<Mat> Manifold::transport_frames(const Vec& p, const Vec& v, const std::vector<double>& times,
                                            const Mat& W) const {
  std::vector<Mat> out;
  out.reserve(times.size());
  for (double t : times) {
    Mat F(W.rows(), W.cols());
    for (int k = 0; k < W.cols(); ++k) F.col(k) = do_transport(p, v, t, W.col(k));
    out.push_back(std::move(F));
  }
  return out;
}

Vec Manifold::curvature(const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) const {
  require_tangent(p, X, "X");
  require_tangent(p, Y, "Y");
  require_tangent(p, Z, "Z");
  return do_curvature(p, X, Y, Z);
}

double Manifold::sectional(const Vec& p, const Vec& X, const Vec& Y) const {
  double area = inner(p, X, X) * inner(p, Y, Y) - std::pow(inner(p, X, Y), 2);
  return inner(p, curvature(p, X, Y, Y), X) / area;
}

double Manifold::ricci(const Vec& p, const Vec& X, const Vec& Y) const {
  Mat E = tangent_basis(p);
  double s = 0.0;
  for (int i = 0; i < E.cols(); ++i) s += inner(p, curvature(p, E.col(i), X, Y), E.col(i));
  return s;
}

Mat Manifold::jacobi_matrix(const Vec& p, const Vec& T, const Mat& frame) const {
  const int n = static_cast<int>(frame.cols());
  Mat K(n, n);
  for (int k = 0; k < n; ++k) {
    Vec r = do_curvature(p, frame.col(k), T, T);
    for (int l = 0; l < n; ++l) K(k, l) = inner(p, r, frame.col(l));
  }
  return 0.5 * (K + K.transpose());
}

Vec Manifold::connection_term(const Vec&, const Vec&, const Vec& V) const { return Vec::Zero(V.size()); }

Vec Manifold::nearest_representative(const Vec& x, const Vec&) const { return x; }

bool Manifold::same_point(const Vec& a, const Vec& b, double tol) const { return (a - b).norm() <= tol; }

Vec Manifold::random_tangent(const Vec& p, std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss;
  Vec u(ambient_dim());
  for (int i = 0; i < u.size(); ++i) u[i] = gauss(rng);
  return to_tangent(p, u);
}

Mat projected_axis_basis(const Mat& P, int rank) {
  const int A = static_cast<int>(P.rows());
  Mat cand = P;
  Mat out(A, rank);
  std::vector<bool> used(A, false);
  for (int k = 0; k < rank; ++k) {
    int best = -1;
    double best_norm = -1.0;
    for (int a = 0; a < A; ++a) {
      if (used[a]) continue;
      double nrm = cand.col(a).norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = a;
      }
    }
    used[best] = true;
    Vec e = cand.col(best) / best_norm;
    out.col(k) = e;
    for (int a = 0; a < A; ++a) {
      if (!used[a]) cand.col(a) -= cand.col(a).dot(e) * e;
    }
  }
  return out;
}

Vec EmbeddedManifold::to_tangent(const Vec& p, const Vec& u) const { return tangent_projector(p) * u; }

Mat EmbeddedManifold::tangent_basis(const Vec& p) const { return projected_axis_basis(tangent_projector(p), dim()); }

Mat EmbeddedManifold::projector_derivative(const Vec& p, const Vec& X) const {
  double scale = X.norm();
  if (scale == 0.0) return Mat::Zero(ambient_dim(), ambient_dim());
  double h = 1e-3 / scale;
  auto P = [&](double s) { return tangent_projector(geodesic_lift(p, X, s)); };
  return (P(-2 * h) - 8.0 * P(-h) + 8.0 * P(h) - P(2 * h)) / (12.0 * h);
}

Vec EmbeddedManifold::second_fundamental_form(const Vec& p, const Vec& X, const Vec& Y) const {
  require_tangent(p, X, "X");
  require_tangent(p, Y, "Y");
  Mat P = tangent_projector(p);
  Vec d = projector_derivative(p, X) * Y;
  return d - P * d;
}

Vec EmbeddedManifold::shape_operator(const Vec& p, const Vec& xi, const Vec& X) const {
  require_tangent(p, X, "X");
  Mat P = tangent_projector(p);
  if ((P * xi).norm() > 1e-10 * (1.0 + xi.norm())) throw Error(ErrorCode::NotNormal, "xi is not normal");
  return P * (projector_derivative(p, X) * xi);
}

Vec EmbeddedManifold::mean_curvature(const Vec& p) const {
  Mat E = tangent_basis(p);
  Mat P = tangent_projector(p);
  Vec H = Vec::Zero(ambient_dim());
  for (int i = 0; i < E.cols(); ++i) {
    Vec d = projector_derivative(p, E.col(i)) * E.col(i);
    H += d - P * d;
  }
  return H;
}

std::vector<Vec> EmbeddedManifold::second_fundamental_tensor(const Vec& p, const Mat& frame) const {
  const int n = static_cast<int>(frame.cols());
  Mat P = tangent_projector(p);
  Mat Q = Mat::Identity(ambient_dim(), ambient_dim()) - P;
  std::vector<Mat> dP;
  for (int i = 0; i < n; ++i) dP.push_back(Q * projector_derivative(p, frame.col(i)));
  std::vector<Vec> out(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Vec b = 0.5 * (dP[i] * frame.col(j) + dP[j] * frame.col(i));
      out[i * n + j] = b;
      out[j * n + i] = b;
    }
  }
  return out;
}

Mat EmbeddedManifold::jacobi_matrix(const Vec& p, const Vec& T, const Mat& frame) const {
  const int n = static_cast<int>(frame.cols());
  Mat full(frame.rows(), n + 1);
  full.leftCols(n) = frame;
  full.col(n) = T;
  std::vector<Vec> B = second_fundamental_tensor(p, full);
  const int m = n + 1;
  const Vec& btt = B[n * m + n];
  Mat K(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) K(k, l) = btt.dot(B[k * m + l]) - B[k * m + n].dot(B[l * m + n]);
  }
  return 0.5 * (K + K.transpose());
}

Vec EmbeddedManifold::do_curvature(const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) const {
  Mat P = tangent_projector(p);
  Mat Q = Mat::Identity(ambient_dim(), ambient_dim()) - P;
  Mat dX = projector_derivative(p, X);
  Mat dY = projector_derivative(p, Y);
  Vec byz = Q * (dY * Z);
  Vec bxz = Q * (dX * Z);
  return P * (dX * byz) - P * (dY * bxz);
}

}  // namespace harmonet
