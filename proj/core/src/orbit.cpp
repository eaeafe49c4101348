#include "harmonet/orbit.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "harmonet/errors.hpp"

namespace harmonet {
namespace sl7 {

Mat G(int i, int j) {
  Mat m = Mat::Zero(7, 7);
  m(i - 1, j - 1) = 1.0;
  m(j - 1, i - 1) = -1.0;
  return m;
}

Mat P(int i, int j) {
  Mat m = Mat::Zero(7, 7);
  m(i - 1, j - 1) = 1.0;
  m(j - 1, i - 1) = 1.0;
  return m;
}

Mat Hdiff(int i, int j) {
  Mat m = Mat::Zero(7, 7);
  m(i - 1, i - 1) = 1.0;
  m(j - 1, j - 1) = -1.0;
  return m;
}

Mat eta() {
  Vec d(7);
  d << 4.0, 4.0, 4.0, -3.0, -3.0, -3.0, -3.0;
  return Mat((d / 7.0).asDiagonal());
}

namespace {

struct Term {
  int sign;
  int i;
  int j;
};

const std::vector<std::vector<Term>>& g2_terms() {
  static const std::vector<std::vector<Term>> terms = {
      {{1, 2, 3}, {-1, 6, 7}}, {{1, 4, 5}, {-1, 6, 7}}, {{1, 1, 3}, {1, 5, 7}},  {{1, 4, 6}, {1, 5, 7}},
      {{1, 1, 2}, {-1, 5, 6}}, {{1, 4, 7}, {-1, 5, 6}}, {{1, 1, 5}, {-1, 3, 7}}, {{1, 2, 6}, {1, 3, 7}},
      {{1, 1, 4}, {1, 3, 6}},  {{1, 2, 7}, {-1, 3, 6}}, {{1, 1, 7}, {1, 3, 5}},  {{1, 2, 4}, {1, 3, 5}},
      {{1, 1, 6}, {-1, 3, 4}}, {{1, 2, 5}, {-1, 3, 4}},
  };
  return terms;
}

}  // namespace

std::vector<Mat> g2_basis() {
  std::vector<Mat> out;
  for (const auto& terms : g2_terms()) {
    Mat m = Mat::Zero(7, 7);
    for (const auto& t : terms) m += t.sign * G(t.i, t.j);
    out.push_back(m);
  }
  return out;
}

Mat g2_tilde(int k) {
  Mat m = Mat::Zero(7, 7);
  for (const auto& t : g2_terms().at(k)) m += t.sign * P(t.i, t.j);
  return m;
}

Mat bracket(const Mat& A, const Mat& B) { return A * B - B * A; }

}  // namespace sl7

namespace {

std::vector<Mat> orthonormalize(const std::vector<Mat>& in) {
  std::vector<Mat> out;
  for (const Mat& m : in) {
    Mat r = m;
    for (const Mat& q : out) r -= (-(r * q).trace()) * q;
    double nrm = std::sqrt(-(r * r).trace());
    if (nrm > 1e-12) out.push_back(r / nrm);
  }
  return out;
}

}  // namespace

OrbitManifold::OrbitManifold(Group group) : group_(group) {
  for (int k = 1; k <= 6; ++k) {
    Mat d = Mat::Zero(7, 7);
    for (int i = 0; i < k; ++i) d(i, i) = 1.0;
    d(k, k) = -static_cast<double>(k);
    basis_.push_back(d / std::sqrt(k * (k + 1.0) * sl7::kC));
  }
  for (int i = 1; i <= 7; ++i) {
    for (int j = i + 1; j <= 7; ++j) basis_.push_back(sl7::P(i, j) / std::sqrt(2.0 * sl7::kC));
  }
  std::vector<Mat> raw;
  if (group == Group::G2) {
    raw = sl7::g2_basis();
  } else {
    for (int i = 1; i <= 7; ++i) {
      for (int j = i + 1; j <= 7; ++j) raw.push_back(sl7::G(i, j));
    }
  }
  gens_ = orthonormalize(raw);
}

Mat OrbitManifold::to_matrix(const Vec& y) const {
  Mat X = Mat::Zero(7, 7);
  for (int a = 0; a < 27; ++a) X += y[a] * basis_[a];
  return X;
}

Vec OrbitManifold::to_coords(const Mat& X) const {
  Vec y(27);
  for (int a = 0; a < 27; ++a) y[a] = sl7::kC * (basis_[a].cwiseProduct(X.transpose())).sum();
  return y;
}

Vec OrbitManifold::conjugate(const Mat& g, const Vec& y) const { return to_coords(g * to_matrix(y) * g.transpose()); }

Mat OrbitManifold::adjoint_matrix(const Mat& Z) const {
  Mat A(27, 27);
  for (int a = 0; a < 27; ++a) A.col(a) = to_coords(sl7::bracket(Z, basis_[a]));
  return A;
}

Mat OrbitManifold::orbit_map(const Vec& p) const {
  Mat X = to_matrix(p);
  Mat L(27, static_cast<int>(gens_.size()));
  for (size_t k = 0; k < gens_.size(); ++k) L.col(static_cast<int>(k)) = to_coords(sl7::bracket(gens_[k], X));
  return L;
}

Mat OrbitManifold::tangent_projector(const Vec& p) const {
  Eigen::JacobiSVD<Mat> svd(orbit_map(p), Eigen::ComputeThinU);
  Mat U = svd.matrixU().leftCols(dim());
  return U * U.transpose();
}

Mat OrbitManifold::generator_for(const Vec& p, const Vec& X) const {
  Eigen::JacobiSVD<Mat> svd(orbit_map(p), Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  Vec a = svd.solve(X);
  Mat Z = Mat::Zero(7, 7);
  for (size_t k = 0; k < gens_.size(); ++k) Z += a[static_cast<int>(k)] * gens_[k];
  return Z;
}

Mat OrbitManifold::projector_derivative(const Vec& p, const Vec& X) const {
  Mat A = adjoint_matrix(generator_for(p, X));
  Mat P = tangent_projector(p);
  return A * P - P * A;
}

Vec OrbitManifold::geodesic_lift(const Vec& p, const Vec& v, double t) const { return do_geodesic(p, v, t); }

Vec OrbitManifold::do_geodesic(const Vec& p, const Vec& v, double t) const {
  Mat Z = generator_for(p, v);
  Mat g = (t * Z).exp();
  return conjugate(g, p);
}

Vec OrbitManifold::do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const {
  Mat Z = generator_for(p, v);
  Mat g = (t * Z).exp();
  return conjugate(g, w);
}

std::vector<Mat> OrbitManifold::transport_frames(const Vec& p, const Vec& v, const std::vector<double>& times,
                                                 const Mat& W) const {
  Mat Z = generator_for(p, v);
  std::vector<Mat> out;
  out.reserve(times.size());
  for (double t : times) {
    Mat g = (t * Z).exp();
    Mat F(27, W.cols());
    for (int k = 0; k < W.cols(); ++k) F.col(k) = conjugate(g, W.col(k));
    out.push_back(std::move(F));
  }
  return out;
}

Vec OrbitManifold::retract(const Vec& p, const Vec& v) const { return do_geodesic(p, v, 1.0); }

Vec OrbitManifold::ascend(const Vec& x, Vec p) const {
  double f = p.dot(x);
  for (int it = 0; it < 2000; ++it) {
    Vec X = tangent_projector(p) * x;
    double g2 = X.squaredNorm();
    if (std::sqrt(g2) <= 1e-13 * (1.0 + x.norm())) break;
    Mat Z = generator_for(p, X);
    double h = 1.0;
    bool moved = false;
    for (int k = 0; k < 40; ++k) {
      Vec q = conjugate((h * Z).exp(), p);
      double fq = q.dot(x);
      bool ascent = fq >= f + 1e-4 * h * g2;
      bool flat = fq >= f - 1e-14 * std::abs(f) && (tangent_projector(q) * x).squaredNorm() < 0.25 * g2;
      if (ascent || flat) {
        p = q;
        f = fq;
        moved = true;
        break;
      }
      h *= 0.5;
    }
    if (!moved) break;
  }
  return p;
}

Vec OrbitManifold::project_point(const Vec& x) const {
  if (group_ == Group::SO7) {
    Mat X = to_matrix(x);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (X + X.transpose()));
    Mat U = es.eigenvectors().rightCols(3);
    return to_coords(U * U.transpose() - (3.0 / 7.0) * Mat::Identity(7, 7));
  }
  std::mt19937_64 rng(20240611);
  Vec best = eta();
  double best_f = best.dot(x);
  for (int s = 0; s < 64; ++s) {
    Vec q = random_point(rng);
    double fq = q.dot(x);
    if (fq > best_f) {
      best_f = fq;
      best = q;
    }
  }
  return ascend(x, best);
}

Vec OrbitManifold::project_point(const Vec& x, const Vec& hint) const {
  if (group_ == Group::SO7) return project_point(x);
  return ascend(x, hint);
}

Vec OrbitManifold::random_point(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss;
  Mat Z = Mat::Zero(7, 7);
  for (const Mat& g : gens_) Z += gauss(rng) * g;
  return conjugate(Z.exp(), eta());
}

std::unique_ptr<Manifold> make_g2_orbit() { return std::make_unique<OrbitManifold>(OrbitManifold::Group::G2); }
std::unique_ptr<Manifold> make_grassmann_orbit() {
  return std::make_unique<OrbitManifold>(OrbitManifold::Group::SO7);
}

}  // namespace harmonet
