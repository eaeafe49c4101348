#include "harmonet/left_invariant.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "harmonet/errors.hpp"

namespace harmonet {

Vec quat_mul(const Vec& a, const Vec& b) {
  Vec r(4);
  r[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
  r[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
  r[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
  r[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
  return r;
}

namespace {

Vec unit(int k) { return Vec::Unit(4, k + 1); }

}  // namespace

LeftInvariantManifold::LeftInvariantManifold(std::array<double, 3> metric_coefficients) : a_(metric_coefficients) {
  for (double a : a_) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidConfig, "metric coefficients must be positive");
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vec br = quat_mul(unit(i), unit(j)) - quat_mul(unit(j), unit(i));
      for (int k = 0; k < 3; ++k) c_[k][i][j] = br[k + 1];
    }
  }
  Tensor3 cf{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) cf[k][i][j] = c_[k][i][j] * std::sqrt(a_[k] / (a_[i] * a_[j]));
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) gamma_[k][i][j] = 0.5 * (cf[k][i][j] - cf[i][j][k] + cf[j][k][i]);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      for (int m = 0; m < 3; ++m) {
        delta_[m][i][k] = gamma_[m][i][k] * std::sqrt(a_[i] * a_[k] / a_[m]) - (i == k ? 0.0 : 0.5 * c_[m][i][k]);
      }
    }
  }
  for (int m = 0; m < 3; ++m) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          double s = 0.0;
          for (int l = 0; l < 3; ++l) {
            s += gamma_[l][j][k] * gamma_[m][i][l] - gamma_[l][i][k] * gamma_[m][j][l] - cf[l][i][j] * gamma_[m][l][k];
          }
          riem_[m][i][j][k] = s;
        }
      }
    }
  }
}

Eigen::Vector3d LeftInvariantManifold::frame_coords(const Vec& q, const Vec& u) const {
  Eigen::Vector3d x;
  for (int k = 0; k < 3; ++k) x[k] = u.dot(quat_mul(q, unit(k))) * std::sqrt(a_[k]);
  return x;
}

Vec LeftInvariantManifold::from_frame(const Vec& q, const Eigen::Vector3d& x) const {
  Vec u = Vec::Zero(4);
  for (int k = 0; k < 3; ++k) u += (x[k] / std::sqrt(a_[k])) * quat_mul(q, unit(k));
  return u;
}

double LeftInvariantManifold::inner(const Vec& p, const Vec& u, const Vec& v) const {
  return frame_coords(p, u).dot(frame_coords(p, v));
}

Vec LeftInvariantManifold::to_tangent(const Vec& p, const Vec& u) const { return u - p * p.dot(u); }

Mat LeftInvariantManifold::tangent_basis(const Vec& p) const {
  Mat E(4, 3);
  for (int k = 0; k < 3; ++k) E.col(k) = quat_mul(p, unit(k)) / std::sqrt(a_[k]);
  return E;
}

Vec LeftInvariantManifold::project_point(const Vec& x) const {
  double nrm = x.norm();
  if (nrm == 0.0) return Vec::Unit(4, 0);
  return x / nrm;
}

bool LeftInvariantManifold::ambient_metric() const { return a_[0] == 1.0 && a_[1] == 1.0 && a_[2] == 1.0; }

Vec LeftInvariantManifold::connection_term(const Vec& p, const Vec& T, const Vec& V) const {
  Eigen::Vector3d t;
  Eigen::Vector3d v;
  for (int k = 0; k < 3; ++k) {
    Vec ek = quat_mul(p, unit(k));
    t[k] = T.dot(ek);
    v[k] = V.dot(ek);
  }
  Vec out = Vec::Zero(4);
  for (int m = 0; m < 3; ++m) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) s += t[i] * v[k] * delta_[m][i][k];
    }
    out += s * quat_mul(p, unit(m));
  }
  return out;
}

Vec LeftInvariantManifold::do_curvature(const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) const {
  Eigen::Vector3d x = frame_coords(p, X);
  Eigen::Vector3d y = frame_coords(p, Y);
  Eigen::Vector3d z = frame_coords(p, Z);
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  for (int m = 0; m < 3; ++m) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) r[m] += riem_[m][i][j][k] * x[i] * y[j] * z[k];
      }
    }
  }
  return from_frame(p, r);
}

LeftInvariantManifold::Flow LeftInvariantManifold::integrate(const Vec& q0, const Eigen::Vector3d& x0, const Mat& W0,
                                                             const std::vector<double>& times) const {
  const int m = static_cast<int>(W0.cols());
  Flow out;
  double speed = x0.norm();
  bool fiber = speed > 0.0 && std::hypot(x0[1], x0[2]) <= 1e-14 * speed;
  if (speed == 0.0 || fiber) {
    Eigen::Matrix3d M;
    for (int k = 0; k < 3; ++k) {
      for (int j = 0; j < 3; ++j) {
        M(k, j) = 0.0;
        for (int i = 0; i < 3; ++i) M(k, j) += gamma_[k][i][j] * x0[i];
      }
    }
    for (double t : times) {
      double phi = t * x0[0] / std::sqrt(a_[0]);
      Vec rot(4);
      rot << std::cos(phi), std::sin(phi), 0.0, 0.0;
      out.q.push_back(quat_mul(q0, rot));
      Eigen::Matrix3d prop = (-t * M).exp();
      out.frames.push_back(prop * W0);
    }
    return out;
  }

  using State = Eigen::VectorXd;
  const int n = 7 + 3 * m;
  auto rhs = [&](const State& s) {
    State d(n);
    Vec q = s.head(4);
    Eigen::Vector3d x = s.segment<3>(4);
    Vec body = Vec::Zero(4);
    for (int k = 0; k < 3; ++k) body[k + 1] = x[k] / std::sqrt(a_[k]);
    d.head(4) = quat_mul(q, body);
    for (int k = 0; k < 3; ++k) {
      double acc = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) acc += gamma_[k][i][j] * x[i] * x[j];
      }
      d[4 + k] = -acc;
    }
    for (int c = 0; c < m; ++c) {
      Eigen::Vector3d w = s.segment<3>(7 + 3 * c);
      for (int k = 0; k < 3; ++k) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) acc += gamma_[k][i][j] * x[i] * w[j];
        }
        d[7 + 3 * c + k] = -acc;
      }
    }
    return d;
  };
  auto step = [&](const State& s, double h) {
    State k1 = rhs(s);
    State k2 = rhs(s + 0.5 * h * k1);
    State k3 = rhs(s + 0.5 * h * k2);
    State k4 = rhs(s + h * k3);
    State r = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    r.head(4).normalize();
    return r;
  };

  State s(n);
  s.head(4) = q0;
  s.segment<3>(4) = x0;
  for (int c = 0; c < m; ++c) s.segment<3>(7 + 3 * c) = W0.col(c);
  double t = 0.0;
  double h = 0.05 / (1.0 + speed);
  const double tol = 1e-10;
  std::vector<size_t> order(times.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return times[a] < times[b]; });
  out.q.assign(times.size(), Vec());
  out.frames.assign(times.size(), Mat());
  for (size_t idx : order) {
    double target = times[idx];
    double dir = target >= t ? 1.0 : -1.0;
    while (std::abs(target - t) > 1e-15) {
      double hs = std::min(h, std::abs(target - t));
      State full = step(s, dir * hs);
      State half = step(step(s, 0.5 * dir * hs), 0.5 * dir * hs);
      double err = (full.head(7) - half.head(7)).norm() / 15.0;
      if (err <= tol || hs < 1e-8) {
        s = half + (half - full) / 15.0;
        s.head(4).normalize();
        t += dir * hs;
        double grow = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
        h = hs * std::clamp(grow, 0.2, 2.0);
      } else {
        h = hs * std::max(0.2, 0.9 * std::pow(tol / err, 0.2));
      }
    }
    out.q[idx] = s.head(4);
    Mat F(3, m);
    for (int c = 0; c < m; ++c) F.col(c) = s.segment<3>(7 + 3 * c);
    out.frames[idx] = F;
  }
  return out;
}

Vec LeftInvariantManifold::geodesic_lift(const Vec& p, const Vec& v, double t) const { return do_geodesic(p, v, t); }

Vec LeftInvariantManifold::do_geodesic(const Vec& p, const Vec& v, double t) const {
  return integrate(p, frame_coords(p, v), Mat(3, 0), {t}).q[0];
}

Vec LeftInvariantManifold::do_transport(const Vec& p, const Vec& v, double t, const Vec& w) const {
  Mat W0(3, 1);
  W0.col(0) = frame_coords(p, w);
  Flow f = integrate(p, frame_coords(p, v), W0, {t});
  return from_frame(f.q[0], f.frames[0].col(0));
}

std::vector<Mat> LeftInvariantManifold::transport_frames(const Vec& p, const Vec& v, const std::vector<double>& times,
                                                         const Mat& W) const {
  Mat W0(3, W.cols());
  for (int c = 0; c < W.cols(); ++c) W0.col(c) = frame_coords(p, W.col(c));
  Flow f = integrate(p, frame_coords(p, v), W0, times);
  std::vector<Mat> out;
  for (size_t i = 0; i < times.size(); ++i) {
    Mat F(4, W.cols());
    for (int c = 0; c < W.cols(); ++c) F.col(c) = from_frame(f.q[i], f.frames[i].col(c));
    out.push_back(F);
  }
  return out;
}

Vec LeftInvariantManifold::random_point(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss;
  Vec x(4);
  for (int i = 0; i < 4; ++i) x[i] = gauss(rng);
  return project_point(x);
}

std::unique_ptr<Manifold> make_berger_sphere(double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidConfig, "berger tau must be positive");
  return std::make_unique<LeftInvariantManifold>(std::array<double, 3>{tau * tau, 1.0, 1.0});
}

}  // namespace harmonet
