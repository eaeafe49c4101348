#include "harmonet/averaging.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <random>

#include "harmonet/errors.hpp"

namespace harmonet {

const EmbeddedManifold& require_embedded(const Manifold& M) {
  const auto* F = dynamic_cast<const EmbeddedManifold*>(&M);
  if (F == nullptr) throw Error(ErrorCode::NotEmbedded, M.kind() + " is not an embedded manifold");
  return *F;
}

FieldAlongMap tangential_field(const DiscreteMap& f, const Vec& v) {
  const EmbeddedManifold& F = require_embedded(f.manifold());
  if (v.size() != F.ambient_dim()) throw Error(ErrorCode::InvalidConfig, "ambient vector has the wrong size");
  return FieldAlongMap::from_nodes(f, [&](int, const Vec& q) -> Vec { return F.to_tangent(q, v); });
}

double q_form(const HessianContext& ctx, const Vec& v) {
  FieldAlongMap V = tangential_field(ctx.map(), v);
  return ctx.form(V, V);
}

double trace_q_direct(const HessianContext& ctx, const Mat& basis) {
  const int A = ctx.map().manifold().ambient_dim();
  Mat B = basis.size() == 0 ? Mat(Mat::Identity(A, A)) : basis;
  double total = 0.0;
  for (int a = 0; a < B.cols(); ++a) total += q_form(ctx, B.col(a));
  return total;
}

double q_tensor(const EmbeddedManifold& F, const Vec& point, const Vec& X, const Vec& Y) {
  Vec H = F.mean_curvature(point);
  return H.dot(F.second_fundamental_form(point, X, Y)) - 2.0 * F.ricci(point, X, Y);
}

double trace_q_formula(const DiscreteMap& f, int p, double tol) {
  const EmbeddedManifold& F = require_embedded(f.manifold());
  if (first_variation_residuals(f, p).max() > 10.0 * tol) {
    throw Error(ErrorCode::NotCritical, "trace formula needs a critical map");
  }
  const Vec& w = f.nodes().w;
  double total = 0.0;
  for (int k = 0; k < f.graph().unoriented_count(); ++k) {
    Mat T = edge_velocities(f, 2 * k);
    if (is_degenerate(T, kCollapsedSpeed)) continue;
    double acc = 0.0;
    for (int i = 0; i <= f.N(); ++i) {
      Vec q = f.canonical()[k].col(i);
      Vec t = T.col(i);
      double s = t.norm();
      Vec Btt = F.second_fundamental_form(q, t, t);
      double Q = q_tensor(F, q, t, t);
      double term = Q + (p - 2) * Btt.squaredNorm() / (s * s);
      acc += w[i] * term * std::pow(s, p - 2);
    }
    total += 2.0 * f.graph().weight(2 * k) * acc;
  }
  return total;
}

namespace {

struct QuarticSearch {
  const std::vector<Vec>& b;  // B(E_i, E_j) at index i*n+j
  int n;

  Vec image(const Vec& z) const {
    Vec out = Vec::Zero(b[0].size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out += z[i] * z[j] * b[i * n + j];
    }
    return out;
  }
  double value(const Vec& z) const { return image(z).squaredNorm(); }
  Vec gradient(const Vec& z) const {
    Vec bz = image(z);
    Vec g(n);
    for (int i = 0; i < n; ++i) {
      Vec row = Vec::Zero(bz.size());
      for (int j = 0; j < n; ++j) row += z[j] * b[i * n + j];
      g[i] = 4.0 * bz.dot(row);
    }
    return g;
  }

  // Projected gradient ascent (sign = 1) or descent (sign = -1) on the unit sphere.
  double optimize(Vec z, double sign) const {
    z.normalize();
    double f = sign * value(z);
    double step = 1.0;
    for (int it = 0; it < 2000; ++it) {
      Vec g = sign * gradient(z);
      g -= g.dot(z) * z;
      double g2 = g.squaredNorm();
      if (g2 < 1e-26) break;
      bool moved = false;
      while (step > 1e-16) {
        Vec trial = (z + step * g).normalized();
        double ft = sign * value(trial);
        if (ft > f && ft >= f + 0.25 * step * g2 / (1.0 + step * step * g2)) {
          z = trial;
          f = ft;
          moved = true;
          step *= 2.0;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    return sign * f;
  }
};

}  // namespace

BetaGamma beta_gamma_estimate(const Manifold& M, int sample_count, std::uint64_t seed, int starts) {
  const EmbeddedManifold& F = require_embedded(M);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  BetaGamma out;
  out.beta = std::numeric_limits<double>::infinity();
  out.gamma = -std::numeric_limits<double>::infinity();
  const int n = F.dim();
  for (int s = 0; s < sample_count; ++s) {
    Vec q = F.random_point(rng);
    Mat E = F.tangent_basis(q);
    std::vector<Vec> b = F.second_fundamental_tensor(q, E);
    QuarticSearch search{b, n};
    for (int k = 0; k < starts; ++k) {
      Vec z(n);
      for (int i = 0; i < n; ++i) z[i] = gauss(rng);
      out.gamma = std::max(out.gamma, search.optimize(z, 1.0));
      out.beta = std::min(out.beta, search.optimize(z, -1.0));
      ++out.starts;
    }
    ++out.points;
  }
  return out;
}

TangentialIdentityResidual tangential_identity_residuals(const EmbeddedManifold& F, const Vec& p, const Vec& Z,
                                                         const Vec& v, double h) {
  F.require_tangent(p, Z, "direction");
  double step = h / std::max(1.0, Z.norm());
  auto tangential = [&](double s) -> Vec {
    Vec c = F.geodesic_lift(p, Z, s);
    return F.tangent_projector(c) * v;
  };
  auto derivative = [&](const auto& fn) -> Vec {
    return (-fn(2 * step) + 8.0 * fn(step) - 8.0 * fn(-step) + fn(-2 * step)) / (12.0 * step);
  };
  Mat P = F.tangent_projector(p);
  Mat I = Mat::Identity(P.rows(), P.cols());
  Vec vt = P * v;
  Vec vn = v - vt;
  Vec dvt = derivative(tangential);
  Vec dvn = derivative([&](double s) -> Vec { return v - tangential(s); });
  TangentialIdentityResidual r;
  r.v1 = (P * dvt - F.shape_operator(p, vn, Z)).norm();
  r.v2 = ((I - P) * dvn + F.second_fundamental_form(p, Z, vt)).norm();
  return r;
}

}  // namespace harmonet
