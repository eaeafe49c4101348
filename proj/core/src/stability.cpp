#include "harmonet/stability.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "harmonet/errors.hpp"

namespace harmonet {

namespace {

double speed_factor(double s, int p) {
  if (p == 2) return 1.0;
  if (p == 1) return 1.0 / s;
  return std::pow(s, p - 2);
}

// g-orthonormalizes the columns of `cols` in order, keeping at most n vectors.
Mat orthonormalize(const Manifold& M, const Vec& q, const Mat& cols, int n) {
  Mat out(cols.rows(), n);
  int kept = 0;
  for (int c = 0; c < cols.cols() && kept < n; ++c) {
    Vec v = cols.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < kept; ++j) v -= M.inner(q, v, out.col(j)) * out.col(j);
    }
    double len = M.norm(q, v);
    if (len > 1e-8) out.col(kept++) = v / len;
  }
  if (kept < n) throw Error(ErrorCode::InvalidConfig, "could not build a tangent frame");
  return out;
}

double phi(double t) { return t * (1.0 - t) * (1.0 - t); }

}  // namespace

HessianContext::HessianContext(const DiscreteMap& f, int p, const HessianOptions& options) : f_(f), p_(p) {
  if (p < 1) throw Error(ErrorCode::InvalidConfig, "p must be a positive integer");
  residuals_ = first_variation_residuals(f_, p_);
  if (options.require_critical && residuals_.max() > 10.0 * options.tol) {
    throw Error(ErrorCode::NotCritical, "map is not critical: residual " + std::to_string(residuals_.max()));
  }
  const Manifold& M = f_.manifold();
  const Nodes& nd = f_.nodes();
  const int n = M.dim();
  const int N = f_.N();
  for (int k = 0; k < f_.graph().unoriented_count(); ++k) {
    const Mat& Q = f_.canonical()[k];
    EdgeData d;
    d.T = edge_velocities(f_, 2 * k);
    d.speed.resize(N + 1);
    for (int i = 0; i <= N; ++i) d.speed[i] = M.norm(Q.col(i), d.T.col(i));
    d.degenerate = is_degenerate(d.T, kCollapsedSpeed);
    d.frames.resize(N + 1);
    if (d.degenerate) {
      Mat B0 = M.tangent_basis(Q.col(0));
      for (int i = 0; i <= N; ++i) {
        Vec q = Q.col(i);
        Mat cols(M.ambient_dim(), n);
        for (int c = 0; c < n; ++c) cols.col(c) = M.to_tangent(q, B0.col(c));
        d.frames[i] = orthonormalize(M, q, cols, n);
      }
    } else {
      Vec q0 = Q.col(0);
      Vec u = d.T.col(0) / d.speed[0];
      Mat start(M.ambient_dim(), n + 1);
      start << u, M.tangent_basis(q0);
      Mat W0 = orthonormalize(M, q0, start, n);
      Vec arc = nd.integral * d.speed;
      std::vector<double> times(arc.data(), arc.data() + arc.size());
      std::vector<Mat> moved = M.transport_frames(q0, u, times, W0);
      for (int i = 0; i <= N; ++i) {
        Vec q = Q.col(i);
        Mat cols(M.ambient_dim(), n + 1);
        cols.col(0) = d.T.col(i) / d.speed[i];
        for (int c = 0; c < n; ++c) cols.col(c + 1) = M.to_tangent(q, moved[i].col(c));
        d.frames[i] = orthonormalize(M, q, cols, n);
      }
    }
    d.K.resize(N + 1);
    for (int i = 0; i <= N; ++i) d.K[i] = M.jacobi_matrix(Q.col(i), d.T.col(i), d.frames[i]);
    edges_.push_back(std::move(d));
  }
  mass_ = Vec::Zero(f_.node_count());
  for (int e = 0; e < f_.graph().edge_count(); ++e) {
    for (int i = 0; i <= N; ++i) mass_[f_.node_index(e, i)] += f_.graph().weight(e) * nd.w[i];
  }
}

Mat HessianContext::frame(int e, int i) const {
  const EdgeData& d = edges_.at(e / 2);
  if (WeightedGraph::canonical(e)) return d.frames.at(i);
  Mat E = d.frames.at(f_.N() - i);
  if (!d.degenerate) E.col(0) *= -1.0;
  return E;
}

Mat HessianContext::velocities(int e) const {
  const EdgeData& d = edges_.at(e / 2);
  if (WeightedGraph::canonical(e)) return d.T;
  return -d.T.rowwise().reverse();
}

Mat HessianContext::jacobi(int e, int i) const {
  const EdgeData& d = edges_.at(e / 2);
  if (WeightedGraph::canonical(e)) return d.K.at(i);
  Mat K = d.K.at(f_.N() - i);
  if (!d.degenerate) {
    K.row(0) *= -1.0;
    K.col(0) *= -1.0;
  }
  return K;
}

double HessianContext::weight_factor(int e, int i) const {
  const EdgeData& d = edges_.at(e / 2);
  int ic = WeightedGraph::canonical(e) ? i : f_.N() - i;
  return f_.graph().weight(e) * speed_factor(d.speed[ic], p_);
}

double HessianContext::tangential_factor(int e) const { return degenerate(e) ? 1.0 : static_cast<double>(p_ - 1); }

Mat HessianContext::coefficients(int e, const FieldAlongMap& V) const {
  const Manifold& M = f_.manifold();
  Mat Ve = V.edge_values(e);
  Mat C(M.dim(), f_.N() + 1);
  for (int i = 0; i <= f_.N(); ++i) {
    Vec q = f_.point(e, i);
    Mat E = frame(e, i);
    for (int k = 0; k < M.dim(); ++k) C(k, i) = M.inner(q, Ve.col(i), E.col(k));
  }
  return C;
}

FieldAlongMap HessianContext::tangential_part(const FieldAlongMap& V) const {
  const Manifold& M = f_.manifold();
  FieldAlongMap out(f_);
  for (int k = 0; k < f_.graph().unoriented_count(); ++k) {
    const EdgeData& d = edges_[k];
    if (d.degenerate) continue;
    for (int i = 0; i <= f_.N(); ++i) {
      Vec q = f_.canonical()[k].col(i);
      Vec u = d.frames[i].col(0);
      out.canonical_mut()[k].col(i) = M.inner(q, V.canonical()[k].col(i), u) * u;
    }
  }
  return out;
}

double HessianContext::form_impl(const FieldAlongMap& V, const FieldAlongMap& W, bool split) const {
  const Nodes& nd = f_.nodes();
  const Mat Dt = nd.D.transpose();
  FieldAlongMap Vt, Wt, Vn, Wn;
  if (split) {
    Vt = tangential_part(V);
    Wt = tangential_part(W);
    Vn = V - Vt;
    Wn = W - Wt;
  }
  double total = 0.0;
  for (int e = 0; e < f_.graph().edge_count(); ++e) {
    double acc = 0.0;
    if (!split) {
      Mat Cv = coefficients(e, V);
      Mat Cw = coefficients(e, W);
      Mat dV = Cv * Dt;
      Mat dW = Cw * Dt;
      double extra = tangential_factor(e) - 1.0;
      for (int i = 0; i <= f_.N(); ++i) {
        double term = dV.col(i).dot(dW.col(i)) + extra * dV(0, i) * dW(0, i) -
                      Cv.col(i).dot(jacobi(e, i) * Cw.col(i));
        acc += nd.w[i] * weight_factor(e, i) * term;
      }
    } else {
      Mat Cn = coefficients(e, Vn);
      Mat Dn = coefficients(e, Wn);
      Mat dVn = Cn * Dt;
      Mat dWn = Dn * Dt;
      Mat dVt = coefficients(e, Vt) * Dt;
      Mat dWt = coefficients(e, Wt) * Dt;
      double tf = static_cast<double>(p_ - 1);
      for (int i = 0; i <= f_.N(); ++i) {
        double term = dVn.col(i).dot(dWn.col(i)) + tf * dVt.col(i).dot(dWt.col(i)) -
                      Cn.col(i).dot(jacobi(e, i) * Dn.col(i));
        acc += nd.w[i] * weight_factor(e, i) * term;
      }
    }
    total += acc;
  }
  return total;
}

double HessianContext::form(const FieldAlongMap& V, const FieldAlongMap& W) const {
  V.validate(f_);
  W.validate(f_);
  return form_impl(V, W, false);
}

double HessianContext::form_split(const FieldAlongMap& V, const FieldAlongMap& W) const {
  V.validate(f_);
  W.validate(f_);
  return form_impl(V, W, true);
}

JacobiParts HessianContext::form_jacobi(const FieldAlongMap& V, const FieldAlongMap& W) const {
  V.validate(f_);
  W.validate(f_);
  for (const EdgeData& d : edges_) {
    if (d.degenerate) continue;
    double mean = d.speed.mean();
    if ((d.speed.array() - mean).abs().maxCoeff() > 1e-6 * mean) {
      throw Error(ErrorCode::NotGeodesicMap, "Jacobi form needs constant-speed edges");
    }
  }
  const Nodes& nd = f_.nodes();
  const Mat Dt = nd.D.transpose();
  JacobiParts out;
  for (int e = 0; e < f_.graph().edge_count(); ++e) {
    const EdgeData& d = edges_[e / 2];
    double s = f_.graph().weight(e) * speed_factor(d.speed.mean(), p_);
    double extra = tangential_factor(e) - 1.0;
    Mat Cv = coefficients(e, V);
    Mat Cw = coefficients(e, W);
    Mat dV = Cv * Dt;
    Mat ddV = dV * Dt;
    double acc = 0.0;
    for (int i = 0; i <= f_.N(); ++i) {
      double term = -ddV.col(i).dot(Cw.col(i)) - extra * ddV(0, i) * Cw(0, i) -
                    Cv.col(i).dot(jacobi(e, i) * Cw.col(i));
      acc += nd.w[i] * term;
    }
    out.interior += s * acc;
    out.boundary += 2.0 * s * (-dV.col(0).dot(Cw.col(0)) - extra * dV(0, 0) * Cw(0, 0));
  }
  return out;
}

double HessianContext::tangential_term(const FieldAlongMap& V) const {
  const Nodes& nd = f_.nodes();
  FieldAlongMap Vt = tangential_part(V);
  double total = 0.0;
  for (int e = 0; e < f_.graph().edge_count(); ++e) {
    const EdgeData& d = edges_[e / 2];
    if (d.degenerate) continue;
    Mat dVt = coefficients(e, Vt) * nd.D.transpose();
    double acc = 0.0;
    for (int i = 0; i <= f_.N(); ++i) {
      int ic = WeightedGraph::canonical(e) ? i : f_.N() - i;
      acc += nd.w[i] * dVt.col(i).squaredNorm() / d.speed[ic];
    }
    total += f_.graph().weight(e) * acc;
  }
  return total;
}

FieldAlongMap HessianContext::balanced_projection(const FieldAlongMap& V) const {
  const Manifold& M = f_.manifold();
  const WeightedGraph& G = f_.graph();
  const Nodes& nd = f_.nodes();
  const int N = f_.N();
  const int n = M.dim();
  FieldAlongMap out = V;
  for (int x = 0; x < G.vertex_count(); ++x) {
    const std::vector<int>& star = G.edge_star(x);
    if (star.empty()) continue;
    Vec q0 = f_.point(star.front(), 0);
    Mat B = frame(star.front(), 0);
    std::vector<Mat> R, L;
    Vec S = Vec::Zero(n);
    Mat Gm = Mat::Zero(n, n);
    for (int e : star) {
      Mat F = frame(e, 0);
      Mat Re(n, n);
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) Re(j, k) = M.inner(q0, B.col(j), F.col(k));
      }
      Mat Le = Mat::Identity(n, n);
      Le(0, 0) += tangential_factor(e) - 1.0;
      Le *= G.weight(e) * speed_factor(edges_[e / 2].speed.mean(), p_);
      Vec dc = coefficients(e, V) * nd.D.row(0).transpose();
      S += Re * Le * dc;
      Gm += Re * Le * Le * Re.transpose();
      R.push_back(Re);
      L.push_back(Le);
    }
    Vec lambda = -Gm.completeOrthogonalDecomposition().pseudoInverse() * S;
    for (size_t j = 0; j < star.size(); ++j) {
      int e = star[j];
      Vec a = L[j] * R[j].transpose() * lambda;
      for (int i = 1; i < N; ++i) {
        int ic = WeightedGraph::canonical(e) ? i : N - i;
        out.canonical_mut()[e / 2].col(ic) += phi(nd.t[i]) * (frame(e, i) * a);
      }
    }
  }
  return out;
}

HessianAssembly hessian_matrix(const HessianContext& ctx) {
  const DiscreteMap& f = ctx.map();
  const Manifold& M = f.manifold();
  const Nodes& nd = f.nodes();
  const int n = M.dim();
  const int N = f.N();
  const int nodes = f.node_count();
  const Vec& mass = ctx.node_mass();

  HessianAssembly out{Mat::Zero(nodes * n, nodes * n), ctx.p(), {}, f};
  out.node_basis.resize(nodes);
  for (int a = 0; a < nodes; ++a) out.node_basis[a] = M.tangent_basis(f.node_point(a)) / std::sqrt(mass[a]);

  for (int k = 0; k < f.graph().unoriented_count(); ++k) {
    const int e = 2 * k;
    const int sz = n * (N + 1);
    // Local form in frame coordinates, index (i, c) -> i * n + c.
    Vec ws(N + 1);
    Mat H = Mat::Zero(sz, sz);
    Mat R = Mat::Zero(sz, sz);
    Vec speeds(N + 1);
    Mat T = ctx.velocities(e);
    for (int i = 0; i <= N; ++i) speeds[i] = M.norm(f.point(e, i), T.col(i));
    for (int i = 0; i <= N; ++i) {
      ws[i] = nd.w[i] * f.graph().weight(e) * speed_factor(speeds[i], ctx.p());
    }
    Mat S = nd.D.transpose() * ws.asDiagonal() * nd.D;
    double f0 = ctx.degenerate(e) ? 1.0 : static_cast<double>(ctx.p() - 1);
    for (int i = 0; i <= N; ++i) {
      for (int j = 0; j <= N; ++j) {
        for (int c = 0; c < n; ++c) H(i * n + c, j * n + c) = (c == 0 ? f0 : 1.0) * S(i, j);
      }
    }
    for (int i = 0; i <= N; ++i) {
      Vec q = f.point(e, i);
      Mat E = ctx.frame(e, i);
      H.block(i * n, i * n, n, n) -= ws[i] * M.jacobi_matrix(q, T.col(i), E);
      const Mat& B = out.node_basis[f.node_index(e, i)];
      for (int c = 0; c < n; ++c) {
        for (int l = 0; l < n; ++l) R(i * n + c, i * n + l) = M.inner(q, E.col(c), B.col(l));
      }
    }
    Mat local = 2.0 * R.transpose() * H * R;
    for (int i = 0; i <= N; ++i) {
      int a = f.node_index(e, i);
      for (int j = 0; j <= N; ++j) {
        int b = f.node_index(e, j);
        out.matrix.block(a * n, b * n, n, n) += local.block(i * n, j * n, n, n);
      }
    }
  }
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  return out;
}

FieldAlongMap HessianAssembly::field(const Vec& coords) const {
  const int n = map.manifold().dim();
  return FieldAlongMap::from_nodes(map, [&](int node, const Vec&) -> Vec {
    return node_basis[node] * coords.segment(node * n, n);
  });
}

Vec HessianAssembly::coordinates(const FieldAlongMap& V) const {
  const Manifold& M = map.manifold();
  const int n = M.dim();
  Vec out = Vec::Zero(static_cast<int>(node_basis.size()) * n);
  for (int k = 0; k < map.graph().unoriented_count(); ++k) {
    for (int i = 0; i <= map.N(); ++i) {
      int node = map.node_index(2 * k, i);
      Vec q = map.canonical()[k].col(i);
      const Mat& B = node_basis[node];
      for (int l = 0; l < n; ++l) {
        double len2 = M.inner(q, B.col(l), B.col(l));
        out[node * n + l] = M.inner(q, V.canonical()[k].col(i), B.col(l)) / len2;
      }
    }
  }
  return out;
}

double default_stability_tol(const Mat& A) {
  double inf = A.size() == 0 ? 0.0 : A.cwiseAbs().rowwise().sum().maxCoeff();
  return 1e-6 * (1.0 + inf);
}

StabilityVerdict stability_verdict(const Mat& A, double tol) {
  StabilityVerdict v;
  v.tol = tol;
  if (A.rows() == 0) return v;
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  v.spectrum = es.eigenvalues();
  v.min_eig = v.spectrum[0];
  v.eigenvector = es.eigenvectors().col(0);
  v.unstable = v.min_eig < -tol;
  return v;
}

StabilityVerdict stability_verdict(const HessianAssembly& assembly, double tol) {
  StabilityVerdict v = stability_verdict(assembly.matrix, tol);
  if (v.eigenvector.size() > 0) v.witness = assembly.field(v.eigenvector);
  return v;
}

StabilityVerdict stability_verdict(const HessianAssembly& assembly) {
  return stability_verdict(assembly, default_stability_tol(assembly.matrix));
}

BalancedReport balanced_membership(const DiscreteMap& f, const FieldAlongMap& V, double tol) {
  V.validate(f);
  const WeightedGraph& G = f.graph();
  const Manifold& M = f.manifold();
  BalancedReport r;
  std::vector<Vec> sums(G.vertex_count(), Vec::Zero(M.ambient_dim()));
  for (int e = 0; e < G.edge_count(); ++e) {
    Mat dV = covariant_derivative(f, e, V.edge_values(e));
    sums[G.origin(e)] += G.weight(e) * dV.col(0);
  }
  for (int x = 0; x < G.vertex_count(); ++x) {
    double v = M.norm(f.vertex_point(x), sums[x]);
    r.vertex.push_back(v);
    r.max_residual = std::max(r.max_residual, v);
  }
  r.balanced = r.max_residual <= tol;
  return r;
}

}  // namespace harmonet
