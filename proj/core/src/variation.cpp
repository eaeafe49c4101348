#include "harmonet/variation.hpp"

#include <algorithm>
#include <cmath>

#include "harmonet/errors.hpp"

namespace harmonet {

namespace {

constexpr double kDegenerateSpeed = 1e-10;

Vec speeds(const DiscreteMap& f, int e, const Mat& T) {
  const Manifold& M = f.manifold();
  Vec s(T.cols());
  for (int i = 0; i < T.cols(); ++i) s[i] = M.norm(f.point(e, i), T.col(i));
  return s;
}

// |T|^{p-2}, with 0^0 = 1.
double speed_factor(double s, int p) {
  if (p == 2) return 1.0;
  if (p == 1) return 1.0 / s;
  return std::pow(s, p - 2);
}

Mat covariant_derivative_impl(const DiscreteMap& f, int e, const Mat& T, const Mat& V) {
  const Manifold& M = f.manifold();
  const Nodes& nd = f.nodes();
  Mat dV = V * nd.D.transpose();
  Mat out(V.rows(), V.cols());
  for (int i = 0; i < V.cols(); ++i) {
    Vec q = f.point(e, i);
    out.col(i) = M.to_tangent(q, dV.col(i)) + M.connection_term(q, T.col(i), V.col(i));
  }
  return out;
}

void require_immersed(const DiscreteMap& f, int p) {
  if (p != 1) return;
  for (int k = 0; k < f.graph().unoriented_count(); ++k) {
    Mat T = edge_velocities(f, 2 * k);
    Vec s = speeds(f, 2 * k, T);
    if (s.minCoeff() < kDegenerateSpeed) {
      throw Error(ErrorCode::DegenerateEdgeForLength, "length functional needs immersed edges");
    }
  }
}

double edge_energy(const DiscreteMap& f, int e, int p) {
  Mat T = edge_velocities(f, e);
  Vec s = speeds(f, e, T);
  const Vec& w = f.nodes().w;
  double acc = 0.0;
  for (int i = 0; i < s.size(); ++i) acc += w[i] * std::pow(s[i], p);
  return f.graph().weight(e) * acc / p;
}

}  // namespace

Mat edge_velocities(const DiscreteMap& f, int e) {
  const Manifold& M = f.manifold();
  Mat Q = f.edge_points(e);
  Mat dQ = Q * f.nodes().D.transpose();
  Mat T(Q.rows(), Q.cols());
  for (int i = 0; i < Q.cols(); ++i) T.col(i) = M.to_tangent(Q.col(i), dQ.col(i));
  return T;
}

Mat covariant_derivative(const DiscreteMap& f, int e, const Mat& V) {
  return covariant_derivative_impl(f, e, edge_velocities(f, e), V);
}

bool is_degenerate(const Mat& T, double threshold) { return T.colwise().norm().maxCoeff() < threshold; }

double energy(const DiscreteMap& f, int p) {
  if (p < 1) throw Error(ErrorCode::InvalidConfig, "p must be a positive integer");
  require_immersed(f, p);
  double total = 0.0;
  for (int k = 0; k < f.graph().unoriented_count(); ++k) {
    total += edge_energy(f, 2 * k, p) + edge_energy(f, 2 * k + 1, p);
  }
  return total;
}

double ResidualReport::max_edge() const { return edge.empty() ? 0.0 : *std::max_element(edge.begin(), edge.end()); }

double ResidualReport::max_vertex() const {
  return vertex.empty() ? 0.0 : *std::max_element(vertex.begin(), vertex.end());
}

double ResidualReport::max() const { return std::max(max_edge(), max_vertex()); }

ResidualReport first_variation_residuals(const DiscreteMap& f, int p) {
  if (p < 1) throw Error(ErrorCode::InvalidConfig, "p must be a positive integer");
  require_immersed(f, p);
  const Manifold& M = f.manifold();
  const WeightedGraph& G = f.graph();
  ResidualReport r;
  r.p = p;
  r.edge.assign(G.edge_count(), 0.0);
  std::vector<Vec> vsum(G.vertex_count(), Vec::Zero(M.ambient_dim()));
  for (int e = 0; e < G.edge_count(); ++e) {
    Mat T = edge_velocities(f, e);
    Vec s = speeds(f, e, T);
    Mat U(T.rows(), T.cols());
    for (int i = 0; i < T.cols(); ++i) U.col(i) = speed_factor(s[i], p) * T.col(i);
    Mat R = covariant_derivative_impl(f, e, T, U);
    double worst = 0.0;
    for (int i = 0; i < T.cols(); ++i) {
      Vec q = f.point(e, i);
      Vec ri = R.col(i);
      if (p == 1) {
        Vec u = T.col(i) / s[i];
        ri -= M.inner(q, ri, u) * u;
      }
      worst = std::max(worst, M.norm(q, ri));
    }
    r.edge[e] = worst;
    vsum[G.origin(e)] += G.weight(e) * U.col(0);
  }
  r.vertex.resize(G.vertex_count());
  for (int x = 0; x < G.vertex_count(); ++x) r.vertex[x] = M.norm(f.vertex_point(x), vsum[x]);
  return r;
}

double first_variation_pairing(const DiscreteMap& f, int p, const FieldAlongMap& W) {
  require_immersed(f, p);
  const Manifold& M = f.manifold();
  const Vec& w = f.nodes().w;
  double total = 0.0;
  for (int e = 0; e < f.graph().edge_count(); ++e) {
    Mat T = edge_velocities(f, e);
    Vec s = speeds(f, e, T);
    Mat dW = covariant_derivative_impl(f, e, T, W.edge_values(e));
    double acc = 0.0;
    for (int i = 0; i < T.cols(); ++i) {
      acc += w[i] * speed_factor(s[i], p) * M.inner(f.point(e, i), T.col(i), dW.col(i));
    }
    total += f.graph().weight(e) * acc;
  }
  return total;
}

DiscreteMap vary(const DiscreteMap& f, const FieldAlongMap& W, double eps) {
  const Manifold& M = f.manifold();
  std::vector<Mat> out = f.canonical();
  for (size_t k = 0; k < out.size(); ++k) {
    for (int i = 0; i < out[k].cols(); ++i) {
      out[k].col(i) = M.geodesic_lift(f.canonical()[k].col(i), W.canonical()[k].col(i), eps);
    }
  }
  return DiscreteMap(f.graph_ptr(), f.manifold_ptr(), f.N(), std::move(out));
}

DiscreteMap reparametrize_to_geodesic(const DiscreteMap& f) {
  require_immersed(f, 1);
  const Manifold& M = f.manifold();
  const Nodes& nd = f.nodes();
  std::vector<Mat> out;
  for (int k = 0; k < f.graph().unoriented_count(); ++k) {
    const Mat& Q = f.canonical()[k];
    Mat T = edge_velocities(f, 2 * k);
    Vec s = speeds(f, 2 * k, T);
    Vec arc = nd.integral * s;
    double L = arc[f.N()];
    Mat Qt = Q.transpose();
    Mat R = Q;
    for (int j = 1; j < f.N(); ++j) {
      double target = nd.t[j] * L;
      double t = nd.t[j];
      for (int it = 0; it < 60; ++it) {
        double step = (nd.interpolate(arc, t) - target) / nd.interpolate(s, t);
        t = std::clamp(t - step, 0.0, 1.0);
        if (std::abs(step) < 1e-15) break;
      }
      R.col(j) = M.project_point(nd.interpolate(Qt, t), Q.col(j));
    }
    out.push_back(std::move(R));
  }
  return DiscreteMap(f.graph_ptr(), f.manifold_ptr(), f.N(), std::move(out));
}

std::vector<double> weight_transmute(const DiscreteMap& f, int p, double speed_tol) {
  if (p < 1) throw Error(ErrorCode::InvalidConfig, "p must be a positive integer");
  std::vector<double> out;
  for (int k = 0; k < f.graph().unoriented_count(); ++k) {
    Mat T = edge_velocities(f, 2 * k);
    Vec s = speeds(f, 2 * k, T);
    if (s.maxCoeff() < kDegenerateSpeed) {
      throw Error(ErrorCode::DegenerateEdgeForLength, "weight change needs immersed edges");
    }
    double mean = s.mean();
    if ((s.array() - mean).abs().maxCoeff() > speed_tol * mean) {
      throw Error(ErrorCode::NotConstantSpeed, "weight change needs constant-speed edges");
    }
    out.push_back(f.graph().weight(2 * k) * std::pow(mean, 1 - p));
  }
  return out;
}

namespace {

void check_collapse(const DiscreteMap& f) {
  std::vector<double> all;
  for (int e = 0; e < f.graph().edge_count(); e += 2) {
    Mat T = edge_velocities(f, e);
    Vec s = speeds(f, e, T);
    all.insert(all.end(), s.data(), s.data() + s.size());
  }
  double mean = 0.0;
  for (double v : all) mean += v;
  mean /= static_cast<double>(all.size());
  for (double v : all) {
    if (v < 1e-6 * mean) throw Error(ErrorCode::CollapsedEdge, "an edge collapsed while minimizing length");
  }
}

DiscreteMap move_map(const DiscreteMap& f, const Mat& dir, double alpha) {
  const Manifold& M = f.manifold();
  const WeightedGraph& G = f.graph();
  std::vector<Vec> vnew(G.vertex_count());
  for (int x = 0; x < G.vertex_count(); ++x) vnew[x] = M.retract(f.vertex_point(x), alpha * dir.col(x));
  std::vector<Mat> out = f.canonical();
  for (int k = 0; k < G.unoriented_count(); ++k) {
    Mat& Q = out[k];
    for (int i = 0; i <= f.N(); ++i) {
      int node = f.node_index(2 * k, i);
      if (node < G.vertex_count()) {
        Q.col(i) = M.nearest_representative(vnew[node], Q.col(i));
      } else {
        Q.col(i) = M.retract(Q.col(i), alpha * dir.col(node));
      }
    }
  }
  return DiscreteMap(f.graph_ptr(), f.manifold_ptr(), f.N(), std::move(out));
}

}  // namespace

SolveResult harmonic_solve(const DiscreteMap& initial, int p, const SolveOptions& options) {
  const Manifold& M = initial.manifold();
  if (!M.ambient_metric()) {
    throw Error(ErrorCode::InvalidConfig, "the solver needs a manifold with the ambient metric");
  }
  if (p < 1) throw Error(ErrorCode::InvalidConfig, "p must be a positive integer");
  const WeightedGraph& G = initial.graph();
  const Nodes& nd = initial.nodes();
  const int n_nodes = initial.node_count();
  const int A = M.ambient_dim();
  Mat DtWD = nd.D.transpose() * nd.w.asDiagonal() * nd.D;

  SolveResult result{initial, false, 0, {}, {}};
  DiscreteMap f = initial;
  if (p == 1) check_collapse(f);
  double E = energy(f, p);
  result.energy_history.push_back(E);

  for (int it = 0;; ++it) {
    ResidualReport res = first_variation_residuals(f, p);
    result.iterations = it;
    if (res.max() <= options.tol) {
      result.converged = true;
      result.residuals = res;
      break;
    }
    if (it >= options.max_iters) {
      result.residuals = res;
      break;
    }

    Mat grad = Mat::Zero(A, n_nodes);
    Mat K = Mat::Zero(n_nodes, n_nodes);
    Vec mass = Vec::Zero(n_nodes);
    for (int e = 0; e < G.edge_count(); ++e) {
      Mat T = edge_velocities(f, e);
      Vec s = speeds(f, e, T);
      double m = G.weight(e);
      Vec coef(s.size());
      double mean = 0.0;
      for (int i = 0; i < s.size(); ++i) {
        double fac = speed_factor(s[i], p);
        coef[i] = m * nd.w[i] * fac;
        mean += fac;
      }
      mean = std::max(mean / static_cast<double>(s.size()), 1e-12);
      Mat Ge = T * coef.asDiagonal() * nd.D;
      for (int i = 0; i <= f.N(); ++i) {
        int a = f.node_index(e, i);
        grad.col(a) += Ge.col(i);
        mass[a] += m * nd.w[i];
        for (int j = 0; j <= f.N(); ++j) K(a, f.node_index(e, j)) += m * mean * DtWD(i, j);
      }
    }
    for (int a = 0; a < n_nodes; ++a) grad.col(a) = M.to_tangent(f.node_point(a), grad.col(a));

    double shift = 1e-8 * K.diagonal().maxCoeff() / mass.maxCoeff();
    K.diagonal() += shift * mass;
    Mat dir = -K.ldlt().solve(grad.transpose()).transpose();
    double slope = 0.0;
    for (int a = 0; a < n_nodes; ++a) {
      dir.col(a) = M.to_tangent(f.node_point(a), dir.col(a));
      slope += grad.col(a).dot(dir.col(a));
    }
    if (!(slope < 0.0)) {
      dir = -grad;
      slope = -grad.squaredNorm();
    }

    bool accepted = false;
    double alpha = 1.0;
    for (int bt = 0; bt < 60; ++bt, alpha *= 0.5) {
      DiscreteMap trial = move_map(f, dir, alpha);
      if (p == 1) check_collapse(trial);
      double Et = energy(trial, p);
      bool armijo = Et <= E + 1e-4 * alpha * slope;
      bool flat = bt == 0 && Et <= E && first_variation_residuals(trial, p).max() < res.max();
      if (armijo || flat) {
        f = std::move(trial);
        E = Et;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      result.residuals = res;
      result.iterations = it;
      break;
    }
    result.energy_history.push_back(E);
  }
  result.map = f;
  return result;
}

}  // namespace harmonet
