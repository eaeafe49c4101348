#include "harmonet/nodes.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "harmonet/errors.hpp"

namespace harmonet {
namespace {

// Legendre P_n and P_n' at x.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = (std::abs(x) < 1.0) ? n * (x * p1 - p0) / (x * x - 1.0) : 0.5 * n * (n + 1.0) * std::pow(x, n - 1);
}

std::unique_ptr<Nodes> make_nodes(int N) {
  auto nodes = std::make_unique<Nodes>();
  nodes->N = N;
  const int M = N + 1;
  std::vector<double> x(M), pn(M);

  // Interior nodes are roots of P_N'; Newton on (1-x^2) P_N'(x) via the Trefethen recurrence.
  for (int i = 0; i < M; ++i) x[i] = -std::cos(std::numbers::pi * i / N);
  for (int iter = 0; iter < 100; ++iter) {
    double delta = 0.0;
    for (int i = 1; i < N; ++i) {
      std::vector<double> P(M + 1);
      P[0] = 1.0;
      P[1] = x[i];
      for (int k = 2; k <= N; ++k) P[k] = ((2.0 * k - 1.0) * x[i] * P[k - 1] - (k - 1.0) * P[k - 2]) / k;
      double step = (x[i] * P[N] - P[N - 1]) / (M * P[N]);
      x[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-16) break;
  }
  x[0] = -1.0;
  x[N] = 1.0;
  for (int i = 0; i <= N / 2; ++i) {
    double s = 0.5 * (x[N - i] - x[i]);
    x[i] = -s;
    x[N - i] = s;
  }
  if (N % 2 == 0) x[N / 2] = 0.0;

  nodes->t.resize(M);
  nodes->w.resize(M);
  for (int i = 0; i < M; ++i) {
    double dp;
    legendre(N, x[i], pn[i], dp);
    nodes->t[i] = 0.5 * (1.0 + x[i]);
    nodes->w[i] = 1.0 / (N * (N + 1.0) * pn[i] * pn[i]);  // half of the [-1,1] weight
  }
  for (int i = 0; i <= N / 2; ++i) {
    double wi = 0.5 * (nodes->w[i] + nodes->w[N - i]);
    nodes->w[i] = nodes->w[N - i] = wi;
    nodes->t[N - i] = 1.0 - nodes->t[i];
  }

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(M, M);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      if (i != j) D(i, j) = 2.0 * pn[i] / (pn[j] * (x[i] - x[j]));
    }
  }
  for (int i = 0; i < M; ++i) {
    double s = 0.0;
    for (int j = 0; j < M; ++j) {
      if (j != i) s += D(i, j);
    }
    D(i, i) = -s;
  }
  // Enforce the centro-antisymmetry D(N-i,N-j) = -D(i,j) exactly.
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      int a = N - i, b = N - j;
      if (i * M + j < a * M + b) {
        double v = 0.5 * (D(i, j) - D(a, b));
        D(i, j) = v;
        D(a, b) = -v;
      }
    }
  }
  nodes->D = D;

  nodes->bary.resize(M);
  for (int j = 0; j < M; ++j) {
    double prod = 1.0;
    for (int k = 0; k < M; ++k) {
      if (k != j) prod *= (x[j] - x[k]);
    }
    nodes->bary[j] = 1.0 / prod;
  }
  double scale = nodes->bary.cwiseAbs().maxCoeff();
  nodes->bary /= scale;

  // Integration matrix: int_0^{t_i} l_j(s) ds via Gauss-Legendre on [0, t_i].
  std::vector<double> gx, gw;
  gauss_legendre(M, gx, gw);
  nodes->integral = Eigen::MatrixXd::Zero(M, M);
  for (int i = 1; i < M; ++i) {
    double ti = nodes->t[i];
    for (std::size_t q = 0; q < gx.size(); ++q) {
      double s = 0.5 * ti * (1.0 + gx[q]);
      double wq = 0.5 * ti * gw[q];
      Eigen::VectorXd e = Eigen::VectorXd::Zero(M);
      for (int j = 0; j < M; ++j) {
        e.setZero();
        e[j] = 1.0;
        nodes->integral(i, j) += wq * nodes->interpolate(e, s);
      }
    }
  }
  return nodes;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p, dp;
      legendre(n, z, p, dp);
      double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p, dp;
    legendre(n, z, p, dp);
    x[i] = -z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

double Nodes::interpolate(const Eigen::VectorXd& values, double s) const {
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= N; ++j) {
    double d = s - t[j];
    if (d == 0.0) return values[j];
    double c = bary[j] / d;
    num += c * values[j];
    den += c;
  }
  return num / den;
}

Eigen::VectorXd Nodes::interpolate(const Eigen::MatrixXd& values, double s) const {
  Eigen::VectorXd num = Eigen::VectorXd::Zero(values.cols());
  double den = 0.0;
  for (int j = 0; j <= N; ++j) {
    double d = s - t[j];
    if (d == 0.0) return values.row(j).transpose();
    double c = bary[j] / d;
    num += c * values.row(j).transpose();
    den += c;
  }
  return num / den;
}

const Nodes& lgl_nodes(int N) {
  if (N < 2) throw Error(ErrorCode::InvalidConfig, "samples per edge must be at least 2");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Nodes>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, make_nodes(N)).first;
  return *it->second;
}

}  // namespace harmonet
