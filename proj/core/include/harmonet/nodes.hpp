#pragma once

#include <Eigen/Dense>
#include <vector>

namespace harmonet {

/// Legendre-Gauss-Lobatto collocation data on [0,1] with N+1 nodes.
/// D and the weights satisfy W D + D^T W = diag(-1,0,...,0,1) up to rounding.
struct Nodes {
  int N = 0;
  Eigen::VectorXd t;
  Eigen::VectorXd w;
  Eigen::MatrixXd D;
  Eigen::MatrixXd integral;  // (integral * f)_i = int_0^{t_i} p_f
  Eigen::VectorXd bary;      // barycentric weights

  /// Value at s of the polynomial interpolating `values` (rows = nodes).
  Eigen::VectorXd interpolate(const Eigen::MatrixXd& values, double s) const;
  double interpolate(const Eigen::VectorXd& values, double s) const;
};

/// Cached per N; N >= 2.
const Nodes& lgl_nodes(int N);

/// Gauss-Legendre nodes and weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace harmonet
