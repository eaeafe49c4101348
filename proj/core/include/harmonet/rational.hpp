#pragma once

#include <boost/rational.hpp>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace boost {

/// Exact matches that keep C++20 rewritten comparisons from recursing.
inline bool operator==(const rational<long long>& a, int b) { return a == rational<long long>(b); }
inline bool operator!=(const rational<long long>& a, int b) { return !(a == rational<long long>(b)); }
inline bool operator==(int a, const rational<long long>& b) { return b == rational<long long>(a); }
inline bool operator!=(int a, const rational<long long>& b) { return !(b == rational<long long>(a)); }

}  // namespace boost

namespace harmonet {

using Rational = boost::rational<long long>;

/// Parses "3", "-2/7" or a decimal such as "0.25".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Dense matrix of exact rationals.
class QMat {
 public:
  QMat() = default;
  QMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static QMat identity(int n);
  static QMat unit(int n, int i, int j);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat operator-() const;
  QMat operator*(const QMat& o) const;
  QMat operator*(const Rational& s) const;
  QMat operator/(const Rational& s) const;
  QMat& operator+=(const QMat& o);
  bool operator==(const QMat& o) const;
  bool operator!=(const QMat& o) const { return !(*this == o); }

  QMat transpose() const;
  Rational trace() const;
  bool is_zero() const;
  bool is_diagonal() const;
  Eigen::MatrixXd to_double() const;
  std::vector<Rational> flatten() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

inline QMat operator*(const Rational& s, const QMat& m) { return m * s; }

/// AB - BA.
QMat commutator(const QMat& A, const QMat& B);

/// Rank of a list of vectors over Q.
int rank(const std::vector<std::vector<Rational>>& vectors);

/// Coordinates of target in the span of basis, or empty when target is outside it.
std::vector<Rational> solve_in_span(const std::vector<QMat>& basis, const QMat& target);

}  // namespace harmonet
