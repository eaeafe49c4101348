#include "harmonet/rational.hpp"

#include <cctype>

#include "harmonet/errors.hpp"

namespace harmonet {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw Error(ErrorCode::InvalidConfig, "empty rational");
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      long long num = std::stoll(s.substr(0, slash));
      long long den = std::stoll(s.substr(slash + 1));
      if (den == 0) throw Error(ErrorCode::InvalidConfig, "zero denominator in " + text);
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) throw Error(ErrorCode::InvalidConfig, "too many decimals in " + text);
    long long den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    bool neg = !s.empty() && s[0] == '-';
    std::string whole = s.substr(0, dot);
    long long w = whole.empty() || whole == "-" || whole == "+" ? 0 : std::llabs(std::stoll(whole));
    long long f = frac.empty() ? 0 : std::stoll(frac);
    Rational r(w * den + f, den);
    return neg ? -r : r;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidConfig, "not a rational number: " + text);
  }
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat QMat::unit(int n, int i, int j) {
  QMat m(n, n);
  m(i, j) = 1;
  return m;
}

QMat QMat::operator+(const QMat& o) const {
  QMat r = *this;
  r += o;
  return r;
}

QMat& QMat::operator+=(const QMat& o) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_.at(k);
  return *this;
}

QMat QMat::operator-(const QMat& o) const { return *this + (-o); }

QMat QMat::operator-() const {
  QMat r = *this;
  for (auto& v : r.data_) v = -v;
  return r;
}

QMat QMat::operator*(const QMat& o) const {
  QMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o(k, j) != 0) r(i, j) += a * o(k, j);
      }
    }
  }
  return r;
}

QMat QMat::operator*(const Rational& s) const {
  QMat r = *this;
  for (auto& v : r.data_) v *= s;
  return r;
}

QMat QMat::operator/(const Rational& s) const {
  QMat r = *this;
  for (auto& v : r.data_) v /= s;
  return r;
}

bool QMat::operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

QMat QMat::transpose() const {
  QMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

Rational QMat::trace() const {
  Rational t = 0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool QMat::is_zero() const {
  for (const auto& v : data_) {
    if (v != 0) return false;
  }
  return true;
}

bool QMat::is_diagonal() const {
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      if (i != j && (*this)(i, j) != 0) return false;
    }
  }
  return true;
}

Eigen::MatrixXd QMat::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) m(i, j) = harmonet::to_double((*this)(i, j));
  }
  return m;
}

QMat commutator(const QMat& A, const QMat& B) { return A * B - B * A; }

namespace {

// Row-reduces in place; returns pivot columns.
std::vector<int> row_reduce(std::vector<std::vector<Rational>>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  const size_t width = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < width && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rational inv = Rational(1) / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      Rational f = rows[o][c];
      for (size_t k = 0; k < width; ++k) rows[o][k] -= f * rows[r][k];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(const std::vector<std::vector<Rational>>& vectors) {
  auto rows = vectors;
  return static_cast<int>(row_reduce(rows).size());
}

std::vector<Rational> solve_in_span(const std::vector<QMat>& basis, const QMat& target) {
  // Augmented system: columns are basis vectors, last column the target.
  const size_t n = basis.size();
  std::vector<Rational> t = target.flatten();
  std::vector<std::vector<Rational>> rows(t.size(), std::vector<Rational>(n + 1));
  for (size_t k = 0; k < n; ++k) {
    std::vector<Rational> b = basis[k].flatten();
    for (size_t i = 0; i < t.size(); ++i) rows[i][k] = b[i];
  }
  for (size_t i = 0; i < t.size(); ++i) rows[i][n] = t[i];
  std::vector<int> pivots = row_reduce(rows);
  std::vector<Rational> x(n);
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == static_cast<int>(n)) return {};
    x[pivots[r]] = rows[r][n];
  }
  return x;
}

}  // namespace harmonet
