#include "harmonet/symspace.hpp"

#include "harmonet/errors.hpp"

namespace harmonet {

SymSpaceContext::SymSpaceContext() : C_(14), eta_(kN, kN) {
  for (int i = 0; i < 3; ++i) eta_(i, i) = Rational(4, 7);
  for (int i = 3; i < kN; ++i) eta_(i, i) = Rational(-3, 7);
  for (int i = 1; i <= kN; ++i) {
    for (int j = i + 1; j <= kN; ++j) {
      Root a{i, j};
      (root_value(a, eta_) == 0 ? zero_ : positive_).push_back(a);
    }
  }
}

QMat SymSpaceContext::E(int i, int j) { return QMat::unit(kN, i - 1, j - 1); }
QMat SymSpaceContext::G(int i, int j) { return E(i, j) - E(j, i); }
QMat SymSpaceContext::P(int i, int j) { return E(i, j) + E(j, i); }
QMat SymSpaceContext::H(int i) { return E(i, i) - E(i + 1, i + 1); }

Rational SymSpaceContext::root_value(const Root& a, const QMat& diag) {
  return diag(a.first - 1, a.first - 1) - diag(a.second - 1, a.second - 1);
}

QMat SymSpaceContext::root_sharp(const Root& a) const { return (E(a.first, a.first) - E(a.second, a.second)) / C_; }

std::vector<QMat> SymSpaceContext::tangent_basis() const {
  std::vector<QMat> out;
  for (const Root& a : positive_) out.push_back(P(a.first, a.second));
  return out;
}

std::vector<QMat> SymSpaceContext::normal_basis() const {
  std::vector<QMat> out;
  for (int k = 1; k < kN; ++k) {
    QMat d(kN, kN);
    for (int i = 0; i < k; ++i) d(i, i) = 1;
    d(k, k) = -k;
    out.push_back(d);
  }
  for (const Root& a : zero_) out.push_back(P(a.first, a.second));
  return out;
}

namespace {

bool symmetric(const QMat& X) { return X == X.transpose(); }

}  // namespace

bool SymSpaceContext::is_tangent(const QMat& X) const {
  if (!symmetric(X)) return false;
  for (int i = 0; i < kN; ++i) {
    if (X(i, i) != 0) return false;
  }
  for (const Root& a : zero_) {
    if (X(a.first - 1, a.second - 1) != 0) return false;
  }
  return true;
}

bool SymSpaceContext::is_normal(const QMat& X) const {
  if (!symmetric(X) || X.trace() != 0) return false;
  for (const Root& a : positive_) {
    if (X(a.first - 1, a.second - 1) != 0) return false;
  }
  return true;
}

QMat SymSpaceContext::shape_operator(const QMat& xi, const QMat& X) const {
  if (!is_normal(xi)) throw Error(ErrorCode::NotNormal, "xi is not normal at eta");
  if (!is_tangent(X)) throw Error(ErrorCode::NotTangent, "X is not tangent at eta");
  QMat xi0(kN, kN);
  for (int i = 0; i < kN; ++i) xi0(i, i) = xi(i, i);
  QMat out(kN, kN);
  for (const Root& a : positive_) {
    QMat Xa = P(a.first, a.second) * X(a.first - 1, a.second - 1);
    if (Xa.is_zero()) continue;
    Rational ae = root_value(a, eta_);
    out += Xa * (-root_value(a, xi0) / ae);
    QMat inner_br = commutator(eta_, Xa);
    for (const Root& m : zero_) {
      QMat xim = P(m.first, m.second) * xi(m.first - 1, m.second - 1);
      if (xim.is_zero()) continue;
      out += commutator(xim, inner_br) * (Rational(-1) / (ae * ae));
    }
  }
  return out;
}

QMat SymSpaceContext::second_fundamental_form(const QMat& X, const QMat& Y) const {
  QMat out(kN, kN);
  for (const QMat& nu : normal_basis()) {
    Rational c = inner(shape_operator(nu, X), Y) / inner(nu, nu);
    if (c != 0) out += nu * c;
  }
  return out;
}

QMat SymSpaceContext::strongly_orthogonal_b(const QMat& X, const QMat& Y) const {
  QMat out(kN, kN);
  for (const Root& a : positive_) {
    Rational xy = X(a.first - 1, a.second - 1) * Y(a.first - 1, a.second - 1) * 2 * C_;
    if (xy == 0) continue;
    out += root_sharp(a) * (-xy / root_value(a, eta_));
  }
  return out;
}

}  // namespace harmonet
