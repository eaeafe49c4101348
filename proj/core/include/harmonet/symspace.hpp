#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "harmonet/rational.hpp"

namespace harmonet {

/// Root e_i - e_j of sl(7), 1-based with i < j.
using Root = std::pair<int, int>;

/// Exact data of the orbit of eta in the symmetric traceless 7x7 matrices,
/// with <X,Y> = C tr(XY) and C = 14.
class SymSpaceContext {
 public:
  SymSpaceContext();

  static constexpr int kN = 7;
  const Rational& C() const { return C_; }

  static QMat E(int i, int j);
  static QMat G(int i, int j);
  static QMat P(int i, int j);
  /// E_ii - E_{i+1,i+1}.
  static QMat H(int i);

  const QMat& eta() const { return eta_; }
  Rational inner(const QMat& X, const QMat& Y) const { return C_ * (X * Y).trace(); }

  /// Roots with alpha(eta) = 1 (i <= 3 < j) and with alpha(eta) = 0.
  const std::vector<Root>& positive_roots() const { return positive_; }
  const std::vector<Root>& zero_roots() const { return zero_; }
  /// alpha(xi) for a diagonal xi.
  static Rational root_value(const Root& a, const QMat& diag);
  /// Dual vector (E_ii - E_jj)/C.
  QMat root_sharp(const Root& a) const;
  Rational root_norm2(const Root& a) const { return inner(root_sharp(a), root_sharp(a)); }

  /// P_ij for the positive roots (12) and the block-diagonal normal basis (15).
  std::vector<QMat> tangent_basis() const;
  std::vector<QMat> normal_basis() const;
  bool is_tangent(const QMat& X) const;
  bool is_normal(const QMat& X) const;

  /// Shape operator of the orbit at eta from the root decomposition.
  QMat shape_operator(const QMat& xi, const QMat& X) const;
  /// Normal vector with <B(X,Y), xi> = <A_xi X, Y> for every normal xi.
  QMat second_fundamental_form(const QMat& X, const QMat& Y) const;
  /// -sum <X_a, Y_a> a^sharp over the positive roots.
  QMat strongly_orthogonal_b(const QMat& X, const QMat& Y) const;

 private:
  Rational C_;
  QMat eta_;
  std::vector<Root> positive_;
  std::vector<Root> zero_;
};

/// The compact G2 inside so(7) and its symmetric pair data.
struct G2Datum {
  std::vector<QMat> V;       // V_1..V_14 at index 0..13
  std::vector<QMat> Vtilde;  // G_ij replaced by P_ij, index 0..13
  /// Planes spanned by (V~_7, V~_8), (V~_9, V~_10), (V~_11, V~_12), (V~_13, V~_14).
  std::vector<std::pair<int, int>> planes;
  std::vector<std::vector<Root>> plane_roots;

  static G2Datum build();
  /// The seven linear relations on the coefficients lambda_ij of an element of o(7).
  static std::vector<Rational> relations(const QMat& X);
};

struct ConstantCheck {
  std::string name;
  std::string computed;
  std::string expected;
  double value = 0.0;
  bool passed = false;
  std::string note;
};

struct ConstantReport {
  std::vector<ConstantCheck> checks;
  bool passed() const;
  const ConstantCheck& get(const std::string& name) const;
};

/// Killing-form and structure checks of the G2 basis.
ConstantReport g2_verify(const SymSpaceContext& ctx);

/// H_eta assembled from the Gram blocks of the four planes; expected -eta/3.
struct MeanCurvatureG2 {
  QMat H;
  std::vector<QMat> gram_blocks;
  std::vector<QMat> block_contributions;
  ConstantReport report;
};
MeanCurvatureG2 mean_curvature_g2(const SymSpaceContext& ctx);

struct IsotropyStats {
  int samples = 0;
  double min_formula = 0.0;
  double max_formula = 0.0;
  double min_oracle = 0.0;
  double max_oracle = 0.0;
  double max_deviation = 0.0;  // from 1/14 over both methods
  double max_method_gap = 0.0;
  ConstantReport report;
};
/// |B(v,v)|^2 over unit v in the first plane and Ad(exp k) translates.
IsotropyStats isotropy_g2(const SymSpaceContext& ctx, int samples, std::uint64_t seed);

/// c = |V~_7|^2 / |V_7|_K^2, Ric = g/(2c) and the N1 inequality.
ConstantReport g2_inequality(const SymSpaceContext& ctx);

/// Every check above in one report.
ConstantReport g2_full_report(const SymSpaceContext& ctx, int samples, std::uint64_t seed);

}  // namespace harmonet
