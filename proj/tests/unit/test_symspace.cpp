#include <gtest/gtest.h>

#include <array>

#include "harmonet/errors.hpp"
#include "harmonet/symspace.hpp"

using namespace harmonet;

namespace {

const SymSpaceContext& ctx() {
  static SymSpaceContext c;
  return c;
}

const G2Datum& g2() {
  static G2Datum g = G2Datum::build();
  return g;
}

/// Inverse of a small nonsingular rational matrix by Gauss-Jordan elimination.
std::vector<std::vector<Rational>> inverse(std::vector<std::vector<Rational>> a) {
  const size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Rational s = a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] /= s;
      inv[c][j] /= s;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational m = a[r][c];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= m * a[c][j];
        inv[r][j] -= m * inv[c][j];
      }
    }
  }
  return inv;
}

std::array<int, 7> root_vector(int i, int j) {
  std::array<int, 7> v{};
  v[i - 1] += 1;
  v[j - 1] -= 1;
  return v;
}

}  // namespace

TEST(Eta, TraceNormAndAdjointSpectrum) {
  const QMat& eta = ctx().eta();
  EXPECT_EQ(eta.trace(), 0);
  EXPECT_EQ(eta(0, 0), Rational(4, 7));
  EXPECT_EQ(eta(6, 6), Rational(-3, 7));
  // 14 (3 * 16/49 + 4 * 9/49) = 24.
  EXPECT_EQ(ctx().inner(eta, eta), 24);
  for (int i = 1; i <= 7; ++i) {
    for (int j = 1; j <= 7; ++j) {
      QMat E = SymSpaceContext::E(i, j);
      Rational ev = eta(i - 1, i - 1) - eta(j - 1, j - 1);
      EXPECT_EQ(commutator(eta, E), E * ev);
      EXPECT_TRUE(ev == 0 || ev == 1 || ev == -1);
    }
  }
}

TEST(Roots, CountsNormsAndOrthogonality) {
  EXPECT_EQ(ctx().positive_roots().size(), 12u);
  EXPECT_EQ(ctx().zero_roots().size(), 9u);
  for (const Root& a : ctx().positive_roots()) {
    EXPECT_LE(a.first, 3);
    EXPECT_GT(a.second, 3);
    EXPECT_EQ(SymSpaceContext::root_value(a, ctx().eta()), 1);
    QMat P = SymSpaceContext::P(a.first, a.second);
    EXPECT_EQ(ctx().inner(P, P), 28);
    EXPECT_EQ(ctx().root_norm2(a), Rational(2, 14));
  }
  std::vector<QMat> all;
  for (int i = 1; i <= 7; ++i) {
    for (int j = i + 1; j <= 7; ++j) all.push_back(SymSpaceContext::P(i, j));
  }
  for (size_t a = 0; a < all.size(); ++a) {
    for (size_t b = a + 1; b < all.size(); ++b) EXPECT_EQ(ctx().inner(all[a], all[b]), 0);
  }
}

TEST(Split, TangentAndNormalBases) {
  auto T = ctx().tangent_basis();
  auto N = ctx().normal_basis();
  EXPECT_EQ(T.size(), 12u);
  EXPECT_EQ(N.size(), 15u);
  std::vector<std::vector<Rational>> flat;
  for (const auto& X : T) {
    EXPECT_TRUE(ctx().is_tangent(X));
    EXPECT_FALSE(ctx().is_normal(X));
    for (const auto& Y : N) EXPECT_EQ(ctx().inner(X, Y), 0);
    flat.push_back(X.flatten());
  }
  for (const auto& Y : N) {
    EXPECT_TRUE(ctx().is_normal(Y));
    EXPECT_EQ(Y.trace(), 0);
    EXPECT_EQ(Y, Y.transpose());
    flat.push_back(Y.flatten());
  }
  EXPECT_EQ(rank(flat), 27);
}

TEST(Bracket, GradingOfRootSpaces) {
  for (int i = 1; i <= 7; ++i) {
    for (int j = i + 1; j <= 7; ++j) {
      for (int k = 1; k <= 7; ++k) {
        for (int l = k + 1; l <= 7; ++l) {
          QMat X = commutator(SymSpaceContext::G(i, j), SymSpaceContext::P(k, l));
          EXPECT_EQ(X, X.transpose());
          auto a = root_vector(i, j), b = root_vector(k, l);
          std::array<int, 7> sum{}, diff{};
          for (int m = 0; m < 7; ++m) {
            sum[m] = a[m] + b[m];
            diff[m] = a[m] - b[m];
          }
          for (int r = 1; r <= 7; ++r) {
            for (int s = 1; s <= 7; ++s) {
              if (X(r - 1, s - 1) == 0) continue;
              if (r == s) {
                EXPECT_TRUE(a == b) << i << j << k << l;
                continue;
              }
              auto c = root_vector(r, s);
              auto neg = root_vector(s, r);
              bool ok = c == sum || c == diff || neg == sum || neg == diff;
              EXPECT_TRUE(ok) << i << j << k << l;
            }
          }
        }
      }
    }
  }
}

TEST(ShapeOperator, DiagonalNormalActsByRootValue) {
  QMat xi(7, 7);
  std::array<Rational, 7> d = {Rational(1, 2), Rational(-1, 3), Rational(2), Rational(-5, 4),
                               Rational(1, 6), Rational(0), Rational(0)};
  Rational tr = 0;
  for (int i = 0; i < 6; ++i) tr += d[i];
  d[6] = -tr;
  for (int i = 0; i < 7; ++i) xi(i, i) = d[i];
  for (const Root& a : ctx().positive_roots()) {
    QMat X = SymSpaceContext::P(a.first, a.second);
    EXPECT_EQ(ctx().shape_operator(xi, X), X * (-(d[a.first - 1] - d[a.second - 1])));
  }
  QMat P15 = SymSpaceContext::P(1, 5);
  EXPECT_EQ(ctx().shape_operator(ctx().eta(), P15), -P15);
}

TEST(ShapeOperator, SymmetricForEveryNormal) {
  auto T = ctx().tangent_basis();
  for (const QMat& xi : ctx().normal_basis()) {
    for (size_t a = 0; a < T.size(); ++a) {
      QMat AX = ctx().shape_operator(xi, T[a]);
      EXPECT_TRUE(ctx().is_tangent(AX));
      for (size_t b = a; b < T.size(); ++b) {
        EXPECT_EQ(ctx().inner(AX, T[b]), ctx().inner(ctx().shape_operator(xi, T[b]), T[a]));
      }
    }
  }
}

TEST(ShapeOperator, RejectsWrongArguments) {
  QMat P = SymSpaceContext::P(1, 5);
  EXPECT_THROW(ctx().shape_operator(P, P), Error);
  EXPECT_THROW(ctx().shape_operator(ctx().eta(), ctx().eta()), Error);
}

TEST(G2, DefiningRelationsAndRank) {
  std::vector<std::vector<Rational>> flat;
  for (const QMat& V : g2().V) {
    EXPECT_EQ(V, -V.transpose());
    for (const Rational& r : G2Datum::relations(V)) EXPECT_EQ(r, 0);
    flat.push_back(V.flatten());
  }
  EXPECT_EQ(rank(flat), 14);
}

TEST(G2, TraceAndKillingFactor) {
  const QMat& V1 = g2().V[0];
  EXPECT_EQ((V1 * V1).trace(), -4);
  Rational ad_trace = 0;
  for (size_t k = 0; k < 14; ++k) {
    QMat img = commutator(V1, commutator(V1, g2().V[k]));
    auto c = solve_in_span(g2().V, img);
    ASSERT_EQ(c.size(), 14u);
    ad_trace += c[k];
  }
  EXPECT_EQ(ad_trace, -16);
  EXPECT_EQ(ad_trace / (V1 * V1).trace(), 4);
}

TEST(G2, BracketClosureAndTripleSystem) {
  std::vector<QMat> m(g2().V.begin() + 6, g2().V.end());
  std::vector<QMat> k(g2().V.begin(), g2().V.begin() + 6);
  for (size_t a = 0; a < 14; ++a) {
    for (size_t b = a + 1; b < 14; ++b) {
      EXPECT_FALSE(solve_in_span(g2().V, commutator(g2().V[a], g2().V[b])).empty());
    }
  }
  for (size_t a = 0; a < m.size(); ++a) {
    for (size_t b = a + 1; b < m.size(); ++b) {
      QMat ab = commutator(m[a], m[b]);
      EXPECT_FALSE(solve_in_span(k, ab).empty());
      for (size_t c = 0; c < m.size(); ++c) EXPECT_FALSE(solve_in_span(m, commutator(m[c], ab)).empty());
    }
  }
}

TEST(G2, GramBlocksOfPlanes) {
  const Rational C = ctx().C();
  for (const auto& [i, j] : g2().planes) {
    const QMat& X = g2().Vtilde[i];
    const QMat& Y = g2().Vtilde[j];
    EXPECT_TRUE(ctx().is_tangent(X));
    EXPECT_EQ(ctx().inner(X, X), 4 * C);
    EXPECT_EQ(ctx().inner(Y, Y), 4 * C);
    EXPECT_EQ(abs(ctx().inner(X, Y)), 2 * C);
    EXPECT_TRUE(commutator(X, Y).is_zero());
  }
  for (size_t a = 0; a < g2().planes.size(); ++a) {
    for (size_t b = a + 1; b < g2().planes.size(); ++b) {
      for (int x : {g2().planes[a].first, g2().planes[a].second}) {
        for (int y : {g2().planes[b].first, g2().planes[b].second}) {
          EXPECT_EQ(ctx().inner(g2().Vtilde[x], g2().Vtilde[y]), 0);
        }
      }
    }
  }
}

TEST(G2, MeanCurvatureFromFullGramInverse) {
  std::vector<QMat> basis(g2().Vtilde.begin() + 6, g2().Vtilde.end());
  std::vector<std::vector<Rational>> gram(8, std::vector<Rational>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) gram[a][b] = ctx().inner(basis[a], basis[b]);
  }
  auto ginv = inverse(gram);
  QMat H(7, 7);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) H += ctx().second_fundamental_form(basis[a], basis[b]) * ginv[a][b];
  }
  QMat expected = ctx().eta() * Rational(-1, 3);
  EXPECT_EQ(H, expected);
  EXPECT_EQ(mean_curvature_g2(ctx()).H, expected);
  // -(dim / |eta|^2) eta.
  EXPECT_EQ(expected, ctx().eta() * (Rational(-8) / ctx().inner(ctx().eta(), ctx().eta())));
}

TEST(G2, BlockContributions) {
  MeanCurvatureG2 mc = mean_curvature_g2(ctx());
  ASSERT_EQ(mc.block_contributions.size(), 4u);
  for (size_t b = 0; b < 4; ++b) {
    QMat sum(7, 7);
    for (const Root& a : g2().plane_roots[b]) sum += ctx().root_sharp(a);
    EXPECT_EQ(mc.block_contributions[b], sum * Rational(-2, 3));
    EXPECT_EQ(mc.gram_blocks[b](0, 0), 4 * ctx().C());
  }
}

TEST(G2, IsotropicSecondFundamentalForm) {
  const QMat& V7 = g2().Vtilde[6];
  const QMat& V8 = g2().Vtilde[7];
  for (const QMat& X : {V7, V8, V7 + V8, V7 - V8 * Rational(3)}) {
    Rational n2 = ctx().inner(X, X);
    QMat B = ctx().second_fundamental_form(X, X);
    EXPECT_TRUE(ctx().is_normal(B));
    EXPECT_EQ(ctx().inner(B, B) / (n2 * n2), Rational(1, 14));
  }
  for (const Root& a : {Root{1, 5}, Root{2, 6}, Root{3, 7}}) EXPECT_EQ(ctx().root_norm2(a), Rational(1, 7));
  IsotropyStats st = isotropy_g2(ctx(), 200, 5);
  EXPECT_GE(st.samples, 200);
  EXPECT_LE(st.max_deviation, 1e-8);
  EXPECT_LE(st.max_method_gap, 1e-8);
}

TEST(G2, NonexistenceInequality) {
  const QMat& V7 = g2().V[6];
  Rational killing = -4 * (V7 * V7).trace();
  EXPECT_EQ(killing, 16);
  Rational c = ctx().inner(g2().Vtilde[6], g2().Vtilde[6]) / killing;
  EXPECT_EQ(c, Rational(7, 2));
  Rational ric = 1 / (2 * c);
  Rational n_over_r2 = Rational(8) / ctx().inner(ctx().eta(), ctx().eta());
  Rational half_gap = (n_over_r2 - Rational(1, 14)) / 2;
  EXPECT_EQ(ric, Rational(1, 7));
  EXPECT_EQ(half_gap, Rational(11, 84));
  EXPECT_LT(half_gap, ric);
  ConstantReport rep = g2_inequality(ctx());
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.get("metric_scale_c").computed, "7/2");
}

TEST(G2, FullReportPasses) {
  ConstantReport rep = g2_full_report(ctx(), 1000, 7);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.computed << " vs " << c.expected;
  EXPECT_THROW(rep.get("no-such-check"), Error);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3"), 3);
  EXPECT_EQ(parse_rational("-2/7"), Rational(-2, 7));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(to_string(Rational(11, 84)), "11/84");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_THROW(parse_rational("abc"), Error);
}
