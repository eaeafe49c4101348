#include <cmath>
#include <random>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "harmonet/errors.hpp"
#include "harmonet/orbit.hpp"
#include "harmonet/symspace.hpp"

namespace harmonet {

namespace {

QMat exact(const Mat& m) {
  QMat out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = Rational(std::llround(m(i, j)));
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

ConstantCheck exact_check(std::string name, const Rational& computed, const Rational& expected, std::string note = {}) {
  ConstantCheck c;
  c.name = std::move(name);
  c.computed = to_string(computed);
  c.expected = to_string(expected);
  c.value = to_double(computed);
  c.passed = computed == expected;
  c.note = std::move(note);
  return c;
}

ConstantCheck flag_check(std::string name, bool ok, std::string computed, std::string expected, std::string note = {}) {
  ConstantCheck c;
  c.name = std::move(name);
  c.computed = std::move(computed);
  c.expected = std::move(expected);
  c.value = ok ? 1.0 : 0.0;
  c.passed = ok;
  c.note = std::move(note);
  return c;
}

ConstantCheck approx_check(std::string name, double computed, double expected, double tol, std::string note = {}) {
  ConstantCheck c;
  c.name = std::move(name);
  c.computed = fmt(computed);
  c.expected = fmt(expected);
  c.value = computed;
  c.passed = std::abs(computed - expected) <= tol;
  c.note = std::move(note);
  return c;
}

void append(ConstantReport& to, const ConstantReport& from) {
  to.checks.insert(to.checks.end(), from.checks.begin(), from.checks.end());
}

// Coordinates of [A, B] in the G2 basis; empty when outside the span.
std::vector<Rational> bracket_coords(const G2Datum& g, const QMat& A, const QMat& B) {
  return solve_in_span(g.V, commutator(A, B));
}

}  // namespace

G2Datum G2Datum::build() {
  G2Datum g;
  for (const Mat& m : sl7::g2_basis()) g.V.push_back(exact(m));
  for (int k = 0; k < 14; ++k) g.Vtilde.push_back(exact(sl7::g2_tilde(k)));
  g.planes = {{6, 7}, {8, 9}, {10, 11}, {12, 13}};
  g.plane_roots = {{{1, 5}, {2, 6}, {3, 7}}, {{1, 4}, {2, 7}, {3, 6}}, {{1, 7}, {2, 4}, {3, 5}}, {{1, 6}, {2, 5}, {3, 4}}};
  return g;
}

std::vector<Rational> G2Datum::relations(const QMat& X) {
  auto l = [&](int i, int j) { return X(i - 1, j - 1); };
  return {
      l(2, 3) + l(4, 5) + l(6, 7),  -l(1, 3) - l(4, 6) + l(5, 7), l(1, 2) + l(4, 7) + l(5, 6),
      -l(1, 5) + l(2, 6) - l(3, 7), l(1, 4) - l(2, 7) - l(3, 6),  -l(1, 7) - l(2, 4) + l(3, 5),
      l(1, 6) + l(2, 5) + l(3, 4),
  };
}

bool ConstantReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const ConstantCheck& ConstantReport::get(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::MissingField, "no check named " + name);
}

ConstantReport g2_verify(const SymSpaceContext& ctx) {
  ConstantReport rep;
  const int n = SymSpaceContext::kN;
  const QMat& eta = ctx.eta();

  rep.checks.push_back(exact_check("trace_eta", eta.trace(), 0));
  rep.checks.push_back(exact_check("eta_norm2", ctx.inner(eta, eta), 24));
  bool spectrum = true;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      Rational ev = eta(i - 1, i - 1) - eta(j - 1, j - 1);
      spectrum = spectrum && (ev == 0 || ev == 1 || ev == -1);
    }
  }
  rep.checks.push_back(flag_check("ad_eta_spectrum", spectrum, spectrum ? "{-1,0,1}" : "other", "{-1,0,1}"));

  rep.checks.push_back(exact_check("dim_p", n * (n + 1) / 2 - 1, 27));
  rep.checks.push_back(exact_check("dim_u_prime", n * (n - 1) / 2, 21));
  rep.checks.push_back(exact_check("positive_roots", static_cast<long long>(ctx.positive_roots().size()), 12));
  rep.checks.push_back(exact_check("zero_roots", static_cast<long long>(ctx.zero_roots().size()), 9));
  rep.checks.push_back(exact_check("root_vector_norm2", ctx.inner(SymSpaceContext::P(1, 5), SymSpaceContext::P(1, 5)),
                                   2 * ctx.C()));

  auto tb = ctx.tangent_basis();
  auto nb = ctx.normal_basis();
  bool block_zero = true;
  for (const auto& t : tb) {
    for (const auto& v : nb) block_zero = block_zero && ctx.inner(t, v) == 0;
  }
  rep.checks.push_back(exact_check("dim_tangent", static_cast<long long>(tb.size()), 12));
  rep.checks.push_back(exact_check("dim_normal", static_cast<long long>(nb.size()), 15));
  rep.checks.push_back(flag_check("tangent_normal_orthogonal", block_zero, block_zero ? "0" : "nonzero", "0"));

  bool root_orth = true;
  std::vector<QMat> all_root_vectors = tb;
  for (const Root& a : ctx.zero_roots()) all_root_vectors.push_back(SymSpaceContext::P(a.first, a.second));
  for (size_t i = 0; i < all_root_vectors.size(); ++i) {
    for (size_t j = i + 1; j < all_root_vectors.size(); ++j) {
      root_orth = root_orth && ctx.inner(all_root_vectors[i], all_root_vectors[j]) == 0;
    }
  }
  rep.checks.push_back(flag_check("root_spaces_orthogonal", root_orth, root_orth ? "0" : "nonzero", "0"));

  G2Datum g = G2Datum::build();
  bool rel = true;
  for (const auto& V : g.V) {
    for (const Rational& r : G2Datum::relations(V)) rel = rel && r == 0;
  }
  rep.checks.push_back(flag_check("defining_relations", rel, rel ? "all zero" : "violated", "all zero"));

  std::vector<std::vector<Rational>> flat;
  for (const auto& V : g.V) flat.push_back(V.flatten());
  rep.checks.push_back(exact_check("basis_rank", rank(flat), 14));

  std::vector<std::vector<Rational>> rel_rows(7, std::vector<Rational>());
  {
    std::vector<QMat> gens;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) gens.push_back(SymSpaceContext::G(i, j));
    }
    for (const auto& Gij : gens) {
      auto r = G2Datum::relations(Gij);
      for (int k = 0; k < 7; ++k) rel_rows[k].push_back(r[k]);
    }
  }
  rep.checks.push_back(exact_check("relation_rank", rank(rel_rows), 7, "so g2 has dimension 21 - 7 = 14"));

  bool closed = true;
  std::vector<std::vector<Rational>> brackets;
  for (int i = 0; i < 14; ++i) {
    for (int j = i + 1; j < 14; ++j) {
      QMat b = commutator(g.V[i], g.V[j]);
      closed = closed && !solve_in_span(g.V, b).empty();
      brackets.push_back(b.flatten());
    }
  }
  rep.checks.push_back(flag_check("bracket_closure", closed, closed ? "closed" : "not closed", "closed"));
  rep.checks.push_back(exact_check("bracket_rank", rank(brackets), 14));

  Rational trV1 = (g.V[0] * g.V[0]).trace();
  rep.checks.push_back(exact_check("trace_V1_squared", trV1, -4));

  QMat ad(14, 14);
  for (int k = 0; k < 14; ++k) {
    auto c = bracket_coords(g, g.V[0], g.V[k]);
    for (int r = 0; r < 14; ++r) ad(r, k) = c.at(r);
  }
  Rational trad = (ad * ad).trace();
  rep.checks.push_back(exact_check("trace_ad_V1_squared", trad, -16));
  rep.checks.push_back(exact_check("killing_factor", trad / trV1, 4));

  bool lts = true;
  bool km = true;
  bool mm = true;
  for (int i = 6; i < 14; ++i) {
    for (int k = 0; k < 6; ++k) {
      auto c = bracket_coords(g, g.V[k], g.V[i]);
      for (int r = 0; r < 6; ++r) km = km && c.at(r) == 0;
    }
    for (int j = 6; j < 14; ++j) {
      auto c = bracket_coords(g, g.V[i], g.V[j]);
      for (int r = 6; r < 14; ++r) mm = mm && c.at(r) == 0;
      QMat inner_br = commutator(g.V[i], g.V[j]);
      for (int k = 6; k < 14; ++k) {
        auto t = solve_in_span(g.V, commutator(g.V[k], inner_br));
        for (int r = 0; r < 6; ++r) lts = lts && t.at(r) == 0;
      }
    }
  }
  rep.checks.push_back(flag_check("k_m_in_m", km, km ? "yes" : "no", "yes"));
  rep.checks.push_back(flag_check("m_m_in_k", mm, mm ? "yes" : "no", "yes"));
  rep.checks.push_back(flag_check("lie_triple_system", lts, lts ? "yes" : "no", "yes"));

  bool so4 = true;
  for (int k = 0; k < 6; ++k) so4 = so4 && commutator(g.V[k], eta).is_zero();
  rep.checks.push_back(flag_check("k_fixes_eta", so4, so4 ? "yes" : "no", "yes"));
  return rep;
}

MeanCurvatureG2 mean_curvature_g2(const SymSpaceContext& ctx) {
  MeanCurvatureG2 out;
  G2Datum g = G2Datum::build();
  const int n = SymSpaceContext::kN;
  out.H = QMat(n, n);
  const Rational C = ctx.C();

  bool cross_orth = true;
  for (int a = 6; a < 14; ++a) {
    for (int b = 6; b < 14; ++b) {
      bool same_plane = (a - 6) / 2 == (b - 6) / 2;
      if (!same_plane) cross_orth = cross_orth && ctx.inner(g.Vtilde[a], g.Vtilde[b]) == 0;
    }
  }
  out.report.checks.push_back(flag_check("planes_orthogonal", cross_orth, cross_orth ? "yes" : "no", "yes"));

  bool all_tangent = true;
  for (int a = 6; a < 14; ++a) all_tangent = all_tangent && ctx.is_tangent(g.Vtilde[a]);
  out.report.checks.push_back(flag_check("m_tilde_tangent", all_tangent, all_tangent ? "yes" : "no", "yes"));

  for (size_t pl = 0; pl < g.planes.size(); ++pl) {
    auto [a, b] = g.planes[pl];
    const QMat& Va = g.Vtilde[a];
    const QMat& Vb = g.Vtilde[b];
    QMat gram(2, 2);
    gram(0, 0) = ctx.inner(Va, Va);
    gram(0, 1) = ctx.inner(Va, Vb);
    gram(1, 0) = ctx.inner(Vb, Va);
    gram(1, 1) = ctx.inner(Vb, Vb);
    out.gram_blocks.push_back(gram);
    std::string tag = "plane" + std::to_string(pl + 1);
    out.report.checks.push_back(exact_check(tag + "_gram_diag", gram(0, 0), 4 * C));
    out.report.checks.push_back(exact_check(tag + "_gram_offdiag_abs", abs(gram(0, 1)), 2 * C));
    bool abelian = commutator(Va, Vb).is_zero();
    out.report.checks.push_back(flag_check(tag + "_abelian", abelian, abelian ? "yes" : "no", "yes"));

    Rational det = gram(0, 0) * gram(1, 1) - gram(0, 1) * gram(1, 0);
    QMat inv(2, 2);
    inv(0, 0) = gram(1, 1) / det;
    inv(1, 1) = gram(0, 0) / det;
    inv(0, 1) = -gram(0, 1) / det;
    inv(1, 0) = -gram(1, 0) / det;
    out.report.checks.push_back(exact_check(tag + "_inverse_diag", inv(0, 0), Rational(1) / (3 * C)));
    out.report.checks.push_back(exact_check(tag + "_inverse_offdiag_abs", abs(inv(0, 1)), Rational(1) / (6 * C)));

    const QMat* vs[2] = {&Va, &Vb};
    QMat contrib(n, n);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) contrib += ctx.second_fundamental_form(*vs[i], *vs[j]) * inv(i, j);
    }
    QMat expected(n, n);
    for (const Root& r : g.plane_roots[pl]) expected += ctx.root_sharp(r) * Rational(-2, 3);
    bool match = contrib == expected;
    out.report.checks.push_back(
        flag_check(tag + "_contribution", match, match ? "-2/3 sum a^sharp" : "mismatch", "-2/3 sum a^sharp"));

    bool so_match = true;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        so_match = so_match && ctx.second_fundamental_form(*vs[i], *vs[j]) == ctx.strongly_orthogonal_b(*vs[i], *vs[j]);
      }
    }
    out.report.checks.push_back(flag_check(tag + "_strongly_orthogonal_form", so_match, so_match ? "match" : "mismatch",
                                           "match"));
    out.block_contributions.push_back(contrib);
    out.H += contrib;
  }
  QMat gap = out.H + ctx.eta() / 3;
  double dev = gap.to_double().cwiseAbs().maxCoeff();
  out.report.checks.push_back(approx_check("mean_curvature_plus_eta_over_3", dev, 0.0, 1e-12));
  out.report.checks.push_back(flag_check("mean_curvature_exact", gap.is_zero(), gap.is_zero() ? "-eta/3" : "other",
                                         "-eta/3"));
  Rational dim = 8;
  Rational eta2 = ctx.inner(ctx.eta(), ctx.eta());
  bool formula = out.H == ctx.eta() * (-dim / eta2);
  out.report.checks.push_back(flag_check("mean_curvature_dim_over_norm", formula, formula ? "-(8/24) eta" : "other",
                                         "-(8/24) eta"));
  return out;
}

IsotropyStats isotropy_g2(const SymSpaceContext& ctx, int samples, std::uint64_t seed) {
  IsotropyStats st;
  G2Datum g = G2Datum::build();
  OrbitManifold orbit(OrbitManifold::Group::G2);
  OrbitManifold grass(OrbitManifold::Group::SO7);
  const double target = 1.0 / 14.0;
  const Mat V7 = g.Vtilde[6].to_double();
  const Mat V8 = g.Vtilde[7].to_double();
  const Vec eta = orbit.eta();
  const double C = to_double(ctx.C());
  auto norm2 = [&](const Mat& X) { return C * (X * X).trace(); };
  auto oracle = [&](const OrbitManifold& M, const Vec& point, const Mat& X) {
    Vec y = M.to_coords(X);
    return M.second_fundamental_form(point, y, y).squaredNorm();
  };
  // eq. for strongly orthogonal roots: sum |a|^2 |X_a|^4 with |a|^2 = 2/C.
  auto formula = [&](const Mat& X) {
    double acc = 0.0;
    for (const Root& r : g.plane_roots[0]) {
      double xa2 = 2.0 * C * X(r.first - 1, r.second - 1) * X(r.first - 1, r.second - 1);
      acc += (2.0 / C) * xa2 * xa2;
    }
    return acc;
  };

  st.min_formula = st.min_oracle = 1e300;
  st.max_formula = st.max_oracle = -1e300;
  auto record_formula = [&](double v) {
    st.min_formula = std::min(st.min_formula, v);
    st.max_formula = std::max(st.max_formula, v);
    st.max_deviation = std::max(st.max_deviation, std::abs(v - target));
  };
  auto record_oracle = [&](double v) {
    st.min_oracle = std::min(st.min_oracle, v);
    st.max_oracle = std::max(st.max_oracle, v);
    st.max_deviation = std::max(st.max_deviation, std::abs(v - target));
  };

  double tg_gap = 0.0;
  for (int k = 0; k < samples; ++k) {
    double th = M_PI * k / samples;
    Mat v = std::cos(th) * V7 + std::sin(th) * V8;
    v /= std::sqrt(norm2(v));
    double a = formula(v);
    double b = oracle(orbit, eta, v);
    record_formula(a);
    record_oracle(b);
    st.max_method_gap = std::max(st.max_method_gap, std::abs(a - b));
    tg_gap = std::max(tg_gap, (orbit.second_fundamental_form(eta, orbit.to_coords(v), orbit.to_coords(v)) -
                               grass.second_fundamental_form(grass.eta(), grass.to_coords(v), grass.to_coords(v)))
                                  .norm());
    ++st.samples;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Mat> Vd;
  for (const auto& V : g.V) Vd.push_back(V.to_double());
  for (int k = 0; k < samples; ++k) {
    double th = M_PI * (k + 0.5) / samples;
    Mat v = std::cos(th) * V7 + std::sin(th) * V8;
    v /= std::sqrt(norm2(v));
    bool isotropy_only = (k % 2) == 0;
    Mat Z = Mat::Zero(7, 7);
    for (int a = 0; a < (isotropy_only ? 6 : 14); ++a) Z += gauss(rng) * Vd[a];
    Mat gmat = Z.exp();
    Mat w = gmat * v * gmat.transpose();
    Vec point = orbit.conjugate(gmat, eta);
    record_oracle(oracle(orbit, point, w));
    ++st.samples;
  }

  ConstantReport& rep = st.report;
  rep.checks.push_back(approx_check("isotropy_formula_deviation",
                                    std::max(std::abs(st.min_formula - target), std::abs(st.max_formula - target)), 0.0,
                                    1e-8, "eq. for strongly orthogonal roots over the plane sweep"));
  rep.checks.push_back(approx_check("isotropy_oracle_deviation",
                                    std::max(std::abs(st.min_oracle - target), std::abs(st.max_oracle - target)), 0.0,
                                    1e-8, "projector oracle over sweep and Ad translates"));
  rep.checks.push_back(approx_check("isotropy_method_gap", st.max_method_gap, 0.0, 1e-8));
  rep.checks.push_back(approx_check("totally_geodesic_gap", tg_gap, 0.0, 1e-8,
                                    "B of the G2 orbit equals B of the Grassmann orbit on m~"));
  rep.checks.push_back(exact_check("isotropy_samples_at_least_1000", st.samples >= 1000 ? 1 : 0, 1,
                                   std::to_string(st.samples) + " directions"));

  QMat v7 = g.Vtilde[6];
  Rational n7 = ctx.inner(v7, v7);
  Rational exact_b = 0;
  for (const Root& r : g.plane_roots[0]) {
    Rational x = v7(r.first - 1, r.second - 1);
    Rational xa2 = 2 * ctx.C() * x * x / n7;
    exact_b += ctx.root_norm2(r) * xa2 * xa2;
  }
  rep.checks.push_back(exact_check("b_unit_V7_squared", exact_b, Rational(1, 14)));
  QMat v78 = g.Vtilde[6] + g.Vtilde[7];
  Rational n78 = ctx.inner(v78, v78);
  Rational exact_b2 = 0;
  for (const Root& r : g.plane_roots[0]) {
    Rational x = v78(r.first - 1, r.second - 1);
    Rational xa2 = 2 * ctx.C() * x * x / n78;
    exact_b2 += ctx.root_norm2(r) * xa2 * xa2;
  }
  rep.checks.push_back(exact_check("b_unit_V7_plus_V8_squared", exact_b2, Rational(1, 14)));
  for (const Root& r : g.plane_roots[0]) {
    rep.checks.push_back(exact_check("root_norm2_" + std::to_string(r.first) + std::to_string(r.second),
                                     ctx.root_norm2(r), Rational(1, 7)));
  }
  return st;
}

ConstantReport g2_inequality(const SymSpaceContext& ctx) {
  ConstantReport rep;
  G2Datum g = G2Datum::build();
  Rational killing = (g.V[0] * g.V[0]).trace();
  QMat ad(14, 14);
  for (int k = 0; k < 14; ++k) {
    auto c = solve_in_span(g.V, commutator(g.V[0], g.V[k]));
    for (int r = 0; r < 14; ++r) ad(r, k) = c.at(r);
  }
  Rational lambda = (ad * ad).trace() / killing;
  Rational v7K = -lambda * (g.V[6] * g.V[6]).trace();
  Rational v7p = ctx.inner(g.Vtilde[6], g.Vtilde[6]);
  Rational c = v7p / v7K;
  Rational ric = Rational(1) / (2 * c);
  Rational dim = 8;
  Rational n_over_r2 = dim / ctx.inner(ctx.eta(), ctx.eta());
  Rational beta = Rational(1) / ctx.C();
  Rational lhs = (n_over_r2 - beta) / 2;

  rep.checks.push_back(exact_check("V7_killing_norm2", v7K, 16));
  rep.checks.push_back(exact_check("V7_tilde_norm2", v7p, 56));
  rep.checks.push_back(exact_check("metric_scale_c", c, Rational(7, 2)));
  rep.checks.push_back(exact_check("ricci_constant", ric, Rational(1, 7),
                                   "literature constant: Ric = g_K/2 on a compact symmetric space"));
  rep.checks.push_back(exact_check("n_over_r2", n_over_r2, Rational(1, 3)));
  rep.checks.push_back(exact_check("beta", beta, Rational(1, 14)));
  rep.checks.push_back(exact_check("half_gap", lhs, Rational(11, 84)));
  rep.checks.push_back(flag_check("inequality_11_84_lt_1_7", lhs < ric, to_string(lhs) + " < " + to_string(ric),
                                  "11/84 < 12/84"));

  OrbitManifold orbit(OrbitManifold::Group::G2);
  Vec eta = orbit.eta();
  Mat E = orbit.tangent_basis(eta);
  double worst = 0.0;
  for (int a = 0; a < E.cols(); ++a) {
    for (int b = 0; b < E.cols(); ++b) {
      double r = orbit.ricci(eta, E.col(a), E.col(b));
      worst = std::max(worst, std::abs(r - (a == b ? 1.0 / 7.0 : 0.0)));
    }
  }
  rep.checks.push_back(approx_check("ricci_numerical_deviation", worst, 0.0, 1e-8,
                                    "Gauss-equation Ricci tensor of the orbit minus g/7"));
  return rep;
}

ConstantReport g2_full_report(const SymSpaceContext& ctx, int samples, std::uint64_t seed) {
  ConstantReport rep = g2_verify(ctx);
  append(rep, mean_curvature_g2(ctx).report);
  append(rep, isotropy_g2(ctx, samples, seed).report);
  append(rep, g2_inequality(ctx));
  return rep;
}

}  // namespace harmonet
