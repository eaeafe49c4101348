#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "harmonet/errors.hpp"
#include "harmonet/io.hpp"
#include "harmonet/orbit.hpp"

using namespace harmonet;
using namespace harmonet::testing;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Vec unit(int n, int i) { return Vec::Unit(n, i); }

/// Great circle in the (e0, e1)-plane of S^n as a single loop.
DiscreteMap great_circle(int n, int N = 32) {
  auto g = std::make_shared<WeightedGraph>(WeightedGraph::build({"v"}, {{"v", "v", 1.0}}));
  return DiscreteMap::from_geodesics(g, std::make_shared<Sphere>(n), N, {unit(n + 1, 0)},
                                     {2 * M_PI * unit(n + 1, 1)});
}

CriteriaInput criteria_file(const std::string& name) {
  return criteria_from_json(read_json_file(scenario_dir() + "/../criteria/" + name + ".json"));
}

Mat random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat A(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = g(rng);
  }
  Eigen::HouseholderQR<Mat> qr(A);
  return qr.householderQ();
}

}  // namespace

TEST(TangentialField, SphereAxisAndPosition) {
  const DiscreteMap& f = critical_map("s2-great-circle");
  FieldAlongMap axis = tangential_field(f, v3(0, 0, 1));
  for (int e = 0; e < f.graph().edge_count(); e += 2) {
    const Mat& q = f.canonical()[e / 2];
    for (int i = 0; i < q.cols(); ++i) {
      EXPECT_NEAR((axis.edge_values(e).col(i) - v3(0, 0, 1)).norm(), 0.0, 1e-12);
      Vec qi = q.col(i);
      Vec vt = f.manifold().to_tangent(qi, qi);
      EXPECT_NEAR(vt.norm(), 0.0, 1e-12);
    }
  }
  Vec q0 = f.canonical()[0].col(0);
  FieldAlongMap pos = tangential_field(f, q0);
  EXPECT_NEAR(pos.edge_values(0).col(0).norm(), 0.0, 1e-12);
}

TEST(TangentialField, RejectsIntrinsicTarget) {
  const DiscreteMap& f = critical_map("torus-hexagonal");
  try {
    tangential_field(f, Vec::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEmbedded);
  }
}

TEST(QForm, IsQuadratic) {
  const DiscreteMap& f = critical_map("clifford-net");
  HessianContext ctx(f, 2);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int k = 0; k < 5; ++k) {
    Vec v(4);
    for (int i = 0; i < 4; ++i) v[i] = g(rng);
    double q = q_form(ctx, v);
    for (double a : {-2.0, 0.5, 3.0}) EXPECT_LE(rel_gap(q_form(ctx, a * v), a * a * q), 1e-9);
  }
}

TEST(Trace, GreatCircleLengthIsMinusFourPi) {
  const DiscreteMap& f = critical_map("s2-great-circle");
  HessianContext ctx(f, 1);
  double direct = trace_q_direct(ctx);
  double formula = trace_q_formula(f, 1);
  EXPECT_NEAR(formula, -4 * M_PI, 1e-9);
  EXPECT_LE(std::abs(direct + 4 * M_PI), 0.02 * 4 * M_PI);
  EXPECT_LE(std::abs(direct - formula), std::max(1e-4 * std::abs(formula), 5e-3));
}

TEST(Trace, GreatCircleInThreeSphere) {
  DiscreteMap f = great_circle(3);
  // Q(T,T) = -|T|^2 and |B(T~,T~)|^2 = 1 on the unit 3-sphere.
  EXPECT_NEAR(trace_q_formula(f, 2), -2 * 4 * M_PI * M_PI, 1e-8);
  EXPECT_NEAR(trace_q_formula(f, 1), -2 * 2 * 2 * M_PI, 1e-8);
  for (int p = 1; p <= 3; ++p) {
    HessianContext ctx(f, p);
    double formula = trace_q_formula(f, p);
    EXPECT_LE(std::abs(trace_q_direct(ctx) - formula), std::max(1e-4 * std::abs(formula), 5e-3)) << p;
  }
}

TEST(Trace, CliffordNetMatchesFormula) {
  const DiscreteMap& f = critical_map("clifford-net");
  HessianContext ctx(f, 2);
  double formula = trace_q_formula(f, 2);
  EXPECT_LE(rel_gap(trace_q_direct(ctx), formula), 1e-4);
}

TEST(Trace, ConstantMapIsZero) {
  Scenario s = load_scenario("s2-great-circle");
  DiscreteMap c = DiscreteMap::constant(s.graph, s.manifold, 16, v3(0, 0, 1));
  HessianContext ctx(c, 2);
  EXPECT_NEAR(trace_q_direct(ctx), 0.0, 1e-12);
  EXPECT_EQ(trace_q_formula(c, 2), 0.0);
}

TEST(Trace, BasisIndependent) {
  std::mt19937_64 rng(2);
  for (const std::string name : {"s2-meridian-theta", "clifford-net", "g2-geodesic-loop"}) {
    const DiscreteMap& f = critical_map(name);
    HessianContext ctx(f, scenario_p(name));
    double t0 = trace_q_direct(ctx);
    Mat R = random_rotation(f.manifold().ambient_dim(), rng);
    EXPECT_LE(rel_gap(trace_q_direct(ctx, R), t0), 1e-8) << name;
  }
}

TEST(Trace, NegativeOnTwoSphereForLength) {
  for (const std::string name : {"s2-great-circle", "s2-meridian-theta"}) {
    const DiscreteMap& f = critical_map(name, 1);
    HessianContext ctx(f, 1);
    EXPECT_LT(trace_q_direct(ctx), 0.0) << name;
  }
}

TEST(Trace, RequiresCriticalMap) {
  Scenario s = load_scenario("s2-random-p2");
  try {
    trace_q_formula(s.initial, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCritical);
  }
}

TEST(QTensor, SphereIsMinusNMinusTwoTimesMetric) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 6; ++n) {
    Sphere S(n);
    Vec p = S.random_point(rng);
    Mat E = S.tangent_basis(p);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        double expected = a == b ? -(n - 2.0) : 0.0;
        EXPECT_NEAR(q_tensor(S, p, E.col(a), E.col(b)), expected, 1e-10) << n;
      }
    }
  }
}

TEST(QTensor, MinimalInSphereFormula) {
  // Clifford torus: n/r^2 = 2 and Ric = 0.
  CliffordTorus C(std::sqrt(0.5), std::sqrt(0.5));
  std::mt19937_64 rng(4);
  Vec p = C.random_point(rng);
  Vec X = C.random_tangent(p, rng);
  EXPECT_NEAR(q_tensor(C, p, X, X), 2.0 * X.squaredNorm(), 1e-10);
}

TEST(QTensor, G2OrbitAtEta) {
  OrbitManifold O(OrbitManifold::Group::G2);
  std::mt19937_64 rng(5);
  Vec eta = O.eta();
  for (int k = 0; k < 5; ++k) {
    Vec X = O.random_tangent(eta, rng);
    EXPECT_NEAR(q_tensor(O, eta, X, X), O.inner(eta, X, X) / 21.0, 1e-9 * (1.0 + O.inner(eta, X, X)));
  }
}

TEST(BetaGamma, Sphere) {
  for (int n = 2; n <= 4; ++n) {
    BetaGamma bg = beta_gamma_estimate(Sphere(n), 20, 7);
    EXPECT_NEAR(bg.beta, 1.0, 1e-9);
    EXPECT_NEAR(bg.gamma, 1.0, 1e-9);
  }
}

TEST(BetaGamma, CliffordClosedForm) {
  // |B(Z,Z)|^2 = (cos^4 + sin^4) / r^2 with r^2 = 1/2.
  BetaGamma bg = beta_gamma_estimate(CliffordTorus(std::sqrt(0.5), std::sqrt(0.5)), 20, 8);
  EXPECT_NEAR(bg.beta, 1.0, 1e-8);
  EXPECT_NEAR(bg.gamma, 2.0, 1e-8);
}

TEST(BetaGamma, G2OrbitIsIsotropic) {
  BetaGamma bg = beta_gamma_estimate(OrbitManifold(OrbitManifold::Group::G2), 5, 9, 40);
  EXPECT_NEAR(bg.beta, 1.0 / 14.0, 1e-8);
  EXPECT_NEAR(bg.gamma, 1.0 / 14.0, 1e-8);
}

TEST(BetaGamma, DeterministicUnderSeed) {
  Sphere S(3, 2.0);
  BetaGamma a = beta_gamma_estimate(S, 10, 11, 20), b = beta_gamma_estimate(S, 10, 11, 20);
  EXPECT_EQ(a.beta, b.beta);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_NEAR(a.beta, 0.25, 1e-9);
}

TEST(BetaGamma, RejectsIntrinsicTarget) {
  try {
    beta_gamma_estimate(FlatTorus(Mat::Identity(2, 2)), 5, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEmbedded);
  }
}

TEST(TangentialIdentities, RandomInputs) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  Sphere S(3);
  CliffordTorus C(0.6, 0.8);
  for (const EmbeddedManifold* F : {static_cast<const EmbeddedManifold*>(&S), static_cast<const EmbeddedManifold*>(&C)}) {
    for (int k = 0; k < 20; ++k) {
      Vec p = F->random_point(rng);
      Vec Z = F->random_tangent(p, rng);
      Vec v(F->ambient_dim());
      for (int i = 0; i < v.size(); ++i) v[i] = g(rng);
      TangentialIdentityResidual r = tangential_identity_residuals(*F, p, Z, v);
      EXPECT_LE(r.v1, 1e-6) << F->kind();
      EXPECT_LE(r.v2, 1e-6) << F->kind();
    }
  }
}

TEST(Criteria, SphereThreeCertifiesN2) {
  CriteriaReport rep = criteria_evaluate(criteria_file("sphere-n3-p2"));
  EXPECT_EQ(rep.get("Np").status, CriterionStatus::Certified);
  EXPECT_EQ(rep.get("Np").property, "N2");
  EXPECT_TRUE(rep.certifies("N2"));
  EXPECT_TRUE(rep.certifies("N1"));
}

TEST(Criteria, SphereTwoAtBoundary) {
  CriteriaReport rep = criteria_evaluate(criteria_file("sphere-n2-p2"));
  EXPECT_EQ(rep.get("Np").status, CriterionStatus::NotCertified);
  EXPECT_NEAR(rep.get("Np").lhs, 0.0, 1e-15);
  // Ric = 1 = n/(2 r^2).
  EXPECT_EQ(rep.get("N2_ric").status, CriterionStatus::Certified);
}

TEST(Criteria, G2OverSO4) {
  CriteriaReport rep = criteria_evaluate(criteria_file("g2-so4"));
  const CriterionResult& a = rep.get("N1_a");
  EXPECT_EQ(a.status, CriterionStatus::Certified);
  EXPECT_NEAR(a.lhs, 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(a.rhs, 11.0 / 84.0, 1e-15);
  EXPECT_TRUE(rep.certifies("N1"));
  EXPECT_EQ(rep.get("N1_a_prime").status, CriterionStatus::Undetermined);
}

TEST(Criteria, RankConditionWithCriticalEigenvalue) {
  CriteriaInput in;
  in.n = 4;
  in.ric_const = 0.5;
  in.lambda1 = 2 * 0.5 * 4 / 3.0;
  in.rank = 2;
  CriteriaReport rep = criteria_evaluate(in);
  EXPECT_EQ(rep.get("N1_b_prime").status, CriterionStatus::Certified);
  EXPECT_EQ(rep.get("N1_b_prime").basis, "by-rank");
  in.rank = 1;
  EXPECT_EQ(criteria_evaluate(in).get("N1_b_prime").status, CriterionStatus::NotCertified);
}

TEST(Criteria, MissingDataIsUndetermined) {
  CriteriaInput in;
  in.n = 3;
  CriteriaReport rep = criteria_evaluate(in);
  for (const auto& item : rep.items) EXPECT_EQ(item.status, CriterionStatus::Undetermined) << item.id;
  EXPECT_FALSE(rep.certifies("N1"));
  EXPECT_THROW(rep.get("no-such"), Error);
}

TEST(Criteria, StronglyUnstable) {
  CriteriaInput in;
  in.n = 2;
  in.ric_const = 1.0;
  in.lambda1 = 1.0;
  CriteriaReport rep = criteria_evaluate(in);
  EXPECT_EQ(rep.get("strongly_unstable").status, CriterionStatus::Certified);
  EXPECT_TRUE(rep.certifies("N1"));
  EXPECT_TRUE(rep.certifies("N2"));
}

TEST(Criteria, SphereThresholdProperty) {
  for (int n = 2; n <= 8; ++n) {
    for (int p = 1; p <= n + 1; ++p) {
      CriteriaInput in;
      in.n = n;
      in.r2 = 1.0;
      in.ric_const = n - 1.0;
      in.beta = 1.0;
      in.gamma = 1.0;
      in.p = p;
      bool certified = criteria_evaluate(in).get("Np").status == CriterionStatus::Certified;
      EXPECT_EQ(certified, n >= p + 1) << n << " " << p;
    }
  }
}

TEST(Criteria, InvalidInput) {
  CriteriaInput in;
  in.n = 1;
  EXPECT_THROW(criteria_evaluate(in), Error);
  in.n = 3;
  in.beta = 2.0;
  in.gamma = 1.0;
  EXPECT_THROW(criteria_evaluate(in), Error);
}
