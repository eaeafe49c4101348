#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "harmonet/errors.hpp"

using namespace harmonet;
using namespace harmonet::testing;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Mat random_skew(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Mat R(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) R(i, j) = g(rng);
  }
  return R - R.transpose();
}

/// Theta net of meridians with theta(t) = pi (1.3 t - 0.3 t^2), critical for p = 1 but not constant speed.
DiscreteMap slow_start_theta() {
  auto g = std::make_shared<WeightedGraph>(
      WeightedGraph::build({"N", "S"}, {{"N", "S", 1.0}, {"N", "S", 1.0}, {"N", "S", 1.0}}));
  const int N = 32;
  const Nodes& nd = lgl_nodes(N);
  std::vector<Mat> samples;
  for (int k = 0; k < 3; ++k) {
    double phi = 2 * M_PI * k / 3;
    Mat s(3, N + 1);
    for (int i = 0; i <= N; ++i) {
      double th = M_PI * (1.3 * nd.t[i] - 0.3 * nd.t[i] * nd.t[i]);
      s.col(i) = v3(std::sin(th) * std::cos(phi), std::sin(th) * std::sin(phi), std::cos(th));
    }
    samples.push_back(s);
  }
  return DiscreteMap(g, std::make_shared<Sphere>(2), N, samples);
}

}  // namespace

TEST(Hessian, ConstantMapKillsParallelFields) {
  Scenario s = load_scenario("s2-random-p2");
  DiscreteMap c = DiscreteMap::constant(s.graph, s.manifold, 16, v3(0, 0, 1));
  HessianContext ctx(c, 2);
  FieldAlongMap V = FieldAlongMap::from_nodes(c, [](int, const Vec&) { return v3(0.3, -1.2, 0); });
  EXPECT_NEAR(ctx.form(V, V), 0.0, 1e-12);
  HessianAssembly A = hessian_matrix(ctx);
  Eigen::SelfAdjointEigenSolver<Mat> es(A.matrix);
  EXPECT_NEAR(es.eigenvalues()[0], 0.0, 1e-10);
  EXPECT_NEAR(es.eigenvalues()[1], 0.0, 1e-10);
  EXPECT_GT(es.eigenvalues()[2], 1.0);
}

TEST(Hessian, FlatTorusIsDirichletEnergyOfField) {
  const DiscreteMap& f = critical_map("torus-hexagonal");
  HessianContext ctx(f, 2);
  std::mt19937_64 rng(3);
  const Nodes& nd = f.nodes();
  for (int k = 0; k < 5; ++k) {
    FieldAlongMap V = random_field(f, rng);
    double oracle = 0.0;
    for (int e = 0; e < f.graph().edge_count(); ++e) {
      Mat dV = V.edge_values(e) * nd.D.transpose();
      for (int i = 0; i <= f.N(); ++i) oracle += f.graph().weight(e) * nd.w[i] * dV.col(i).squaredNorm();
    }
    EXPECT_NEAR(ctx.form(V, V), oracle, 1e-9 * oracle);
    EXPECT_GE(ctx.form(V, V), 0.0);
  }
}

TEST(Hessian, GreatCircleNormalBumpIndexForm) {
  const DiscreteMap& f = critical_map("s2-great-circle");
  HessianContext ctx(f, 1);
  const Nodes& nd = f.nodes();
  FieldAlongMap V = FieldAlongMap::from_function(f, [&](int, int i, const Vec&) {
    return Vec(std::sin(M_PI * nd.t[i]) * v3(0, 0, 1));
  });
  // Per orientation (pi^2/2 - (2 pi)^2/2) / (2 pi).
  EXPECT_NEAR(ctx.form(V, V), -1.5 * M_PI, 1e-9);
}

TEST(Hessian, SplitMatchesDirectOnMeridianNet) {
  const DiscreteMap& f = critical_map("s2-meridian-theta");
  HessianContext ctx(f, 1);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    FieldAlongMap V = random_field(f, rng), W = random_field(f, rng);
    double d = ctx.form(V, W);
    EXPECT_LE(std::abs(ctx.form_split(V, W) - d), 1e-7 * (1.0 + std::abs(d)));
  }
}

TEST(Hessian, LengthHessianIgnoresVertexFreeTangentialFields) {
  const DiscreteMap& f = critical_map("s2-meridian-theta");
  HessianContext ctx(f, 1);
  const Nodes& nd = f.nodes();
  std::mt19937_64 rng(5);
  FieldAlongMap V = random_field(f, rng);
  FieldAlongMap U = FieldAlongMap::from_function(f, [&](int k, int i, const Vec&) {
    Vec T = ctx.velocities(2 * k).col(i);
    return Vec(std::sin(2 * M_PI * nd.t[i]) * std::sin(M_PI * nd.t[i]) * 3.0 * T / T.norm());
  });
  EXPECT_NEAR(ctx.form(V + U, V + U), ctx.form(V, V), 1e-8 * (1.0 + std::abs(ctx.form(V, V))));
}

TEST(Hessian, NormalFieldsAgreeForP2) {
  const DiscreteMap& f = critical_map("clifford-net");
  HessianContext ctx(f, 2);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const Nodes& nd = f.nodes();
    FieldAlongMap N = FieldAlongMap::from_function(f, [&](int k, int i, const Vec& q) {
      Vec T = ctx.velocities(2 * k).col(i).normalized();
      Vec v = f.manifold().random_tangent(q, rng);
      return Vec(std::sin(M_PI * nd.t[i]) * (v - v.dot(T) * T));
    });
    double d = ctx.form(N, N);
    EXPECT_LE(std::abs(ctx.form_split(N, N) - d), 1e-7 * (1.0 + std::abs(d)));
  }
}

TEST(Hessian, ThreeWayAgreementOnEveryScenario) {
  for (const std::string& name : scenario_names()) {
    const DiscreteMap& f = critical_map(name);
    HessianContext ctx(f, scenario_p(name));
    std::mt19937_64 rng(7);
    for (int k = 0; k < 5; ++k) {
      FieldAlongMap V = random_field(f, rng), W = random_field(f, rng);
      double d = ctx.form(V, W);
      EXPECT_LE(rel_gap(d, ctx.form_split(V, W)), 1e-6) << name;
      EXPECT_LE(rel_gap(d, ctx.form_jacobi(V, W).total()), 1e-6) << name;
    }
  }
}

TEST(Hessian, BalancedFieldsHaveNoBoundaryTerm) {
  for (const std::string name : {"s2-meridian-theta", "torus-hexagonal", "clifford-net"}) {
    const DiscreteMap& f = critical_map(name);
    HessianContext ctx(f, scenario_p(name));
    std::mt19937_64 rng(8);
    FieldAlongMap V = ctx.balanced_projection(smooth_field(f, rng));
    EXPECT_TRUE(balanced_membership(f, V).balanced || scenario_p(name) != 2) << name;
    for (int k = 0; k < 5; ++k) {
      FieldAlongMap W = random_field(f, rng);
      JacobiParts jp = ctx.form_jacobi(V, W);
      EXPECT_LE(std::abs(jp.boundary), 1e-8) << name;
      EXPECT_LE(rel_gap(jp.interior, ctx.form(V, W)), 1e-6) << name;
    }
  }
}

TEST(Hessian, KillingFieldsHaveNoBoundaryTerm) {
  std::mt19937_64 rng(9);
  for (const std::string name : {"s2-great-circle", "s2-meridian-theta"}) {
    const DiscreteMap& f = critical_map(name);
    HessianContext ctx(f, scenario_p(name));
    for (int k = 0; k < 5; ++k) {
      FieldAlongMap V = killing_field(f, random_skew(rng, 3));
      EXPECT_TRUE(balanced_membership(f, V).balanced) << name;
      EXPECT_LE(std::abs(ctx.form_jacobi(V, random_field(f, rng)).boundary), 1e-8) << name;
    }
  }
}

TEST(Hessian, Errors) {
  Scenario s = load_scenario("torus-hexagonal");
  try {
    HessianContext ctx(s.initial, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCritical);
  }
  DiscreteMap f = slow_start_theta();
  HessianContext ctx(f, 1);
  std::mt19937_64 rng(10);
  FieldAlongMap V = random_field(f, rng);
  try {
    ctx.form_jacobi(V, V);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotGeodesicMap);
  }
  EXPECT_LE(rel_gap(ctx.form(V, V), ctx.form_split(V, V)), 1e-7);
}

TEST(Hessian, SecondDifferenceOrder) {
  std::mt19937_64 rng(11);
  for (const std::string name : {"torus-hexagonal", "s2-meridian-theta", "berger-hopf"}) {
    const DiscreteMap& f = critical_map(name);
    int p = scenario_p(name);
    HessianContext ctx(f, p);
    FieldAlongMap W = smooth_field(f, rng);
    double hess = ctx.form(W, W);
    double e0 = energy(f, p);
    auto err = [&](double h) {
      return std::abs((energy(vary(f, W, h), p) - 2 * e0 + energy(vary(f, W, -h), p)) / (h * h) - hess);
    };
    double e1 = err(2e-2), e2 = err(1e-2);
    EXPECT_TRUE(converges_with_order(e1, e2, hess)) << name << " " << e1 << " " << e2;
  }
}

TEST(Hessian, MonotonicityUnderWeightTransmutation) {
  std::mt19937_64 rng(12);
  for (const std::string name : {"s2-meridian-theta", "g2-geodesic-loop"}) {
    const DiscreteMap& f = critical_map(name, 1);
    HessianContext h1(f, 1);
    for (int p = 2; p <= 3; ++p) {
      auto g = std::make_shared<WeightedGraph>(f.graph().with_weights(weight_transmute(f, p)));
      HessianContext hp(f.with_graph(g), p);
      for (int k = 0; k < 3; ++k) {
        FieldAlongMap V = random_field(f, rng);
        double term = (p - 1) * h1.tangential_term(V);
        EXPECT_GE(term, -1e-10);
        double lhs = hp.form(V, V);
        EXPECT_NEAR(lhs, h1.form(V, V) + term, 1e-7 * (1.0 + std::abs(lhs))) << name << " p=" << p;
      }
    }
  }
}

TEST(Matrix, SymmetricAndMatchesForm) {
  const DiscreteMap& f = critical_map("s2-meridian-theta");
  HessianContext ctx(f, 1);
  HessianAssembly A = hessian_matrix(ctx);
  double norm = A.matrix.cwiseAbs().rowwise().sum().maxCoeff();
  EXPECT_LE((A.matrix - A.matrix.transpose()).cwiseAbs().maxCoeff(), 1e-10 * norm);
  EXPECT_EQ(A.matrix.rows(), 2 * f.node_count());
  std::mt19937_64 rng(13);
  FieldAlongMap V = random_field(f, rng);
  FieldAlongMap back = A.field(A.coordinates(V));
  for (int e = 0; e < f.graph().edge_count(); ++e) {
    EXPECT_LE((back.edge_values(e) - V.edge_values(e)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Matrix, TorusPositiveSemidefinite) {
  HessianContext ctx(critical_map("torus-hexagonal"), 2);
  StabilityVerdict v = stability_verdict(hessian_matrix(ctx));
  EXPECT_GE(v.min_eig, -1e-8);
  EXPECT_FALSE(v.unstable);
}

TEST(Matrix, ThetaNetRegressionValue) {
  HessianContext ctx(critical_map("s2-meridian-theta"), 1);
  StabilityVerdict v = stability_verdict(hessian_matrix(ctx));
  EXPECT_TRUE(v.unstable);
  // Lumped-mass eigenvalues approach -pi at second order in N; this is N = 64.
  EXPECT_LE(std::abs(v.min_eig + M_PI), 2e-3);
  EXPECT_NEAR(v.spectrum[1], v.min_eig, 1e-8);
  EXPECT_NEAR(v.min_eig, -3.14008359448, 1e-9);
}

TEST(Verdict, ToyMatrices) {
  StabilityVerdict z = stability_verdict(Mat::Zero(3, 3), 1e-9);
  EXPECT_FALSE(z.unstable);
  EXPECT_EQ(z.min_eig, 0.0);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = -1;
  StabilityVerdict u = stability_verdict(d, 1e-9);
  EXPECT_TRUE(u.unstable);
  EXPECT_EQ(u.min_eig, -1.0);
  EXPECT_NEAR(std::abs(u.eigenvector[1]), 1.0, 1e-15);
}

TEST(Verdict, BergerHopfFiberIsStable) {
  HessianContext ctx(critical_map("berger-hopf"), 1);
  StabilityVerdict v = stability_verdict(hessian_matrix(ctx));
  EXPECT_FALSE(v.unstable);
  EXPECT_GE(v.min_eig, -v.tol);
}

TEST(Verdict, WitnessRayleighQuotient) {
  const DiscreteMap& f = critical_map("s2-great-circle");
  HessianContext ctx(f, 1);
  HessianAssembly A = hessian_matrix(ctx);
  StabilityVerdict v = stability_verdict(A);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_NO_THROW(v.witness->validate(f));
  Vec c = A.coordinates(*v.witness);
  double rq = c.dot(A.matrix * c) / c.squaredNorm();
  EXPECT_NEAR(rq, v.min_eig, 1e-6 * std::abs(v.min_eig));
}

TEST(Balanced, Membership) {
  const DiscreteMap& torus = critical_map("torus-hexagonal");
  Vec t(2);
  t << 0.3, -0.8;
  FieldAlongMap c = FieldAlongMap::from_nodes(torus, [&](int, const Vec&) { return t; });
  EXPECT_TRUE(balanced_membership(torus, c).balanced);
  std::mt19937_64 rng(14);
  BalancedReport r = balanced_membership(torus, random_field(torus, rng));
  EXPECT_FALSE(r.balanced);
  EXPECT_GT(r.max_residual, 1e-3);
}
