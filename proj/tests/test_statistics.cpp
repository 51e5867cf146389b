#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "catsense/statistics.hpp"

using namespace catsense;
using std::numbers::pi;

TEST(QClosed, SmallAmplitudeLimitIsNumberStateOne) {
  const auto q = q_closed_form(1e-6, 0.0);
  EXPECT_NEAR(q.mean_n, 1.0, 1e-9);
  EXPECT_NEAR(q.mean_n2, 1.0, 1e-9);
  EXPECT_NEAR(q.q, 0.0, 1e-9);
  EXPECT_EQ(q.cls, PoissonClass::sub);
}

TEST(QClosed, YurkeStolerIsSubPoissonianAfterAddition) { EXPECT_LT(q_closed_form(1.5, pi / 2).q, 1.0); }

TEST(QClosed, MatchesOracle) {
  const auto c = q_closed_form(2.0, 0.0);
  const auto o = q_oracle({{2.0, 0.0}, 0.0, 1, 2});
  EXPECT_NEAR(c.q, o.q, 1e-9);
  EXPECT_NEAR(c.mean_n, o.mean_n, 1e-9);
  EXPECT_NEAR(c.mean_n2, o.mean_n2, 1e-9);
  EXPECT_NEAR(c.q, mandel_q(add_photon(cat_fock({{2.0, 0.0}, 0.0, 0, 2}, 64))), 1e-9);
}

TEST(QClosed, CoherentLimitForLargeAmplitude) {
  // for |alpha| large the cat branches decouple and <n> -> SPACS value
  const double a2 = 9.0;
  EXPECT_NEAR(q_closed_form(3.0, pi / 3).mean_n, (a2 * a2 + 3 * a2 + 1) / (1 + a2), 1e-6);
}

TEST(QClosed, Degenerate) {
  EXPECT_THROW(q_closed_form(0.0, pi), DegenerateState);
  EXPECT_NO_THROW(q_closed_form(0.0, 0.0));
  EXPECT_THROW(q_closed_form(1.0, 4.0), UnsupportedSpec);
}

TEST(QClosed, BPlusMinus) {
  const auto q = q_closed_form(0.7, pi / 3);
  const double e = std::exp(-2 * 0.49) * 0.5;
  EXPECT_NEAR(q.b_plus, 1 + e, 1e-15);
  EXPECT_NEAR(q.b_minus, 1 - e, 1e-15);
}

TEST(QOracle, CatBaselines) {
  EXPECT_GT(q_oracle({{1.0, 0.0}, 0.0, 0, 2}).q, 1.0);
  EXPECT_LT(q_oracle({{1.0, 0.0}, pi, 0, 2}).q, 1.0);
  for (double a : {0.2, 1.0, 2.3}) {
    const auto q = q_oracle({{a, 0.0}, pi / 2, 0, 2});
    EXPECT_NEAR(q.q, 1.0, 1e-9);
    EXPECT_EQ(q.cls, PoissonClass::poissonian);
  }
}

TEST(QOracle, VarianceNonNegativeAndConsistent) {
  for (double a : {0.1, 1.0, 2.5})
    for (double th : {0.0, pi / 2, pi})
      for (int k : {0, 1, 2}) {
        const auto q = q_oracle({{a, 0.0}, th, k, 2});
        EXPECT_GE(q.mean_n2 - q.mean_n * q.mean_n, -1e-12);
        EXPECT_NEAR(q.q, (q.mean_n2 - q.mean_n * q.mean_n) / q.mean_n, 1e-15);
        EXPECT_EQ(q.cls, classify(q.q));
      }
}

TEST(QSweep, ClosedAgreesWithOracleOnFullGrid) {
  const auto rows = q_sweep({0.0, pi / 4, pi / 2, 3 * pi / 4, pi}, 0.05, 3.0, 60, 1);
  ASSERT_EQ(rows.size(), 300u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.q_closed.has_value());
    EXPECT_NEAR(*r.q_closed, r.q_oracle, 1e-9) << r.theta << " " << r.alpha_abs;
    EXPECT_TRUE(std::isfinite(*r.q_closed));
    EXPECT_LT(*r.q_closed, 1.0);
  }
}

TEST(QSweep, DenominatorStaysPositive) {
  for (int i = 1; i <= 60; ++i) {
    const double a = 0.05 * i;
    const auto q = q_closed_form(a, pi);
    EXPECT_GE(a * a * q.b_minus + q.b_plus, 1.0 - std::exp(-2 * a * a));
  }
}

TEST(QSweep, YurkeStolerRowIsPoissonian) {
  for (const auto& r : q_sweep({pi / 2}, 0.05, 3.0, 30, 0)) {
    EXPECT_FALSE(r.q_closed.has_value());
    EXPECT_NEAR(r.q_oracle, 1.0, 1e-9);
  }
}

TEST(QSweep, BadRange) {
  EXPECT_THROW(q_sweep({0.0}, 0.0, 1.0, 10, 1), UnsupportedSpec);
  EXPECT_THROW(q_sweep({0.0}, 2.0, 1.0, 10, 1), UnsupportedSpec);
}

TEST(Classify, Band) {
  EXPECT_EQ(classify(1.0 + 5e-10), PoissonClass::poissonian);
  EXPECT_EQ(classify(1.0 + 2e-9), PoissonClass::super);
  EXPECT_EQ(classify(0.99), PoissonClass::sub);
}
