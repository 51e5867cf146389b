#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "catsense/fock.hpp"
#include "catsense/special.hpp"
#include "oracles.hpp"

using namespace catsense;
using std::numbers::pi;
using oracle::cd;

TEST(Special, HermiteFunctionsMatchPolynomialForm) {
  for (double x : {-3.1, -0.4, 0.0, 0.7, 2.5}) {
    const auto phi = hermite_functions(12, x);
    for (int n = 0; n <= 12; ++n) EXPECT_NEAR(phi[n], oracle::phi(n, x), 1e-12) << n << " " << x;
  }
}

TEST(Special, LaguerreMatchesPowerSeries) {
  for (int n : {0, 1, 2, 5, 9})
    for (int k : {0, 1, 3})
      for (double x : {0.0, 0.3, 2.0, 7.5})
        EXPECT_NEAR(laguerre(n, k, x), oracle::laguerre_sum(n, k, x), 1e-9 * (1 + std::abs(oracle::laguerre_sum(n, k, x))));
}

TEST(Special, DisplacedElementMatchesNormalOrderedSum) {
  for (cd g : {cd{0.3, 0.0}, cd{1.1, -0.7}, cd{-2.0, 0.5}, cd{0.0, 0.0}})
    for (int m = 0; m < 8; ++m)
      for (int n = 0; n < 8; ++n)
        EXPECT_LT(std::abs(displaced_number_element(m, n, g) - oracle::displaced_element_sum(m, n, g)), 1e-12)
            << m << "," << n << " g=" << g;
}

TEST(Special, GaussHermiteIntegratesMoments) {
  const auto& rule = gauss_hermite(64);
  for (int k = 0; k <= 10; ++k) {
    const double got = rule.integrate([&](double x) { return std::pow(x, 2 * k) * std::exp(-x * x); });
    EXPECT_NEAR(got, std::tgamma(k + 0.5), 1e-10 * std::tgamma(k + 0.5));
  }
}

TEST(CoherentFock, Vacuum) {
  const auto v = coherent_fock(0.0, 16);
  EXPECT_DOUBLE_EQ(v[0].real(), 1.0);
  for (std::size_t n = 1; n < 16; ++n) EXPECT_EQ(v[n], complex(0.0));
}

TEST(CoherentFock, GroundAmplitude) { EXPECT_NEAR(coherent_fock(1.0, 32)[0].real(), 0.6065306597, 1e-10); }

TEST(CoherentFock, AmplitudesAndMean) {
  const complex a{1.3, -0.8};
  const auto s = coherent_fock(a, 40);
  for (int n = 0; n < 40; ++n) EXPECT_LT(std::abs(s[n] - oracle::coherent_coeff(a, n)), 1e-12);
  EXPECT_NEAR(expect_n(coherent_fock(3.0, 64)), 9.0, 1e-10);
}

TEST(CoherentFock, TruncationHeuristic) {
  EXPECT_THROW(coherent_fock(3.0, 30), TruncationTooSmall);  // 9 + 18 + 8 = 35
  EXPECT_NO_THROW(coherent_fock(3.0, 36));
}

TEST(CatFock, ParityOfEvenAndOddCats) {
  const auto even = cat_fock({{2.0, 0.0}, 0.0, 0, 2}, 40);
  const auto odd = cat_fock({{2.0, 0.0}, pi, 0, 2}, 40);
  for (std::size_t n = 1; n < 40; n += 2) EXPECT_EQ(std::abs(even[n]), 0.0);
  for (std::size_t n = 0; n < 40; n += 2) EXPECT_LT(std::abs(odd[n]), 1e-15);
  EXPECT_NEAR(even.norm_sq(), 1.0, 1e-12);
}

TEST(CatFock, ZeroAmplitudeEvenCatIsVacuum) {
  const auto v = cat_fock({{0.0, 0.0}, 0.0, 0, 2}, 16);
  EXPECT_NEAR(std::abs(v[0]), 1.0, 1e-15);
}

TEST(CatFock, DegenerateOddCatRejected) {
  EXPECT_THROW(cat_fock({{0.0, 0.0}, pi, 0, 2}, 16), DegenerateState);
  EXPECT_THROW(validate({{0.0, 0.0}, 3.14159, 0, 2}), DegenerateState);
  EXPECT_THROW(validate({{0.0, 0.0}, pi, 2, 2}), DegenerateState);
}

TEST(CatFock, InvalidSpecs) {
  EXPECT_THROW(validate({{1.0, 0.0}, 0.0, 0, 3}), UnsupportedSpec);
  EXPECT_THROW(validate({{1.0, 0.0}, -0.5, 0, 2}), UnsupportedSpec);
  EXPECT_THROW(validate({{1.0, 0.0}, 0.0, -1, 2}), UnsupportedSpec);
  EXPECT_THROW(cat_fock({{1.0, 0.0}, 0.0, 1, 2}, 32), UnsupportedSpec);
}

TEST(CatFock, CompassKeepsEveryFourthNumberState) {
  const auto c = cat_fock({{2.0, 0.0}, 0.0, 0, 4}, 48);
  for (std::size_t n = 0; n < 48; ++n)
    if (n % 4 != 0) EXPECT_LT(std::abs(c[n]), 1e-15) << n;
}

TEST(AddPhoton, VacuumToOne) {
  const auto one = add_photon(FockVector::number_state(0, 8));
  EXPECT_NEAR(std::abs(one[1]), 1.0, 1e-15);
}

TEST(AddPhoton, EvenCatOrthogonal) {
  const auto c = cat_fock({{2.0, 0.0}, 0.0, 0, 2}, 40);
  EXPECT_LT(std::abs(overlap(c, add_photon(c))), 1e-12);
}

TEST(AddPhoton, OrthogonalForAllTestedAmplitudes) {
  for (double a : {0.3, 1.0, 2.0, 3.0}) {
    const auto c = cat_fock({{a, 0.0}, 0.0, 0, 2}, 64);
    EXPECT_LT(std::abs(overlap(c, add_photon(c))), 1e-10);
    const auto k = cat_fock({{a, 0.0}, 0.0, 0, 4}, 64);
    EXPECT_LT(std::abs(overlap(k, add_photon(k))), 1e-10);
  }
}

TEST(AddPhoton, CoherentMeanAgreesWithClosedForm) {
  const auto s = add_photon(coherent_fock(1.0, 32));
  EXPECT_NEAR(expect_n(s), oracle::spacs_mean_n(1.0), 1e-10);
}

TEST(AddPhoton, RefusesToLoseMass) {
  std::vector<complex> amps(8);
  amps[7] = 1.0;
  EXPECT_THROW(add_photon(FockVector(amps)), TruncationTooSmall);
}

TEST(Annihilate, SwapsEvenAndOddCats) {
  const auto even = cat_fock({{2.0, 0.0}, 0.0, 0, 2}, 40);
  const auto odd = cat_fock({{2.0, 0.0}, pi, 0, 2}, 40);
  EXPECT_NEAR(fidelity(annihilate(even), odd), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(annihilate(odd), even), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(annihilate(annihilate(even)), even), 1.0, 1e-12);
}

TEST(Annihilate, VacuumHasNoImage) { EXPECT_THROW(annihilate(FockVector::number_state(0, 4)), ZeroImage); }

TEST(Overlap, Basics) {
  const auto c = coherent_fock({0.4, 0.9}, 32);
  EXPECT_NEAR(std::abs(overlap(c, c) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(overlap(coherent_fock(2.0, 48), coherent_fock(-2.0, 48)).real(), std::exp(-8.0), 1e-10);
  EXPECT_THROW(overlap(coherent_fock(0.0, 16), coherent_fock(0.0, 17)), DimensionMismatch);
}

TEST(Overlap, CompassOrthogonalToPhotonAdded) {
  const auto c = cat_fock({{2.0, 0.0}, 0.0, 0, 4}, 48);
  EXPECT_LT(std::abs(overlap(c, add_photon(c))), 1e-10);
}

TEST(Moments, NumberState) {
  const auto one = FockVector::number_state(1, 8);
  EXPECT_DOUBLE_EQ(expect_n(one), 1.0);
  EXPECT_DOUBLE_EQ(expect_n2(one), 1.0);
  EXPECT_DOUBLE_EQ(mandel_q(one), 0.0);
}

TEST(Moments, CoherentAndYurkeStolerArePoissonian) {
  EXPECT_NEAR(mandel_q(coherent_fock(2.0, 48)), 1.0, 1e-10);
  EXPECT_NEAR(mandel_q(cat_fock({{1.5, 0.0}, pi / 2, 0, 2}, 48)), 1.0, 1e-9);
}

TEST(Moments, VacuumQUndefined) { EXPECT_THROW(mandel_q(FockVector::number_state(0, 4)), UndefinedQ); }

TEST(Moments, TruncationConverged) {
  for (double a : {0.3, 1.0, 2.0, 3.0})
    for (int k : {0, 1, 2}) {
      const CatSpec s{{a, 0.0}, pi / 3, k, 2};
      const std::size_t d = recommended_dim(s);
      const auto lo = state_fock(s, d), hi = state_fock(s, 2 * d);
      EXPECT_NEAR(expect_n(lo), expect_n(hi), 1e-9);
      EXPECT_NEAR(expect_n2(lo), expect_n2(hi), 1e-9);
    }
}

TEST(FockVector, TailCheck) {
  EXPECT_NO_THROW(check_truncation(coherent_fock(2.0, 40)));
  std::vector<complex> amps(10, 1.0);
  EXPECT_THROW(check_truncation(FockVector(amps)), TruncationTooSmall);
  EXPECT_THROW(FockVector(std::vector<complex>{}), DimensionMismatch);
}
