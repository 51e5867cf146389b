#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "catsense/subplanck.hpp"
#include "oracles.hpp"

using namespace catsense;
using std::numbers::pi;

namespace {

struct CompassFields {
  WignerField f0, f1;
};

const CompassFields& compass(double a) {
  static std::map<double, CompassFields> cache;
  auto it = cache.find(a);
  if (it == cache.end()) {
    const CatSpec c0{{a, 0.0}, 0.0, 0, 4}, c1{{a, 0.0}, 0.0, 1, 4};
    const auto g = default_grid(c0, 301, 301);
    it = cache.emplace(a, CompassFields{wigner_fock(state_fock(c0), g), wigner_fock(state_fock(c1), g)}).first;
  }
  return it->second;
}

}  // namespace

TEST(Tiles, CompassOriginIsExtremumAndTileIsSubPlanck) {
  const auto r = tile_extrema(compass(2.5).f0);
  EXPECT_LT(std::hypot(r.center.x, r.center.p), 0.05);
  EXPECT_EQ(r.center.kind, ExtremumKind::max);
  EXPECT_GT(r.tile_area, 0.0);
  EXPECT_LT(r.planck_ratio(), 1.0);
  // central pattern ~ cos(2 a1 x) + cos(2 a1 p): tile side pi / (sqrt2 a1)
  const double a1 = 2.5 * std::numbers::sqrt2;
  EXPECT_NEAR(r.spacing_u, pi / (std::numbers::sqrt2 * a1), 0.05);
}

TEST(Tiles, LatticeRunsAlongDiagonals) {
  const auto r = tile_extrema(compass(2.5).f0);
  const double folded = std::fmod(std::abs(r.lattice_angle), pi / 2);
  EXPECT_NEAR(folded, pi / 4, 0.05);
}

TEST(Tiles, ExtremaAlternateAlongLattice) {
  const auto r = tile_extrema(compass(2.5).f0);
  const double step = r.spacing_u;
  const double ux = std::cos(r.lattice_angle), up = std::sin(r.lattice_angle);
  const auto& f = compass(2.5).f0;
  // stepping one tile along either lattice direction lands on the opposite sign
  EXPECT_LT(value_at(f, step * ux, step * up) * r.center.value, 0.0);
  EXPECT_LT(value_at(f, -step * up, step * ux) * r.center.value, 0.0);
}

TEST(Tiles, AreaScalesWithInverseSquareAmplitude) {
  const double ratio = tile_extrema(compass(3.5).f0).tile_area / tile_extrema(compass(2.5).f0).tile_area;
  EXPECT_NEAR(ratio / std::pow(2.5 / 3.5, 2), 1.0, 0.15);
}

TEST(Tiles, VacuumHasNoPattern) {
  const auto f = wigner_fock(FockVector::number_state(0, 16), PhaseSpaceGrid{-3, 3, -3, 3, 61, 61});
  EXPECT_THROW(tile_extrema(f), NoCentralPattern);
}

TEST(Tiles, DisplacedCoherentStateHasNoPattern) {
  const auto f = wigner_fock(coherent_fock(from_quadrature(4.0, 0.0), 48), PhaseSpaceGrid{-6, 6, -6, 6, 121, 121});
  EXPECT_THROW(tile_extrema(f), NoCentralPattern);
}

TEST(Interchange, SelfAndNegated) {
  const auto& f = compass(2.5).f0;
  EXPECT_NEAR(tile_interchange(f, f).correlation, 1.0, 1e-12);
  auto neg = f;
  for (auto& v : neg.values) v = -v;
  const auto r = tile_interchange(f, neg);
  EXPECT_NEAR(r.correlation, -1.0, 1e-12);
  EXPECT_TRUE(r.origin_sign_flip);
}

TEST(Interchange, PhotonAdditionSwapsMaximaAndMinima) {
  const auto& c = compass(2.5);
  const auto r = tile_interchange(c.f0, c.f1);
  EXPECT_LT(r.correlation, -0.5);
  EXPECT_TRUE(r.origin_sign_flip);
  const auto t0 = tile_extrema(c.f0), t1 = tile_extrema(c.f1);
  EXPECT_LE(max_pairing_distance(t0, t1), 0.5 * std::min(t0.spacing_u, t0.spacing_v));
}

TEST(Interchange, GridMismatch) {
  const auto a = wigner_fock(FockVector::number_state(0, 16), PhaseSpaceGrid{-3, 3, -3, 3, 11, 11});
  const auto b = wigner_fock(FockVector::number_state(0, 16), PhaseSpaceGrid{-3, 3, -3, 3, 13, 13});
  EXPECT_THROW(tile_interchange(a, b), GridMismatch);
}

TEST(Displacement, MatrixMatchesClosedFormElements) {
  const complex d{0.4, -0.3};
  const auto m = displacement_matrix(60, d);
  for (int r = 0; r < 12; ++r)
    for (int c = 0; c < 12; ++c) EXPECT_LT(std::abs(m(r, c) - oracle::displaced_element_sum(r, c, d)), 1e-12);
}

TEST(Displacement, ExpmOfScaledMatrix) {
  Eigen::MatrixXcd a(2, 2);
  a << 0.0, -3.0, 3.0, 0.0;  // rotation generator
  const auto e = expm(a);
  EXPECT_NEAR(e(0, 0).real(), std::cos(3.0), 1e-13);
  EXPECT_NEAR(e(1, 0).real(), std::sin(3.0), 1e-13);
}

TEST(Sensitivity, CoherentStateDecaysAsGaussian) {
  const complex dirs[] = {{1.0, 0.0}, {0.6, 0.8}};
  const auto curves = sensitivity_scan(coherent_fock(1.0, 32), dirs, 3.0, 60);
  for (const auto& c : curves) {
    EXPECT_EQ(c.samples.front().overlap_sq, 1.0);
    for (const auto& s : c.samples) EXPECT_NEAR(s.overlap_sq, std::exp(-std::norm(s.delta)), 1e-8);
  }
}

TEST(Sensitivity, CompassFirstZeroScalesAsInverseAmplitude) {
  const complex dirs[] = {{1.0, 0.0}, {0.0, 1.0}};
  double prev = 1e9;
  std::vector<double> zeros;
  for (double a : {1.5, 2.5, 3.5}) {
    const auto curves = sensitivity_scan(state_fock({{a, 0.0}, 0.0, 0, 4}), dirs, 1.5, 150);
    ASSERT_TRUE(curves[0].first_zero && curves[1].first_zero);
    EXPECT_NEAR(*curves[0].first_zero, *curves[1].first_zero, 1e-9);
    EXPECT_LT(*curves[0].first_zero, prev);
    prev = *curves[0].first_zero;
    zeros.push_back(prev);
    for (const auto& c : curves)
      for (const auto& s : c.samples) {
        EXPECT_GE(s.overlap_sq, 0.0);
        EXPECT_LE(s.overlap_sq, 1.0 + 1e-12);
      }
  }
  EXPECT_NEAR(zeros[2] / zeros[1], 2.5 / 3.5, 0.15 * 2.5 / 3.5);
}

TEST(Sensitivity, EvenUnderReversal) {
  const auto s = state_fock({{2.0, 0.0}, 0.0, 0, 2});
  const complex dirs[] = {{0.6, 0.8}, {-0.6, -0.8}};
  const auto c = sensitivity_scan(s, dirs, 1.0, 20);
  for (std::size_t k = 0; k < c[0].samples.size(); ++k)
    EXPECT_NEAR(c[0].samples[k].overlap_sq, c[1].samples[k].overlap_sq, 1e-12);
}

TEST(Orthogonality, Examples) {
  EXPECT_LT(orthogonality_check(state_fock({{2.0, 0.0}, 0.0, 0, 2})), 1e-10);
  EXPECT_LT(orthogonality_check(state_fock({{2.5, 0.0}, 0.0, 0, 4})), 1e-10);
  EXPECT_NEAR(orthogonality_check(coherent_fock(1.0, 32)), 1.0 / std::sqrt(2.0), 1e-10);
}
