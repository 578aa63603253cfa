#include "test_util.hpp"

using namespace kgms;
using namespace kgms::test;

TEST(Lattice, ModeCountAndOrdering) {
  const auto lat = build_lattice(1, 2 * kPi, 16, 3, 1.0);
  ASSERT_EQ(lat->num_modes(), 7u);
  for (std::size_t k = 0; k < 7; ++k) EXPECT_EQ(lat->nvec(k)[0], static_cast<int>(k) - 3);
  const auto lat2 = build_lattice(2, 1.0, 8, 1, 1.0);
  EXPECT_EQ(lat2->num_modes(), 9u);
  EXPECT_EQ(lat2->nvec(1)[0], -1);
  EXPECT_EQ(lat2->nvec(1)[1], 0);
}

TEST(Lattice, RejectsZeroMass) {
  try {
    build_lattice(1, 2 * kPi, 16, 3, 0.0);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("mass must be positive"), std::string::npos);
  }
}

TEST(Lattice, RejectsAliasing) {
  try {
    build_lattice(1, 2 * kPi, 8, 4, 1.0);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("aliasing"), std::string::npos);
  }
  EXPECT_THROW(build_lattice(1, 2 * kPi, 7, 3, 1.0), std::invalid_argument);
  EXPECT_THROW(build_lattice(1, -1.0, 8, 3, 1.0), std::invalid_argument);
  EXPECT_THROW(build_lattice(0, 1.0, 8, 3, 1.0), std::invalid_argument);
  EXPECT_THROW(build_lattice(1, 1.0, 8, 3, 1.0, 0.0), std::invalid_argument);
}

TEST(Lattice, Dispersion) {
  const auto lat = build_lattice(1, 2 * kPi, 16, 3, 1.0);
  const double zero[] = {0.0};
  const double one[] = {1.0};
  EXPECT_DOUBLE_EQ(dispersion(*lat, zero), 1.0);
  EXPECT_DOUBLE_EQ(dispersion(*lat, one), std::sqrt(2.0));
  const auto lat3 = build_lattice(3, 2 * kPi, 4, 1, 2.0);
  const double z3[] = {0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(dispersion(*lat3, z3), 2.0);
}

TEST(Lattice, WeightsAndSymmetry) {
  const auto lat = build_lattice(2, 3.0, 12, 4, 0.7);
  const double cell = std::pow(2 * kPi / 3.0, 2);
  for (std::size_t k = 0; k < lat->num_modes(); ++k) {
    const std::size_t kb = lat->negated(k);
    EXPECT_EQ(lat->nvec(kb)[0], -lat->nvec(k)[0]);
    EXPECT_EQ(lat->nvec(kb)[1], -lat->nvec(k)[1]);
    EXPECT_DOUBLE_EQ(lat->weight(kb), lat->weight(k));
    EXPECT_NEAR(lat->weight(k), cell / (2 * lat->k0(k)), 1e-15);
    EXPECT_GT(lat->weight(k), 0.0);
  }
  EXPECT_EQ(lat->nvec(lat->zero_mode())[0], 0);
}

TEST(Lattice, ForwardOfZeroAndConstant) {
  const auto lat = default_lattice();
  const CField zero(lat->num_points());
  for (const auto& c : dft_forward(*lat, zero)) EXPECT_EQ(c, cplx{});
  const cplx c{0.3, -1.1};
  const CField cst(lat->num_points(), c);
  const CField hat = dft_forward(*lat, cst);
  for (std::size_t k = 0; k < hat.size(); ++k) {
    const cplx expect = k == lat->zero_mode() ? c * (2 * kPi / std::sqrt(2 * kPi)) : cplx{};
    EXPECT_CNEAR(hat[k], expect, 1e-13);
  }
}

TEST(Lattice, ForwardOfExponentialIsKronecker) {
  for (int d : {1, 2}) {
    const double L = 3.7;
    const auto lat = build_lattice(d, L, 8, 3, 1.0);
    const std::size_t kp = lat->num_modes() / 3;
    CField psi(lat->num_points());
    for (std::size_t j = 0; j < psi.size(); ++j) {
      double arg = 0.0;
      for (int a = 0; a < d; ++a) arg += lat->k(kp, a) * lat->grid_coord(j, a);
      psi[j] = std::polar(1.0, arg);
    }
    const CField hat = dft_forward(*lat, psi);
    const double amp = std::pow(2 * kPi, -0.5 * d) * std::pow(L, d);
    for (std::size_t k = 0; k < hat.size(); ++k) {
      EXPECT_CNEAR(hat[k], cplx(k == kp ? amp : 0.0), 1e-12);
    }
    // inverse of a unit coefficient
    CField unit(lat->num_modes());
    unit[kp] = amp;
    EXPECT_LE(max_diff(dft_inverse(*lat, unit), psi), 1e-13);
  }
}

TEST(Lattice, ShapeMismatchThrows) {
  const auto lat = default_lattice();
  EXPECT_THROW(dft_forward(*lat, CField(5)), std::invalid_argument);
  EXPECT_THROW(dft_inverse(*lat, CField(5)), std::invalid_argument);
}

TEST(Lattice, RoundTripAndParseval) {
  const auto lat = build_lattice(2, 5.0, 16, 6, 1.3);
  Rng rng(11);
  const CField hat = random_modes(lat->num_modes(), rng);
  const CField psi = dft_inverse(*lat, hat);
  EXPECT_LE(max_diff(dft_forward(*lat, psi), hat), 1e-12);
  EXPECT_LE(max_diff(dft_inverse(*lat, dft_forward(*lat, psi)), psi), 1e-12);
  double lhs = 0.0, rhs = 0.0;
  for (const auto& v : psi) lhs += std::norm(v);
  lhs *= lat->cell_volume();
  for (const auto& v : hat) rhs += std::norm(v);
  rhs *= std::pow(2 * kPi / 5.0, 2);
  EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
}

TEST(Lattice, RealityMeansConjugateSymmetry) {
  const auto lat = default_lattice();
  Rng rng(5);
  const CField hat = random_modes(lat->num_modes(), rng);
  CField psi = dft_inverse(*lat, hat);
  for (auto& v : psi) v = v.real();
  const CField rh = dft_forward(*lat, psi);
  for (std::size_t k = 0; k < rh.size(); ++k) {
    EXPECT_CNEAR(rh[lat->negated(k)], std::conj(rh[k]), 1e-12);
  }
}

TEST(Lattice, BandLimitDefect) {
  const auto lat = build_lattice(1, 2 * kPi, 16, 3, 1.0);
  CField ok(16), bad(16);
  for (int j = 0; j < 16; ++j) {
    const double x = lat->grid_coord(j, 0);
    ok[j] = std::cos(3 * x);
    bad[j] = std::cos(5 * x);
  }
  EXPECT_LE(band_limit_defect(*lat, ok), 1e-20);
  EXPECT_NEAR(band_limit_defect(*lat, bad), 1.0, 1e-12);
}
