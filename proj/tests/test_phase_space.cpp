#include "test_util.hpp"

using namespace kgms;
using namespace kgms::test;

namespace {

struct Fixture {
  LatticePtr lat = default_lattice();
  Rng rng{11};
  Solution sol = random_solution(lat, rng);
  Deformation d1{random_solution(lat, rng)};
  Deformation d2{random_solution(lat, rng)};
};

}  // namespace

TEST(PhaseSpace, ThetaIsLinear) {
  Fixture f;
  const Deformation zero{zero_solution(f.lat)};
  EXPECT_EQ(theta_sigma(f.sol, zero, 1.0, 0.0), cplx{});
  const cplx a{0.3, 1.2}, b{-2.0, 0.1};
  const Deformation mix{a * f.d1.field + b * f.d2.field};
  const cplx lhs = theta_sigma(f.sol, mix, 0.7, 0.4);
  const cplx rhs = a * theta_sigma(f.sol, f.d1, 0.7, 0.4) + b * theta_sigma(f.sol, f.d2, 0.7, 0.4);
  EXPECT_LE(std::abs(lhs - rhs), 1e-12 * (1 + std::abs(rhs)));
}

TEST(PhaseSpace, ThetaDependsOnLambda) {
  Fixture f;
  EXPECT_GT(std::abs(theta_sigma(f.sol, f.d1, 0.0, 0.0) - theta_sigma(f.sol, f.d1, 1.0, 0.0)), 1e-3);
}

TEST(PhaseSpace, ThetaPointwiseAndSpatialShift) {
  Fixture f;
  const cplx th = theta_sigma(f.sol, f.d1, 0.4, 0.2);
  EXPECT_LE(std::abs(theta_sigma_pointwise(f.sol, f.d1, 0.4, 0.2) - th), 1e-10 * (1 + std::abs(th)));
  const cplx sh = theta_sigma_pointwise(f.sol, f.d1, 0.4, 0.2, TangentialShift{1, {0.8, -0.2}});
  EXPECT_LE(std::abs(sh - th), 1e-10 * (1 + std::abs(th)));
}

TEST(PhaseSpace, OmegaPathsAgreeAndShiftInvariance) {
  Fixture f;
  const OmegaPaths p = omega_sigma_paths(f.sol, f.d1, f.d2, 0.3);
  EXPECT_LE(std::abs(p.closed_form - p.pointwise), 1e-10 * std::abs(p.closed_form));
  for (int mu = 0; mu < 2; ++mu) {
    const OmegaPaths s = omega_sigma_paths(f.sol, f.d1, f.d2, 0.3, TangentialShift{mu, 1.5});
    EXPECT_LE(std::abs(s.pointwise - p.closed_form), 1e-10 * std::abs(p.closed_form));
  }
}

TEST(PhaseSpace, OmegaAntisymmetricAndSliceIndependent) {
  Fixture f;
  EXPECT_LE(std::abs(omega_sigma(f.sol, f.d1, f.d1, 0.0)), 1e-14);
  const cplx w = omega_sigma(f.sol, f.d1, f.d2, 0.0);
  EXPECT_CNEAR(omega_sigma(f.sol, f.d2, f.d1, 0.0), -w, 1e-14);
  for (double t : {1.0, 4.5}) EXPECT_CNEAR(omega_sigma(f.sol, f.d1, f.d2, t), w, 1e-12);
}

TEST(PhaseSpace, DeltaThetaIsOmega) {
  Fixture f;
  const cplx w = omega_sigma(f.sol, f.d1, f.d2, 0.6);
  for (double lambda : {0.0, 0.5, 1.0}) {
    const cplx fd = fd_delta_theta(f.sol, f.d1, f.d2, lambda, 0.6, 1e-2);
    EXPECT_LE(std::abs(fd - w), 1e-10 * (1 + std::abs(w)));
    EXPECT_LE(std::abs(fd - fd_delta_theta(f.sol, f.d1, f.d2, lambda, 0.6, 5e-3)), 1e-11 * (1 + std::abs(w)));
    EXPECT_LE(std::abs(delta_theta_bilinear(f.d1, f.d2, lambda, 0.6) - w), 1e-10 * (1 + std::abs(w)));
  }
  EXPECT_LE(std::abs(fd_delta_theta(f.sol, f.d1, f.d1, 0.5, 0.6, 1e-2)), 1e-12);
}

TEST(PhaseSpace, SingleModePairing) {
  const auto lat = default_lattice();
  Rng rng(12);
  const Solution sol = random_solution(lat, rng);
  const std::size_t k = lat->zero_mode() + 3;
  const cplx z1{0.4, 1.1}, z2{-0.9, 0.25};
  const cplx w = omega_sigma(sol, mode_deformation(lat, k, z1), mode_deformation(lat, k, z2), 0.0);
  EXPECT_CNEAR(w, cplx(2 * lat->weight(k) * std::imag(z1 * std::conj(z2))), 1e-12);
}

TEST(PhaseSpace, ThetaDifferenceIsActionVariation) {
  Fixture f;
  const auto [dth, das] = theta_difference_vs_action(f.sol, f.d1, 1.0, 0.0, 1.0, 1e-2, 257);
  EXPECT_LE(std::abs(dth - das), 1e-8);
  const Deformation zero{zero_solution(f.lat)};
  const auto [z1, z2] = theta_difference_vs_action(f.sol, zero, 1.0, 0.0, 1.0, 1e-2, 33);
  EXPECT_EQ(z1, cplx{});
  EXPECT_LE(std::abs(z2), 1e-14);
}

TEST(PhaseSpace, ThetaDifferenceShrinksLinearly) {
  Fixture f;
  const auto a = theta_difference_vs_action(f.sol, f.d1, 1.0, 0.3, 0.3 + 1e-2, 1e-2, 33);
  const auto b = theta_difference_vs_action(f.sol, f.d1, 1.0, 0.3, 0.3 + 5e-3, 1e-2, 33);
  ASSERT_GT(std::abs(b.first), 1e-6);
  EXPECT_NEAR(std::abs(a.first / b.first), 2.0, 0.05);
  EXPECT_NEAR(std::abs(a.second / b.second), 2.0, 0.05);
}

TEST(PhaseSpace, HalfLambdaThetaIsConserved) {
  // the lambda = 1/2 action vanishes on shell, so both sides do
  Fixture f;
  const auto [dth, das] = theta_difference_vs_action(f.sol, f.d1, 0.5, 0.0, 1.0, 1e-2, 257);
  EXPECT_LE(std::abs(dth), 1e-12);
  EXPECT_LE(std::abs(das), 1e-8);
}

TEST(PhaseSpace, GramMatrixFullRank) {
  const auto lat = default_lattice();
  Rng rng(13);
  const Eigen::MatrixXd g = omega_gram(random_solution(lat, rng), 0.0);
  ASSERT_EQ(g.rows(), static_cast<Eigen::Index>(2 * lat->num_modes()));
  EXPECT_LE((g + g.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_GT(omega_gram_conditioning(g), 1e-8);
}
