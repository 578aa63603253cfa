#include "test_util.hpp"

using namespace kgms;
using namespace kgms::test;

namespace {

Solution single_mode(const LatticePtr& lat, std::size_t k, cplx c) {
  CField u(lat->num_modes()), us(lat->num_modes());
  u[k] = c;
  us[k] = std::conj(c);
  return from_modes(lat, u, us, true);
}

}  // namespace

TEST(Observables, ZeroSolution) {
  const auto lat = default_lattice();
  const Solution z = zero_solution(lat);
  for (std::size_t k = 0; k < lat->num_modes(); ++k) {
    EXPECT_EQ(a_k(z, k), cplx{});
    EXPECT_EQ(a_star_k(z, k), cplx{});
  }
  EXPECT_CNEAR(slice_integral(form::Pmu{0, 1.0}, z, 0.0), cplx{}, 0.0);
}

TEST(Observables, OwnFieldGivesZero) {
  const auto lat = default_lattice();
  Rng rng(1);
  const Solution sol = random_solution(lat, rng);
  EXPECT_CNEAR(slice_integral(form::FPhi{sol}, sol, 0.4), cplx{}, 1e-12);
}

TEST(Observables, SingleModeCoefficients) {
  const auto lat = default_lattice();
  const std::size_t k0 = lat->zero_mode() + 2;
  const cplx c{0.7, -0.3};
  const Solution sol = single_mode(lat, k0, c);
  for (std::size_t k = 0; k < lat->num_modes(); ++k) {
    EXPECT_CNEAR(a_k(sol, k), k == k0 ? c : cplx{}, 1e-13);
    EXPECT_CNEAR(a_star_k(sol, k), k == k0 ? std::conj(c) : cplx{}, 1e-13);
  }
}

TEST(Observables, CoefficientsAreSliceIndependentAndReconstruct) {
  const auto lat = build_lattice(2, 4.0, 10, 3, 0.9);
  Rng rng(2);
  const Solution sol = random_solution(lat, rng);
  CField u(lat->num_modes()), us(lat->num_modes());
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = a_k(sol, k, 1.7);
    us[k] = a_star_k(sol, k, 1.7);
    EXPECT_CNEAR(u[k], a_k(sol, k, 0.0), 1e-12);
    EXPECT_CNEAR(u[k], sol.u()[k], 1e-12);
  }
  const Solution back = from_modes(lat, u, us, false);
  EXPECT_LE(max_diff(synthesize(back.field(), 0.3), synthesize(sol.field(), 0.3)), 1e-12);
}

TEST(Observables, GeneratorsHaveStatedModeData) {
  const auto lat = default_lattice();
  const std::size_t k = 3;
  const Solution a = generator_solution(lat, form::AlphaK{k});
  EXPECT_CNEAR(a.ustar()[k], cplx(0.0, 1.0 / lat->weight(k)), 1e-12);
  EXPECT_CNEAR(a.u()[k], cplx{}, 0.0);
  const Solution as = generator_solution(lat, form::AlphaStarK{k});
  EXPECT_CNEAR(as.u()[k], cplx(0.0, -1.0 / lat->weight(k)), 1e-12);
  EXPECT_THROW(generator_solution(lat, form::Pmu{0, 1.0}), std::invalid_argument);
}

TEST(Observables, EnergyMatchesQuadrature) {
  const auto lat = default_lattice();
  Rng rng(3);
  const Solution sol = random_solution(lat, rng);
  const SliceData s = evaluate_fields(sol, 0.8);
  double e = 0.0;
  for (std::size_t j = 0; j < lat->num_points(); ++j) {
    e += 0.5 * std::norm(s.p[0][j]) + 0.5 * std::norm(s.p[1][j]) + 0.5 * std::norm(s.phi[j]);
  }
  e *= lat->cell_volume();
  for (double lambda : {0.0, 1.0}) {
    EXPECT_CNEAR(-slice_integral(form::Pmu{0, lambda}, sol, 0.8), cplx(e), 1e-11 * e);
  }
}

TEST(Observables, BracketFormValues) {
  const auto lat = default_lattice();
  Rng rng(4);
  const Solution phi = random_solution(lat, rng, false);
  const Solution psi = random_solution(lat, rng, false);
  EXPECT_CNEAR(slice_integral(bracket_form(phi, phi), phi, 0.0), cplx{}, 1e-13);
  const cplx b0 = slice_integral(bracket_form(phi, psi), phi, 0.0);
  for (double t : {1.0, 2.5, 7.0}) {
    EXPECT_CNEAR(slice_integral(bracket_form(phi, psi), phi, t), b0, 1e-12);
  }
  EXPECT_CNEAR(slice_integral(bracket_form(psi, phi), phi, 0.0), -b0, 0.0);
}

TEST(Observables, RegularizedBracketZeroModeIsHalfI) {
  const auto lat = default_lattice();
  CField f(lat->num_modes());
  f[lat->zero_mode()] = 1.0;
  EXPECT_CNEAR(bracket_regularized(lat, f, f), cplx(0.0, 0.5), 1e-12);
  EXPECT_CNEAR(bracket_regularized(lat, CField(lat->num_modes()), f), cplx{}, 0.0);
}

TEST(Observables, RegularizedBracketTwoPaths) {
  const auto lat = default_lattice();
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    const CField f = random_modes(lat->num_modes(), rng);
    const CField g = random_modes(lat->num_modes(), rng);
    const RegularizedBracket r = bracket_regularized_paths(lat, f, g);
    EXPECT_LE(std::abs(r.form_path - r.weight_sum), 1e-10 * std::abs(r.weight_sum));
    EXPECT_LE(std::abs(bracket_annihilation(lat, f, g)), 1e-12);
    EXPECT_LE(std::abs(bracket_creation(lat, f, g)), 1e-12);
  }
}

TEST(Observables, NoetherDivergence) {
  const auto lat = default_lattice();
  Rng rng(6);
  const Solution sol = random_solution(lat, rng);
  const Solution phi = random_solution(lat, rng);
  auto div = [&](const ModeField& f, double dt) {
    const double t[] = {0.5 - dt, 0.5, 0.5 + dt};
    return noether_divergence(f, sol, t);
  };
  EXPECT_EQ(div(zero_solution(lat).field(), 0.05), 0.0);
  const double r1 = div(phi.field(), 0.05), r2 = div(phi.field(), 0.025), r3 = div(phi.field(), 0.0125);
  EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.1);
  EXPECT_NEAR(std::log2(r2 / r3), 2.0, 0.1);
  EXPECT_GE(div(off_shell(phi, 1.3), 0.0125), 1e-3);
}

TEST(Observables, PmuBracketIsEigenvalueOnExponential) {
  const auto lat = default_lattice();
  Rng rng(7);
  const Solution sol = random_solution(lat, rng);
  const std::size_t k = lat->zero_mode() + 1;
  // Phi = e^{i k.x}: u*_k = 1 / (c_d w_k)
  CField u(lat->num_modes()), us(lat->num_modes());
  us[k] = 1.0 / (lat->fourier_norm() * lat->weight(k));
  const Solution phi = from_modes(lat, u, us, false);
  const cplx base = slice_integral(form::FPhi{phi}, sol, 0.0);
  const double k_lower[] = {lat->k0(k), -lat->k(k, 0)};
  for (int mu = 0; mu < 2; ++mu) {
    const auto [lhs, rhs] = pmu_bracket_identity(mu, phi, sol, 0.0);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * (1 + std::abs(rhs)));
    EXPECT_CNEAR(rhs, cplx(0.0, k_lower[mu]) * base, 1e-10 * (1 + std::abs(rhs)));
  }
  const auto [l0, r0] = pmu_bracket_identity(0, zero_solution(lat), sol, 0.0);
  EXPECT_EQ(l0, cplx{});
  EXPECT_EQ(r0, cplx{});
}

TEST(Observables, FormBracketMatchesOmega) {
  const auto lat = default_lattice();
  Rng rng(8);
  const Solution sol = random_solution(lat, rng);
  const std::vector<ObservableForm> forms{
      form::FPhi{random_solution(lat, rng)},
      form::AlphaF{random_modes(lat->num_modes(), rng)},
      form::AlphaStarG{random_modes(lat->num_modes(), rng)},
      form::Pmu{1, 0.3},
  };
  for (const auto& f : forms) {
    for (const auto& g : forms) {
      const cplx om = omega_sigma(sol, hamiltonian_deformation(f, sol), hamiltonian_deformation(g, sol), 0.5);
      EXPECT_LE(std::abs(form_bracket_integral(f, g, sol, 0.5) - om), 1e-10 * (1 + std::abs(om)));
    }
  }
}
