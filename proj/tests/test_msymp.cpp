#include "test_util.hpp"

using namespace kgms;
using namespace kgms::test;

namespace {

// d = 1: coordinates x0, x1, phi, e, p0, p1
constexpr int kX0 = 0, kX1 = 1, kPhi = 2, kE = 3, kP0 = 4;

MTangent b(int i) { return MTangent::basis(2, i); }

MTangent random_tangent(Rng& rng, int n) {
  std::normal_distribution<double> g;
  MTangent v = MTangent::zero(n);
  for (int i = 0; i < v.manifold_dim(); ++i) v.coord(i) = g(rng);
  return v;
}

MPoint random_point(Rng& rng, int n) {
  std::normal_distribution<double> g;
  MPoint p = MPoint::zero(n);
  for (auto& x : p.x) x = g(rng);
  for (auto& x : p.p) x = g(rng);
  p.phi = g(rng);
  p.e = g(rng);
  return p;
}

}  // namespace

TEST(Msymp, OmegaCoordinateValues) {
  const MTangent a[] = {b(kE), b(kX0), b(kX1)};
  EXPECT_DOUBLE_EQ(omega_eval<double>(a), 1.0);
  const MTangent c[] = {b(kP0), b(kPhi), b(kX1)};
  EXPECT_DOUBLE_EQ(omega_eval<double>(c), 1.0);
  const MTangent rep[] = {b(kP0), b(kP0), b(kX1)};
  EXPECT_DOUBLE_EQ(omega_eval<double>(rep), 0.0);
  EXPECT_THROW(omega_eval<double>(std::span(a, 2)), std::invalid_argument);
}

TEST(Msymp, OmegaHandExpansion) {
  // d = 1: omega = de^dx0^dx1 + dp0^dphi^dx1 - dp1^dphi^dx0
  Rng rng(1);
  const MTangent v[] = {random_tangent(rng, 2), random_tangent(rng, 2), random_tangent(rng, 2)};
  auto det3 = [&](int r0, int r1, int r2) {
    Eigen::Matrix3d m;
    const int rows[] = {r0, r1, r2};
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c) m(a, c) = v[c].coord(rows[a]);
    return m.determinant();
  };
  const double expect = det3(kE, kX0, kX1) + det3(kP0, kPhi, kX1) - det3(5, kPhi, kX0);
  EXPECT_NEAR(omega_eval<double>(v), expect, 1e-12);
}

TEST(Msymp, ThetaEBetaTerm) {
  for (int n : {2, 3, 4}) {
    MPoint p = MPoint::zero(n);
    p.e = 1.0;
    std::vector<MTangent> v;
    for (int mu = 0; mu < n; ++mu) v.push_back(MTangent::basis(n, mu));
    EXPECT_DOUBLE_EQ(theta_eval<double>(0.3, p, v), 1.0);
    v.pop_back();
    EXPECT_THROW(theta_eval<double>(0.3, p, v), std::invalid_argument);
  }
}

TEST(Msymp, ExteriorDerivativeOfThetaIsOmega) {
  Rng rng(2);
  for (int n : {2, 3}) {
    for (double lambda : {0.0, 0.5, 1.0, 1.7}) {
      const MPoint p = random_point(rng, n);
      std::vector<MTangent> v;
      for (int i = 0; i <= n; ++i) v.push_back(random_tangent(rng, n));
      const double om = omega_eval<double>(v);
      EXPECT_NEAR(fd_exterior_derivative_theta(lambda, p, v, 1e-3), om, 1e-9 * (1 + std::abs(om)));
    }
  }
}

TEST(Msymp, OmegaIsNondegenerate) {
  for (int n : {2, 3, 4}) EXPECT_EQ(omega_contraction_rank(n), 2 * n + 2);
}

TEST(Msymp, HamiltonianValues) {
  MPoint p = MPoint::zero(2);
  EXPECT_DOUBLE_EQ(hamiltonian(1.0, p), 0.0);
  p.e = 3.0;
  EXPECT_DOUBLE_EQ(hamiltonian(1.0, p), 3.0);
  p.p = {2.0, 1.0};
  p.phi = 1.0;
  EXPECT_DOUBLE_EQ(hamiltonian(2.0, p), 3.0 + 0.5 * (4.0 - 1.0) + 2.0);
}

TEST(Msymp, HamiltonianVanishesOnShell) {
  const auto lat = default_lattice();
  Rng rng(3);
  const Solution sol = random_solution(lat, rng);
  const SliceData s = evaluate_fields(sol, 0.6);
  for (std::size_t j = 0; j < lat->num_points(); ++j) {
    EXPECT_LE(std::abs(hamiltonian(lat->mass(), curve_point(*lat, s, j))), 1e-12);
  }
}

TEST(Msymp, HamiltonEquationsHoldPointwise) {
  const auto lat = build_lattice(2, 2 * kPi, 12, 3, 1.0);
  Rng rng(4);
  const Solution sol = random_solution(lat, rng);
  EXPECT_LE(hamilton_equation_defect(sol, 0.2), 1e-10);
}

TEST(Msymp, HamiltonResidualOrderTwo) {
  const auto lat = default_lattice();
  Rng rng(5);
  const Solution sol = random_solution(lat, rng);
  auto residual = [&](double dt) {
    const double t[] = {0.5 - dt, 0.5, 0.5 + dt};
    return hamilton_residual(sol, t);
  };
  const double r1 = residual(0.1), r2 = residual(0.05), r3 = residual(0.025);
  EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.1);
  EXPECT_NEAR(std::log2(r2 / r3), 2.0, 0.1);
  const double t[] = {0.0, 0.1, 0.2};
  EXPECT_EQ(hamilton_residual(zero_solution(lat), t), 0.0);
  EXPECT_THROW(hamilton_residual(sol, std::span(t, 2)), std::invalid_argument);
}

TEST(Msymp, HamiltonResidualSeesZeroedMomenta) {
  const auto lat = default_lattice();
  Rng rng(6);
  const Solution sol = random_solution(lat, rng);
  const double dt = 0.05;
  std::vector<SliceData> slices;
  for (int i = 0; i < 3; ++i) {
    slices.push_back(evaluate_fields(sol, i * dt));
    for (auto& p : slices.back().p) std::fill(p.begin(), p.end(), cplx{});
  }
  double dphi = 0.0;
  for (const auto& d : slices[1].dphi)
    for (const auto& v : d) dphi = std::max(dphi, std::abs(v));
  EXPECT_NEAR(hamilton_residual(*lat, slices, dt), dphi, 1e-2 * dphi);
}

TEST(Msymp, SimpsonIntegratesCubicsExactly) {
  std::vector<cplx> v;
  for (int i = 0; i <= 8; ++i) {
    const double x = i * 0.25;
    v.push_back(x * x * x - x);
  }
  EXPECT_CNEAR(simpson(v, 0.25), cplx(4.0 - 2.0), 1e-14);
  EXPECT_THROW(simpson(std::span(v.data(), 4), 0.25), std::invalid_argument);
}

TEST(Msymp, ActionOfZeroSolutionIsZero) {
  const auto lat = default_lattice();
  EXPECT_EQ(action_between_slices(zero_solution(lat), 1.0, 0.0, 1.0, 33), cplx{});
}

TEST(Msymp, ActionIsLambdaWeightedLagrangian) {
  const auto lat = default_lattice();
  Rng rng(7);
  const Solution sol = random_solution(lat, rng);
  // direct Lagrangian quadrature
  const int n_t = 257;
  const double h = 1.0 / (n_t - 1);
  std::vector<cplx> dens;
  for (int i = 0; i < n_t; ++i) {
    const SliceData s = evaluate_fields(sol, i * h);
    CField l(lat->num_points());
    for (std::size_t j = 0; j < l.size(); ++j) {
      const cplx q = s.dphi[0][j] * s.dphi[0][j] - s.dphi[1][j] * s.dphi[1][j];
      l[j] = 0.5 * q - 0.5 * s.phi[j] * s.phi[j];
    }
    dens.push_back(grid_integral(*lat, l));
  }
  const cplx lagr = simpson(dens, h);
  for (double lambda : {0.0, 0.5, 1.0}) {
    EXPECT_CNEAR(action_between_slices(sol, lambda, 0.0, 1.0, n_t), (2 * lambda - 1) * lagr, 1e-8);
  }
}

TEST(Msymp, CriticalityOnAndOffShell) {
  const auto lat = default_lattice();
  Rng rng(8);
  const Solution sol = random_solution(lat, rng);
  const Solution var = random_solution(lat, rng);
  EXPECT_EQ(action_criticality(sol.field(), zero_solution(lat).field(), 1.0, 0.0, 2.0, 1e-3, 1025), 0.0);
  EXPECT_LE(action_criticality(sol.field(), var.field(), 1.0, 0.0, 2.0, 1e-3, 1025), 1e-8);
  EXPECT_GE(action_criticality(off_shell(sol, 1.3), var.field(), 1.0, 0.0, 2.0, 1e-3, 1025), 1e-3);
}

TEST(Msymp, EnvelopeVanishesAtEnds) {
  const Envelope e{0.0, 2.0};
  EXPECT_EQ(e.value(0.0), 0.0);
  EXPECT_EQ(e.value(2.0), 0.0);
  EXPECT_GT(e.value(1.0), 0.0);
  const double h = 1e-5;
  EXPECT_NEAR(e.d1(0.7), (e.value(0.7 + h) - e.value(0.7 - h)) / (2 * h), 1e-7);
  EXPECT_NEAR(e.d2(0.7), (e.d1(0.7 + h) - e.d1(0.7 - h)) / (2 * h), 1e-6);
}
