#include "kgms/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "kgms/observables.hpp"
#include "kgms/prequant.hpp"

namespace kgms {

namespace {

using Checks = std::vector<CheckRecord>;

constexpr cplx I{0.0, 1.0};

// Each suite draws from its own stream so "all" reproduces the individual
// suites exactly.
Rng suite_rng(const RunConfig& c, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(c.seed),
                    static_cast<std::uint32_t>(c.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

CheckRecord shortfall(std::string name, double value, double threshold) {
  return make_check(std::move(name) + "_shortfall", std::max(0.0, threshold - value),
                    0.0, 0.0);
}

double order(double coarse, double fine) { return std::log2(coarse / fine); }

std::vector<double> centered_grid(double t0, double dt) {
  return {t0 - dt, t0, t0 + dt};
}

struct MaxDiff {
  double worst = 0.0;
  cplx lhs{}, rhs{};
  void add(cplx a, cplx b) {
    const double d = std::abs(a - b);
    if (d >= worst) {
      worst = d;
      lhs = a;
      rhs = b;
    }
  }
  CheckRecord check(std::string name, double tol) const {
    CheckRecord r = make_check(std::move(name), lhs, rhs, tol);
    r.abs_diff = worst;
    r.pass = worst <= tol;
    return r;
  }
};

// direct Lagrangian quadrature, L = 1/2 eta d phi d phi - 1/2 m^2 phi^2
cplx lagrangian_action(const Solution& sol, double t1, double t2, int n_t) {
  const ModeLattice& lat = sol.lattice();
  const ModeField f = sol.field();
  const double h = (t2 - t1) / (n_t - 1);
  std::vector<cplx> vals(n_t);
  for (int i = 0; i < n_t; ++i) {
    const double t = t1 + i * h;
    const CField phi = synthesize(f, t);
    const CField phit = synthesize(f, t, std::vector<int>{0});
    CField dens(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) {
      dens[j] = 0.5 * phit[j] * phit[j] - 0.5 * lat.mass() * lat.mass() * phi[j] * phi[j];
    }
    for (int a = 1; a <= lat.dim(); ++a) {
      const CField g = synthesize(f, t, std::vector<int>{a});
      for (std::size_t j = 0; j < phi.size(); ++j) dens[j] -= 0.5 * g[j] * g[j];
    }
    vals[i] = grid_integral(lat, dens);
  }
  return simpson(vals, h);
}

// ---------------------------------------------------------------- msymp

Checks msymp_checks(const RunConfig& cfg) {
  Checks out;
  Rng rng = suite_rng(cfg, 1);
  const LatticePtr lat = build_lattice(cfg.lattice);
  const int n = lat->spacetime_dim();
  std::normal_distribution<double> gauss;

  {
    MaxDiff dtheta, lam;
    for (int trial = 0; trial < 20; ++trial) {
      MPoint pt = MPoint::zero(n);
      for (int mu = 0; mu < n; ++mu) {
        pt.x[mu] = gauss(rng);
        pt.p[mu] = gauss(rng);
      }
      pt.phi = gauss(rng);
      pt.e = gauss(rng);
      std::vector<MTangent> vecs;
      for (int i = 0; i <= n; ++i) {
        MTangent v = MTangent::zero(n);
        for (int c = 0; c < v.manifold_dim(); ++c) v.coord(c) = gauss(rng);
        vecs.push_back(v);
      }
      const double omega = omega_eval<double>(vecs);
      double first = 0.0;
      for (double l : {0.0, 0.37, 1.0}) {
        const double d = fd_exterior_derivative_theta(l, pt, vecs, 1e-3);
        dtheta.add(d, omega);
        if (l == 0.0) first = d;
        if (l == 1.0) lam.add(d, first);
      }
    }
    out.push_back(dtheta.check("msymp.dtheta_equals_omega", 1e-10));
    out.push_back(lam.check("msymp.dtheta_lambda_independent", 1e-10));
  }

  out.push_back(make_check("msymp.omega_contraction_rank",
                           static_cast<double>(omega_contraction_rank(n)),
                           static_cast<double>(2 * n + 2), 0.0));

  {
    const Solution sol = random_solution(lat, rng);
    const SliceData s = evaluate_fields(sol, 0.7);
    double worst = 0.0;
    for (std::size_t j = 0; j < s.phi.size(); ++j) {
      worst = std::max(worst, std::abs(hamiltonian<cplx>(lat->mass(), curve_point(*lat, s, j))));
    }
    out.push_back(make_check("msymp.hamiltonian_on_shell", worst, 0.0, 1e-12));
    out.push_back(make_check("msymp.hamilton_equations_pointwise",
                             hamilton_equation_defect(sol, 0.7), 0.0, 1e-10));
  }

  {
    // criterion: order 2.0 +- 0.1 over dt in {0.1, 0.05, 0.025}
    const Solution sol = random_solution(lat, rng);
    std::vector<double> r;
    for (double dt : {0.1, 0.05, 0.025}) {
      r.push_back(hamilton_residual(sol, centered_grid(0.5, dt)));
    }
    out.push_back(make_check("msymp.hamilton_residual_order_coarse", order(r[0], r[1]), 2.0, 0.1));
    out.push_back(make_check("msymp.hamilton_residual_order_fine", order(r[1], r[2]), 2.0, 0.1));
  }

  {
    MaxDiff lag, half;
    for (int trial = 0; trial < 20; ++trial) {
      const Solution sol = random_solution(lat, rng);
      lag.add(action_between_slices(sol, 1.0, 0.0, 1.0, 257),
              lagrangian_action(sol, 0.0, 1.0, 257));
      half.add(action_between_slices(sol, 0.5, 0.0, 1.0, 257), 0.0);
    }
    out.push_back(lag.check("msymp.action_equals_lagrangian", 1e-8));
    out.push_back(half.check("msymp.action_half_lambda_vanishes", 1e-8));
  }

  {
    double worst = 0.0;
    double weakest_off = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 10; ++trial) {
      const Solution sol = random_solution(lat, rng);
      const Solution var = random_solution(lat, rng);
      worst = std::max(worst, action_criticality(sol.field(), var.field(), cfg.lambda,
                                                 0.0, 2.0, 1e-3, 1025));
      if (trial < 3) {
        weakest_off = std::min(weakest_off,
                               action_criticality(off_shell(sol, 1.3), var.field(),
                                                  cfg.lambda, 0.0, 2.0, 1e-3, 1025));
      }
    }
    out.push_back(make_check("msymp.action_critical_on_shell", worst, 0.0, 1e-8));
    out.push_back(shortfall("msymp.action_not_critical_off_shell", weakest_off, 1e-3));
  }
  return out;
}

// ---------------------------------------------------------- observables

Checks observables_checks(const RunConfig& cfg) {
  Checks out;
  Rng rng = suite_rng(cfg, 2);
  const LatticePtr lat = build_lattice(cfg.lattice);
  const int n = lat->spacetime_dim();
  const std::size_t modes = lat->num_modes();

  {
    MaxDiff ak, astar, recon;
    for (bool real : {true, false}) {
      const Solution sol = random_solution(lat, rng, real);
      for (double t : {0.0, 1.7}) {
        CField a(modes), as(modes);
        for (std::size_t k = 0; k < modes; ++k) {
          a[k] = a_k(sol, k, t);
          as[k] = a_star_k(sol, k, t);
          ak.add(a[k], sol.u()[k]);
          astar.add(as[k], sol.ustar()[k]);
        }
        const Solution back = from_modes(lat, a, as, false);
        const CField x = synthesize(sol.field(), t);
        const CField y = synthesize(back.field(), t);
        for (std::size_t j = 0; j < x.size(); ++j) recon.add(y[j], x[j]);
      }
    }
    out.push_back(ak.check("observables.a_k_equals_u", 1e-12));
    out.push_back(astar.check("observables.a_star_k_equals_ustar", 1e-12));
    out.push_back(recon.check("observables.field_reconstruction", 1e-12));
  }

  {
    const Solution sol = random_solution(lat, rng);
    std::vector<ObservableForm> forms{
        form::FPhi{random_solution(lat, rng, false)},
        form::AlphaF{random_modes(modes, rng)},
        form::AlphaStarG{random_modes(modes, rng)}};
    for (int mu = 0; mu < n; ++mu) forms.push_back(form::Pmu{mu, cfg.lambda});
    MaxDiff slice, charge;
    for (const auto& f : forms) {
      const cplx ref = slice_integral(f, sol, 0.0);
      for (double t : {1.0, 1.3, 2.5, 4.2, 7.0}) {
        const cplx v = slice_integral(f, sol, t);
        slice.add(v, ref);
        if (std::holds_alternative<form::FPhi>(f)) charge.add(v, ref);
      }
    }
    out.push_back(slice.check("observables.slice_independence", 1e-12));
    out.push_back(charge.check("observables.noether_charge_constant", 1e-12));

    const SliceData s = evaluate_fields(sol, 0.6);
    CField dens(s.phi.size());
    for (std::size_t j = 0; j < dens.size(); ++j) {
      cplx e = 0.5 * s.p[0][j] * s.p[0][j] +
               0.5 * lat->mass() * lat->mass() * s.phi[j] * s.phi[j];
      for (int a = 1; a < n; ++a) e += 0.5 * s.p[a][j] * s.p[a][j];
      dens[j] = e;
    }
    out.push_back(make_check("observables.energy_quadrature",
                             -slice_integral(form::Pmu{0, cfg.lambda}, sol, 0.6),
                             grid_integral(*lat, dens), 1e-12));
  }

  {
    const Solution sol = random_solution(lat, rng);
    const Solution phi = random_solution(lat, rng, false);
    const Solution psi = random_solution(lat, rng, false);
    const ObservableForm b = bracket_form(phi, psi);
    MaxDiff tdep;
    const cplx ref = slice_integral(b, sol, 0.0);
    for (double t : {1.0, 2.5, 7.0}) tdep.add(slice_integral(b, sol, t), ref);
    out.push_back(tdep.check("observables.bracket_t_independence", 1e-12));
    double anti = 0.0;
    for (double t : {0.0, 1.0, 2.5, 7.0}) {
      anti = std::max(anti, std::abs(slice_integral(b, sol, t) +
                                     slice_integral(bracket_form(psi, phi), sol, t)));
    }
    out.push_back(make_check("observables.bracket_antisymmetry", anti, 0.0, 0.0));
  }

  {
    MaxDiff ccr, ann, cre;
    for (int trial = 0; trial < 20; ++trial) {
      const CField f = random_modes(modes, rng);
      const CField g = random_modes(modes, rng);
      const CField fp = random_modes(modes, rng);
      const CField gp = random_modes(modes, rng);
      try {
        const RegularizedBracket r = bracket_regularized_paths(lat, f, g);
        ccr.add(r.form_path, r.weight_sum);
      } catch (const std::logic_error&) {
        ccr.add(std::numeric_limits<double>::infinity(), 0.0);
      }
      ann.add(bracket_annihilation(lat, f, fp), 0.0);
      cre.add(bracket_creation(lat, g, gp), 0.0);
    }
    out.push_back(ccr.check("observables.ccr_two_path", 1e-10));
    out.push_back(ann.check("observables.annihilation_bracket_zero", 1e-12));
    out.push_back(cre.check("observables.creation_bracket_zero", 1e-12));
  }

  {
    // order study at dt small enough that the fastest product frequency
    // (2 max k0) is resolved
    const Solution sol = random_solution(lat, rng);
    const Solution phi = random_solution(lat, rng, false);
    std::vector<double> r;
    for (double dt : {0.05, 0.025, 0.0125}) {
      r.push_back(noether_divergence(phi.field(), sol, centered_grid(0.5, dt)));
    }
    out.push_back(make_check("observables.noether_order_coarse", order(r[0], r[1]), 2.0, 0.1));
    out.push_back(make_check("observables.noether_order_fine", order(r[1], r[2]), 2.0, 0.1));
    out.push_back(shortfall("observables.noether_off_shell",
                            noether_divergence(off_shell(phi, 1.3), sol,
                                               centered_grid(0.5, 0.0125)),
                            1e-3));
  }

  {
    const Solution sol = random_solution(lat, rng);
    MaxDiff pmu, eig;
    for (int trial = 0; trial < 5; ++trial) {
      const Solution phi = random_solution(lat, rng, trial % 2 == 0);
      for (int mu = 0; mu < n; ++mu) {
        const auto [a, b] = pmu_bracket_identity(mu, phi, sol, 0.4);
        pmu.add(a, b);
      }
    }
    // Phi = i e^{ik.x} / (2 pi)^{d/2}: d_mu Phi = i k_mu Phi
    for (std::size_t k : {std::size_t{0}, lat->zero_mode(), modes - 2}) {
      const Solution gen = generator_solution(lat, form::AlphaK{k});
      const cplx base = slice_integral(form::AlphaK{k}, sol, 0.4);
      for (int mu = 0; mu < n; ++mu) {
        const double k_mu = mu == 0 ? lat->k0(k) : -lat->k(k, mu - 1);
        const auto [a, b] = pmu_bracket_identity(mu, gen, sol, 0.4);
        pmu.add(a, b);
        eig.add(b, I * k_mu * base);
      }
    }
    out.push_back(pmu.check("observables.pmu_bracket_identity", 1e-10));
    out.push_back(eig.check("observables.pmu_generator_eigenvalue", 1e-10));
  }

  {
    const Solution sol = random_solution(lat, rng);
    std::vector<ObservableForm> forms{
        form::FPhi{random_solution(lat, rng, false)},
        form::FPhi{random_solution(lat, rng, true)},
        form::AlphaF{random_modes(modes, rng)},
        form::AlphaStarG{random_modes(modes, rng)}};
    for (int mu = 0; mu < n; ++mu) forms.push_back(form::Pmu{mu, cfg.lambda});
    MaxDiff pc;
    for (const auto& f : forms) {
      for (const auto& g : forms) {
        pc.add(omega_sigma(sol, hamiltonian_deformation(f, sol),
                           hamiltonian_deformation(g, sol), 0.9),
               form_bracket_integral(f, g, sol, 0.9));
      }
    }
    out.push_back(pc.check("observables.poisson_bracket_coincidence", 1e-10));
  }
  return out;
}

// ---------------------------------------------------------- phase space

Checks phase_space_checks(const RunConfig& cfg) {
  Checks out;
  Rng rng = suite_rng(cfg, 3);
  const LatticePtr lat = build_lattice(cfg.lattice);
  const int n = lat->spacetime_dim();
  const std::size_t modes = lat->num_modes();

  {
    MaxDiff paths, tdep, lam, fd, eps, rep_omega, rep_theta;
    double anti = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const Solution sol = random_solution(lat, rng);
      const Deformation d1{random_solution(lat, rng, trial % 2 == 0)};
      const Deformation d2{random_solution(lat, rng)};
      const OmegaPaths p = omega_sigma_paths(sol, d1, d2, 0.3);
      paths.add(p.pointwise, p.closed_form);
      for (double t : {0.0, 1.0, 2.5, 7.0}) {
        tdep.add(omega_sigma_paths(sol, d1, d2, t).closed_form, p.closed_form);
      }
      for (double l : {0.0, 0.5, 1.0}) {
        lam.add(delta_theta_bilinear(d1, d2, l, 0.3), p.closed_form);
        fd.add(fd_delta_theta(sol, d1, d2, l, 0.3, 1e-3), p.closed_form);
      }
      eps.add(fd_delta_theta(sol, d1, d2, cfg.lambda, 0.3, 1e-3),
              fd_delta_theta(sol, d1, d2, cfg.lambda, 0.3, 5e-4));
      const OmegaPaths q = omega_sigma_paths(sol, d2, d1, 0.3);
      anti = std::max(anti, std::abs(p.closed_form + q.closed_form));
      anti = std::max(anti, std::abs(omega_sigma_paths(sol, d1, d1, 0.3).closed_form));
      for (int mu = 0; mu < n; ++mu) {
        const TangentialShift shift{mu, cplx{0.7, -0.4}};
        rep_omega.add(omega_sigma_paths(sol, d1, d2, 0.3, shift).pointwise, p.closed_form);
        if (mu > 0) {
          rep_theta.add(theta_sigma_pointwise(sol, d1, cfg.lambda, 0.3, shift),
                        theta_sigma(sol, d1, cfg.lambda, 0.3));
        }
      }
      rep_theta.add(theta_sigma_pointwise(sol, d1, cfg.lambda, 0.3),
                    theta_sigma(sol, d1, cfg.lambda, 0.3));
    }
    out.push_back(paths.check("phase_space.omega_two_path", 1e-10));
    out.push_back(tdep.check("phase_space.omega_t_independence", 1e-12));
    out.push_back(lam.check("phase_space.omega_lambda_independence", 1e-12));
    out.push_back(fd.check("phase_space.fd_delta_theta_equals_omega", 1e-10));
    out.push_back(eps.check("phase_space.fd_delta_theta_eps_independence", 1e-11));
    out.push_back(make_check("phase_space.omega_antisymmetry", anti, 0.0, 0.0));
    out.push_back(rep_omega.check("phase_space.omega_representative_independence", 1e-10));
    out.push_back(rep_theta.check("phase_space.theta_representative_independence", 1e-10));
  }

  {
    const Solution sol = random_solution(lat, rng);
    out.push_back(shortfall("phase_space.gram_conditioning",
                            omega_gram_conditioning(omega_gram(sol, 0.0)), 1e-8));
    MaxDiff single;
    std::normal_distribution<double> gauss;
    for (std::size_t k = 0; k < modes; ++k) {
      const cplx z1{gauss(rng), gauss(rng)}, z2{gauss(rng), gauss(rng)};
      single.add(omega_sigma(sol, mode_deformation(lat, k, z1), mode_deformation(lat, k, z2), 0.8),
                 2.0 * lat->weight(k) * (z1 * std::conj(z2)).imag());
    }
    out.push_back(single.check("phase_space.single_mode_constant", 1e-12));
  }

  {
    MaxDiff diff;
    for (int trial = 0; trial < 10; ++trial) {
      const Solution sol = random_solution(lat, rng);
      const Deformation d{random_solution(lat, rng)};
      const auto [a, b] = theta_difference_vs_action(sol, d, cfg.lambda, 0.0, 0.5, 1e-3, 257);
      diff.add(a, b);
    }
    out.push_back(diff.check("phase_space.theta_difference_equals_action_variation", 1e-8));
  }
  return out;
}

// ------------------------------------------------------------- prequant

PolarizedState random_state(const LatticePtr& lat, Rng& rng, int max_degree,
                            int terms) {
  std::uniform_int_distribution<std::size_t> pick(0, lat->num_modes() - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::normal_distribution<double> gauss;
  PolarizedState s(lat);
  const PolarizedState probe(lat);
  for (int i = 0; i < terms; ++i) {
    MultiIndex alpha(lat->num_modes(), 0);
    const int d = deg(rng);
    for (int q = 0; q < d; ++q) ++alpha[pick(rng)];
    // unit-norm monomials keep inner products O(1)
    PolarizedState mono = PolarizedState::monomial(lat, alpha);
    const double norm = std::sqrt(inner_product(mono, mono).real());
    s.add(alpha, cplx{gauss(rng), gauss(rng)} / norm);
  }
  return s;
}

CField gaussian_integers(std::size_t count, Rng& rng) {
  std::uniform_int_distribution<int> dist(-3, 3);
  CField out(count);
  for (auto& c : out) c = cplx(dist(rng), dist(rng));
  return out;
}

Checks prequant_checks(const RunConfig& cfg) {
  Checks out;
  Rng rng = suite_rng(cfg, 4);
  const LatticePtr lat = build_lattice(cfg.lattice);
  const int n = lat->spacetime_dim();
  const std::size_t modes = lat->num_modes();
  const double hbar = lat->hbar();
  const auto monomials = monomials_up_to(*lat, 4);

  {
    const CField f = random_modes(modes, rng);
    const CField g = random_modes(modes, rng);
    cplx c{};
    for (std::size_t k = 0; k < modes; ++k) c += lat->weight(k) * f[k] * g[k];
    c *= hbar;
    double ccr = 0.0;
    bool aa_exact = true, asas_exact = true;
    double aa_random = 0.0;
    const CField fi = gaussian_integers(modes, rng);
    const CField fpi = gaussian_integers(modes, rng);
    const CField fp = random_modes(modes, rng);
    const CField gp = random_modes(modes, rng);
    for (const auto& alpha : monomials) {
      const PolarizedState m = PolarizedState::monomial(lat, alpha);
      ccr = std::max(ccr, max_abs_difference(commutator(make_a(f), make_a_star(g), m), c * m));
      if (hbar == 1.0) {
        aa_exact = aa_exact && commutator(make_a(fi), make_a(fpi), m).is_zero();
      }
      aa_random = std::max(aa_random,
                           max_abs_difference(commutator(make_a(f), make_a(fp), m),
                                              PolarizedState(lat)));
      asas_exact = asas_exact && commutator(make_a_star(g), make_a_star(gp), m).is_zero();
    }
    out.push_back(make_check("prequant.ccr_operator_identity", ccr, 0.0, 1e-12));
    out.push_back(make_check("prequant.annihilators_commute_random", aa_random, 0.0, 1e-12));
    out.push_back(make_check("prequant.annihilators_commute_exact", aa_exact ? 0.0 : 1.0, 0.0, 0.0));
    out.push_back(make_check("prequant.creators_commute_exact", asas_exact ? 0.0 : 1.0, 0.0, 0.0));

    const cplx classical = bracket_regularized(lat, f, g);
    out.push_back(make_check("prequant.classical_correspondence", c,
                             (hbar / I) * classical, 1e-12));
  }

  {
    std::normal_distribution<double> gauss;
    std::vector<double> zeta(n);
    for (auto& z : zeta) z = gauss(rng);
    const PolarizedState vac = PolarizedState::vacuum(lat);
    out.push_back(make_check("prequant.vacuum_energy_exact",
                             op_p(zeta, vac).is_zero() ? 0.0 : 1.0, 0.0, 0.0));
    std::vector<double> time(n, 0.0);
    time[0] = 1.0;
    double eig = 0.0;
    double min_energy = std::numeric_limits<double>::infinity();
    for (const auto& alpha : monomials) {
      const PolarizedState m = PolarizedState::monomial(lat, alpha);
      const PolarizedState pm = op_p(zeta, m);
      double expected = 0.0;
      for (std::size_t k = 0; k < modes; ++k) {
        double kz = lat->k0(k) * zeta[0];
        for (int a = 0; a < lat->dim(); ++a) kz -= lat->k(k, a) * zeta[a + 1];
        expected += alpha[k] * kz;
      }
      expected *= -hbar;
      eig = std::max(eig, max_abs_difference(pm, expected * m));
      const PolarizedState em = op_p(time, m);
      const auto it = em.coeffs().find(alpha);
      const double energy = -(it == em.coeffs().end() ? 0.0 : it->second.real());
      min_energy = std::min(min_energy, energy);
    }
    out.push_back(make_check("prequant.p_monomial_eigenvalues", eig, 0.0, 1e-12));
    out.push_back(shortfall("prequant.energy_nonnegative", min_energy, 0.0));

    const CField g = random_modes(modes, rng);
    CField g_shift(modes);
    for (std::size_t k = 0; k < modes; ++k) g_shift[k] = lat->minkowski_dot(k, zeta) * g[k];
    double pc = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const PolarizedState s = random_state(lat, rng, 4, 12);
      pc = std::max(pc, max_abs_difference(commutator(make_p(zeta), make_a_star(g), s),
                                           cplx{-hbar, 0.0} * op_a_star(g_shift, s)));
    }
    out.push_back(make_check("prequant.p_creation_commutator", pc, 0.0, 1e-12));
  }

  {
    MaxDiff adj;
    for (int trial = 0; trial < 20; ++trial) {
      const PolarizedState s1 = random_state(lat, rng, 4, 10);
      const PolarizedState s2 = random_state(lat, rng, 4, 10);
      const CField f = random_modes(modes, rng);
      CField fbar(modes);
      std::transform(f.begin(), f.end(), fbar.begin(), [](cplx c) { return std::conj(c); });
      adj.add(inner_product(op_a(f, s1), s2), inner_product(s1, op_a_star(fbar, s2)));
    }
    out.push_back(adj.check("prequant.adjointness", 1e-12));
  }
  return out;
}

const std::map<std::string, std::function<Checks(const RunConfig&)>>& registry() {
  static const std::map<std::string, std::function<Checks(const RunConfig&)>> r{
      {"msymp", msymp_checks},
      {"observables", observables_checks},
      {"phase-space", phase_space_checks},
      {"prequant", prequant_checks},
  };
  return r;
}

std::string mode_label(const ModeLattice& lat, std::size_t k) {
  std::string s = "n";
  for (int a = 0; a < lat.dim(); ++a) {
    if (a > 0) s += "_";
    s += std::to_string(lat.nvec(k)[a]);
  }
  return s;
}

}  // namespace

Solution random_solution(const LatticePtr& lat, Rng& rng, bool real) {
  std::normal_distribution<double> gauss;
  const std::size_t m = lat->num_modes();
  CField u(m), us(m);
  for (std::size_t k = 0; k < m; ++k) {
    double n2 = 0.0;
    for (int a = 0; a < lat->dim(); ++a) n2 += lat->nvec(k)[a] * lat->nvec(k)[a];
    const double amp = 1.0 / (1.0 + n2);
    u[k] = amp * cplx{gauss(rng), gauss(rng)};
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (real) {
      us[k] = std::conj(u[k]);
    } else {
      double n2 = 0.0;
      for (int a = 0; a < lat->dim(); ++a) n2 += lat->nvec(k)[a] * lat->nvec(k)[a];
      us[k] = cplx{gauss(rng), gauss(rng)} / (1.0 + n2);
    }
  }
  return from_modes(lat, std::move(u), std::move(us), real);
}

CField random_modes(std::size_t count, Rng& rng) {
  std::normal_distribution<double> gauss;
  CField out(count);
  for (auto& c : out) c = cplx{gauss(rng), gauss(rng)};
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all", "msymp", "observables",
                                              "phase-space", "prequant"};
  return names;
}

Report run_suite(const RunConfig& config, const std::string& suite) {
  Report report{"verify", suite, config, {}};
  if (suite == "all") {
    for (const auto& [name, fn] : registry()) {
      auto checks = fn(config);
      report.checks.insert(report.checks.end(), checks.begin(), checks.end());
    }
  } else {
    const auto it = registry().find(suite);
    if (it == registry().end()) {
      throw ConfigError("unknown suite '" + suite +
                        "' (expected all, msymp, observables, phase-space, prequant)");
    }
    report.checks = it->second(config);
  }
  report.finalize();
  return report;
}

Report bracket_table(const RunConfig& config) {
  Report report{"brackets", "", config, {}};
  Rng rng = suite_rng(config, 5);
  const LatticePtr lat = build_lattice(config.lattice);
  const int n = lat->spacetime_dim();
  const std::size_t modes = lat->num_modes();
  auto& rows = report.checks;

  // hand value: d=1, L=2pi, m=1 gives w_0 = 1/2
  {
    CField ind(modes);
    ind[lat->zero_mode()] = 1.0;
    const RegularizedBracket r = bracket_regularized_paths(lat, ind, ind);
    rows.push_back(make_check("ccr.zero_mode_indicator", r.form_path, r.weight_sum, 1e-10));
  }
  for (int i = 0; i < 5; ++i) {
    const CField f = random_modes(modes, rng), g = random_modes(modes, rng);
    const CField fp = random_modes(modes, rng), gp = random_modes(modes, rng);
    const std::string tag = std::to_string(i);
    try {
      const RegularizedBracket r = bracket_regularized_paths(lat, f, g);
      rows.push_back(make_check("ccr.a_f_a_star_g." + tag, r.form_path, r.weight_sum, 1e-10));
    } catch (const std::logic_error&) {
      rows.push_back(make_check("ccr.a_f_a_star_g." + tag, cplx{NAN, NAN}, 0.0, 1e-10));
    }
    rows.push_back(make_check("ccr.a_f_a_f_prime." + tag, bracket_annihilation(lat, f, fp), 0.0, 1e-12));
    rows.push_back(make_check("ccr.a_star_g_a_star_g_prime." + tag,
                              bracket_creation(lat, g, gp), 0.0, 1e-12));
  }
  const Solution sol = random_solution(lat, rng);
  const Solution phi = random_solution(lat, rng, false);
  const Solution psi = random_solution(lat, rng, false);
  const cplx b0 = slice_integral(bracket_form(phi, psi), sol, 0.0);
  for (double t : {1.0, 2.5, 7.0}) {
    std::ostringstream name;
    name << "bracket_form.t_independence.t=" << t;
    rows.push_back(make_check(name.str(), slice_integral(bracket_form(phi, psi), sol, t), b0, 1e-12));
  }
  rows.push_back(make_check("bracket_form.antisymmetry", b0,
                            -slice_integral(bracket_form(psi, phi), sol, 0.0), 0.0));
  for (int mu = 0; mu < n; ++mu) {
    const auto [a, b] = pmu_bracket_identity(mu, phi, sol, 0.4);
    rows.push_back(make_check("pmu_bracket.mu=" + std::to_string(mu), a, b, 1e-10));
  }
  const std::vector<std::pair<std::string, ObservableForm>> forms{
      {"F_phi", form::FPhi{phi}},
      {"alpha_f", form::AlphaF{random_modes(modes, rng)}},
      {"alpha_star_g", form::AlphaStarG{random_modes(modes, rng)}},
      {"P_0", form::Pmu{0, config.lambda}},
      {"P_1", form::Pmu{std::min(1, n - 1), config.lambda}}};
  for (const auto& [fn, f] : forms) {
    for (const auto& [gn, g] : forms) {
      rows.push_back(make_check("poisson." + fn + "." + gn,
                                omega_sigma(sol, hamiltonian_deformation(f, sol),
                                            hamiltonian_deformation(g, sol), 0.9),
                                form_bracket_integral(f, g, sol, 0.9), 1e-10));
    }
  }
  report.finalize();
  return report;
}

SimulateResult simulate(const RunConfig& config, const Solution& sol,
                        const SimulateOptions& opts) {
  if (opts.n_out < 2) throw ConfigError("simulate: n_out must be >= 2");
  if (!(opts.t_final > 0.0)) throw ConfigError("simulate: t_final must be positive");
  const ModeLattice& lat = sol.lattice();
  const int d = lat.dim();
  const std::size_t modes = lat.num_modes();
  const double interval = opts.t_final / (opts.n_out - 1);

  // largest |u_k|, at most four, reported in mode order
  std::vector<std::size_t> order(modes);
  for (std::size_t k = 0; k < modes; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(sol.u()[a]) > std::abs(sol.u()[b]);
  });
  order.resize(std::min<std::size_t>(4, modes));
  std::sort(order.begin(), order.end());

  int steps_per_out = 0;
  RField lf_phi, lf_pi;
  if (opts.leapfrog_dt) {
    const double dt = *opts.leapfrog_dt;
    if (!(dt > 0.0)) throw ConfigError("simulate: leapfrog dt must be positive");
    steps_per_out = static_cast<int>(std::lround(interval / dt));
    if (steps_per_out < 1 || std::abs(steps_per_out * dt - interval) > 1e-9 * interval) {
      throw ConfigError("simulate: output interval must be a multiple of the leapfrog dt");
    }
    const SliceData s0 = evaluate_fields(sol, 0.0);
    for (std::size_t j = 0; j < s0.phi.size(); ++j) {
      lf_phi.push_back(s0.phi[j].real());
      lf_pi.push_back(s0.p[0][j].real());
    }
  }

  std::ostringstream csv;
  csv.precision(17);
  csv << "# kgms simulate schema_version " << kSchemaVersion << "\n";
  csv << "t,energy";
  for (int a = 1; a <= d; ++a) csv << ",momentum_" << a;
  for (std::size_t k : order) csv << ",abs_a_" << mode_label(lat, k);
  if (opts.leapfrog_dt) csv << ",leapfrog_energy,leapfrog_shadow_energy";
  csv << "\n";

  double e0 = 0.0, shadow0 = 0.0;
  std::vector<double> p0(d), a0(order.size());
  double drift_e = 0.0, drift_p = 0.0, drift_a = 0.0, drift_shadow = 0.0, lf_gap = 0.0;
  for (int i = 0; i < opts.n_out; ++i) {
    const double t = i * interval;
    const double energy = -slice_integral(form::Pmu{0, config.lambda}, sol, t).real();
    csv << t << ',' << energy;
    if (i == 0) e0 = energy;
    drift_e = std::max(drift_e, std::abs(energy - e0));
    for (int a = 1; a <= d; ++a) {
      const double p = -slice_integral(form::Pmu{a, config.lambda}, sol, t).real();
      if (i == 0) p0[a - 1] = p;
      drift_p = std::max(drift_p, std::abs(p - p0[a - 1]));
      csv << ',' << p;
    }
    for (std::size_t q = 0; q < order.size(); ++q) {
      const double mag = std::abs(a_k(sol, order[q], t));
      if (i == 0) a0[q] = mag;
      drift_a = std::max(drift_a, std::abs(mag - a0[q]));
      csv << ',' << mag;
    }
    if (opts.leapfrog_dt) {
      if (i > 0) {
        const SliceData s =
            leapfrog_evolve(lat, lf_phi, lf_pi, *opts.leapfrog_dt, steps_per_out);
        for (std::size_t j = 0; j < lf_phi.size(); ++j) {
          lf_phi[j] = s.phi[j].real();
          lf_pi[j] = s.dphi[0][j].real();
        }
      }
      const double e = field_energy(lat, lf_phi, lf_pi);
      const double sh = leapfrog_shadow_energy(lat, lf_phi, lf_pi, *opts.leapfrog_dt);
      if (i == 0) shadow0 = sh;
      drift_shadow = std::max(drift_shadow, std::abs(sh - shadow0));
      lf_gap = std::max(lf_gap, std::abs(e - energy));
      csv << ',' << e << ',' << sh;
    }
    csv << "\n";
  }

  Report report{"simulate", "", config, {}};
  const double scale = std::max(1.0, std::abs(e0));
  report.checks.push_back(make_check("simulate.energy_conservation", drift_e, 0.0, 1e-10 * scale));
  report.checks.push_back(make_check("simulate.momentum_conservation", drift_p, 0.0, 1e-10 * scale));
  report.checks.push_back(make_check("simulate.a_k_conservation", drift_a, 0.0, 1e-10 * scale));
  if (opts.leapfrog_dt) {
    double kmax = 0.0;
    for (double w : lat.frequencies()) kmax = std::max(kmax, w);
    const double dt = *opts.leapfrog_dt;
    report.checks.push_back(
        make_check("simulate.leapfrog_shadow_energy_drift", drift_shadow, 0.0, 1e-10 * scale));
    // KDK potential term carries a factor within (kmax dt)^2 / 4 of 1
    report.checks.push_back(make_check("simulate.leapfrog_energy_agreement", lf_gap, 0.0,
                                       0.5 * kmax * kmax * dt * dt * scale));
  }
  report.finalize();
  return {csv.str(), std::move(report)};
}

PrequantResult prequant_table(const RunConfig& config, const CField& f,
                              const CField& g, int degree) {
  const LatticePtr lat = build_lattice(config.lattice);
  const std::size_t modes = lat->num_modes();
  if (f.size() != modes || g.size() != modes) {
    throw ConfigError("prequant: f and g need " + std::to_string(modes) + " entries each");
  }
  if (degree < 0 || degree > kDefaultDegreeBound - 1) {
    throw ConfigError("prequant: degree must be in [0, " +
                      std::to_string(kDefaultDegreeBound - 1) + "]");
  }
  const int n = lat->spacetime_dim();
  const double hbar = lat->hbar();
  PrequantResult res{Report{"prequant", "", config, {}}, {}, nlohmann::json::array()};
  auto& rows = res.report.checks;

  cplx c{};
  for (std::size_t k = 0; k < modes; ++k) c += lat->weight(k) * f[k] * g[k];
  c *= hbar;
  rows.push_back(make_check("classical_correspondence", c,
                            (hbar / I) * bracket_regularized(lat, f, g), 1e-12));

  const auto monomials = monomials_up_to(*lat, degree);
  std::vector<double> time(n, 0.0);
  time[0] = 1.0;
  double ccr = 0.0, pc = 0.0, aa = 0.0;
  bool asas = true;
  CField g_shift(modes);
  for (std::size_t k = 0; k < modes; ++k) g_shift[k] = lat->k0(k) * g[k];
  for (const auto& alpha : monomials) {
    const PolarizedState m = PolarizedState::monomial(lat, alpha);
    ccr = std::max(ccr, max_abs_difference(commutator(make_a(f), make_a_star(g), m), c * m));
    aa = std::max(aa, max_abs_difference(commutator(make_a(f), make_a(g), m),
                                         PolarizedState(lat)));
    asas = asas && commutator(make_a_star(f), make_a_star(g), m).is_zero();
    pc = std::max(pc, max_abs_difference(commutator(make_p(time), make_a_star(g), m),
                                         cplx{-hbar, 0.0} * op_a_star(g_shift, m)));
  }
  rows.push_back(make_check("ccr_operator_identity", ccr, 0.0, 1e-12));
  rows.push_back(make_check("annihilators_commute", aa, 0.0, 1e-12));
  rows.push_back(make_check("creators_commute", asas ? 0.0 : 1.0, 0.0, 0.0));
  rows.push_back(make_check("p_time_creation_commutator", pc, 0.0, 1e-12));
  rows.push_back(make_check("vacuum_energy",
                            op_p(time, PolarizedState::vacuum(lat)).is_zero() ? 0.0 : 1.0,
                            0.0, 0.0));
  res.report.finalize();

  std::ostringstream csv;
  csv.precision(17);
  csv << "# kgms prequant spectrum schema_version " << kSchemaVersion << "\n";
  csv << "multi_index,eigenvalue,energy\n";
  for (const auto& alpha : monomials) {
    const double ev = p_eigenvalue(*lat, alpha, time);
    std::string label;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (k > 0) label += ' ';
      label += std::to_string(alpha[k]);
    }
    csv << label << ',' << ev << ',' << -ev << "\n";
    res.spectrum.push_back(nlohmann::json{{"multi_index", alpha}, {"eigenvalue", ev}, {"energy", -ev}});
  }
  res.spectrum_csv = csv.str();
  return res;
}

}  // namespace kgms
