#include "kgms/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kgms {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

CField checked(const ModeLattice& lat, std::span<const cplx> f,
               const char* what) {
  if (f.size() != lat.num_modes()) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(lat.num_modes()) +
                                " mode values, got " + std::to_string(f.size()));
  }
  return CField(f.begin(), f.end());
}

cplx fphi_integral(const Solution& phi, const Solution& sol, double t) {
  const SliceData s = evaluate_fields(sol, t);
  const SliceData g = evaluate_fields(phi, t);
  CField dens(s.phi.size());
  for (std::size_t j = 0; j < dens.size(); ++j) {
    dens[j] = s.p[0][j] * g.phi[j] - s.phi[j] * g.dphi[0][j];
  }
  return grid_integral(sol.lattice(), dens);
}

cplx pmu_integral(const form::Pmu& p, const Solution& sol, double t) {
  const ModeLattice& lat = sol.lattice();
  const int n = lat.spacetime_dim();
  if (p.mu < 0 || p.mu >= n) throw std::invalid_argument("Pmu: mu out of range");
  const SliceData s = evaluate_fields(sol, t);
  const SliceHessian h = evaluate_hessian(sol.field(), t);
  CField dens(s.phi.size());
  for (std::size_t j = 0; j < dens.size(); ++j) {
    std::vector<MTangentC> vecs{MTangentC::basis(n, p.mu)};
    for (int a = 1; a < n; ++a) vecs.push_back(graph_tangent(lat, s, h, j, a));
    dens[j] = theta_eval<cplx>(p.lambda, curve_point(lat, s, j), vecs);
  }
  return grid_integral(lat, dens);
}

cplx bracket_integral(const form::Bracket& b, double t) {
  const SliceData x = evaluate_fields(b.phi, t);
  const SliceData y = evaluate_fields(b.psi, t);
  CField dens(x.phi.size());
  for (std::size_t j = 0; j < dens.size(); ++j) {
    dens[j] = x.dphi[0][j] * y.phi[j] - x.phi[j] * y.dphi[0][j];
  }
  return grid_integral(b.phi.lattice(), dens);
}

// xi_F at grid point j of the slice s.
MTangentC hamiltonian_field(const ObservableForm& f, const ModeLattice& lat,
                            const SliceData& s, const SliceData* gen,
                            std::size_t j) {
  const int n = lat.spacetime_dim();
  if (const auto* p = std::get_if<form::Pmu>(&f)) return MTangentC::basis(n, p->mu);
  const double m2 = lat.mass() * lat.mass();
  MTangentC xi = MTangentC::zero(n);
  xi.dphi = gen->phi[j];
  cplx pdphi{};
  for (int mu = 0; mu < n; ++mu) {
    const double eta = mu == 0 ? 1.0 : -1.0;
    xi.dp[mu] = eta * gen->dphi[mu][j];
    pdphi += s.p[mu][j] * gen->dphi[mu][j];
  }
  xi.de = -(m2 * s.phi[j] * gen->phi[j] + pdphi);
  return xi;
}

}  // namespace

Solution generator_solution(const LatticePtr& lat, const ObservableForm& f) {
  const std::size_t m = lat->num_modes();
  CField u(m), us(m);
  const cplx i{0.0, 1.0};
  return std::visit(
      overloaded{
          [&](const form::FPhi& x) { return x.phi; },
          [&](const form::AlphaK& x) {
            us.at(x.k) = i / lat->weight(x.k);
            return from_modes(lat, u, us, false);
          },
          [&](const form::AlphaStarK& x) {
            u.at(x.k) = -i / lat->weight(x.k);
            return from_modes(lat, u, us, false);
          },
          [&](const form::AlphaF& x) {
            const CField f = checked(*lat, x.f, "alpha_f");
            for (std::size_t k = 0; k < m; ++k) us[k] = i * f[k];
            return from_modes(lat, u, us, false);
          },
          [&](const form::AlphaStarG& x) {
            const CField g = checked(*lat, x.g, "alpha*_g");
            for (std::size_t k = 0; k < m; ++k) u[k] = -i * g[k];
            return from_modes(lat, u, us, false);
          },
          [&](const form::Pmu&) -> Solution {
            throw std::invalid_argument("P_mu has no generating solution");
          },
          [&](const form::Bracket&) -> Solution {
            throw std::invalid_argument("bracket form has no generating solution");
          },
      },
      f);
}

cplx slice_integral(const ObservableForm& f, const Solution& sol, double t) {
  if (const auto* p = std::get_if<form::Pmu>(&f)) return pmu_integral(*p, sol, t);
  if (const auto* b = std::get_if<form::Bracket>(&f)) return bracket_integral(*b, t);
  return fphi_integral(generator_solution(sol.lattice_ptr(), f), sol, t);
}

cplx a_k(const Solution& sol, std::size_t k, double t) {
  return slice_integral(form::AlphaK{k}, sol, t);
}

cplx a_star_k(const Solution& sol, std::size_t k, double t) {
  return slice_integral(form::AlphaStarK{k}, sol, t);
}

ObservableForm bracket_form(const Solution& phi, const Solution& psi) {
  if (&phi.lattice() != &psi.lattice()) {
    throw std::invalid_argument("bracket_form: solutions live on different lattices");
  }
  return form::Bracket{phi, psi};
}

RegularizedBracket bracket_regularized_paths(const LatticePtr& lat,
                                             std::span<const cplx> f,
                                             std::span<const cplx> g) {
  const CField fv = checked(*lat, f, "bracket_regularized f");
  const CField gv = checked(*lat, g, "bracket_regularized g");
  cplx sum{};
  for (std::size_t k = 0; k < fv.size(); ++k) sum += lat->weight(k) * fv[k] * gv[k];
  const cplx weight_sum = cplx{0.0, 1.0} * sum;
  const Solution phi = generator_solution(lat, form::AlphaF{fv});
  const Solution psi = generator_solution(lat, form::AlphaStarG{gv});
  const cplx form_path = slice_integral(bracket_form(phi, psi), phi, 0.0);
  const double scale = std::max(1.0, std::abs(weight_sum));
  if (std::abs(weight_sum - form_path) > 1e-10 * scale) {
    throw std::logic_error("bracket_regularized: weight sum and form bracket disagree");
  }
  return {weight_sum, form_path};
}

cplx bracket_regularized(const LatticePtr& lat, std::span<const cplx> f,
                         std::span<const cplx> g) {
  return bracket_regularized_paths(lat, f, g).weight_sum;
}

cplx bracket_annihilation(const LatticePtr& lat, std::span<const cplx> f,
                          std::span<const cplx> fp) {
  const Solution phi = generator_solution(lat, form::AlphaF{checked(*lat, f, "f")});
  const Solution psi = generator_solution(lat, form::AlphaF{checked(*lat, fp, "f'")});
  return slice_integral(bracket_form(phi, psi), phi, 0.0);
}

cplx bracket_creation(const LatticePtr& lat, std::span<const cplx> g,
                      std::span<const cplx> gp) {
  const Solution phi = generator_solution(lat, form::AlphaStarG{checked(*lat, g, "g")});
  const Solution psi = generator_solution(lat, form::AlphaStarG{checked(*lat, gp, "g'")});
  return slice_integral(bracket_form(phi, psi), phi, 0.0);
}

double noether_divergence(const ModeField& phi, const Solution& sol,
                          std::span<const double> t_grid) {
  if (t_grid.size() < 3) {
    throw std::invalid_argument("noether_divergence: need at least 3 time points");
  }
  const ModeLattice& lat = sol.lattice();
  const double dt = t_grid[1] - t_grid[0];
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (std::abs((t_grid[i] - t_grid[i - 1]) - dt) > 1e-12 * std::max(1.0, std::abs(dt))) {
      throw std::invalid_argument("noether_divergence: time grid must be uniform");
    }
  }
  const ModeField base = sol.field();
  auto j0 = [&](double t) {
    const CField f = synthesize(base, t);
    const CField ft = synthesize(base, t, std::vector<int>{0});
    const CField g = synthesize(phi, t);
    const CField gt = synthesize(phi, t, std::vector<int>{0});
    CField out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = ft[j] * g[j] - f[j] * gt[j];
    return out;
  };
  double worst = 0.0;
  CField prev = j0(t_grid[0]);
  CField cur = j0(t_grid[1]);
  for (std::size_t i = 1; i + 1 < t_grid.size(); ++i) {
    const CField next = j0(t_grid[i + 1]);
    const double t = t_grid[i];
    // spatial part: phi Lap Phi - Lap phi Phi, from exact mode derivatives
    const CField f = synthesize(base, t);
    const CField g = synthesize(phi, t);
    CField div(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) div[j] = (next[j] - prev[j]) / (2.0 * dt);
    for (int a = 1; a <= lat.dim(); ++a) {
      const std::vector<int> aa{a, a};
      const CField flap = synthesize(base, t, aa);
      const CField glap = synthesize(phi, t, aa);
      for (std::size_t j = 0; j < f.size(); ++j) {
        div[j] += f[j] * glap[j] - flap[j] * g[j];
      }
    }
    for (const auto& v : div) worst = std::max(worst, std::abs(v));
    prev = std::move(cur);
    cur = next;
  }
  return worst;
}

std::pair<cplx, cplx> pmu_bracket_identity(int mu, const Solution& phi,
                                           const Solution& sol, double t) {
  const Deformation xi_p = hamiltonian_deformation(form::Pmu{mu, 1.0}, sol);
  const cplx lhs = omega_sigma(sol, xi_p, Deformation{phi}, t);
  const cplx rhs = slice_integral(form::FPhi{derivative(phi, mu)}, sol, t);
  return {lhs, rhs};
}

Deformation hamiltonian_deformation(const ObservableForm& f,
                                    const Solution& sol) {
  if (const auto* p = std::get_if<form::Pmu>(&f)) {
    if (p->mu < 0 || p->mu >= sol.lattice().spacetime_dim()) {
      throw std::invalid_argument("Pmu: mu out of range");
    }
    return Deformation{cplx{-1.0, 0.0} * derivative(sol, p->mu)};
  }
  return Deformation{generator_solution(sol.lattice_ptr(), f)};
}

cplx form_bracket_integral(const ObservableForm& f, const ObservableForm& g,
                           const Solution& sol, double t) {
  const ModeLattice& lat = sol.lattice();
  const int n = lat.spacetime_dim();
  auto generator_slice = [&](const ObservableForm& x) -> std::optional<SliceData> {
    if (std::holds_alternative<form::Pmu>(x)) return std::nullopt;
    return evaluate_fields(generator_solution(sol.lattice_ptr(), x), t);
  };
  const SliceData s = evaluate_fields(sol, t);
  const SliceHessian h = evaluate_hessian(sol.field(), t);
  const auto gf = generator_slice(f);
  const auto gg = generator_slice(g);
  CField dens(s.phi.size());
  for (std::size_t j = 0; j < dens.size(); ++j) {
    std::vector<MTangentC> vecs{
        hamiltonian_field(f, lat, s, gf ? &*gf : nullptr, j),
        hamiltonian_field(g, lat, s, gg ? &*gg : nullptr, j)};
    for (int a = 1; a < n; ++a) vecs.push_back(graph_tangent(lat, s, h, j, a));
    dens[j] = omega_eval<cplx>(vecs);
  }
  return grid_integral(lat, dens);
}

}  // namespace kgms
