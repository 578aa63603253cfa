#pragma once

// Observable (n-1)-forms of the Klein-Gordon field.
//
//   F_Phi = (p^mu Phi - phi eta^{mu nu} d_nu Phi) beta_mu,  Phi a solution
//   alpha_k  = F_Phi with Phi = i e^{ik.x} / (2 pi)^{d/2}
//   alpha*_k = F_Phi with Phi = -i e^{-ik.x} / (2 pi)^{d/2}
//   P_mu     = d_mu -| theta_lambda
//
// As mode data alpha_k is the solution with u*_k = i / w_k, alpha*_k the one
// with u_k = -i / w_k. The smeared forms alpha_f = sum_k w_k f_k alpha_k and
// alpha*_g = sum_k w_k g_k alpha*_k have u* = i f and u = -i g. On a
// solution Gamma, int alpha_k = u_k and int alpha*_k = u*_k.
//
// Hamiltonian vector fields: xi_{F_Phi} is the vertical field
//   Phi d_phi + eta^{mu nu} d_nu Phi d_{p^mu} - (m^2 phi Phi + p^mu d_mu Phi) d_e
// and xi_{P_mu} = d/dx^mu. As deformations of Gamma these are Phi and
// -d_mu phi.
//
// Brackets: {F, G} = xi_G -| xi_F -| omega, so int {F, G} = Omega(Xi_F, Xi_G).

#include <utility>
#include <variant>

#include "kgms/phase_space.hpp"

namespace kgms {

namespace form {
struct FPhi {
  Solution phi;
};
struct AlphaK {
  std::size_t k;
};
struct AlphaStarK {
  std::size_t k;
};
struct AlphaF {
  CField f;
};
struct AlphaStarG {
  CField g;
};
struct Pmu {
  int mu;
  double lambda;
};
struct Bracket {
  Solution phi, psi;
};
}  // namespace form

using ObservableForm = std::variant<form::FPhi, form::AlphaK, form::AlphaStarK,
                                    form::AlphaF, form::AlphaStarG, form::Pmu,
                                    form::Bracket>;

// Phi generating an F_Phi-type form (throws for Pmu and Bracket).
Solution generator_solution(const LatticePtr& lat, const ObservableForm& f);

cplx slice_integral(const ObservableForm& f, const Solution& sol, double t);

cplx a_k(const Solution& sol, std::size_t k, double t = 0.0);
cplx a_star_k(const Solution& sol, std::size_t k, double t = 0.0);

ObservableForm bracket_form(const Solution& phi, const Solution& psi);

struct RegularizedBracket {
  cplx weight_sum;  // i sum_k w_k f_k g_k
  cplx form_path;   // int {alpha_f, alpha*_g} through bracket_form
};

// {a_f, a*_g}; throws std::logic_error if the two paths differ by more
// than 1e-10 relative.
RegularizedBracket bracket_regularized_paths(const LatticePtr& lat,
                                             std::span<const cplx> f,
                                             std::span<const cplx> g);
cplx bracket_regularized(const LatticePtr& lat, std::span<const cplx> f,
                         std::span<const cplx> g);
// {a_f, a_f'} through the form path.
cplx bracket_annihilation(const LatticePtr& lat, std::span<const cplx> f,
                          std::span<const cplx> fp);
// {a*_g, a*_g'} through the form path.
cplx bracket_creation(const LatticePtr& lat, std::span<const cplx> g,
                      std::span<const cplx> gp);

// Max-norm of d_mu J^mu, J^mu = p^mu Phi - phi eta^{mu nu} d_nu Phi, over
// the interior points of a uniform t_grid. Phi may be off shell.
double noether_divergence(const ModeField& phi, const Solution& sol,
                          std::span<const double> t_grid);

// (Omega(Xi_{P_mu}, Xi_{F_Phi}), int F_{d_mu Phi}).
std::pair<cplx, cplx> pmu_bracket_identity(int mu, const Solution& phi,
                                           const Solution& sol, double t);

// Xi_F as a deformation of sol (throws for Bracket).
Deformation hamiltonian_deformation(const ObservableForm& f,
                                    const Solution& sol);

// int {F, G} on the slice, from omega_eval on the Hamiltonian vector fields
// (throws for Bracket).
cplx form_bracket_integral(const ObservableForm& f, const ObservableForm& g,
                           const Solution& sol, double t);

}  // namespace kgms
