#pragma once

// Klein-Gordon fields stored as mass-shell mode data.
//
//   phi(t, x) = (2 pi)^{-d/2} sum_k w_k (u_k e^{-i k.x} + u*_k e^{i k.x}),
//   k.x = k0 t - kvec.xvec.
//
// A Solution always uses k0 = sqrt(m^2 + |k|^2). ModeField relaxes this to an
// arbitrary per-mode frequency so off-shell trial fields can be built from
// the same machinery (they are what the criticality and residual checks
// need as counterexamples).

#include <functional>
#include <span>
#include <vector>

#include "kgms/lattice.hpp"

namespace kgms {

struct ModeField {
  LatticePtr lat;
  CField u;
  CField ustar;
  RField freq;  // per-mode temporal frequency
};

class Solution {
 public:
  Solution() = default;
  Solution(LatticePtr lat, CField u, CField ustar, bool real_flag);

  const ModeLattice& lattice() const { return *lat_; }
  const LatticePtr& lattice_ptr() const { return lat_; }
  const CField& u() const { return u_; }
  const CField& ustar() const { return ustar_; }
  bool is_real() const { return real_; }

  // on-shell ModeField view
  ModeField field() const;

  friend Solution operator+(const Solution& a, const Solution& b);
  friend Solution operator-(const Solution& a, const Solution& b);
  friend Solution operator*(cplx s, const Solution& a);

 private:
  LatticePtr lat_;
  CField u_;
  CField ustar_;
  bool real_ = true;
};

// Fields of the Hamiltonian n-curve on the slice {t = const}.
struct SliceData {
  double t = 0.0;
  CField phi;
  std::vector<CField> dphi;  // d_mu phi, mu = 0..d
  std::vector<CField> p;     // p^mu = eta^{mu nu} d_nu phi
  CField e;                  // -1/2 eta^{mu nu} d_mu phi d_nu phi - 1/2 m^2 phi^2
};

// Second derivatives d_mu d_nu phi, stored at index mu * (d+1) + nu.
struct SliceHessian {
  double t = 0.0;
  int n = 0;
  std::vector<CField> dd;
  const CField& at(int mu, int nu) const { return dd[mu * n + nu]; }
};

// phi, d_mu phi and box phi = eta^{mu nu} d_mu d_nu phi on a slice.
struct FieldJet {
  CField phi;
  std::vector<CField> grad;
  CField box;
};

Solution from_modes(LatticePtr lat, CField u, CField ustar, bool real_flag);
Solution zero_solution(LatticePtr lat);

// u_k = i pi0_hat(k) + k0 phi0_hat(k), u*_k = conj(u_k).
Solution from_cauchy(LatticePtr lat, std::span<const double> phi0,
                     std::span<const double> pi0);

ModeField off_shell(const Solution& sol, double frequency_scale);

// Synthesize d_{mu_1}...d_{mu_r} phi on the grid at time t.
CField synthesize(const ModeField& f, double t, std::span<const int> mus = {});

SliceData evaluate_fields(const ModeField& f, double t);
SliceData evaluate_fields(const Solution& sol, double t);
SliceHessian evaluate_hessian(const ModeField& f, double t);
FieldJet evaluate_jet(const ModeField& f, double t);

// Re-based solution whose t = 0 slice is the t-slice of `sol`.
Solution evolve_exact(const Solution& sol, double t);

// d_mu of a solution, again a solution.
Solution derivative(const Solution& sol, int mu);

// Max-norm of box phi + m^2 phi; mode form uses exact time derivatives.
double kg_residual(const ModeField& f, double t);
double kg_residual(const Solution& sol, double t);
// Grid form: samples[i] is phi at t_0 + i dt; centered second difference in
// time, spectral Laplacian; max over interior time levels.
double kg_residual_grid(const ModeLattice& lat,
                        std::span<const CField> samples, double dt);

// Spectral Laplacian of a band-limited grid field.
RField laplacian(const ModeLattice& lat, std::span<const double> f);

// Spectral gradient component d_a f.
RField spatial_derivative(const ModeLattice& lat, std::span<const double> f,
                          int axis);

// int 1/2 pi^2 + 1/2 |grad phi|^2 + 1/2 m^2 phi^2
double field_energy(const ModeLattice& lat, std::span<const double> phi,
                    std::span<const double> pi);
// Quadratic invariant of kick-drift-kick leapfrog at step dt: the energy
// with each mode's potential term scaled by (1 - k0^2 dt^2 / 4).
double leapfrog_shadow_energy(const ModeLattice& lat,
                              std::span<const double> phi,
                              std::span<const double> pi, double dt);

using LeapfrogObserver =
    std::function<void(int step, const RField& phi, const RField& pi)>;

// Kick-drift-kick integration of phi_tt = Laplacian phi - m^2 phi.
// Rejects dt * max k0 >= 2.
SliceData leapfrog_evolve(const ModeLattice& lat, std::span<const double> phi0,
                          std::span<const double> pi0, double dt, int steps,
                          const LeapfrogObserver& observer = {});

}  // namespace kgms
