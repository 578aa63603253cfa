#pragma once

// Discretization of the periodic box and of the positive mass shell.
//
// Space is the torus [0, L)^d sampled at x_j = j L / N per axis. Modes are
// k = (2 pi / L) n with |n_a| <= n_max, ordered lexicographically in n, so
// mode index i and M-1-i are negatives of each other. Each mode carries the
// continuum frequency k0 = sqrt(m^2 + |k|^2) and the discrete invariant
// measure w_k = (2 pi / L)^d / (2 k0).
//
// Grid integrals use (L/N)^d sum_j, exact for every integrand whose
// wave numbers stay below N (guaranteed for products of two lattice fields
// by 2 n_max + 1 <= N).

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "kgms/kernels.hpp"

namespace kgms {

using cplx = std::complex<double>;
using CField = std::vector<cplx>;
using RField = std::vector<double>;

struct LatticeParams {
  int d = 1;
  double L = 6.283185307179586;
  int N = 32;
  int n_max = 7;
  double m = 1.0;
  double hbar = 1.0;
};

class ModeLattice {
 public:
  explicit ModeLattice(const LatticeParams& params);

  const LatticeParams& params() const { return params_; }
  int dim() const { return params_.d; }
  int spacetime_dim() const { return params_.d + 1; }
  double box_length() const { return params_.L; }
  int points_per_axis() const { return params_.N; }
  int n_max() const { return params_.n_max; }
  double mass() const { return params_.m; }
  double hbar() const { return params_.hbar; }

  std::size_t num_modes() const { return k0_.size(); }
  std::size_t num_points() const { return phases_.num_points(); }

  // spatial wave vector component k_a of mode i (upper index)
  double k(std::size_t mode, int axis) const {
    return kvec_[mode * params_.d + axis];
  }
  std::span<const double> kvec(std::size_t mode) const {
    return {&kvec_[mode * params_.d], static_cast<std::size_t>(params_.d)};
  }
  const int* nvec(std::size_t mode) const { return phases_.mode_axes(mode); }
  double k0(std::size_t mode) const { return k0_[mode]; }
  double weight(std::size_t mode) const { return weight_[mode]; }
  std::span<const double> weights() const { return weight_; }
  std::span<const double> frequencies() const { return k0_; }
  // index of the mode with negated spatial wave vector
  std::size_t negated(std::size_t mode) const {
    return num_modes() - 1 - mode;
  }
  std::size_t zero_mode() const { return num_modes() / 2; }
  // index of integer wave vector n, or npos if outside the cutoff
  std::size_t mode_index(std::span<const int> n) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  double grid_coord(std::size_t point, int axis) const;
  double cell_volume() const { return cell_volume_; }
  // (2 pi)^{-d/2}
  double fourier_norm() const { return fourier_norm_; }
  // Minkowski product k . zeta = k0 zeta^0 - k.zeta_vec
  double minkowski_dot(std::size_t mode, std::span<const double> zeta) const;

  const kernels::PhaseTable& phases() const { return phases_; }

 private:
  LatticeParams params_;
  std::vector<double> kvec_;
  std::vector<double> k0_;
  std::vector<double> weight_;
  double cell_volume_ = 0.0;
  double fourier_norm_ = 0.0;
  kernels::PhaseTable phases_;
};

using LatticePtr = std::shared_ptr<const ModeLattice>;

LatticePtr build_lattice(int d, double L, int N, int n_max, double m,
                         double hbar = 1.0);
LatticePtr build_lattice(const LatticeParams& params);

// k0 = sqrt(m^2 + |k|^2)
double dispersion(const ModeLattice& lat, std::span<const double> kvec);

// psi_hat(k) = (2 pi)^{-d/2} (L/N)^d sum_j psi(x_j) e^{-i k.x_j}
CField dft_forward(const ModeLattice& lat, std::span<const cplx> grid);
// inverse of dft_forward on band-limited fields
CField dft_inverse(const ModeLattice& lat, std::span<const cplx> modes);

// Fraction of the grid L2 norm lying outside the lattice mode set.
double band_limit_defect(const ModeLattice& lat, std::span<const cplx> grid);

// (L/N)^d sum_j f_j, summed in grid order
cplx grid_integral(const ModeLattice& lat, std::span<const cplx> f);

}  // namespace kgms
