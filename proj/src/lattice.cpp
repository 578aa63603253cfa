#include "kgms/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kgms {

namespace {

void validate(const LatticeParams& p) {
  if (p.d < 1) throw std::invalid_argument("lattice: d must be >= 1");
  if (!(p.L > 0.0)) throw std::invalid_argument("lattice: L must be positive");
  if (p.N < 2 || p.N % 2 != 0) {
    throw std::invalid_argument("lattice: N must be a positive even integer");
  }
  if (p.n_max < 0) throw std::invalid_argument("lattice: n_max must be >= 0");
  if (2 * p.n_max + 1 > p.N) {
    throw std::invalid_argument("lattice: aliasing, 2*n_max+1 = " +
                                std::to_string(2 * p.n_max + 1) +
                                " exceeds N = " + std::to_string(p.N));
  }
  if (!(p.m > 0.0)) throw std::invalid_argument("lattice: mass must be positive");
  if (!(p.hbar > 0.0)) throw std::invalid_argument("lattice: hbar must be positive");
}

}  // namespace

ModeLattice::ModeLattice(const LatticeParams& params) : params_(params) {
  validate(params_);
  phases_ = kernels::PhaseTable(params_.d, params_.N, params_.n_max);

  const int d = params_.d;
  const double dk = 2.0 * std::numbers::pi / params_.L;
  const std::size_t modes = phases_.num_modes();
  kvec_.resize(modes * d);
  k0_.resize(modes);
  weight_.resize(modes);
  const double cell_k = std::pow(dk, d);
  for (std::size_t i = 0; i < modes; ++i) {
    const int* n = phases_.mode_axes(i);
    for (int a = 0; a < d; ++a) kvec_[i * d + a] = dk * n[a];
    k0_[i] = dispersion(*this, kvec(i));
    weight_[i] = cell_k / (2.0 * k0_[i]);
  }
  cell_volume_ = std::pow(params_.L / params_.N, d);
  fourier_norm_ = std::pow(2.0 * std::numbers::pi, -0.5 * d);
}

std::size_t ModeLattice::mode_index(std::span<const int> n) const {
  if (n.size() != static_cast<std::size_t>(params_.d)) return npos;
  const int width = 2 * params_.n_max + 1;
  std::size_t idx = 0;
  for (int v : n) {
    if (v < -params_.n_max || v > params_.n_max) return npos;
    idx = idx * width + static_cast<std::size_t>(v + params_.n_max);
  }
  return idx;
}

double ModeLattice::grid_coord(std::size_t point, int axis) const {
  return phases_.point_axes(point)[axis] * params_.L / params_.N;
}

double ModeLattice::minkowski_dot(std::size_t mode,
                                  std::span<const double> zeta) const {
  if (zeta.size() != static_cast<std::size_t>(params_.d + 1)) {
    throw std::invalid_argument("minkowski_dot: zeta must have d+1 components");
  }
  double v = k0_[mode] * zeta[0];
  for (int a = 0; a < params_.d; ++a) v -= k(mode, a) * zeta[a + 1];
  return v;
}

LatticePtr build_lattice(const LatticeParams& params) {
  return std::make_shared<const ModeLattice>(params);
}

LatticePtr build_lattice(int d, double L, int N, int n_max, double m,
                         double hbar) {
  return build_lattice(LatticeParams{d, L, N, n_max, m, hbar});
}

double dispersion(const ModeLattice& lat, std::span<const double> kvec) {
  double k2 = lat.mass() * lat.mass();
  for (double c : kvec) k2 += c * c;
  return std::sqrt(k2);
}

CField dft_forward(const ModeLattice& lat, std::span<const cplx> grid) {
  if (grid.size() != lat.num_points()) {
    throw std::invalid_argument("dft_forward: field has " +
                                std::to_string(grid.size()) +
                                " samples, lattice expects " +
                                std::to_string(lat.num_points()));
  }
  CField out(lat.num_modes());
  kernels::analyze(kernels::default_backend(), lat.phases(), grid, out);
  const double scale = lat.fourier_norm() * lat.cell_volume();
  for (auto& c : out) c *= scale;
  return out;
}

CField dft_inverse(const ModeLattice& lat, std::span<const cplx> modes) {
  if (modes.size() != lat.num_modes()) {
    throw std::invalid_argument("dft_inverse: coefficient count mismatch");
  }
  // 1 / ((2 pi)^{-d/2} L^d)
  const double scale =
      1.0 / (lat.fourier_norm() * std::pow(lat.box_length(), lat.dim()));
  CField scaled(modes.begin(), modes.end());
  for (auto& c : scaled) c *= scale;
  CField out(lat.num_points());
  kernels::synthesize(kernels::default_backend(), lat.phases(), scaled, out);
  return out;
}

double band_limit_defect(const ModeLattice& lat, std::span<const cplx> grid) {
  const CField back = dft_inverse(lat, dft_forward(lat, grid));
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    total += std::norm(grid[j]);
    outside += std::norm(grid[j] - back[j]);
  }
  return total > 0.0 ? outside / total : 0.0;
}

cplx grid_integral(const ModeLattice& lat, std::span<const cplx> f) {
  cplx acc{};
  for (const auto& v : f) acc += v;
  return acc * lat.cell_volume();
}

}  // namespace kgms
