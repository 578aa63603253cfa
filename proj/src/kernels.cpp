#include "kgms/kernels.hpp"

#include <atomic>
#include <numbers>
#include <stdexcept>

namespace kgms::kernels {

PhaseTable::PhaseTable(int dim, int points_per_axis, int n_max)
    : dim_(dim), n_(points_per_axis), n_max_(n_max) {
  if (dim < 1 || points_per_axis < 1 || n_max < 0) {
    throw std::invalid_argument("PhaseTable: invalid shape");
  }
  const int width = 2 * n_max + 1;
  table_.resize(static_cast<std::size_t>(width) * n_);
  for (int n = -n_max; n <= n_max; ++n) {
    for (int j = 0; j < n_; ++j) {
      // reduce n*j mod N first so large products keep full accuracy
      int r = (n * j) % n_;
      if (r < 0) r += n_;
      const double angle = 2.0 * std::numbers::pi * r / n_;
      table_[static_cast<std::size_t>(n + n_max) * n_ + j] =
          std::polar(1.0, angle);
    }
  }

  num_points_ = 1;
  num_modes_ = 1;
  for (int a = 0; a < dim; ++a) {
    num_points_ *= static_cast<std::size_t>(n_);
    num_modes_ *= static_cast<std::size_t>(width);
  }

  point_axes_.resize(num_points_ * dim_);
  for (std::size_t p = 0; p < num_points_; ++p) {
    std::size_t rest = p;
    for (int a = dim_ - 1; a >= 0; --a) {
      point_axes_[p * dim_ + a] = static_cast<int>(rest % n_);
      rest /= n_;
    }
  }
  mode_axes_.resize(num_modes_ * dim_);
  for (std::size_t m = 0; m < num_modes_; ++m) {
    std::size_t rest = m;
    for (int a = dim_ - 1; a >= 0; --a) {
      mode_axes_[m * dim_ + a] = static_cast<int>(rest % width) - n_max;
      rest /= width;
    }
  }
}

namespace {

void check_shapes(const PhaseTable& t, std::size_t modes, std::size_t grid) {
  if (modes != t.num_modes() || grid != t.num_points()) {
    throw std::invalid_argument("kernel: span size does not match lattice");
  }
}

inline cplx mode_phase(const PhaseTable& t, std::size_t mode,
                       std::size_t point) {
  const int* n = t.mode_axes(mode);
  const int* j = t.point_axes(point);
  cplx ph = t.phase(n[0], j[0]);
  for (int a = 1; a < t.dim(); ++a) ph *= t.phase(n[a], j[a]);
  return ph;
}

inline cplx synth_point(const PhaseTable& t, std::span<const cplx> modes,
                        std::size_t point) {
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (modes[k] == cplx{}) continue;
    acc += modes[k] * mode_phase(t, k, point);
  }
  return acc;
}

inline cplx analyze_mode(const PhaseTable& t, std::span<const cplx> grid,
                         std::size_t mode) {
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    acc += grid[j] * std::conj(mode_phase(t, mode, j));
  }
  return acc;
}

std::atomic<Backend> g_backend{Backend::openmp};

}  // namespace

void synthesize_serial(const PhaseTable& t, std::span<const cplx> modes,
                       std::span<cplx> grid) {
  check_shapes(t, modes.size(), grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    grid[j] = synth_point(t, modes, j);
  }
}

void synthesize_omp(const PhaseTable& t, std::span<const cplx> modes,
                    std::span<cplx> grid) {
  check_shapes(t, modes.size(), grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    grid[j] = synth_point(t, modes, static_cast<std::size_t>(j));
  }
}

void analyze_serial(const PhaseTable& t, std::span<const cplx> grid,
                    std::span<cplx> modes) {
  check_shapes(t, modes.size(), grid.size());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    modes[k] = analyze_mode(t, grid, k);
  }
}

void analyze_omp(const PhaseTable& t, std::span<const cplx> grid,
                 std::span<cplx> modes) {
  check_shapes(t, modes.size(), grid.size());
  const auto n = static_cast<std::ptrdiff_t>(modes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    modes[k] = analyze_mode(t, grid, static_cast<std::size_t>(k));
  }
}

void synthesize(Backend b, const PhaseTable& t, std::span<const cplx> modes,
                std::span<cplx> grid) {
  if (b == Backend::openmp) {
    synthesize_omp(t, modes, grid);
  } else {
    synthesize_serial(t, modes, grid);
  }
}

void analyze(Backend b, const PhaseTable& t, std::span<const cplx> grid,
             std::span<cplx> modes) {
  if (b == Backend::openmp) {
    analyze_omp(t, grid, modes);
  } else {
    analyze_serial(t, grid, modes);
  }
}

Backend default_backend() { return g_backend.load(); }
void set_default_backend(Backend b) { g_backend.store(b); }

}  // namespace kgms::kernels
