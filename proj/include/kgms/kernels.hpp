#pragma once

// Data-parallel trigonometric sums between the periodic grid and the
// truncated Fourier mode set. Each kernel has a serial reference and an
// OpenMP version; both compute every output entry with the same inner
// loop order, so their results are bitwise identical.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace kgms::kernels {

using cplx = std::complex<double>;

enum class Backend { serial, openmp };

// Per-axis table of e^{2 pi i n j / N} for |n| <= n_max, 0 <= j < N, plus
// the lexicographic decompositions of grid and mode indices.
class PhaseTable {
 public:
  PhaseTable() = default;
  PhaseTable(int dim, int points_per_axis, int n_max);

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  int n_max() const { return n_max_; }
  std::size_t num_points() const { return num_points_; }
  std::size_t num_modes() const { return num_modes_; }

  // e^{2 pi i n j / N}
  cplx phase(int n, int j) const {
    return table_[static_cast<std::size_t>(n + n_max_) * n_ + j];
  }
  // axis coordinates of grid point `point` (j_0..j_{d-1})
  const int* point_axes(std::size_t point) const {
    return &point_axes_[point * dim_];
  }
  // integer wave numbers of mode `mode` (n_0..n_{d-1})
  const int* mode_axes(std::size_t mode) const {
    return &mode_axes_[mode * dim_];
  }

 private:
  int dim_ = 0;
  int n_ = 0;
  int n_max_ = 0;
  std::size_t num_points_ = 0;
  std::size_t num_modes_ = 0;
  std::vector<cplx> table_;
  std::vector<int> point_axes_;
  std::vector<int> mode_axes_;
};

// grid[j] = sum_k modes[k] e^{i k.x_j}
void synthesize_serial(const PhaseTable& t, std::span<const cplx> modes,
                       std::span<cplx> grid);
void synthesize_omp(const PhaseTable& t, std::span<const cplx> modes,
                    std::span<cplx> grid);

// modes[k] = sum_j grid[j] e^{-i k.x_j}
void analyze_serial(const PhaseTable& t, std::span<const cplx> grid,
                    std::span<cplx> modes);
void analyze_omp(const PhaseTable& t, std::span<const cplx> grid,
                 std::span<cplx> modes);

void synthesize(Backend b, const PhaseTable& t, std::span<const cplx> modes,
                std::span<cplx> grid);
void analyze(Backend b, const PhaseTable& t, std::span<const cplx> grid,
             std::span<cplx> modes);

// Backend used by the library transforms. Defaults to openmp.
Backend default_backend();
void set_default_backend(Backend b);

}  // namespace kgms::kernels
