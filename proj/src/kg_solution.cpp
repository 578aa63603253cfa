#include "kgms/kg_solution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kgms {

namespace {

constexpr double kConjugacyTol = 1e-12;
constexpr double kBandLimitTol = 1e-10;

void check_sizes(const ModeLattice& lat, const CField& u, const CField& us) {
  if (u.size() != lat.num_modes() || us.size() != lat.num_modes()) {
    throw std::invalid_argument("solution: coefficient count does not match lattice");
  }
}

void require_same_lattice(const Solution& a, const Solution& b) {
  if (a.lattice_ptr() != b.lattice_ptr() &&
      a.lattice().num_modes() != b.lattice().num_modes()) {
    throw std::invalid_argument("solution: lattices differ");
  }
}

// lower-index wave covector component k_mu for temporal frequency w
inline double lower_k(const ModeLattice& lat, std::size_t mode, double w,
                      int mu) {
  return mu == 0 ? w : -lat.k(mode, mu - 1);
}

CField to_complex(std::span<const double> f) {
  return CField(f.begin(), f.end());
}

RField real_part(const CField& f) {
  RField r(f.size());
  std::transform(f.begin(), f.end(), r.begin(),
                 [](const cplx& c) { return c.real(); });
  return r;
}

}  // namespace

Solution::Solution(LatticePtr lat, CField u, CField ustar, bool real_flag)
    : lat_(std::move(lat)), u_(std::move(u)), ustar_(std::move(ustar)),
      real_(real_flag) {
  if (!lat_) throw std::invalid_argument("solution: null lattice");
  check_sizes(*lat_, u_, ustar_);
  if (real_) {
    double scale = 1.0;
    for (const auto& c : u_) scale = std::max(scale, std::abs(c));
    for (std::size_t k = 0; k < u_.size(); ++k) {
      if (std::abs(std::conj(u_[k]) - ustar_[k]) > kConjugacyTol * scale) {
        throw std::invalid_argument(
            "solution: real_flag set but u*_k != conj(u_k)");
      }
    }
  }
}

ModeField Solution::field() const {
  const auto f = lat_->frequencies();
  return ModeField{lat_, u_, ustar_, RField(f.begin(), f.end())};
}

Solution operator+(const Solution& a, const Solution& b) {
  require_same_lattice(a, b);
  CField u(a.u_.size()), us(a.u_.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = a.u_[k] + b.u_[k];
    us[k] = a.ustar_[k] + b.ustar_[k];
  }
  return Solution(a.lat_, std::move(u), std::move(us), a.real_ && b.real_);
}

Solution operator-(const Solution& a, const Solution& b) {
  return a + cplx{-1.0, 0.0} * b;
}

Solution operator*(cplx s, const Solution& a) {
  CField u(a.u_.size()), us(a.u_.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = s * a.u_[k];
    us[k] = s * a.ustar_[k];
  }
  return Solution(a.lat_, std::move(u), std::move(us),
                  a.real_ && s.imag() == 0.0);
}

Solution from_modes(LatticePtr lat, CField u, CField ustar, bool real_flag) {
  return Solution(std::move(lat), std::move(u), std::move(ustar), real_flag);
}

Solution zero_solution(LatticePtr lat) {
  const std::size_t m = lat->num_modes();
  return Solution(std::move(lat), CField(m), CField(m), true);
}

Solution from_cauchy(LatticePtr lat, std::span<const double> phi0,
                     std::span<const double> pi0) {
  const ModeLattice& L = *lat;
  if (phi0.size() != L.num_points() || pi0.size() != L.num_points()) {
    throw std::invalid_argument("from_cauchy: Cauchy data size mismatch");
  }
  const CField phi_c = to_complex(phi0);
  const CField pi_c = to_complex(pi0);
  if (band_limit_defect(L, phi_c) > kBandLimitTol ||
      band_limit_defect(L, pi_c) > kBandLimitTol) {
    throw std::invalid_argument(
        "from_cauchy: Cauchy data is not band-limited to the mode cutoff");
  }
  const CField phi_hat = dft_forward(L, phi_c);
  const CField pi_hat = dft_forward(L, pi_c);
  CField u(L.num_modes()), us(L.num_modes());
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = cplx{0.0, 1.0} * pi_hat[k] + L.k0(k) * phi_hat[k];
    us[k] = std::conj(u[k]);
  }
  return Solution(std::move(lat), std::move(u), std::move(us), true);
}

ModeField off_shell(const Solution& sol, double frequency_scale) {
  ModeField f = sol.field();
  for (auto& w : f.freq) w *= frequency_scale;
  return f;
}

CField synthesize(const ModeField& f, double t, std::span<const int> mus) {
  const ModeLattice& L = *f.lat;
  const std::size_t m = L.num_modes();
  const cplx I{0.0, 1.0};
  // coefficient of e^{i kvec.x} at mode k collects u_k and u*_{-k}
  CField coeff(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double w = f.freq[k];
    cplx a = L.weight(k) * f.u[k] * std::polar(1.0, -w * t);
    for (int mu : mus) a *= -I * lower_k(L, k, w, mu);
    coeff[k] += a;

    const std::size_t kb = L.negated(k);
    cplx b = L.weight(k) * f.ustar[k] * std::polar(1.0, w * t);
    for (int mu : mus) b *= I * lower_k(L, k, w, mu);
    coeff[kb] += b;
  }
  for (auto& c : coeff) c *= L.fourier_norm();
  CField out(L.num_points());
  kernels::synthesize(kernels::default_backend(), L.phases(), coeff, out);
  return out;
}

SliceData evaluate_fields(const ModeField& f, double t) {
  const ModeLattice& L = *f.lat;
  const int n = L.spacetime_dim();
  SliceData s;
  s.t = t;
  s.phi = synthesize(f, t);
  s.dphi.resize(n);
  s.p.resize(n);
  for (int mu = 0; mu < n; ++mu) {
    const int idx[1] = {mu};
    s.dphi[mu] = synthesize(f, t, idx);
    s.p[mu] = s.dphi[mu];
    if (mu > 0) {
      for (auto& v : s.p[mu]) v = -v;
    }
  }
  const double m2 = L.mass() * L.mass();
  s.e.resize(L.num_points());
  for (std::size_t j = 0; j < s.e.size(); ++j) {
    cplx q = s.dphi[0][j] * s.dphi[0][j];
    for (int a = 1; a < n; ++a) q -= s.dphi[a][j] * s.dphi[a][j];
    s.e[j] = -0.5 * q - 0.5 * m2 * s.phi[j] * s.phi[j];
  }
  return s;
}

SliceData evaluate_fields(const Solution& sol, double t) {
  return evaluate_fields(sol.field(), t);
}

SliceHessian evaluate_hessian(const ModeField& f, double t) {
  const int n = f.lat->spacetime_dim();
  SliceHessian h;
  h.t = t;
  h.n = n;
  h.dd.resize(static_cast<std::size_t>(n) * n);
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu; nu < n; ++nu) {
      const int idx[2] = {mu, nu};
      h.dd[mu * n + nu] = synthesize(f, t, idx);
      if (nu != mu) h.dd[nu * n + mu] = h.dd[mu * n + nu];
    }
  }
  return h;
}

FieldJet evaluate_jet(const ModeField& f, double t) {
  const int n = f.lat->spacetime_dim();
  FieldJet jet;
  jet.phi = synthesize(f, t);
  jet.grad.resize(n);
  for (int mu = 0; mu < n; ++mu) {
    const int idx[1] = {mu};
    jet.grad[mu] = synthesize(f, t, idx);
  }
  jet.box.assign(jet.phi.size(), cplx{});
  for (int mu = 0; mu < n; ++mu) {
    const int idx[2] = {mu, mu};
    const CField dd = synthesize(f, t, idx);
    const double sign = mu == 0 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < dd.size(); ++j) jet.box[j] += sign * dd[j];
  }
  return jet;
}

Solution evolve_exact(const Solution& sol, double t) {
  const ModeLattice& L = sol.lattice();
  CField u(sol.u()), us(sol.ustar());
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] *= std::polar(1.0, -L.k0(k) * t);
    us[k] *= std::polar(1.0, L.k0(k) * t);
  }
  return Solution(sol.lattice_ptr(), std::move(u), std::move(us),
                  sol.is_real());
}

Solution derivative(const Solution& sol, int mu) {
  const ModeLattice& L = sol.lattice();
  if (mu < 0 || mu >= L.spacetime_dim()) {
    throw std::invalid_argument("derivative: index out of range");
  }
  const cplx I{0.0, 1.0};
  CField u(sol.u()), us(sol.ustar());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double kl = lower_k(L, k, L.k0(k), mu);
    u[k] *= -I * kl;
    us[k] *= I * kl;
  }
  // d_mu of a real field is real; the conjugacy survives exactly.
  return Solution(sol.lattice_ptr(), std::move(u), std::move(us),
                  sol.is_real());
}

double kg_residual(const ModeField& f, double t) {
  const FieldJet jet = evaluate_jet(f, t);
  const double m2 = f.lat->mass() * f.lat->mass();
  double r = 0.0;
  for (std::size_t j = 0; j < jet.phi.size(); ++j) {
    r = std::max(r, std::abs(jet.box[j] + m2 * jet.phi[j]));
  }
  return r;
}

double kg_residual(const Solution& sol, double t) {
  return kg_residual(sol.field(), t);
}

double kg_residual_grid(const ModeLattice& lat,
                        std::span<const CField> samples, double dt) {
  if (samples.size() < 3) {
    throw std::invalid_argument("kg_residual_grid: need at least 3 time levels");
  }
  const double m2 = lat.mass() * lat.mass();
  double r = 0.0;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const CField& f = samples[i];
    // Laplacian acts on real and imaginary parts separately
    RField re(f.size()), im(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      re[j] = f[j].real();
      im[j] = f[j].imag();
    }
    const RField lre = laplacian(lat, re);
    const RField lim = laplacian(lat, im);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const cplx tt = (samples[i + 1][j] - 2.0 * f[j] + samples[i - 1][j]) /
                      (dt * dt);
      const cplx lap{lre[j], lim[j]};
      r = std::max(r, std::abs(tt - lap + m2 * f[j]));
    }
  }
  return r;
}

RField laplacian(const ModeLattice& lat, std::span<const double> f) {
  CField hat = dft_forward(lat, to_complex(f));
  for (std::size_t k = 0; k < hat.size(); ++k) {
    double k2 = 0.0;
    for (double c : lat.kvec(k)) k2 += c * c;
    hat[k] *= -k2;
  }
  return real_part(dft_inverse(lat, hat));
}

RField spatial_derivative(const ModeLattice& lat, std::span<const double> f,
                          int axis) {
  CField hat = dft_forward(lat, to_complex(f));
  for (std::size_t k = 0; k < hat.size(); ++k) {
    hat[k] *= cplx{0.0, lat.k(k, axis)};
  }
  return real_part(dft_inverse(lat, hat));
}

double field_energy(const ModeLattice& lat, std::span<const double> phi,
                    std::span<const double> pi) {
  const double m2 = lat.mass() * lat.mass();
  std::vector<RField> grad;
  for (int a = 0; a < lat.dim(); ++a) {
    grad.push_back(spatial_derivative(lat, phi, a));
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    double g2 = 0.0;
    for (const auto& g : grad) g2 += g[j] * g[j];
    acc += 0.5 * pi[j] * pi[j] + 0.5 * g2 + 0.5 * m2 * phi[j] * phi[j];
  }
  return acc * lat.cell_volume();
}

double leapfrog_shadow_energy(const ModeLattice& lat,
                              std::span<const double> phi,
                              std::span<const double> pi, double dt) {
  const CField hat = dft_forward(lat, to_complex(phi));
  // Parseval: int |f|^2 = (2 pi / L)^d sum_k |f_hat_k|^2
  const double parseval =
      std::pow(2.0 * std::numbers::pi / lat.box_length(), lat.dim());
  double pot = 0.0;
  for (std::size_t k = 0; k < hat.size(); ++k) {
    const double w2 = lat.k0(k) * lat.k0(k);
    pot += w2 * (1.0 - 0.25 * w2 * dt * dt) * std::norm(hat[k]);
  }
  double kin = 0.0;
  for (double v : pi) kin += v * v;
  return 0.5 * kin * lat.cell_volume() + 0.5 * parseval * pot;
}

SliceData leapfrog_evolve(const ModeLattice& lat, std::span<const double> phi0,
                          std::span<const double> pi0, double dt, int steps,
                          const LeapfrogObserver& observer) {
  if (!(dt > 0.0)) throw std::invalid_argument("leapfrog: dt must be positive");
  if (steps < 0) throw std::invalid_argument("leapfrog: negative step count");
  if (phi0.size() != lat.num_points() || pi0.size() != lat.num_points()) {
    throw std::invalid_argument("leapfrog: Cauchy data size mismatch");
  }
  const auto freqs = lat.frequencies();
  const double kmax = *std::max_element(freqs.begin(), freqs.end());
  if (dt * kmax >= 2.0) {
    throw std::invalid_argument("leapfrog: unstable step, dt * max(k0) >= 2");
  }
  const double m2 = lat.mass() * lat.mass();
  RField phi(phi0.begin(), phi0.end());
  RField pi(pi0.begin(), pi0.end());

  auto force = [&](const RField& f) {
    RField acc = laplacian(lat, f);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] -= m2 * f[j];
    return acc;
  };

  if (observer) observer(0, phi, pi);
  RField acc = force(phi);
  for (int s = 1; s <= steps; ++s) {
    for (std::size_t j = 0; j < pi.size(); ++j) pi[j] += 0.5 * dt * acc[j];
    for (std::size_t j = 0; j < phi.size(); ++j) phi[j] += dt * pi[j];
    acc = force(phi);
    for (std::size_t j = 0; j < pi.size(); ++j) pi[j] += 0.5 * dt * acc[j];
    if (observer) observer(s, phi, pi);
  }

  const int n = lat.spacetime_dim();
  SliceData out;
  out.t = dt * steps;
  out.phi = to_complex(phi);
  out.dphi.resize(n);
  out.p.resize(n);
  out.dphi[0] = to_complex(pi);
  for (int a = 0; a < lat.dim(); ++a) {
    out.dphi[a + 1] = to_complex(spatial_derivative(lat, phi, a));
  }
  for (int mu = 0; mu < n; ++mu) {
    out.p[mu] = out.dphi[mu];
    if (mu > 0) {
      for (auto& v : out.p[mu]) v = -v;
    }
  }
  out.e.resize(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    cplx q = out.dphi[0][j] * out.dphi[0][j];
    for (int a = 1; a < n; ++a) q -= out.dphi[a][j] * out.dphi[a][j];
    out.e[j] = -0.5 * q - 0.5 * m2 * out.phi[j] * out.phi[j];
  }
  return out;
}

}  // namespace kgms
