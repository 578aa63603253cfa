#include "kgms/prequant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kgms {

namespace {

void check_modes(const ModeLattice& lat, std::size_t size, const char* what) {
  if (size != lat.num_modes()) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(lat.num_modes()) +
                                " mode values, got " + std::to_string(size));
  }
}

void require_same(const PolarizedState& a, const PolarizedState& b) {
  if (&a.lattice() != &b.lattice()) {
    throw std::invalid_argument("polarized states live on different lattices");
  }
}

}  // namespace

int total_degree(const MultiIndex& alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

PolarizedState::PolarizedState(LatticePtr lat, int degree_bound)
    : lat_(std::move(lat)), bound_(degree_bound) {
  if (!lat_) throw std::invalid_argument("polarized state: null lattice");
  if (bound_ < 0) throw std::invalid_argument("polarized state: negative degree bound");
}

PolarizedState PolarizedState::vacuum(LatticePtr lat, int degree_bound) {
  PolarizedState s(std::move(lat), degree_bound);
  s.add(MultiIndex(s.lattice().num_modes(), 0), 1.0);
  return s;
}

PolarizedState PolarizedState::monomial(LatticePtr lat, MultiIndex alpha,
                                        cplx c, int degree_bound) {
  PolarizedState s(std::move(lat), degree_bound);
  s.add(alpha, c);
  return s;
}

void PolarizedState::add(const MultiIndex& alpha, cplx c) {
  check_modes(*lat_, alpha.size(), "multi-index");
  if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; })) {
    throw std::invalid_argument("multi-index has a negative exponent");
  }
  if (total_degree(alpha) > bound_) {
    throw std::overflow_error("polarized state: degree " +
                              std::to_string(total_degree(alpha)) +
                              " exceeds bound " + std::to_string(bound_));
  }
  coeffs_[alpha] += c;
}

void PolarizedState::prune() {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == cplx{}; });
}

int PolarizedState::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : coeffs_) {
    if (c != cplx{}) d = std::max(d, total_degree(alpha));
  }
  return d;
}

bool PolarizedState::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const auto& kv) { return kv.second == cplx{}; });
}

PolarizedState operator+(const PolarizedState& a, const PolarizedState& b) {
  require_same(a, b);
  PolarizedState out(a.lat_, std::max(a.bound_, b.bound_));
  for (const auto& [alpha, c] : a.coeffs_) out.add(alpha, c);
  for (const auto& [alpha, c] : b.coeffs_) out.add(alpha, c);
  return out;
}

PolarizedState operator-(const PolarizedState& a, const PolarizedState& b) {
  return a + cplx{-1.0, 0.0} * b;
}

PolarizedState operator*(cplx s, const PolarizedState& a) {
  PolarizedState out(a.lat_, a.bound_);
  for (const auto& [alpha, c] : a.coeffs_) out.add(alpha, s * c);
  return out;
}

PolarizedState op_a(std::span<const cplx> f, const PolarizedState& s) {
  const ModeLattice& lat = s.lattice();
  check_modes(lat, f.size(), "op_a");
  PolarizedState out(s.lattice_ptr(), s.degree_bound());
  for (const auto& [alpha, c] : s.coeffs()) {
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (alpha[k] == 0 || f[k] == cplx{}) continue;
      MultiIndex beta = alpha;
      --beta[k];
      out.add(beta, lat.hbar() * f[k] * static_cast<double>(alpha[k]) * c);
    }
  }
  return out;
}

PolarizedState op_a_star(std::span<const cplx> g, const PolarizedState& s) {
  const ModeLattice& lat = s.lattice();
  check_modes(lat, g.size(), "op_a_star");
  PolarizedState out(s.lattice_ptr(), s.degree_bound());
  for (const auto& [alpha, c] : s.coeffs()) {
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (g[k] == cplx{}) continue;
      MultiIndex beta = alpha;
      ++beta[k];
      out.add(beta, lat.weight(k) * g[k] * c);
    }
  }
  return out;
}

double p_eigenvalue(const ModeLattice& lat, const MultiIndex& alpha,
                    std::span<const double> zeta) {
  check_modes(lat, alpha.size(), "p_eigenvalue");
  double acc = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (alpha[k] != 0) acc += alpha[k] * lat.minkowski_dot(k, zeta);
  }
  return -lat.hbar() * acc + 0.0;  // no negative zero
}

PolarizedState op_p(std::span<const double> zeta, const PolarizedState& s) {
  PolarizedState out(s.lattice_ptr(), s.degree_bound());
  for (const auto& [alpha, c] : s.coeffs()) {
    const double ev = p_eigenvalue(s.lattice(), alpha, zeta);
    if (ev != 0.0) out.add(alpha, ev * c);
  }
  return out;
}

Operator make_a(CField f) {
  return [f = std::move(f)](const PolarizedState& s) { return op_a(f, s); };
}

Operator make_a_star(CField g) {
  return [g = std::move(g)](const PolarizedState& s) { return op_a_star(g, s); };
}

Operator make_p(std::vector<double> zeta) {
  return [z = std::move(zeta)](const PolarizedState& s) { return op_p(z, s); };
}

PolarizedState commutator(const Operator& a, const Operator& b,
                          const PolarizedState& s) {
  return a(b(s)) - b(a(s));
}

cplx inner_product(const PolarizedState& a, const PolarizedState& b) {
  require_same(a, b);
  const ModeLattice& lat = a.lattice();
  cplx acc{};
  for (const auto& [alpha, ca] : a.coeffs()) {
    const auto it = b.coeffs().find(alpha);
    if (it == b.coeffs().end()) continue;
    double norm = 1.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      const double r = lat.hbar() / lat.weight(k);
      for (int q = 1; q <= alpha[k]; ++q) norm *= q * r;
    }
    acc += std::conj(ca) * it->second * norm;
  }
  return acc;
}

namespace {

void enumerate(std::size_t pos, int remaining, MultiIndex& cur,
               std::vector<MultiIndex>& out) {
  if (pos == cur.size()) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    enumerate(pos + 1, remaining - e, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> monomials_up_to(const ModeLattice& lat, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("monomials_up_to: negative degree");
  std::vector<MultiIndex> out;
  MultiIndex cur(lat.num_modes(), 0);
  enumerate(0, max_degree, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

double max_abs_difference(const PolarizedState& a, const PolarizedState& b) {
  double worst = 0.0;
  for (const auto& [alpha, c] : a.coeffs()) {
    const auto it = b.coeffs().find(alpha);
    const cplx other = it == b.coeffs().end() ? cplx{} : it->second;
    worst = std::max(worst, std::abs(c - other));
  }
  for (const auto& [alpha, c] : b.coeffs()) {
    if (!a.coeffs().contains(alpha)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

}  // namespace kgms
