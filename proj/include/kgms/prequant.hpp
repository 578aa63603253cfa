#pragma once

// Prequantization on antiholomorphically polarized sections
//   psi = h(u*) |0>,  |0> = exp(-(1/2hbar) sum_k w_k u_k u*_k),
// with h a polynomial stored as multi-index -> coefficient.
//
// On such sections the Gaussian terms of the prequantum operators cancel:
//   a_f  psi = hbar sum_k f_k dh/du*_k |0>
//   a*_g psi = (sum_k w_k g_k u*_k) h |0>
//   P_zeta psi = -hbar sum_k (k.zeta) u*_k dh/du*_k |0>
// For a_f: hbar f_k d/du*_k hits the Gaussian as -(1/2) w_k u_k f_k, which
// cancels the multiplicative term (1/2) sum w f u. The same happens for the
// u_k d/du_k part of P_zeta, which only sees the Gaussian.

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "kgms/lattice.hpp"

namespace kgms {

using MultiIndex = std::vector<int>;  // exponent per mode

inline constexpr int kDefaultDegreeBound = 6;

class PolarizedState {
 public:
  PolarizedState(LatticePtr lat, int degree_bound = kDefaultDegreeBound);

  static PolarizedState vacuum(LatticePtr lat,
                               int degree_bound = kDefaultDegreeBound);
  static PolarizedState monomial(LatticePtr lat, MultiIndex alpha,
                                 cplx c = 1.0,
                                 int degree_bound = kDefaultDegreeBound);

  const ModeLattice& lattice() const { return *lat_; }
  const LatticePtr& lattice_ptr() const { return lat_; }
  int degree_bound() const { return bound_; }
  const std::map<MultiIndex, cplx>& coeffs() const { return coeffs_; }

  // Adds c to the coefficient of alpha; throws std::overflow_error if the
  // total degree exceeds the bound.
  void add(const MultiIndex& alpha, cplx c);
  // drops exact zeros
  void prune();
  int degree() const;
  bool is_zero() const;

  friend PolarizedState operator+(const PolarizedState& a, const PolarizedState& b);
  friend PolarizedState operator-(const PolarizedState& a, const PolarizedState& b);
  friend PolarizedState operator*(cplx s, const PolarizedState& a);

 private:
  LatticePtr lat_;
  int bound_;
  std::map<MultiIndex, cplx> coeffs_;
};

int total_degree(const MultiIndex& alpha);

PolarizedState op_a(std::span<const cplx> f, const PolarizedState& s);
PolarizedState op_a_star(std::span<const cplx> g, const PolarizedState& s);
// zeta has d+1 components; k.zeta is the Minkowski product.
PolarizedState op_p(std::span<const double> zeta, const PolarizedState& s);

// -hbar sum_k alpha_k (k.zeta)
double p_eigenvalue(const ModeLattice& lat, const MultiIndex& alpha,
                    std::span<const double> zeta);

using Operator = std::function<PolarizedState(const PolarizedState&)>;

Operator make_a(CField f);
Operator make_a_star(CField g);
Operator make_p(std::vector<double> zeta);

PolarizedState commutator(const Operator& a, const Operator& b,
                          const PolarizedState& s);

// Antilinear in the first slot; <u*^a, u*^a> = prod_k a_k! (hbar/w_k)^{a_k}.
cplx inner_product(const PolarizedState& a, const PolarizedState& b);

// All multi-indices of total degree <= max_degree in lexicographic order.
std::vector<MultiIndex> monomials_up_to(const ModeLattice& lat, int max_degree);

// Largest |coefficient| of a - b over the union of their supports.
double max_abs_difference(const PolarizedState& a, const PolarizedState& b);

}  // namespace kgms
