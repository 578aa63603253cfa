#pragma once

// Multisymplectic kernel for the Klein-Gordon field on
// M = {(x^mu, phi, e, p^mu)}, dim M = 2(d+1) + 2:
//
//   beta     = dx^0 ^ ... ^ dx^d,   beta_mu = d/dx^mu -| beta
//   omega    = de ^ beta + dp^mu ^ dphi ^ beta_mu
//   theta_l  = e beta + l p^mu dphi ^ beta_mu - (1 - l) phi dp^mu ^ beta_mu
//   H        = e + 1/2 eta_{mu nu} p^mu p^nu + 1/2 m^2 phi^2
//
// All forms have constant or linear coefficients, so they are evaluated by
// expanding each wedge of 1-forms into a determinant of the coordinate
// components of the argument vectors.
//
// Flat coordinate order: x^0..x^d, phi, e, p^0..p^d.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kgms/kg_solution.hpp"

namespace kgms {

template <typename S>
struct MTangentT {
  std::vector<S> dx;  // d+1
  S dphi{};
  S de{};
  std::vector<S> dp;  // d+1

  static MTangentT zero(int n) {
    return MTangentT{std::vector<S>(n), S{}, S{}, std::vector<S>(n)};
  }
  int n() const { return static_cast<int>(dx.size()); }
  int manifold_dim() const { return 2 * n() + 2; }
  S coord(int i) const {
    const int k = n();
    if (i < k) return dx[i];
    if (i == k) return dphi;
    if (i == k + 1) return de;
    return dp[i - k - 2];
  }
  S& coord(int i) {
    const int k = n();
    if (i < k) return dx[i];
    if (i == k) return dphi;
    if (i == k + 1) return de;
    return dp[i - k - 2];
  }
  static MTangentT basis(int n, int i) {
    MTangentT v = zero(n);
    v.coord(i) = S{1};
    return v;
  }
  MTangentT& operator+=(const MTangentT& o) {
    for (int i = 0; i < manifold_dim(); ++i) coord(i) += o.coord(i);
    return *this;
  }
  friend MTangentT operator*(S s, MTangentT v) {
    for (int i = 0; i < v.manifold_dim(); ++i) v.coord(i) *= s;
    return v;
  }
};

template <typename S>
struct MPointT {
  std::vector<S> x;  // (t, xvec)
  S phi{};
  S e{};
  std::vector<S> p;

  static MPointT zero(int n) {
    return MPointT{std::vector<S>(n), S{}, S{}, std::vector<S>(n)};
  }
  int n() const { return static_cast<int>(x.size()); }
  MPointT shifted(const MTangentT<S>& v, S h) const {
    MPointT q = *this;
    for (int mu = 0; mu < n(); ++mu) {
      q.x[mu] += h * v.dx[mu];
      q.p[mu] += h * v.dp[mu];
    }
    q.phi += h * v.dphi;
    q.e += h * v.de;
    return q;
  }
};

using MTangent = MTangentT<double>;
using MPoint = MPointT<double>;
using MTangentC = MTangentT<cplx>;
using MPointC = MPointT<cplx>;

namespace detail {

// (alpha_{rows[0]} ^ ... ^ alpha_{rows[r-1]})(v_0, ..., v_{r-1}) for
// coordinate 1-forms alpha_i = d(coordinate i).
template <typename S>
S wedge_eval(std::span<const int> rows, std::span<const MTangentT<S>> vecs) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m(r, r);
  for (Eigen::Index a = 0; a < r; ++a) {
    for (Eigen::Index b = 0; b < r; ++b) m(a, b) = vecs[b].coord(rows[a]);
  }
  return r == 0 ? S{1} : m.determinant();
}

// rows for the n-1 form beta_mu prefixed by `lead` coordinate 1-forms;
// returns the sign (-1)^mu of beta_mu relative to the ascending wedge.
inline double beta_mu_rows(int n, int mu, std::vector<int>& rows) {
  for (int nu = 0; nu < n; ++nu) {
    if (nu != mu) rows.push_back(nu);
  }
  return (mu % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace detail

// beta(v_0..v_d)
template <typename S>
S beta_eval(std::span<const MTangentT<S>> vecs) {
  const int n = vecs.empty() ? 0 : vecs[0].n();
  if (static_cast<int>(vecs.size()) != n) {
    throw std::invalid_argument("beta_eval: expected n vectors");
  }
  std::vector<int> rows(n);
  for (int mu = 0; mu < n; ++mu) rows[mu] = mu;
  return detail::wedge_eval<S>(rows, vecs);
}

// omega(v_0, ..., v_{n}) with n = d + 1 (so n + 1 arguments).
template <typename S>
S omega_eval(std::span<const MTangentT<S>> vecs) {
  if (vecs.empty()) throw std::invalid_argument("omega_eval: no vectors");
  const int n = vecs[0].n();
  if (static_cast<int>(vecs.size()) != n + 1) {
    throw std::invalid_argument("omega_eval: expected n+1 tangent vectors");
  }
  const int phi = n, e = n + 1;
  std::vector<int> rows{e};
  for (int mu = 0; mu < n; ++mu) rows.push_back(mu);
  S value = detail::wedge_eval<S>(rows, vecs);
  for (int mu = 0; mu < n; ++mu) {
    std::vector<int> r{n + 2 + mu, phi};
    const double sign = detail::beta_mu_rows(n, mu, r);
    value += sign * detail::wedge_eval<S>(r, vecs);
  }
  return value;
}

// theta_lambda at `point` on (v_1, ..., v_n).
template <typename S>
S theta_eval(double lambda, const MPointT<S>& point,
             std::span<const MTangentT<S>> vecs) {
  const int n = point.n();
  if (static_cast<int>(vecs.size()) != n) {
    throw std::invalid_argument("theta_eval: expected n tangent vectors");
  }
  const int phi = n;
  std::vector<int> rows(n);
  for (int mu = 0; mu < n; ++mu) rows[mu] = mu;
  S value = point.e * detail::wedge_eval<S>(rows, vecs);
  for (int mu = 0; mu < n; ++mu) {
    std::vector<int> r1{phi};
    const double sign = detail::beta_mu_rows(n, mu, r1);
    std::vector<int> r2{n + 2 + mu};
    detail::beta_mu_rows(n, mu, r2);
    value += sign * lambda * point.p[mu] * detail::wedge_eval<S>(r1, vecs);
    value -= sign * (1.0 - lambda) * point.phi *
             detail::wedge_eval<S>(r2, vecs);
  }
  return value;
}

// Exterior derivative of theta_lambda by central differences along the
// argument vectors (constant vector fields, so no bracket terms).
double fd_exterior_derivative_theta(double lambda, const MPoint& point,
                                    std::span<const MTangent> vecs, double h);

template <typename S>
S hamiltonian(double mass, const MPointT<S>& pt) {
  S pp = pt.p[0] * pt.p[0];
  for (int mu = 1; mu < pt.n(); ++mu) pp -= pt.p[mu] * pt.p[mu];
  return pt.e + 0.5 * pp + 0.5 * mass * mass * pt.phi * pt.phi;
}

// dH at `pt` applied to v.
template <typename S>
S hamiltonian_differential(double mass, const MPointT<S>& pt,
                           const MTangentT<S>& v) {
  S val = v.de + mass * mass * pt.phi * v.dphi + pt.p[0] * v.dp[0];
  for (int mu = 1; mu < pt.n(); ++mu) val -= pt.p[mu] * v.dp[mu];
  return val;
}

// Rank of xi -> (xi -| omega) over all n-tuples of coordinate vectors.
// omega is non-degenerate iff this equals dim M.
int omega_contraction_rank(int n);

// Point of the n-curve above grid point j of a slice.
MPointC curve_point(const ModeLattice& lat, const SliceData& s, std::size_t j);

// Canonical graph tangent X_mu = d_mu + d_mu phi d_phi + d_mu e d_e
// + d_mu p^nu d_{p^nu} at grid point j.
MTangentC graph_tangent(const ModeLattice& lat, const SliceData& s,
                        const SliceHessian& h, std::size_t j, int mu);

// max over grid points and coordinate directions xi of
// |omega(xi, X_0..X_d) - dH(xi) beta(X_0..X_d)|.
double hamilton_equation_defect(const Solution& sol, double t);

// Max-norm residuals of d_mu phi = eta_{mu nu} p^nu and
// d_mu p^mu = -m^2 phi; centered differences in time, spectral in space.
double hamilton_residual(const ModeLattice& lat,
                         std::span<const SliceData> slices, double dt);
double hamilton_residual(const Solution& sol, std::span<const double> t_grid);

// Composite Simpson; values.size() must be odd and >= 3.
cplx simpson(std::span<const cplx> values, double h);

// Spatial integral of the pullback of theta_lambda to the graph of the jet
// (with p = eta d phi and e on the level set H = 0):
//   e + l p^mu d_mu phi - (1 - l) phi d_mu p^mu.
cplx action_density(const ModeLattice& lat, const FieldJet& jet,
                    double lambda);

// int_{t1}^{t2} dt of action_density, Simpson with n_t points.
cplx action_between_slices(const ModeField& f, double lambda, double t1,
                           double t2, int n_t);
cplx action_between_slices(const Solution& sol, double lambda, double t1,
                           double t2, int n_t);

// Smooth bump supported on (t1, t2) with its first two derivatives.
struct Envelope {
  double t1, t2;
  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
};

// |central difference of the action along chi(t) * variation| where chi is
// the bump on (t1, t2); the action is integrated over [t1, t2].
double action_criticality(const ModeField& base, const ModeField& variation,
                          double lambda, double t1, double t2, double eps,
                          int n_t);

}  // namespace kgms
