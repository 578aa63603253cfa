#pragma once

// Covariant phase space: Jacobi fields as deformations of a solution, the
// slice 1-form Theta and the 2-form Omega = delta Theta.
//
// Deformations use the vertical representative xi = dphi d_phi + de d_e +
// dp^mu d_{p^mu} along the graph of the base solution, with
//   dp^mu = eta^{mu nu} d_nu dphi
//   de    = -eta^{mu nu} d_mu phi d_nu dphi - m^2 phi dphi
// (the linearization of H = 0).
//
// Sign: Omega(d1, d2) = int (d1 p^0 d2 phi - d2 p^0 d1 phi), the sign that
// makes Omega = delta Theta with delta Theta(x, y) = x.Theta(y) - y.Theta(x).

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "kgms/msymp_core.hpp"

namespace kgms {

struct Deformation {
  Solution field;
};

// Vertical tangent at grid point j from the base slice and the deformation
// slice (both from evaluate_fields at the same t).
MTangentC vertical_tangent(const ModeLattice& lat, const SliceData& base,
                           const SliceData& def, std::size_t j);

// int (lambda p^0 dphi - (1 - lambda) phi dp^0) at time t.
cplx theta_sigma(const Solution& sol, const Deformation& delta, double lambda,
                 double t);

// Tangential component c * X_mu added to a deformation's representative.
struct TangentialShift {
  int mu = 0;
  cplx c{};
};

// Theta evaluated pointwise with theta_eval on (xi [+ c X_mu], X_1..X_d).
cplx theta_sigma_pointwise(const Solution& sol, const Deformation& delta,
                           double lambda, double t,
                           std::optional<TangentialShift> shift = {});

struct OmegaPaths {
  cplx closed_form;  // int (d1 p^0 d2 phi - d2 p^0 d1 phi)
  cplx pointwise;    // int omega(xi_1, xi_2, X_1, .., X_d)
};

// shift, if given, is added to the first deformation's representative.
OmegaPaths omega_sigma_paths(const Solution& sol, const Deformation& d1,
                             const Deformation& d2, double t,
                             std::optional<TangentialShift> shift = {});

// Closed form, after asserting agreement with the pointwise path
// (std::logic_error beyond 1e-10 relative).
cplx omega_sigma(const Solution& sol, const Deformation& d1,
                 const Deformation& d2, double t);

// delta Theta by central differences of Theta_{sol + s d}(.) in s.
cplx fd_delta_theta(const Solution& sol, const Deformation& d1,
                    const Deformation& d2, double lambda, double t, double eps);

// delta Theta_lambda from bilinearity: Theta_Gamma(delta) is linear in
// Gamma, so d1.Theta(d2) = Theta_{d1}(d2) exactly.
cplx delta_theta_bilinear(const Deformation& d1, const Deformation& d2,
                          double lambda, double t);

// (Theta^{t2}(delta) - Theta^{t1}(delta), central difference of the action
// between t1 and t2 along delta).
std::pair<cplx, cplx> theta_difference_vs_action(const Solution& sol,
                                                 const Deformation& delta,
                                                 double lambda, double t1,
                                                 double t2, double eps,
                                                 int n_t);

// Real deformation with u_k = z (and u*_k = conj z), all other modes zero.
Deformation mode_deformation(const LatticePtr& lat, std::size_t k, cplx z);

// Gram matrix of Omega over the basis u_k = 1, u_k = i of real deformations
// (2M x 2M, antisymmetric).
Eigen::MatrixXd omega_gram(const Solution& sol, double t);

// sigma_min / sigma_max of the Gram matrix.
double omega_gram_conditioning(const Eigen::MatrixXd& gram);

}  // namespace kgms
