#include "kgms/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kgms {

MTangentC vertical_tangent(const ModeLattice& lat, const SliceData& base,
                           const SliceData& def, std::size_t j) {
  const int n = lat.spacetime_dim();
  const double m2 = lat.mass() * lat.mass();
  MTangentC v = MTangentC::zero(n);
  v.dphi = def.phi[j];
  cplx contraction = base.dphi[0][j] * def.dphi[0][j];
  for (int a = 1; a < n; ++a) contraction -= base.dphi[a][j] * def.dphi[a][j];
  v.de = -contraction - m2 * base.phi[j] * def.phi[j];
  for (int mu = 0; mu < n; ++mu) v.dp[mu] = def.p[mu][j];
  return v;
}

namespace {

std::vector<MTangentC> spatial_graph(const ModeLattice& lat,
                                     const SliceData& s, const SliceHessian& h,
                                     std::size_t j) {
  std::vector<MTangentC> xs;
  for (int mu = 1; mu < lat.spacetime_dim(); ++mu) {
    xs.push_back(graph_tangent(lat, s, h, j, mu));
  }
  return xs;
}

MTangentC shifted_tangent(const ModeLattice& lat, const SliceData& s,
                          const SliceHessian& h, std::size_t j, MTangentC xi,
                          const std::optional<TangentialShift>& shift) {
  if (shift) {
    if (shift->mu < 0 || shift->mu >= lat.spacetime_dim()) {
      throw std::invalid_argument("tangential shift: mu out of range");
    }
    xi += shift->c * graph_tangent(lat, s, h, j, shift->mu);
  }
  return xi;
}

}  // namespace

cplx theta_sigma(const Solution& sol, const Deformation& delta, double lambda,
                 double t) {
  const SliceData s = evaluate_fields(sol, t);
  const SliceData d = evaluate_fields(delta.field, t);
  CField dens(s.phi.size());
  for (std::size_t j = 0; j < dens.size(); ++j) {
    dens[j] = lambda * s.p[0][j] * d.phi[j] - (1.0 - lambda) * s.phi[j] * d.p[0][j];
  }
  return grid_integral(sol.lattice(), dens);
}

cplx theta_sigma_pointwise(const Solution& sol, const Deformation& delta,
                           double lambda, double t,
                           std::optional<TangentialShift> shift) {
  const ModeLattice& lat = sol.lattice();
  const SliceData s = evaluate_fields(sol, t);
  const SliceHessian h = evaluate_hessian(sol.field(), t);
  const SliceData d = evaluate_fields(delta.field, t);
  CField dens(s.phi.size());
  for (std::size_t j = 0; j < dens.size(); ++j) {
    std::vector<MTangentC> vecs{
        shifted_tangent(lat, s, h, j, vertical_tangent(lat, s, d, j), shift)};
    const auto xs = spatial_graph(lat, s, h, j);
    vecs.insert(vecs.end(), xs.begin(), xs.end());
    dens[j] = theta_eval<cplx>(lambda, curve_point(lat, s, j), vecs);
  }
  return grid_integral(lat, dens);
}

OmegaPaths omega_sigma_paths(const Solution& sol, const Deformation& d1,
                             const Deformation& d2, double t,
                             std::optional<TangentialShift> shift) {
  const ModeLattice& lat = sol.lattice();
  const SliceData s = evaluate_fields(sol, t);
  const SliceHessian h = evaluate_hessian(sol.field(), t);
  const SliceData a = evaluate_fields(d1.field, t);
  const SliceData b = evaluate_fields(d2.field, t);
  CField closed(s.phi.size()), point(s.phi.size());
  for (std::size_t j = 0; j < s.phi.size(); ++j) {
    closed[j] = a.p[0][j] * b.phi[j] - b.p[0][j] * a.phi[j];
    std::vector<MTangentC> vecs{
        shifted_tangent(lat, s, h, j, vertical_tangent(lat, s, a, j), shift),
        vertical_tangent(lat, s, b, j)};
    const auto xs = spatial_graph(lat, s, h, j);
    vecs.insert(vecs.end(), xs.begin(), xs.end());
    point[j] = omega_eval<cplx>(vecs);
  }
  return {grid_integral(lat, closed), grid_integral(lat, point)};
}

cplx omega_sigma(const Solution& sol, const Deformation& d1,
                 const Deformation& d2, double t) {
  const OmegaPaths p = omega_sigma_paths(sol, d1, d2, t);
  const double scale = std::max(1.0, std::abs(p.closed_form));
  if (std::abs(p.closed_form - p.pointwise) > 1e-10 * scale) {
    throw std::logic_error("omega_sigma: closed form and pointwise omega disagree by " +
                           std::to_string(std::abs(p.closed_form - p.pointwise)));
  }
  return p.closed_form;
}

cplx fd_delta_theta(const Solution& sol, const Deformation& d1,
                    const Deformation& d2, double lambda, double t,
                    double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("fd_delta_theta: eps must be positive");
  auto directional = [&](const Deformation& along, const Deformation& arg) {
    const Solution plus = sol + cplx{eps, 0.0} * along.field;
    const Solution minus = sol - cplx{eps, 0.0} * along.field;
    return (theta_sigma(plus, arg, lambda, t) - theta_sigma(minus, arg, lambda, t)) /
           (2.0 * eps);
  };
  return directional(d1, d2) - directional(d2, d1);
}

cplx delta_theta_bilinear(const Deformation& d1, const Deformation& d2,
                          double lambda, double t) {
  return theta_sigma(d1.field, d2, lambda, t) - theta_sigma(d2.field, d1, lambda, t);
}

std::pair<cplx, cplx> theta_difference_vs_action(const Solution& sol,
                                                 const Deformation& delta,
                                                 double lambda, double t1,
                                                 double t2, double eps,
                                                 int n_t) {
  if (!(eps > 0.0)) throw std::invalid_argument("theta_difference: eps must be positive");
  const cplx dtheta =
      theta_sigma(sol, delta, lambda, t2) - theta_sigma(sol, delta, lambda, t1);
  const Solution plus = sol + cplx{eps, 0.0} * delta.field;
  const Solution minus = sol - cplx{eps, 0.0} * delta.field;
  const cplx ds = (action_between_slices(plus, lambda, t1, t2, n_t) -
                   action_between_slices(minus, lambda, t1, t2, n_t)) /
                  (2.0 * eps);
  return {dtheta, ds};
}

Deformation mode_deformation(const LatticePtr& lat, std::size_t k, cplx z) {
  CField u(lat->num_modes()), us(lat->num_modes());
  u.at(k) = z;
  us[k] = std::conj(z);
  return Deformation{from_modes(lat, std::move(u), std::move(us), true)};
}

Eigen::MatrixXd omega_gram(const Solution& sol, double t) {
  const ModeLattice& lat = sol.lattice();
  const std::size_t m = lat.num_modes();
  std::vector<SliceData> basis;
  basis.reserve(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    basis.push_back(evaluate_fields(mode_deformation(sol.lattice_ptr(), k, 1.0).field, t));
    basis.push_back(
        evaluate_fields(mode_deformation(sol.lattice_ptr(), k, cplx{0.0, 1.0}).field, t));
  }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const SliceData& a = basis[i];
      const SliceData& b = basis[j];
      cplx acc{};
      for (std::size_t p = 0; p < a.phi.size(); ++p) {
        acc += a.p[0][p] * b.phi[p] - b.p[0][p] * a.phi[p];
      }
      g(i, j) = (acc * lat.cell_volume()).real();
    }
  }
  return g;
}

double omega_gram_conditioning(const Eigen::MatrixXd& gram) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

}  // namespace kgms
