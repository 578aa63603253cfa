#include "kgms/msymp_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kgms {

namespace {

CField spectral_d(const ModeLattice& lat, const CField& f, int axis) {
  CField hat = dft_forward(lat, f);
  for (std::size_t k = 0; k < hat.size(); ++k) {
    hat[k] *= cplx{0.0, lat.k(k, axis)};
  }
  return dft_inverse(lat, hat);
}

// all increasing r-subsets of {0..n-1}
void combinations(int n, int r, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out, int start = 0) {
  if (static_cast<int>(cur.size()) == r) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, r, cur, out, i + 1);
    cur.pop_back();
  }
}

}  // namespace

double fd_exterior_derivative_theta(double lambda, const MPoint& point,
                                    std::span<const MTangent> vecs, double h) {
  const int n = point.n();
  if (static_cast<int>(vecs.size()) != n + 1) {
    throw std::invalid_argument("fd_exterior_derivative_theta: need n+1 vectors");
  }
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    std::vector<MTangent> rest;
    for (int k = 0; k <= n; ++k) {
      if (k != i) rest.push_back(vecs[k]);
    }
    const double plus =
        theta_eval<double>(lambda, point.shifted(vecs[i], h), rest);
    const double minus =
        theta_eval<double>(lambda, point.shifted(vecs[i], -h), rest);
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    acc += sign * (plus - minus) / (2.0 * h);
  }
  return acc;
}

int omega_contraction_rank(int n) {
  const int dim = 2 * n + 2;
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur;
  combinations(dim, n, cur, tuples);
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(tuples.size()));
  for (int i = 0; i < dim; ++i) {
    for (std::size_t c = 0; c < tuples.size(); ++c) {
      std::vector<MTangent> vecs{MTangent::basis(n, i)};
      for (int idx : tuples[c]) vecs.push_back(MTangent::basis(n, idx));
      m(i, static_cast<Eigen::Index>(c)) = omega_eval<double>(vecs);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  return static_cast<int>(lu.rank());
}

MPointC curve_point(const ModeLattice& lat, const SliceData& s,
                    std::size_t j) {
  const int n = lat.spacetime_dim();
  MPointC pt = MPointC::zero(n);
  pt.x[0] = s.t;
  for (int a = 0; a < lat.dim(); ++a) pt.x[a + 1] = lat.grid_coord(j, a);
  pt.phi = s.phi[j];
  pt.e = s.e[j];
  for (int mu = 0; mu < n; ++mu) pt.p[mu] = s.p[mu][j];
  return pt;
}

MTangentC graph_tangent(const ModeLattice& lat, const SliceData& s,
                        const SliceHessian& h, std::size_t j, int mu) {
  const int n = lat.spacetime_dim();
  const double m2 = lat.mass() * lat.mass();
  MTangentC x = MTangentC::zero(n);
  x.dx[mu] = 1.0;
  x.dphi = s.dphi[mu][j];
  cplx de = h.at(mu, 0)[j] * s.dphi[0][j];
  for (int a = 1; a < n; ++a) de -= h.at(mu, a)[j] * s.dphi[a][j];
  x.de = -de - m2 * s.phi[j] * s.dphi[mu][j];
  for (int nu = 0; nu < n; ++nu) {
    x.dp[nu] = (nu == 0 ? 1.0 : -1.0) * h.at(mu, nu)[j];
  }
  return x;
}

double hamilton_equation_defect(const Solution& sol, double t) {
  const ModeLattice& lat = sol.lattice();
  const int n = lat.spacetime_dim();
  const int dim = 2 * n + 2;
  const ModeField f = sol.field();
  const SliceData s = evaluate_fields(f, t);
  const SliceHessian h = evaluate_hessian(f, t);
  std::vector<double> per_point(lat.num_points());
  const auto npts = static_cast<std::ptrdiff_t>(lat.num_points());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jj = 0; jj < npts; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const MPointC pt = curve_point(lat, s, j);
    std::vector<MTangentC> graph;
    for (int mu = 0; mu < n; ++mu) graph.push_back(graph_tangent(lat, s, h, j, mu));
    const cplx beta = beta_eval<cplx>(graph);
    double worst = 0.0;
    for (int i = 0; i < dim; ++i) {
      std::vector<MTangentC> vecs{MTangentC::basis(n, i)};
      vecs.insert(vecs.end(), graph.begin(), graph.end());
      const cplx lhs = omega_eval<cplx>(vecs);
      const cplx rhs =
          hamiltonian_differential<cplx>(lat.mass(), pt, vecs[0]) * beta;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    per_point[j] = worst;
  }
  return *std::max_element(per_point.begin(), per_point.end());
}

double hamilton_residual(const ModeLattice& lat,
                         std::span<const SliceData> slices, double dt) {
  if (slices.size() < 3) {
    throw std::invalid_argument("hamilton_residual: need at least 3 time points");
  }
  const int n = lat.spacetime_dim();
  const double m2 = lat.mass() * lat.mass();
  double r = 0.0;
  for (std::size_t i = 1; i + 1 < slices.size(); ++i) {
    const SliceData& s = slices[i];
    // d_t phi = p^0
    for (std::size_t j = 0; j < s.phi.size(); ++j) {
      const cplx dt_phi = (slices[i + 1].phi[j] - slices[i - 1].phi[j]) / (2.0 * dt);
      r = std::max(r, std::abs(dt_phi - s.p[0][j]));
    }
    // d_a phi = -p^a
    for (int a = 1; a < n; ++a) {
      const CField da = spectral_d(lat, s.phi, a - 1);
      for (std::size_t j = 0; j < da.size(); ++j) {
        r = std::max(r, std::abs(da[j] + s.p[a][j]));
      }
    }
    // d_mu p^mu = -m^2 phi
    CField div(s.phi.size());
    for (std::size_t j = 0; j < div.size(); ++j) {
      div[j] = (slices[i + 1].p[0][j] - slices[i - 1].p[0][j]) / (2.0 * dt);
    }
    for (int a = 1; a < n; ++a) {
      const CField dpa = spectral_d(lat, s.p[a], a - 1);
      for (std::size_t j = 0; j < div.size(); ++j) div[j] += dpa[j];
    }
    for (std::size_t j = 0; j < div.size(); ++j) {
      r = std::max(r, std::abs(div[j] + m2 * s.phi[j]));
    }
  }
  return r;
}

double hamilton_residual(const Solution& sol, std::span<const double> t_grid) {
  if (t_grid.size() < 3) {
    throw std::invalid_argument("hamilton_residual: need at least 3 time points");
  }
  const double dt = t_grid[1] - t_grid[0];
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (std::abs((t_grid[i] - t_grid[i - 1]) - dt) > 1e-12 * std::max(1.0, std::abs(dt))) {
      throw std::invalid_argument("hamilton_residual: time grid must be uniform");
    }
  }
  std::vector<SliceData> slices;
  slices.reserve(t_grid.size());
  for (double t : t_grid) slices.push_back(evaluate_fields(sol, t));
  return hamilton_residual(sol.lattice(), slices, dt);
}

cplx simpson(std::span<const cplx> values, double h) {
  const std::size_t n = values.size();
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("simpson: need an odd number (>= 3) of points");
  }
  cplx acc = values.front() + values.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    acc += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
  }
  return acc * h / 3.0;
}

cplx action_density(const ModeLattice& lat, const FieldJet& jet,
                    double lambda) {
  const int n = lat.spacetime_dim();
  const double m2 = lat.mass() * lat.mass();
  CField dens(jet.phi.size());
  for (std::size_t j = 0; j < dens.size(); ++j) {
    cplx q = jet.grad[0][j] * jet.grad[0][j];
    for (int a = 1; a < n; ++a) q -= jet.grad[a][j] * jet.grad[a][j];
    const cplx e = -0.5 * q - 0.5 * m2 * jet.phi[j] * jet.phi[j];
    dens[j] = e + lambda * q - (1.0 - lambda) * jet.phi[j] * jet.box[j];
  }
  return grid_integral(lat, dens);
}

cplx action_between_slices(const ModeField& f, double lambda, double t1,
                           double t2, int n_t) {
  if (!(t1 < t2)) throw std::invalid_argument("action: need t1 < t2");
  const double h = (t2 - t1) / (n_t - 1);
  std::vector<cplx> vals(static_cast<std::size_t>(std::max(n_t, 0)));
  for (int i = 0; i < n_t; ++i) {
    vals[i] = action_density(*f.lat, evaluate_jet(f, t1 + i * h), lambda);
  }
  return simpson(vals, h);
}

cplx action_between_slices(const Solution& sol, double lambda, double t1,
                           double t2, int n_t) {
  return action_between_slices(sol.field(), lambda, t1, t2, n_t);
}

namespace {

struct BumpArg {
  double s, ds_dt;
};

BumpArg bump_arg(const Envelope& env, double t) {
  const double span = env.t2 - env.t1;
  return {(2.0 * t - env.t1 - env.t2) / span, 2.0 / span};
}

}  // namespace

double Envelope::value(double t) const {
  const auto [s, _] = bump_arg(*this, t);
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

double Envelope::d1(double t) const {
  const auto [s, ds] = bump_arg(*this, t);
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  const double g1 = -2.0 * s / (q * q);
  return g1 * std::exp(-1.0 / q) * ds;
}

double Envelope::d2(double t) const {
  const auto [s, ds] = bump_arg(*this, t);
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  const double g1 = -2.0 * s / (q * q);
  const double g2 = -2.0 / (q * q) - 8.0 * s * s / (q * q * q);
  return (g2 + g1 * g1) * std::exp(-1.0 / q) * ds * ds;
}

double action_criticality(const ModeField& base, const ModeField& variation,
                          double lambda, double t1, double t2, double eps,
                          int n_t) {
  if (!(eps > 0.0)) throw std::invalid_argument("criticality: eps must be positive");
  const ModeLattice& lat = *base.lat;
  const int n = lat.spacetime_dim();
  const Envelope env{t1, t2};
  const double h = (t2 - t1) / (n_t - 1);
  std::vector<cplx> plus(n_t), minus(n_t);
  for (int i = 0; i < n_t; ++i) {
    const double t = t1 + i * h;
    const FieldJet b = evaluate_jet(base, t);
    const FieldJet v = evaluate_jet(variation, t);
    const double c0 = env.value(t), c1 = env.d1(t), c2 = env.d2(t);
    // jet of chi(t) v
    FieldJet w = v;
    for (std::size_t j = 0; j < w.phi.size(); ++j) {
      w.phi[j] = c0 * v.phi[j];
      w.grad[0][j] = c1 * v.phi[j] + c0 * v.grad[0][j];
      for (int a = 1; a < n; ++a) w.grad[a][j] = c0 * v.grad[a][j];
      w.box[j] = c2 * v.phi[j] + 2.0 * c1 * v.grad[0][j] + c0 * v.box[j];
    }
    for (double sign : {1.0, -1.0}) {
      FieldJet q = b;
      for (std::size_t j = 0; j < q.phi.size(); ++j) {
        q.phi[j] += sign * eps * w.phi[j];
        for (int mu = 0; mu < n; ++mu) q.grad[mu][j] += sign * eps * w.grad[mu][j];
        q.box[j] += sign * eps * w.box[j];
      }
      (sign > 0 ? plus : minus)[i] = action_density(lat, q, lambda);
    }
  }
  return std::abs((simpson(plus, h) - simpson(minus, h)) / (2.0 * eps));
}

}  // namespace kgms
