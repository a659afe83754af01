#pragma once

// Gauss constraint G = L_l E + D^i F_li, its solver, the momentum form
// with its constraint/flux split, and on-shell fluxes.

#include <algorithm>
#include <cmath>

#include "nym/errors.hpp"
#include "nym/fields.hpp"
#include "nym/grid.hpp"

namespace nym {

// D^i F_li on S^1.
template <class G>
AlgSigma<G> divergence_F(const Grid& grid, const AlgSigma<G>& A_hat, const AlgSigma<G>& F) {
  return grid.gamma_xx() * (grid.d_x(F) + bracket<G>(A_hat, F));
}

template <class G>
AlgSigma<G> gauss_residual(const Grid& grid, const PhasePoint<G>& p) {
  const AlgSigma<G> F = curvature_Fl<G>(grid, p.A_ell, p.A_hat);
  return grid.d_u(p.E) + bracket<G>(p.A_ell, p.E) + divergence_F<G>(grid, p.A_hat, F);
}

struct GaussOptions {
  // Abelian cross-check threshold, relative to the field scale.
  double tol_cross = 1e-6;
};

template <class G>
OnShellPoint<G> solve_gauss(const Grid& grid, const AlgSigma<G>& A_ell, const AlgSigma<G>& A_hat,
                            const AlgS<G>& E_init, const GaussOptions& opt = {}) {
  const AlgSigma<G> F = curvature_Fl<G>(grid, A_ell, A_hat);
  const AlgSigma<G> src = -divergence_F<G>(grid, A_hat, F);
  OnShellPoint<G> c{A_ell, A_hat, E_init, transport_ode<G>(grid, A_ell, src, E_init, Direction::Forward)};
  if constexpr (G::abelian) {
    const AlgSigma<G> closed = AlgSigma<G>::constant_in_u(grid.nu(), E_init) + grid.antiderivative_u(src);
    const double scale = std::max({sup_norm(closed), 2.0 * sup_norm(src), 1e-300});
    if (sup_norm(closed - c.E_solved) > opt.tol_cross * scale)
      throw GaussMismatch("closed form and transport disagree; refine the u-grid");
  }
  return c;
}

// Linearized Gauss solve: the E-variation that keeps a variation of on-shell
// data on shell. Maps TangentC to TangentP.
template <class G>
TangentP<G> lift_tangent(const Grid& grid, const OnShellPoint<G>& c, const TangentC<G>& t) {
  const AlgSigma<G> F = curvature_Fl<G>(grid, c.A_ell, c.A_hat);
  const AlgSigma<G> dF = curvature_variation<G>(grid, c.A_ell, c.A_hat, t.dA_ell, t.dA_hat);
  const AlgSigma<G> src = -(bracket<G>(t.dA_ell, c.E_solved) +
                            grid.gamma_xx() * (grid.d_x(dF) + bracket<G>(c.A_hat, dF) + bracket<G>(t.dA_hat, F)));
  return {t.dA_ell, t.dA_hat, transport_ode<G>(grid, c.A_ell, src, t.dE_init, Direction::Forward)};
}

// <H, xi> = -int_Sigma tr(E L_l xi + F_l^i D_i xi).
template <class G>
double momentum_pairing(const Grid& grid, const PhasePoint<G>& p, const AlgSigma<G>& xi) {
  const AlgSigma<G> F = curvature_Fl<G>(grid, p.A_ell, p.A_hat);
  const AlgSigma<G> Lxi = grid.d_u(xi) + bracket<G>(p.A_ell, xi);
  const AlgSigma<G> Dxi = grid.d_x(xi) + bracket<G>(p.A_hat, xi);
  const OnSigma<double> density = tr_field<G>(p.E, Lxi) + grid.gamma_xx() * tr_field<G>(F, Dxi);
  return -grid.integrate_Sigma(density);
}

template <class G>
double constraint_pairing(const Grid& grid, const PhasePoint<G>& p, const AlgSigma<G>& xi) {
  return grid.integrate_Sigma(tr_field<G>(gauss_residual<G>(grid, p), xi));
}

template <class G>
double flux_pairing(const Grid& grid, const AlgS<G>& E_init, const AlgS<G>& E_fin, const AlgS<G>& xi_init,
                    const AlgS<G>& xi_fin) {
  return -grid.integrate_S(tr_field<G>(E_fin, xi_fin) - tr_field<G>(E_init, xi_init));
}

template <class G>
double flux_pairing(const Grid& grid, const PhasePoint<G>& p, const AlgSigma<G>& xi) {
  return flux_pairing<G>(grid, p.E.init(), p.E.fin(), xi.init(), xi.fin());
}

// Raw boundary slices of the on-shell electric field. The flux proper is
// (E_i, -E^fin); pairing() applies that sign, so the slices are never
// negated by hand.
template <class G>
struct FluxPair {
  AlgS<G> E_i, E_fin;

  AlgS<G> f_init() const { return E_i; }
  AlgS<G> f_fin() const { return -E_fin; }
  AlgS<G> E_diff() const { return E_fin - E_i; }

  double pairing(const Grid& grid, const AlgS<G>& xi_init, const AlgS<G>& xi_fin) const {
    return flux_pairing<G>(grid, E_i, E_fin, xi_init, xi_fin);
  }
};

template <class G>
FluxPair<G> flux_pair(const OnShellPoint<G>& c) {
  return {c.E_solved.init(), c.E_solved.fin()};
}

// Abelian on-shell point with prescribed E_i and E^diff = -eta_diff, built
// from A_l = 0 and A_hat = u * (1/2) d_x lambda, lambda = Delta^{-1} eta_diff.
template <class G>
OnShellPoint<G> abelian_flux_preimage(const Grid& grid, const AlgS<G>& eta_init, const AlgS<G>& eta_diff,
                                      double tol_mean = 1e-8) {
  if constexpr (!G::abelian) {
    throw NotAbelian("flux preimage is constructed for Abelian groups only");
  } else {
    const AlgS<G> half_dlambda = 0.5 * grid.d_x(grid.inv_laplacian_S(eta_diff, tol_mean));
    AlgSigma<G> A_hat(grid.nu(), grid.nx());
    for (int j = 0; j < grid.nu(); ++j) A_hat.set_slice(j, grid.u(j) * half_dlambda);
    return solve_gauss<G>(grid, AlgSigma<G>(grid.nu(), grid.nx()), A_hat, eta_init);
  }
}

}  // namespace nym
