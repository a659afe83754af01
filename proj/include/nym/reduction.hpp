#pragma once

// Residual boundary gauge action on (a, Lambda, e), the reduced flux map,
// memory and superselection labels.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "nym/constraint.hpp"
#include "nym/dressing.hpp"
#include "nym/errors.hpp"
#include "nym/fields.hpp"
#include "nym/grid.hpp"
#include "nym/modes.hpp"

namespace nym {

// Pointwise D^i L_l a = gamma^{xx} (d_x d_u a + [a, d_u a]).
template <class G>
AlgSigma<G> div_La(const Grid& grid, const AlgSigma<G>& a) {
  const AlgSigma<G> La = grid.d_u(a);
  return grid.gamma_xx() * (grid.d_x(La) + bracket<G>(a, La));
}

template <class G>
TangentD<G> residual_action(const Grid& grid, const DressedPoint<G>& d, const AlgS<G>& xi_init,
                            const AlgS<G>& xi_fin) {
  const int nu = grid.nu();
  const AlgSigma<G> xf = AlgSigma<G>::constant_in_u(nu, xi_fin);
  TangentD<G> t;
  t.da = AlgSigma<G>::constant_in_u(nu, grid.d_x(xi_fin)) + bracket<G>(d.a, xf);
  t.eta = xi_fin - Ad_inv_field<G>(d.Lambda, xi_init);
  t.de = -bracket<G>(xi_fin, d.e);
  return t;
}

// Finite action of (g_i, g_fin): a -> a^{g_fin}, Lambda -> g_i^-1 Lambda g_fin, e -> Ad(g_fin^-1) e.
template <class G>
DressedPoint<G> residual_transform(const Grid& grid, const DressedPoint<G>& d, const GroupS<G>& g_init,
                                   const GroupS<G>& g_fin) {
  const int nu = grid.nu();
  const GroupSigma<G> gf = GroupSigma<G>::constant_in_u(nu, g_fin);
  DressedPoint<G> out;
  out.a = Ad_inv_field<G>(gf, d.a) + AlgSigma<G>::constant_in_u(nu, log_derivative_x<G>(grid, g_fin));
  out.Lambda = group_mul<G>(group_mul<G>(group_inv<G>(g_init), d.Lambda), g_fin);
  out.e = Ad_inv_field<G>(g_fin, d.e);
  return out;
}

// <h_eAS, (xi_i, xi_fin)> = int_S tr((D^i L_l a)^int xi_fin + e (Ad(Lambda^-1) xi_i - xi_fin)).
template <class G>
double reduced_flux(const Grid& grid, const DressedPoint<G>& d, const AlgS<G>& xi_init, const AlgS<G>& xi_fin) {
  const AlgS<G> bulk = grid.integrate_u(div_La<G>(grid, d.a));
  const OnS<double> density =
      tr_field<G>(bulk, xi_fin) + tr_field<G>(d.e, Ad_inv_field<G>(d.Lambda, xi_init) - xi_fin);
  return grid.integrate_S(density);
}

template <class G>
DressedPoint<G> displaced(const DressedPoint<G>& d, const TangentD<G>& Y, double s) {
  DressedPoint<G> out;
  out.a = d.a + s * Y.da;
  out.Lambda = group_mul<G>(d.Lambda, group_exp<G>(s * Y.eta));
  out.e = d.e + s * Y.de;
  return out;
}

struct FlowResidual {
  double residual = 0;
  // Magnitude of the two sides, for relative tolerances.
  double scale = 0;
};

// |omega_eAS(rho(xi), Y) - D_Y <h_eAS, xi>|, with D_Y a central difference.
template <class G>
FlowResidual hamiltonian_check(const Grid& grid, const DressedPoint<G>& d, const AlgS<G>& xi_init,
                               const AlgS<G>& xi_fin, const TangentD<G>& Y, double s = 1e-4) {
  const double lhs = omega_eAS<G>(grid, d, residual_action<G>(grid, d, xi_init, xi_fin), Y);
  const double rhs = (0.5 / s) * (reduced_flux<G>(grid, displaced(d, Y, s), xi_init, xi_fin) -
                                  reduced_flux<G>(grid, displaced(d, Y, -s), xi_init, xi_fin));
  return {std::abs(lhs - rhs), std::max(std::abs(lhs), std::abs(rhs))};
}

template <class G>
struct AbelianMemory {
  AlgS<G> mu;
  // The same field from -Delta^{-1} D^i a^diff of the dressed point.
  AlgS<G> mu_dressed;
  double gap = 0;
};

template <class G>
AbelianMemory<G> memory_abelian(const Grid& grid, const OnShellPoint<G>& c) {
  if constexpr (!G::abelian) {
    throw NotAbelian("use memory_nonabelian");
  } else {
    AbelianMemory<G> m;
    const FluxPair<G> f = flux_pair(c);
    m.mu = grid.inv_laplacian_S(f.E_diff());
    const DressedPoint<G> d = dress<G>(grid, c);
    const AlgS<G> Da_diff = grid.gamma_xx() * grid.d_x(d.a.fin() - d.a.init());
    m.mu_dressed = -grid.inv_laplacian_S(Da_diff);
    m.gap = sup_norm(m.mu - m.mu_dressed);
    return m;
  }
}

// Dressed route alone: mu = -Delta^{-1} D^i a^diff.
template <class G>
AlgS<G> memory_abelian(const Grid& grid, const DressedPoint<G>& d) {
  static_assert(G::abelian, "use memory_nonabelian");
  return -grid.inv_laplacian_S(grid.gamma_xx() * grid.d_x(d.a.fin() - d.a.init()));
}

// Spectral matrices on the periodic x-grid: first derivative with the
// Nyquist mode removed, second derivative with it kept.
inline Eigen::MatrixXd spectral_matrix(const Grid& grid, int order) {
  const int n = grid.nx();
  Eigen::MatrixXd M(n, n);
  for (int col = 0; col < n; ++col) {
    OnS<double> e(n);
    e[col] = 1.0;
    const OnS<double> d = order == 1 ? grid.d_x(e) : (grid.r() * grid.r()) * grid.laplacian_S(e);
    for (int row = 0; row < n; ++row) M(row, col) = d[row];
  }
  return M;
}

template <class G>
struct NonAbelianMemory {
  AlgS<G> mu;
  int kernel_dim = 0;
  // sup-norm of -D_0^2 mu - rhs; nonzero when rhs leaves the range.
  double residual = 0;
};

// -D_0^i D_0_i mu = (D^i L_l a)^int with D_0 = d_x + [b, .], b = Re(2 a~(0)) =
// a^int - a^avg. Dense minimal-norm solve; singular values below
// rel_cut * max count towards the kernel.
template <class G>
NonAbelianMemory<G> memory_nonabelian(const Grid& grid, const DressedPoint<G>& d, double tol_e = 1e-9,
                                      double rel_cut = 1e-8) {
  if (sup_norm(d.e) > tol_e) throw NotOnLevelSet("memory is defined in the sector e = 0");
  const int n = grid.nx();
  constexpr int D = G::dim;
  const Boundary<AlgOf<G>> bf = boundary_functionals(grid, d.a);
  const AlgS<G> b = bf.integral - bf.avg;
  const AlgS<G> db = grid.d_x(b);
  const AlgS<G> rhs = grid.integrate_u(div_La<G>(grid, d.a));

  auto ad_matrix = [](const AlgOf<G>& X) {
    Eigen::MatrixXd m(G::dim, G::dim);
    for (int c = 0; c < G::dim; ++c) {
      const AlgOf<G> col = G::ad(X, basis_element<G>(c));
      for (int r = 0; r < G::dim; ++r) m(r, c) = col[r];
    }
    return m;
  };
  const Eigen::MatrixXd D1 = spectral_matrix(grid, 1), D2 = spectral_matrix(grid, 2);
  // D_0 D_0 = d_x^2 + ad(d_x b) + 2 ad(b) d_x + ad(b)^2.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n * D, n * D);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd adb = ad_matrix(b[i]);
    for (int k = 0; k < n; ++k) {
      Eigen::MatrixXd block = D2(i, k) * Eigen::MatrixXd::Identity(D, D) + 2.0 * D1(i, k) * adb;
      if (i == k) block += ad_matrix(db[i]) + adb * adb;
      M.block(i * D, k * D, D, D) = block;
    }
  }
  M *= -grid.gamma_xx();
  Eigen::VectorXd f(n * D);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < D; ++c) f(i * D + c) = rhs[i][c];

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = rel_cut * sv(0);
  Eigen::VectorXd coeff = svd.matrixU().transpose() * f;
  NonAbelianMemory<G> m;
  for (int q = 0; q < sv.size(); ++q) {
    if (sv(q) <= cut) {
      coeff(q) = 0.0;
      ++m.kernel_dim;
    } else {
      coeff(q) /= sv(q);
    }
  }
  const Eigen::VectorXd x = svd.matrixV() * coeff;
  m.mu = AlgS<G>(n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < D; ++c) m.mu[i][c] = x(i * D + c);
  m.residual = (M * x - f).cwiseAbs().maxCoeff();
  return m;
}

// D_0 D_0 mu applied to a field, for equivariance checks on the rhs side.
template <class G>
AlgS<G> covariant_laplacian_0(const Grid& grid, const AlgSigma<G>& a, const AlgS<G>& mu) {
  const Boundary<AlgOf<G>> bf = boundary_functionals(grid, a);
  const AlgS<G> b = bf.integral - bf.avg;
  const AlgS<G> D0mu = grid.d_x(mu) + bracket<G>(b, mu);
  return grid.gamma_xx() * (grid.d_x(D0mu) + bracket<G>(b, D0mu));
}

template <class G>
struct FluxModeIdentity {
  AlgS<G> lhs, rhs;
  double max_err = 0;
};

// (D^i L_l a)^int against D_0^i Im(2 a~(0)) + sum_{k>=1} [Re 2a~(k), Im 2a~(k)]^i.
template <class G>
FluxModeIdentity<G> nonab_flux_mode_identity(const Grid& grid, const AlgSigma<G>& a, int k_max) {
  FluxModeIdentity<G> out;
  out.lhs = grid.integrate_u(div_La<G>(grid, a));
  const ModeSpectrum<G> s = mode_decompose<G>(grid, a, k_max);
  const AlgS<G> re0 = s.re2(0), im0 = s.im2(0);
  AlgS<G> sum = grid.d_x(im0) + bracket<G>(re0, im0);
  for (int k = 1; k <= k_max; ++k) sum += bracket<G>(s.re2(k), s.im2(k));
  out.rhs = grid.gamma_xx() * sum;
  out.max_err = sup_norm(out.lhs - out.rhs);
  return out;
}

template <class G>
struct SectorLabel {
  // Abelian: (E_i, mu). SU(2): pointwise Casimirs tr(E E) on both ends.
  AlgS<G> f_init, mu;
  OnS<double> casimir_init, casimir_fin;
};

template <class G>
SectorLabel<G> sector_label(const Grid& grid, const OnShellPoint<G>& c) {
  SectorLabel<G> l;
  const FluxPair<G> f = flux_pair(c);
  if constexpr (G::abelian) {
    l.f_init = f.E_i;
    l.mu = grid.inv_laplacian_S(f.E_diff());
  } else {
    l.casimir_init = tr_field<G>(f.E_i, f.E_i);
    l.casimir_fin = tr_field<G>(f.E_fin, f.E_fin);
  }
  return l;
}

template <class G>
double sector_distance(const SectorLabel<G>& l1, const SectorLabel<G>& l2) {
  if constexpr (G::abelian) {
    return std::max(sup_norm(l1.f_init - l2.f_init), sup_norm(l1.mu - l2.mu));
  } else {
    return std::max(sup_norm(l1.casimir_init - l2.casimir_init), sup_norm(l1.casimir_fin - l2.casimir_fin));
  }
}

// For SU(2) this compares Casimirs only, a necessary condition for the
// fluxes to lie on one coadjoint orbit.
template <class G>
bool same_sector(const SectorLabel<G>& l1, const SectorLabel<G>& l2, double tol) {
  return sector_distance(l1, l2) <= tol;
}

template <class G>
struct PartialReduction {
  AlgSigma<G> a;
  // <h_AS, xi_fin> = int_S tr((D^i L_l a)^int xi_fin).
  double residual_momentum = 0;
};

template <class G>
PartialReduction<G> partial_reduce_AS(const Grid& grid, const DressedPoint<G>& d, const AlgS<G>& xi_fin,
                                      double tol_e = 1e-9) {
  if (sup_norm(d.e) > tol_e) throw NotOnLevelSet("partial reduction requires e = 0");
  const AlgS<G> bulk = grid.integrate_u(div_La<G>(grid, d.a));
  return {d.a, grid.integrate_S(tr_field<G>(bulk, xi_fin))};
}

// Abelian slice: Re(2 a~(0)) = d_x phi + h with h the x-constant harmonic
// part. The slice representative drops d_x phi (a u-constant gauge
// direction); h is gauge invariant and carried along.
template <class G>
struct AbelianSlice {
  AlgSigma<G> a;
  AlgS<G> phi;
  AlgOf<G> h;
};

template <class G>
AbelianSlice<G> abelian_gauge_slice(const Grid& grid, const AlgSigma<G>& a) {
  static_assert(G::abelian, "the gauge slice is Abelian");
  const Boundary<AlgOf<G>> bf = boundary_functionals(grid, a);
  const AlgS<G> b = bf.integral - bf.avg;
  AbelianSlice<G> s;
  s.h = (1.0 / (2.0 * kPi * grid.r())) * grid.integrate_S(b);
  const AlgS<G> exact = b - OnS<AlgOf<G>>(grid.nx(), s.h);
  // phi = Delta^{-1} (gamma d_x exact), so that d_x phi = exact.
  s.phi = grid.inv_laplacian_S(grid.gamma_xx() * grid.d_x(exact));
  s.a = a - AlgSigma<G>::constant_in_u(grid.nu(), grid.d_x(s.phi));
  return s;
}

}  // namespace nym
