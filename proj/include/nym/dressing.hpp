#pragma once

// Wilson lines along l, the dressing map (A, E_i) -> (a, Lambda, e), its
// tangent map, the Abelian winding number and the Abelian linear
// trivialisation.

#include <algorithm>
#include <cmath>
#include <functional>

#include "nym/constraint.hpp"
#include "nym/errors.hpp"
#include "nym/fields.hpp"
#include "nym/grid.hpp"
#include "nym/modes.hpp"

namespace nym {

// V with d_u V = -A_l V and V(u = 1) = 1.
template <class G>
GroupSigma<G> wilson_line(const Grid& grid, const AlgSigma<G>& A_ell) {
  const int nu = grid.nu(), nx = grid.nx();
  GroupSigma<G> V(nu, nx, G::identity());
  if constexpr (G::abelian) {
    const AlgSigma<G> F = grid.antiderivative_u(A_ell);
    for (int j = 0; j < nu; ++j)
      for (int i = 0; i < nx; ++i) V(j, i) = G::exp(F(nu - 1, i) - F(j, i));
  } else {
    using Q = std::array<double, 4>;
    // -A V as a quaternion product; A = sum x_a tau_a is the pure quaternion x/2.
    auto rhs = [](const AlgOf<G>& A, const Q& v) {
      const Quat p = Quat{0.0, -0.5 * A[0], -0.5 * A[1], -0.5 * A[2]} * Quat{v[0], v[1], v[2], v[3]};
      return Q{p.w, p.x, p.y, p.z};
    };
    auto axpy = [](const Q& y, double s, const Q& k) { return Q{y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2], y[3] + s * k[3]}; };
    const double h = grid.du();
    for (int i = 0; i < nx; ++i) {
      const std::vector<AlgOf<G>> c = A_ell.column(i);
      Q y{1, 0, 0, 0};
      for (int j = nu - 2; j >= 0; --j) {
        const AlgOf<G> cm = detail::midpoint_cubic(c, j);
        const Q k1 = rhs(c[j + 1], y);
        const Q k2 = rhs(cm, axpy(y, -0.5 * h, k1));
        const Q k3 = rhs(cm, axpy(y, -0.5 * h, k2));
        const Q k4 = rhs(c[j], axpy(y, -h, k3));
        for (int q = 0; q < 4; ++q) y[q] -= (h / 6.0) * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
        const Quat n = Quat{y[0], y[1], y[2], y[3]}.normalized();
        y = {n.w, n.x, n.y, n.z};
        V(j, i) = n;
      }
    }
  }
  return V;
}

struct DressOptions {
  double tol_residual = 1e-6;
};

template <class G>
DressedPoint<G> dress(const Grid& grid, const AlgSigma<G>& A_ell, const AlgSigma<G>& A_hat, const AlgS<G>& E_init,
                      const DressOptions& opt = {}) {
  const GroupSigma<G> V = wilson_line<G>(grid, A_ell);
  DressedPoint<G> d;
  d.a = transform_component<G>(A_hat, V, log_derivative_x<G>(grid, V));
  d.ell_residual = sup_norm(transform_component<G>(A_ell, V, log_derivative_u<G>(grid, V)));
  if (d.ell_residual > opt.tol_residual) throw DressingResidual("dressed connection keeps an l-component");
  d.Lambda = V.init();
  d.e = Ad_inv_field<G>(d.Lambda, E_init);
  return d;
}

template <class G>
DressedPoint<G> dress(const Grid& grid, const OnShellPoint<G>& c, const DressOptions& opt = {}) {
  return dress<G>(grid, c.A_ell, c.A_hat, c.E_init, opt);
}

// Central differences of dress along (A + s dA, E_i + s dE_i), Richardson
// extrapolated from steps s and s/2. The group part is read off as
// log(Lambda^-1 Lambda_s) / s.
template <class G>
TangentD<G> dress_pushforward(const Grid& grid, const OnShellPoint<G>& c, const TangentC<G>& t, double s = 1e-4) {
  const DressedPoint<G> d0 = dress<G>(grid, c);
  auto central = [&](double h) {
    const DressedPoint<G> dp = dress<G>(grid, c.A_ell + h * t.dA_ell, c.A_hat + h * t.dA_hat, c.E_init + h * t.dE_init);
    const DressedPoint<G> dm = dress<G>(grid, c.A_ell - h * t.dA_ell, c.A_hat - h * t.dA_hat, c.E_init - h * t.dE_init);
    TangentD<G> out;
    out.da = (0.5 / h) * (dp.a - dm.a);
    out.de = (0.5 / h) * (dp.e - dm.e);
    out.eta = AlgS<G>(grid.nx());
    for (int i = 0; i < grid.nx(); ++i) {
      const auto inv0 = G::inv(d0.Lambda[i]);
      out.eta[i] = (0.5 / h) * (G::log(G::mul(inv0, dp.Lambda[i])) - G::log(G::mul(inv0, dm.Lambda[i])));
    }
    return out;
  };
  return (1.0 / 3.0) * (4.0 * central(0.5 * s) - central(s));
}

template <class G>
struct Winding {
  AlgOf<G> w;
  // Distance of the U(1) coefficient from the nearest integer.
  double lattice_gap = 0;
  // Spread of the per-column values across x.
  double x_spread = 0;
};

// w(g) = (1/2pi) int_{-1}^{1} g^{-1} d_u g du for g with g_i = g_fin constant.
template <class G>
Winding<G> winding(const Grid& grid, const GroupSigma<G>& g, double tol_boundary = 1e-9) {
  if constexpr (!G::abelian) {
    throw NotAbelian("winding numbers are defined for Abelian groups");
  } else {
    const auto ref = g(0, 0);
    for (int i = 0; i < g.nx; ++i) {
      if (G::dist(g(0, i), ref) > tol_boundary || G::dist(g(g.nu - 1, i), ref) > tol_boundary)
        throw NotRelative("g must equal one constant on both boundary circles");
    }
    const AlgS<G> per_x = (1.0 / (2.0 * kPi)) * grid.integrate_u(log_derivative_u<G>(grid, g));
    Winding<G> out;
    double lo = per_x[0][0], hi = per_x[0][0];
    for (int i = 0; i < g.nx; ++i) {
      out.w += (1.0 / g.nx) * per_x[i];
      lo = std::min(lo, per_x[i][0]);
      hi = std::max(hi, per_x[i][0]);
    }
    out.x_spread = hi - lo;
    out.lattice_gap = std::abs(out.w[0] - std::round(out.w[0]));
    return out;
  }
}

template <class G>
struct AbelianDressedPoint {
  AlgSigma<G> a;
  AlgS<G> lambda;
  AlgS<G> e;
};

template <class G>
struct AbelianTrivialization {
  AbelianDressedPoint<G> point;
  // U_rel = exp(upsilon), trivial on both boundary circles.
  AlgSigma<G> upsilon;
  GroupSigma<G> U_rel;
};

// upsilon(u) = -int_{-1}^u A_l + (u+1)/2 lambda,  lambda = (A_l)^int,
// a = A_hat + D upsilon - (u-1)/2 D lambda.
template <class G>
AbelianTrivialization<G> abelian_trivialize(const Grid& grid, const AlgSigma<G>& A_ell, const AlgSigma<G>& A_hat,
                                            const AlgS<G>& E_init) {
  if constexpr (!G::abelian) {
    throw NotAbelian("the linear trivialisation needs an Abelian group");
  } else {
    const int nu = grid.nu();
    const AlgSigma<G> F = grid.antiderivative_u(A_ell);
    AbelianTrivialization<G> t;
    t.point.lambda = F.fin();
    const AlgS<G> Dlambda = grid.d_x(t.point.lambda);
    t.upsilon = AlgSigma<G>(nu, grid.nx());
    for (int j = 0; j < nu; ++j)
      t.upsilon.set_slice(j, 0.5 * (grid.u(j) + 1.0) * t.point.lambda - F.slice(j));
    t.point.a = A_hat + grid.d_x(t.upsilon);
    for (int j = 0; j < nu; ++j) t.point.a.set_slice(j, t.point.a.slice(j) - 0.5 * (grid.u(j) - 1.0) * Dlambda);
    t.point.e = E_init;
    t.U_rel = group_exp<G>(t.upsilon);
    return t;
  }
}

template <class G>
AbelianTrivialization<G> abelian_trivialize(const Grid& grid, const OnShellPoint<G>& c) {
  return abelian_trivialize<G>(grid, c.A_ell, c.A_hat, c.E_init);
}

// Inverse: A = a + (u-1)/2 D lambda + (1/2) lambda du - dU U^{-1}, E_i = e.
template <class G>
OnShellPoint<G> abelian_untrivialize(const Grid& grid, const AbelianDressedPoint<G>& p, const GroupSigma<G>& U_rel) {
  if constexpr (!G::abelian) {
    throw NotAbelian("the linear trivialisation needs an Abelian group");
  } else {
    const int nu = grid.nu();
    const AlgS<G> Dlambda = grid.d_x(p.lambda);
    AlgSigma<G> A_hat = p.a - log_derivative_x<G>(grid, U_rel);
    for (int j = 0; j < nu; ++j) A_hat.set_slice(j, A_hat.slice(j) + 0.5 * (grid.u(j) - 1.0) * Dlambda);
    const AlgSigma<G> A_ell = AlgSigma<G>::constant_in_u(nu, 0.5 * p.lambda) - log_derivative_u<G>(grid, U_rel);
    return solve_gauss<G>(grid, A_ell, A_hat, p.e);
  }
}

// Terms of the gauge-variation identity for omega under a field-dependent
// gauge transformation p -> p^{U(p)}:
//   omega(Phi_* X, Phi_* Y) - omega(X, Y) = sigma d theta_G (X, Y) + d beta (X, Y),
// theta_G(Z) = int_Sigma tr(G R_Z), beta(Z) = int_S tr(E^fin R_Z^fin - E^i R_Z^i),
// R_Z = (D_Z U) U^{-1}. All derivatives are Richardson-extrapolated central
// differences, nested for the exterior derivatives.
template <class G>
struct GaugeVariationTerms {
  double lhs = 0, d_theta = 0, d_beta = 0;
};

template <class G>
GaugeVariationTerms<G> gauge_variation_terms(const Grid& grid, const PhasePoint<G>& p, const TangentP<G>& X,
                                             const TangentP<G>& Y,
                                             const std::function<GroupSigma<G>(const PhasePoint<G>&)>& U,
                                             double s = 1e-3) {
  auto richardson = [s](auto&& central) { return (1.0 / 3.0) * (4.0 * central(0.5 * s) - central(s)); };
  auto Phi = [&](const PhasePoint<G>& q) { return gauge_transform<G>(grid, q, U(q)); };
  auto push = [&](const TangentP<G>& Z) {
    return richardson([&](double h) {
      const PhasePoint<G> a = Phi(displaced(p, Z, h)), b = Phi(displaced(p, Z, -h));
      return TangentP<G>{(0.5 / h) * (a.A_ell - b.A_ell), (0.5 / h) * (a.A_hat - b.A_hat), (0.5 / h) * (a.E - b.E)};
    });
  };
  // R_Z at q.
  auto R = [&](const PhasePoint<G>& q, const TangentP<G>& Z) {
    const GroupSigma<G> Uinv = group_inv<G>(U(q));
    return richardson([&](double h) {
      const GroupSigma<G> up = U(displaced(q, Z, h)), um = U(displaced(q, Z, -h));
      AlgSigma<G> out(up.nu, up.nx);
      for (size_t k = 0; k < out.v.size(); ++k)
        out.v[k] = (0.5 / h) * (G::log(G::mul(up.v[k], Uinv.v[k])) - G::log(G::mul(um.v[k], Uinv.v[k])));
      return out;
    });
  };
  auto theta = [&](const PhasePoint<G>& q, const TangentP<G>& Z) {
    return grid.integrate_Sigma(tr_field<G>(gauss_residual<G>(grid, q), R(q, Z)));
  };
  auto beta = [&](const PhasePoint<G>& q, const TangentP<G>& Z) {
    const AlgSigma<G> r = R(q, Z);
    return grid.integrate_S(tr_field<G>(q.E.fin(), r.fin()) - tr_field<G>(q.E.init(), r.init()));
  };
  auto exterior = [&](auto&& form) {
    auto D = [&](const TangentP<G>& A, const TangentP<G>& B) {
      return richardson([&](double h) { return (0.5 / h) * (form(displaced(p, A, h), B) - form(displaced(p, A, -h), B)); });
    };
    return D(X, Y) - D(Y, X);
  };

  GaugeVariationTerms<G> t;
  t.lhs = omega_nYM<G>(grid, Phi(p), push(X), push(Y)) - omega_nYM<G>(grid, p, X, Y);
  t.d_theta = exterior(theta);
  t.d_beta = exterior(beta);
  return t;
}

}  // namespace nym
