#pragma once

// Phase-space data on Sigma, the curvature component F_l = i_l F, boundary
// functionals and the gauge action.
//
// On S^1 every spatial covector has the single component X_x; fields store
// that component. Raising it costs a factor gamma^{xx} = r^-2.

#include <array>
#include <vector>

#include "nym/errors.hpp"
#include "nym/field.hpp"
#include "nym/grid.hpp"
#include "nym/lie.hpp"

namespace nym {

template <class G>
struct PhasePoint {
  AlgSigma<G> A_ell, A_hat, E;

  static PhasePoint zero(const Grid& g) {
    return {AlgSigma<G>(g.nu(), g.nx()), AlgSigma<G>(g.nu(), g.nx()), AlgSigma<G>(g.nu(), g.nx())};
  }
};

template <class G>
struct TangentP {
  AlgSigma<G> dA_ell, dA_hat, dE;

  static TangentP zero(const Grid& g) {
    return {AlgSigma<G>(g.nu(), g.nx()), AlgSigma<G>(g.nu(), g.nx()), AlgSigma<G>(g.nu(), g.nx())};
  }

  TangentP& operator+=(const TangentP& o) {
    dA_ell += o.dA_ell;
    dA_hat += o.dA_hat;
    dE += o.dE;
    return *this;
  }
  TangentP& operator*=(double s) {
    dA_ell *= s;
    dA_hat *= s;
    dE *= s;
    return *this;
  }
  friend TangentP operator+(TangentP a, const TangentP& b) { return a += b; }
  friend TangentP operator-(TangentP a, const TangentP& b) { return a += -1.0 * b; }
  friend TangentP operator*(double s, TangentP a) { return a *= s; }
};

// Variation of on-shell data: the connection and the initial electric field.
template <class G>
struct TangentC {
  AlgSigma<G> dA_ell, dA_hat;
  AlgS<G> dE_init;

  static TangentC zero(const Grid& g) {
    return {AlgSigma<G>(g.nu(), g.nx()), AlgSigma<G>(g.nu(), g.nx()), AlgS<G>(g.nx())};
  }
  friend TangentC operator*(double s, TangentC t) {
    t.dA_ell *= s;
    t.dA_hat *= s;
    t.dE_init *= s;
    return t;
  }
  friend TangentC operator+(TangentC a, const TangentC& b) {
    a.dA_ell += b.dA_ell;
    a.dA_hat += b.dA_hat;
    a.dE_init += b.dE_init;
    return a;
  }
};

template <class G>
struct OnShellPoint {
  AlgSigma<G> A_ell, A_hat;
  AlgS<G> E_init;
  AlgSigma<G> E_solved;

  PhasePoint<G> phase_point() const { return {A_ell, A_hat, E_solved}; }
};

// Extended AS data (a, Lambda, e) and its tangents (da, Lambda^-1 dLambda, de).
template <class G>
struct TangentD {
  AlgSigma<G> da;
  AlgS<G> eta, de;

  static TangentD zero(const Grid& g) {
    return {AlgSigma<G>(g.nu(), g.nx()), AlgS<G>(g.nx()), AlgS<G>(g.nx())};
  }
  friend TangentD operator*(double s, TangentD t) {
    t.da *= s;
    t.eta *= s;
    t.de *= s;
    return t;
  }
  friend TangentD operator+(TangentD a, const TangentD& b) {
    a.da += b.da;
    a.eta += b.eta;
    a.de += b.de;
    return a;
  }
  friend TangentD operator-(TangentD a, const TangentD& b) { return a + (-1.0) * b; }
};

template <class G>
struct DressedPoint {
  AlgSigma<G> a;
  GroupS<G> Lambda;
  AlgS<G> e;
  // sup-norm of the discarded l-component of the dressed connection.
  double ell_residual = 0;
};

template <class G>
PhasePoint<G> displaced(const PhasePoint<G>& p, const TangentP<G>& X, double s) {
  return {p.A_ell + s * X.dA_ell, p.A_hat + s * X.dA_hat, p.E + s * X.dE};
}

template <class G>
AlgSigma<G> curvature_Fl(const Grid& grid, const AlgSigma<G>& A_ell, const AlgSigma<G>& A_hat) {
  return grid.d_u(A_hat) - grid.d_x(A_ell) + bracket<G>(A_ell, A_hat);
}

// Linearization of curvature_Fl at (A_ell, A_hat) along (dA_ell, dA_hat).
template <class G>
AlgSigma<G> curvature_variation(const Grid& grid, const AlgSigma<G>& A_ell, const AlgSigma<G>& A_hat,
                                const AlgSigma<G>& dA_ell, const AlgSigma<G>& dA_hat) {
  return grid.d_u(dA_hat) - grid.d_x(dA_ell) + bracket<G>(A_ell, dA_hat) + bracket<G>(dA_ell, A_hat);
}

template <class T>
struct Boundary {
  OnS<T> init, fin, avg, diff, integral;
};

template <class T>
Boundary<T> boundary_functionals(const Grid& grid, const OnSigma<T>& Q) {
  Boundary<T> b;
  b.init = Q.init();
  b.fin = Q.fin();
  b.avg = 0.5 * (b.init + b.fin);
  b.diff = b.fin - b.init;
  b.integral = grid.integrate_u(Q);
  return b;
}

// g^{-1} d_u g. The stencil is applied to log(g(u_j)^{-1} g(u_j + t)), which
// stays near 0 for smooth fields and has derivative g^{-1} d_u g at t = 0.
template <class G>
AlgSigma<G> log_derivative_u(const Grid& grid, const GroupSigma<G>& g) {
  AlgSigma<G> out(g.nu, g.nx);
  for (int j = 0; j < g.nu; ++j) {
    const Grid::Stencil& s = grid.du_stencil(j);
    for (int i = 0; i < g.nx; ++i) {
      const auto ginv = G::inv(g(j, i));
      AlgOf<G> acc{};
      for (size_t k = 0; k < s.w.size(); ++k) {
        const int jj = j + s.offset + static_cast<int>(k);
        if (jj == j) continue;
        acc += s.w[k] * G::log(G::mul(ginv, g(jj, i)));
      }
      out(j, i) = acc;
    }
  }
  return out;
}

// g^{-1} d_x g, from the spectral derivative of the embedding components.
template <class G>
AlgS<G> log_derivative_x(const Grid& grid, const GroupS<G>& g) {
  constexpr int n = G::n_embed;
  std::array<OnS<double>, n> comp;
  for (int c = 0; c < n; ++c) {
    comp[c] = OnS<double>(g.nx());
    for (int i = 0; i < g.nx(); ++i) comp[c][i] = G::embed(g[i])[c];
    comp[c] = grid.d_x(comp[c]);
  }
  AlgS<G> out(g.nx());
  for (int i = 0; i < g.nx(); ++i) {
    std::array<double, n> dg;
    for (int c = 0; c < n; ++c) dg[c] = comp[c][i];
    out[i] = G::left_trivialize(g[i], dg);
  }
  return out;
}

template <class G>
AlgSigma<G> log_derivative_x(const Grid& grid, const GroupSigma<G>& g) {
  AlgSigma<G> out(g.nu, g.nx);
  for (int j = 0; j < g.nu; ++j) out.set_slice(j, log_derivative_x<G>(grid, g.slice(j)));
  return out;
}

// Connection transformation A -> Ad(g^-1) A + g^-1 dg, one component.
template <class G>
AlgSigma<G> transform_component(const AlgSigma<G>& A, const GroupSigma<G>& g, const AlgSigma<G>& mc) {
  return Ad_inv_field<G>(g, A) + mc;
}

template <class G>
PhasePoint<G> gauge_transform(const Grid& grid, const PhasePoint<G>& p, const GroupSigma<G>& g) {
  return {transform_component<G>(p.A_ell, g, log_derivative_u<G>(grid, g)),
          transform_component<G>(p.A_hat, g, log_derivative_x<G>(grid, g)), Ad_inv_field<G>(g, p.E)};
}

template <class G>
OnShellPoint<G> gauge_transform(const Grid& grid, const OnShellPoint<G>& c, const GroupSigma<G>& g) {
  const PhasePoint<G> p = gauge_transform<G>(grid, c.phase_point(), g);
  return {p.A_ell, p.A_hat, Ad_inv_field<G>(g.init(), c.E_init), p.E};
}

template <class G>
TangentP<G> inf_gauge(const Grid& grid, const PhasePoint<G>& p, const AlgSigma<G>& xi) {
  return {grid.d_u(xi) + bracket<G>(p.A_ell, xi), grid.d_x(xi) + bracket<G>(p.A_hat, xi), bracket<G>(p.E, xi)};
}

}  // namespace nym
