#pragma once

// The psi_k basis of u-profiles, the Hermitian pairing
//   G(f, h) = -(i/2) int (f' h* - f h'*) du,
// mode transforms of spatial connections and the symplectic 2-forms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <vector>

#include "nym/constraint.hpp"
#include "nym/fields.hpp"
#include "nym/grid.hpp"

namespace nym {

using Cplx = std::complex<double>;

inline Cplx psi(int k, double u) {
  if (k == 0) return {1.0, 0.5 * u};
  const double w = kPi * k;
  return {(k % 2 == 0 ? 1.0 : -1.0) + std::cos(w * u), std::sin(w * u) / (2.0 * w)};
}

inline Cplx psi_dot(int k, double u) {
  if (k == 0) return {0.0, 0.5};
  const double w = kPi * k;
  return {-w * std::sin(w * u), 0.5 * std::cos(w * u)};
}

inline std::vector<Cplx> psi_profile(const Grid& grid, int k) {
  std::vector<Cplx> p(grid.nu());
  for (int j = 0; j < grid.nu(); ++j) p[j] = psi(k, grid.u(j));
  return p;
}

inline std::vector<Cplx> psi_dot_profile(const Grid& grid, int k) {
  std::vector<Cplx> p(grid.nu());
  for (int j = 0; j < grid.nu(); ++j) p[j] = psi_dot(k, grid.u(j));
  return p;
}

inline Cplx g_pair(const Grid& grid, const std::vector<Cplx>& f, const std::vector<Cplx>& fdot,
                   const std::vector<Cplx>& h, const std::vector<Cplx>& hdot) {
  std::vector<Cplx> integrand(grid.nu());
  for (int j = 0; j < grid.nu(); ++j) integrand[j] = fdot[j] * std::conj(h[j]) - f[j] * std::conj(hdot[j]);
  return Cplx(0.0, -0.5) * grid.integrate_u(integrand);
}

// Derivatives by d_u when they are not known analytically.
inline Cplx g_pair(const Grid& grid, const std::vector<Cplx>& f, const std::vector<Cplx>& h) {
  return g_pair(grid, f, grid.d_u(f), h, grid.d_u(h));
}

// Coefficient-wise complex algebra element.
template <int D>
using CAlg = std::array<Cplx, D>;

template <class G>
struct ModeSpectrum {
  int k_max = 0;
  // modes[k][i]: coefficient of the x-sample i.
  std::vector<std::vector<CAlg<G::dim>>> modes;

  AlgS<G> re2(int k) const { return part(k, false); }
  AlgS<G> im2(int k) const { return part(k, true); }

 private:
  AlgS<G> part(int k, bool imag) const {
    AlgS<G> out(static_cast<int>(modes[k].size()));
    for (size_t i = 0; i < modes[k].size(); ++i)
      for (int a = 0; a < G::dim; ++a) out[i][a] = 2.0 * (imag ? modes[k][i][a].imag() : modes[k][i][a].real());
    return out;
  }
};

// a~(k, x) = G(psi_k, a(., x)). The a' term is integrated by parts so that
// only a itself and its end values enter:
//   a~(k) = -(i/2) (2 int psi_k' a du - [psi_k a]_{-1}^{1}).
template <class G>
ModeSpectrum<G> mode_decompose(const Grid& grid, const AlgSigma<G>& a, int k_max) {
  ModeSpectrum<G> s;
  s.k_max = k_max;
  s.modes.assign(k_max + 1, std::vector<CAlg<G::dim>>(a.nx));
  const std::vector<double>& w = grid.u_weights();
  const int last = grid.nu() - 1;
  for (int k = 0; k <= k_max; ++k) {
    const std::vector<Cplx> p = psi_profile(grid, k), pd = psi_dot_profile(grid, k);
    for (int i = 0; i < a.nx; ++i) {
      for (int c = 0; c < G::dim; ++c) {
        Cplx bulk = 0;
        for (int j = 0; j <= last; ++j) bulk += w[j] * pd[j] * a(j, i)[c];
        const Cplx ends = p[last] * a(last, i)[c] - p[0] * a(0, i)[c];
        s.modes[k][i][c] = Cplx(0.0, -0.5) * (2.0 * bulk - ends);
      }
    }
  }
  return s;
}

// a = sum_k (a~(k)^* psi_k + c.c.).
template <class G>
AlgSigma<G> mode_reconstruct(const Grid& grid, const ModeSpectrum<G>& s) {
  const int nx = s.modes.empty() ? grid.nx() : static_cast<int>(s.modes[0].size());
  AlgSigma<G> a(grid.nu(), nx);
  for (int k = 0; k <= s.k_max; ++k) {
    for (int j = 0; j < grid.nu(); ++j) {
      const Cplx p = psi(k, grid.u(j));
      for (int i = 0; i < nx; ++i)
        for (int c = 0; c < G::dim; ++c) a(j, i)[c] += 2.0 * (std::conj(s.modes[k][i][c]) * p).real();
    }
  }
  return a;
}

inline void write_spectrum_csv(std::ostream& os, const std::vector<std::vector<Cplx>>& modes) {
  os << "k,x_index,re,im\n";
  os.precision(17);
  for (size_t k = 0; k < modes.size(); ++k)
    for (size_t i = 0; i < modes[k].size(); ++i)
      os << k << ',' << i << ',' << modes[k][i].real() << ',' << modes[k][i].imag() << '\n';
}

// One algebra component of a spectrum, as rows for the CSV writer.
template <class G>
std::vector<std::vector<Cplx>> spectrum_component(const ModeSpectrum<G>& s, int c) {
  std::vector<std::vector<Cplx>> out(s.modes.size());
  for (size_t k = 0; k < s.modes.size(); ++k)
    for (const auto& v : s.modes[k]) out[k].push_back(v[c]);
  return out;
}

template <class G>
double omega_nYM(const Grid& grid, const PhasePoint<G>& p, const TangentP<G>& X, const TangentP<G>& Y) {
  const AlgSigma<G> dFX = curvature_variation<G>(grid, p.A_ell, p.A_hat, X.dA_ell, X.dA_hat);
  const AlgSigma<G> dFY = curvature_variation<G>(grid, p.A_ell, p.A_hat, Y.dA_ell, Y.dA_hat);
  const OnSigma<double> density = tr_field<G>(X.dE, Y.dA_ell) - tr_field<G>(Y.dE, X.dA_ell) +
                                  grid.gamma_xx() * (tr_field<G>(dFX, Y.dA_hat) - tr_field<G>(dFY, X.dA_hat));
  return grid.integrate_Sigma(density);
}

template <class G>
double omega_AS(const Grid& grid, const AlgSigma<G>& aX, const AlgSigma<G>& aY) {
  const OnSigma<double> density = tr_field<G>(grid.d_u(aX), aY) - tr_field<G>(grid.d_u(aY), aX);
  return grid.gamma_xx() * grid.integrate_Sigma(density);
}

// 2i sum_k int_S gamma^{xx} tr(X~*(k) Y~(k) - Y~*(k) X~(k)) = -4 sum_k int_S gamma^{xx} Im tr(X~* Y~).
template <class G>
double omega_AS_modes(const Grid& grid, const ModeSpectrum<G>& X, const ModeSpectrum<G>& Y, int k_max) {
  double total = 0;
  for (int k = 0; k <= k_max; ++k) {
    OnS<double> density(grid.nx());
    for (int i = 0; i < grid.nx(); ++i) {
      AlgOf<G> re_x, im_x, re_y, im_y;
      for (int c = 0; c < G::dim; ++c) {
        re_x[c] = X.modes[k][i][c].real();
        im_x[c] = X.modes[k][i][c].imag();
        re_y[c] = Y.modes[k][i][c].real();
        im_y[c] = Y.modes[k][i][c].imag();
      }
      density[i] = G::tr(re_x, im_y) - G::tr(im_x, re_y);
    }
    total += -4.0 * grid.gamma_xx() * grid.integrate_S(density);
  }
  return total;
}

// Bound on the modes k_max < k <= X.k_max dropped by omega_AS_modes(.., k_max):
// 4 gamma^{xx} sum_k int_S |X~(k)| |Y~(k)|.
template <class G>
double omega_AS_tail_bound(const Grid& grid, const ModeSpectrum<G>& X, const ModeSpectrum<G>& Y, int k_max) {
  double total = 0;
  for (int k = k_max + 1; k <= std::min(X.k_max, Y.k_max); ++k) {
    OnS<double> density(grid.nx());
    for (int i = 0; i < grid.nx(); ++i) {
      double nx2 = 0, ny2 = 0;
      for (int c = 0; c < G::dim; ++c) {
        nx2 += std::norm(X.modes[k][i][c]);
        ny2 += std::norm(Y.modes[k][i][c]);
      }
      density[i] = std::sqrt(nx2 * ny2);
    }
    total += 4.0 * grid.gamma_xx() * grid.integrate_S(density);
  }
  return total;
}

// int_S tr(dX_e eta_Y - dY_e eta_X - e [eta_X, eta_Y]).
template <class G>
double omega_canonical_S(const Grid& grid, const AlgS<G>& e, const TangentD<G>& X, const TangentD<G>& Y) {
  const OnS<double> density =
      tr_field<G>(X.de, Y.eta) - tr_field<G>(Y.de, X.eta) - tr_field<G>(e, bracket<G>(X.eta, Y.eta));
  return grid.integrate_S(density);
}

template <class G>
double omega_eAS(const Grid& grid, const DressedPoint<G>& d, const TangentD<G>& X, const TangentD<G>& Y) {
  return omega_AS<G>(grid, X.da, Y.da) + omega_canonical_S<G>(grid, d.e, X, Y);
}

}  // namespace nym
