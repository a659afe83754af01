#pragma once

// Discretization of Sigma = [-1,1]_u x S^1_x with constant metric r^2.
//
// x: spectral (FFT) derivative and trapezoid quadrature, both exact for
//    band-limited data.
// u: 8th-order finite differences (one-sided closures at the ends), an
//    order-10 Gregory end-corrected trapezoid rule, an 8th-order cumulative
//    integral, and RK4 for the transport equation along l = d_u.

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "nym/errors.hpp"
#include "nym/field.hpp"
#include "nym/lie.hpp"

namespace nym {

namespace detail {

// Fornberg's recursion for first-derivative weights at t = 0 on the nodes t.
inline std::vector<double> derivative_weights(const std::vector<double>& t) {
  const int n = static_cast<int>(t.size());
  std::vector<std::vector<long double>> c(n, std::vector<long double>(2, 0.0L));
  long double c1 = 1.0L, c4 = t[0];
  c[0][0] = 1.0L;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, 1);
    long double c2 = 1.0L;
    const long double c5 = c4;
    c4 = t[i];
    for (int j = 0; j < i; ++j) {
      const long double c3 = static_cast<long double>(t[i]) - t[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = static_cast<double>(c[i][1]);
  return w;
}

// Weights w_k with sum_k w_k f(t_k) = int_a^b p(t) dt for the interpolant p.
inline std::vector<double> interval_weights(const std::vector<double>& t, double a, double b) {
  const int n = static_cast<int>(t.size());
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) {
    std::vector<long double> poly{1.0L};
    long double denom = 1.0L;
    for (int m = 0; m < n; ++m) {
      if (m == k) continue;
      std::vector<long double> next(poly.size() + 1, 0.0L);
      for (size_t q = 0; q < poly.size(); ++q) {
        next[q + 1] += poly[q];
        next[q] -= poly[q] * t[m];
      }
      poly.swap(next);
      denom *= static_cast<long double>(t[k]) - t[m];
    }
    long double integral = 0.0L, pa = a, pb = b;
    for (size_t q = 0; q < poly.size(); ++q) {
      integral += poly[q] * (pb - pa) / static_cast<long double>(q + 1);
      pa *= a;
      pb *= b;
    }
    w[k] = static_cast<double>(integral / denom);
  }
  return w;
}

// Trapezoid weights with Gregory end corrections using differences up to
// order p (unit spacing).
inline std::vector<double> gregory_weights(int n, int p) {
  static const double g[] = {1.0 / 12,           1.0 / 24,           19.0 / 720,
                             3.0 / 160,          863.0 / 60480,      275.0 / 24192,
                             33953.0 / 3628800,  8183.0 / 1036800,   3250433.0 / 479001600,
                             4671.0 / 788480};
  std::vector<double> w(n, 1.0);
  w[0] = w[n - 1] = 0.5;
  for (int k = 1; k <= p; ++k) {
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      if (j > 0) binom = binom * (k - j + 1) / j;
      const double sign_left = ((k + k - j) % 2 == 0) ? 1.0 : -1.0;
      const double sign_right = (j % 2 == 0) ? 1.0 : -1.0;
      w[j] -= g[k - 1] * sign_left * binom;
      w[n - 1 - j] -= g[k - 1] * sign_right * binom;
    }
  }
  return w;
}

template <class T>
T midpoint_cubic(const std::vector<T>& f, int j) {
  // Value at u_j + du/2 from four neighbouring samples.
  const int n = static_cast<int>(f.size());
  if (j == 0) return (5.0 * f[0] + 15.0 * f[1] - 5.0 * f[2] + f[3]) * (1.0 / 16.0);
  if (j == n - 2) return (f[n - 4] - 5.0 * f[n - 3] + 15.0 * f[n - 2] + 5.0 * f[n - 1]) * (1.0 / 16.0);
  return (-1.0 * f[j - 1] + 9.0 * f[j] + 9.0 * f[j + 1] - 1.0 * f[j + 2]) * (1.0 / 16.0);
}

}  // namespace detail

enum class Direction { Forward, Backward };

class Grid {
 public:
  struct Stencil {
    int offset;  // index of the first node relative to the target point
    std::vector<double> w;
  };

  Grid(int nu, int nx, double r = 1.0) : nu_(nu), nx_(nx), r_(r) {
    if (nu < 5 || nu % 2 == 0) throw ConfigError("N_u must be odd and >= 5");
    if (nx < 8 || nx % 2 != 0) throw ConfigError("N_x must be even and >= 8");
    if (!(r > 0)) throw ConfigError("radius must be positive");
    hu_ = 2.0 / (nu - 1);
    hx_ = 2.0 * kPi / nx;
    build_u_calculus();
  }

  int nu() const { return nu_; }
  int nx() const { return nx_; }
  double r() const { return r_; }
  double du() const { return hu_; }
  double dx() const { return hx_; }
  double u(int j) const { return -1.0 + j * hu_; }
  double x(int i) const { return i * hx_; }
  double gamma_xx() const { return 1.0 / (r_ * r_); }

  const Stencil& du_stencil(int j) const { return stencils_[j]; }
  const std::vector<double>& u_weights() const { return wu_; }

  template <class F>
  OnS<double> sample_S(F&& f) const {
    OnS<double> s(nx_);
    for (int i = 0; i < nx_; ++i) s[i] = f(x(i));
    return s;
  }

  template <class F>
  OnSigma<double> sample_Sigma(F&& f) const {
    OnSigma<double> s(nu_, nx_);
    for (int j = 0; j < nu_; ++j)
      for (int i = 0; i < nx_; ++i) s(j, i) = f(u(j), x(i));
    return s;
  }

  // ---- x calculus ----

  template <class T>
  OnS<T> d_x(const OnS<T>& f) const {
    return spectral(f, [](int m) { return std::complex<double>(0.0, m); }, /*keep_nyquist=*/false);
  }

  template <class T>
  OnSigma<T> d_x(const OnSigma<T>& f) const {
    OnSigma<T> out(f.nu, f.nx);
    for (int j = 0; j < f.nu; ++j) out.set_slice(j, d_x(f.slice(j)));
    return out;
  }

  // Delta = r^-2 d_x^2 with symbol -(m/r)^2 on every mode, Nyquist included.
  template <class T>
  OnS<T> laplacian_S(const OnS<T>& f) const {
    const double g = gamma_xx();
    return spectral(f, [g](int m) { return std::complex<double>(-g * m * m, 0.0); }, true);
  }

  template <class T>
  OnS<T> inv_laplacian_S(const OnS<T>& f, double tol_mean = 1e-8) const {
    const T mean = integrate_S(f) * (1.0 / (2.0 * kPi * r_));
    if (abs_of(mean) > tol_mean * sup_norm(f)) throw NonZeroMean("integral over S does not vanish");
    const double r2 = r_ * r_;
    return spectral(
        f, [r2](int m) { return m == 0 ? std::complex<double>(0.0, 0.0) : std::complex<double>(-r2 / (m * m), 0.0); },
        true);
  }

  template <class T>
  T integrate_S(const OnS<T>& f) const {
    T s{};
    for (int i = 0; i < f.nx(); ++i) s += f[i];
    return s * (r_ * hx_);
  }

  // ---- u calculus ----

  template <class T>
  T integrate_u(const std::vector<T>& f) const {
    T s{};
    for (int j = 0; j < nu_; ++j) s += wu_[j] * f[j];
    return s;
  }

  template <class T>
  OnS<T> integrate_u(const OnSigma<T>& f) const {
    OnS<T> out(f.nx);
    for (int j = 0; j < nu_; ++j)
      for (int i = 0; i < f.nx; ++i) out[i] += wu_[j] * f(j, i);
    return out;
  }

  template <class T>
  T integrate_Sigma(const OnSigma<T>& f) const {
    return integrate_S(integrate_u(f));
  }

  template <class T>
  std::vector<T> d_u(const std::vector<T>& f) const {
    std::vector<T> out(nu_);
    for (int j = 0; j < nu_; ++j) {
      const Stencil& s = stencils_[j];
      T acc{};
      for (size_t k = 0; k < s.w.size(); ++k) acc += s.w[k] * f[j + s.offset + static_cast<int>(k)];
      out[j] = acc;
    }
    return out;
  }

  template <class T>
  OnSigma<T> d_u(const OnSigma<T>& f) const {
    OnSigma<T> out(f.nu, f.nx);
    for (int j = 0; j < nu_; ++j) {
      const Stencil& s = stencils_[j];
      for (size_t k = 0; k < s.w.size(); ++k) {
        const int jj = j + s.offset + static_cast<int>(k);
        const double w = s.w[k];
        for (int i = 0; i < f.nx; ++i) out(j, i) += w * f(jj, i);
      }
    }
    return out;
  }

  // F(u) = int_{-1}^u f, sampled on the grid.
  template <class T>
  std::vector<T> antiderivative_u(const std::vector<T>& f) const {
    std::vector<T> out(nu_);
    T acc{};
    out[0] = acc;
    for (int j = 0; j + 1 < nu_; ++j) {
      const Stencil& s = intervals_[j];
      T piece{};
      for (size_t k = 0; k < s.w.size(); ++k) piece += s.w[k] * f[j + s.offset + static_cast<int>(k)];
      acc += piece;
      out[j + 1] = acc;
    }
    return out;
  }

  template <class T>
  OnSigma<T> antiderivative_u(const OnSigma<T>& f) const {
    OnSigma<T> out(f.nu, f.nx);
    for (int j = 0; j + 1 < nu_; ++j) {
      const Stencil& s = intervals_[j];
      for (int i = 0; i < f.nx; ++i) {
        T piece{};
        for (size_t k = 0; k < s.w.size(); ++k) piece += s.w[k] * f(j + s.offset + static_cast<int>(k), i);
        out(j + 1, i) = out(j, i) + piece;
      }
    }
    return out;
  }

 private:
  template <class T, class Symbol>
  OnS<T> spectral(const OnS<T>& f, Symbol&& symbol, bool keep_nyquist) const {
    using C = Components<T>;
    const int n = f.nx();
    thread_local Eigen::FFT<double> fft;
    std::vector<std::complex<double>> in(n), spec(n), back(n);
    OnS<T> out(n);
    for (int c = 0; c < C::n; ++c) {
      for (int i = 0; i < n; ++i) in[i] = C::get(f[i], c);
      fft.fwd(spec, in);
      for (int m = 0; m < n; ++m) {
        int k = m <= n / 2 ? m : m - n;
        if (m == n / 2) {
          if (!keep_nyquist) {
            spec[m] = 0.0;
            continue;
          }
          k = n / 2;
        }
        spec[m] *= symbol(k);
      }
      fft.inv(back, spec);
      for (int i = 0; i < n; ++i) C::set(out[i], c, back[i].real());
    }
    return out;
  }

  void build_u_calculus() {
    const int width = std::min(9, nu_);
    stencils_.resize(nu_);
    for (int j = 0; j < nu_; ++j) {
      const int lo = std::clamp(j - width / 2, 0, nu_ - width);
      std::vector<double> t(width);
      for (int k = 0; k < width; ++k) t[k] = (lo + k - j);
      auto w = detail::derivative_weights(t);
      for (auto& e : w) e /= hu_;
      stencils_[j] = {lo - j, w};
    }

    const int p = std::min(10, nu_ - 1);
    wu_ = detail::gregory_weights(nu_, p);
    for (auto& e : wu_) e *= hu_;

    const int iw = std::min(8, nu_);
    intervals_.resize(nu_ - 1);
    for (int j = 0; j + 1 < nu_; ++j) {
      const int lo = std::clamp(j - (iw / 2 - 1), 0, nu_ - iw);
      std::vector<double> t(iw);
      for (int k = 0; k < iw; ++k) t[k] = (lo + k - j);
      auto w = detail::interval_weights(t, 0.0, 1.0);
      for (auto& e : w) e *= hu_;
      intervals_[j] = {lo - j, w};
    }
  }

  int nu_, nx_;
  double r_, hu_, hx_;
  std::vector<Stencil> stencils_;
  std::vector<Stencil> intervals_;
  std::vector<double> wu_;
};

// RK4 for d_u Y + [coef, Y] = src along each x-column, started from `init` at
// u = -1 (Forward) or u = +1 (Backward), taking `substeps` RK4 steps per
// grid interval. Still fourth order; the substeps shrink the error constant.
template <class G>
AlgSigma<G> transport_ode(const Grid& grid, const AlgSigma<G>& coef, const AlgSigma<G>& src,
                          const AlgS<G>& init, Direction dir, int substeps = 2) {
  using A = AlgOf<G>;
  const int nu = grid.nu(), nx = grid.nx(), S = substeps;
  const int fine_n = 2 * S * (nu - 1) + 1;
  const double h = grid.du() / S;
  // coef and src at every stage node, by 8-point Lagrange interpolation so
  // the interpolant stays well below the RK4 error.
  const int P = std::min(8, nu);
  std::vector<std::array<double, 8>> weights(fine_n);
  std::vector<int> first(fine_n);
  for (int f = 0; f < fine_n; ++f) {
    const int j = f / (2 * S), m = f % (2 * S);
    const double t = j + static_cast<double>(m) / (2 * S);
    first[f] = std::clamp(j - P / 2 + 1, 0, nu - P);
    for (int a = 0; a < P; ++a) {
      double w = 1;
      for (int b = 0; b < P; ++b)
        if (b != a) w *= (t - (first[f] + b)) / static_cast<double>(a - b);
      weights[f][a] = w;
    }
  }
  AlgSigma<G> Y(nu, nx);
  std::vector<A> c(fine_n), s(fine_n);
  for (int i = 0; i < nx; ++i) {
    for (int f = 0; f < fine_n; ++f) {
      const int j = f / (2 * S);
      if (f % (2 * S) == 0) {
        c[f] = coef(j, i);
        s[f] = src(j, i);
        continue;
      }
      A cc{}, ss{};
      for (int a = 0; a < P; ++a) {
        cc += weights[f][a] * coef(first[f] + a, i);
        ss += weights[f][a] * src(first[f] + a, i);
      }
      c[f] = cc;
      s[f] = ss;
    }
    auto rhs = [&](int f, const A& y) { return s[f] - G::ad(c[f], y); };
    const int steps = S * (nu - 1);
    if (dir == Direction::Forward) {
      A y = init[i];
      Y(0, i) = y;
      for (int n = 0; n < steps; ++n) {
        const int f = 2 * n;
        const A k1 = rhs(f, y);
        const A k2 = rhs(f + 1, y + (0.5 * h) * k1);
        const A k3 = rhs(f + 1, y + (0.5 * h) * k2);
        const A k4 = rhs(f + 2, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((n + 1) % S == 0) Y((n + 1) / S, i) = y;
      }
    } else {
      A y = init[i];
      Y(nu - 1, i) = y;
      for (int n = steps; n > 0; --n) {
        const int f = 2 * n;
        const A k1 = rhs(f, y);
        const A k2 = rhs(f - 1, y - (0.5 * h) * k1);
        const A k3 = rhs(f - 1, y - (0.5 * h) * k2);
        const A k4 = rhs(f - 2, y - h * k3);
        y -= (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((n - 1) % S == 0) Y((n - 1) / S, i) = y;
      }
    }
  }
  return Y;
}

}  // namespace nym
