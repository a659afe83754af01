#pragma once

// Sampled fields on S (x-grid) and on Sigma (u-major, x-minor), with the
// pointwise vector-space operations the rest of the library leans on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "nym/errors.hpp"
#include "nym/lie.hpp"

namespace nym {

// Component access shared by the spectral and finite-difference kernels.
template <class T>
struct Components;

template <>
struct Components<double> {
  static constexpr int n = 1;
  static double get(const double& v, int) { return v; }
  static void set(double& v, int, double s) { v = s; }
};

template <>
struct Components<std::complex<double>> {
  static constexpr int n = 2;
  static double get(const std::complex<double>& v, int c) { return c == 0 ? v.real() : v.imag(); }
  static void set(std::complex<double>& v, int c, double s) {
    if (c == 0) {
      v.real(s);
    } else {
      v.imag(s);
    }
  }
};

template <int D>
struct Components<Alg<D>> {
  static constexpr int n = D;
  static double get(const Alg<D>& v, int c) { return v[c]; }
  static void set(Alg<D>& v, int c, double s) { v[c] = s; }
};

template <class T>
double abs_of(const T& v) {
  double m = 0;
  for (int c = 0; c < Components<T>::n; ++c) m = std::max(m, std::abs(Components<T>::get(v, c)));
  return m;
}

template <class T>
struct OnS {
  std::vector<T> v;

  OnS() = default;
  explicit OnS(int nx, T fill = T{}) : v(nx, fill) {}

  int nx() const { return static_cast<int>(v.size()); }
  T& operator[](int i) { return v[i]; }
  const T& operator[](int i) const { return v[i]; }

  OnS& operator+=(const OnS& o) {
    check(o);
    for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
  }
  OnS& operator-=(const OnS& o) {
    check(o);
    for (size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
  }
  OnS& operator*=(double s) {
    for (auto& e : v) e *= s;
    return *this;
  }
  friend OnS operator+(OnS a, const OnS& b) { return a += b; }
  friend OnS operator-(OnS a, const OnS& b) { return a -= b; }
  friend OnS operator-(OnS a) { return a *= -1.0; }
  friend OnS operator*(double s, OnS a) { return a *= s; }

 private:
  void check(const OnS& o) const {
    if (o.v.size() != v.size()) throw ShapeMismatch("OnS sizes differ");
  }
};

template <class T>
struct OnSigma {
  int nu = 0, nx = 0;
  std::vector<T> v;

  OnSigma() = default;
  OnSigma(int nu_, int nx_, T fill = T{}) : nu(nu_), nx(nx_), v(static_cast<size_t>(nu_) * nx_, fill) {}

  T& operator()(int j, int i) { return v[static_cast<size_t>(j) * nx + i]; }
  const T& operator()(int j, int i) const { return v[static_cast<size_t>(j) * nx + i]; }

  OnS<T> slice(int j) const {
    OnS<T> s(nx);
    for (int i = 0; i < nx; ++i) s[i] = (*this)(j, i);
    return s;
  }
  void set_slice(int j, const OnS<T>& s) {
    for (int i = 0; i < nx; ++i) (*this)(j, i) = s[i];
  }
  OnS<T> init() const { return slice(0); }
  OnS<T> fin() const { return slice(nu - 1); }

  std::vector<T> column(int i) const {
    std::vector<T> c(nu);
    for (int j = 0; j < nu; ++j) c[j] = (*this)(j, i);
    return c;
  }

  OnSigma& operator+=(const OnSigma& o) {
    check(o);
    for (size_t k = 0; k < v.size(); ++k) v[k] += o.v[k];
    return *this;
  }
  OnSigma& operator-=(const OnSigma& o) {
    check(o);
    for (size_t k = 0; k < v.size(); ++k) v[k] -= o.v[k];
    return *this;
  }
  OnSigma& operator*=(double s) {
    for (auto& e : v) e *= s;
    return *this;
  }
  friend OnSigma operator+(OnSigma a, const OnSigma& b) { return a += b; }
  friend OnSigma operator-(OnSigma a, const OnSigma& b) { return a -= b; }
  friend OnSigma operator-(OnSigma a) { return a *= -1.0; }
  friend OnSigma operator*(double s, OnSigma a) { return a *= s; }

  // Broadcast a field on S along u.
  static OnSigma constant_in_u(int nu_, const OnS<T>& s) {
    OnSigma f(nu_, s.nx());
    for (int j = 0; j < nu_; ++j) f.set_slice(j, s);
    return f;
  }

 private:
  void check(const OnSigma& o) const {
    if (o.nu != nu || o.nx != nx) throw ShapeMismatch("OnSigma shapes differ");
  }
};

template <class T>
double sup_norm(const OnS<T>& f) {
  double m = 0;
  for (const auto& e : f.v) m = std::max(m, abs_of(e));
  return m;
}

template <class T>
double sup_norm(const OnSigma<T>& f) {
  double m = 0;
  for (const auto& e : f.v) m = std::max(m, abs_of(e));
  return m;
}

template <class T, class F>
auto map(const OnS<T>& f, F&& op) {
  using R = decltype(op(f.v[0]));
  OnS<R> out(f.nx());
  for (int i = 0; i < f.nx(); ++i) out[i] = op(f[i]);
  return out;
}

template <class T, class F>
auto map(const OnSigma<T>& f, F&& op) {
  using R = decltype(op(f.v[0]));
  OnSigma<R> out(f.nu, f.nx);
  for (size_t k = 0; k < f.v.size(); ++k) out.v[k] = op(f.v[k]);
  return out;
}

template <class T, class U, class F>
auto zip(const OnS<T>& f, const OnS<U>& g, F&& op) {
  if (f.nx() != g.nx()) throw ShapeMismatch("zip on S");
  using R = decltype(op(f.v[0], g.v[0]));
  OnS<R> out(f.nx());
  for (int i = 0; i < f.nx(); ++i) out[i] = op(f[i], g[i]);
  return out;
}

template <class T, class U, class F>
auto zip(const OnSigma<T>& f, const OnSigma<U>& g, F&& op) {
  if (f.nu != g.nu || f.nx != g.nx) throw ShapeMismatch("zip on Sigma");
  using R = decltype(op(f.v[0], g.v[0]));
  OnSigma<R> out(f.nu, f.nx);
  for (size_t k = 0; k < f.v.size(); ++k) out.v[k] = op(f.v[k], g.v[k]);
  return out;
}

// Pointwise Lie-algebra operations lifted to fields.
template <class G, class F>
F bracket(const F& X, const F& Y) {
  return zip(X, Y, [](const AlgOf<G>& a, const AlgOf<G>& b) { return G::ad(a, b); });
}

template <class G, class F>
auto tr_field(const F& X, const F& Y) {
  return zip(X, Y, [](const AlgOf<G>& a, const AlgOf<G>& b) { return G::tr(a, b); });
}

template <class G, class GF, class F>
F Ad_field(const GF& g, const F& X) {
  return zip(g, X, [](const typename G::Value& h, const AlgOf<G>& a) { return G::Ad(h, a); });
}

template <class G, class GF, class F>
F Ad_inv_field(const GF& g, const F& X) {
  return zip(g, X, [](const typename G::Value& h, const AlgOf<G>& a) { return G::Ad(G::inv(h), a); });
}

template <class G>
using AlgS = OnS<AlgOf<G>>;
template <class G>
using AlgSigma = OnSigma<AlgOf<G>>;
template <class G>
using GroupS = OnS<typename G::Value>;
template <class G>
using GroupSigma = OnSigma<typename G::Value>;

template <class G>
double group_dist(const GroupS<G>& a, const GroupS<G>& b) {
  double m = 0;
  for (int i = 0; i < a.nx(); ++i) m = std::max(m, G::dist(a[i], b[i]));
  return m;
}

template <class G>
double group_dist(const GroupSigma<G>& a, const GroupSigma<G>& b) {
  double m = 0;
  for (size_t k = 0; k < a.v.size(); ++k) m = std::max(m, G::dist(a.v[k], b.v[k]));
  return m;
}

template <class G, class GF>
GF group_mul(const GF& a, const GF& b) {
  return zip(a, b, [](const typename G::Value& g, const typename G::Value& h) { return G::mul(g, h); });
}

template <class G, class GF>
GF group_inv(const GF& a) {
  return map(a, [](const typename G::Value& g) { return G::inv(g); });
}

template <class G, class F>
auto group_exp(const F& X) {
  return map(X, [](const AlgOf<G>& a) { return G::exp(a); });
}

}  // namespace nym
