#pragma once

// Structure groups R, U(1) and SU(2) with closed-form exp/log, adjoint
// actions and the invariant form tr. Algebra elements are coefficient
// vectors in a fixed basis tau_a; for SU(2) tau_a = -(i/2) sigma_a, which
// makes [tau_1, tau_2] = tau_3 and, after rescaling, tr(tau_a tau_b) = delta.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "nym/errors.hpp"

namespace nym {

enum class GroupKind { RealLine, CircleU1, SU2 };

inline constexpr double kPi = 3.14159265358979323846;

// Distance to the branch cut below which log refuses to answer.
inline constexpr double kBranchCutTol = 1e-9;

template <int D>
struct Alg {
  std::array<double, D> c{};

  double& operator[](int a) { return c[a]; }
  double operator[](int a) const { return c[a]; }

  Alg& operator+=(const Alg& o) {
    for (int a = 0; a < D; ++a) c[a] += o.c[a];
    return *this;
  }
  Alg& operator-=(const Alg& o) {
    for (int a = 0; a < D; ++a) c[a] -= o.c[a];
    return *this;
  }
  Alg& operator*=(double s) {
    for (int a = 0; a < D; ++a) c[a] *= s;
    return *this;
  }
  friend Alg operator+(Alg x, const Alg& y) { return x += y; }
  friend Alg operator-(Alg x, const Alg& y) { return x -= y; }
  friend Alg operator-(Alg x) { return x *= -1.0; }
  friend Alg operator*(double s, Alg x) { return x *= s; }
  friend Alg operator*(Alg x, double s) { return x *= s; }
  friend Alg operator/(Alg x, double s) { return x *= 1.0 / s; }
  friend bool operator==(const Alg& x, const Alg& y) { return x.c == y.c; }
};

template <int D>
double max_abs(const Alg<D>& x) {
  double m = 0;
  for (int a = 0; a < D; ++a) m = std::max(m, std::abs(x[a]));
  return m;
}

template <int D>
double euclid_norm(const Alg<D>& x) {
  double s = 0;
  for (int a = 0; a < D; ++a) s += x[a] * x[a];
  return std::sqrt(s);
}

struct Quat {
  double w = 1, x = 0, y = 0, z = 0;

  friend Quat operator*(const Quat& p, const Quat& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }
  Quat conj() const { return {w, -x, -y, -z}; }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  Quat normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }
};

// Runtime description of a group, for reports and invariant checks.
struct GroupSpec {
  GroupKind kind;
  int dim_g;
  std::vector<std::string> basis;
  std::vector<std::vector<double>> gram;
};

struct RealLine {
  static constexpr GroupKind kind = GroupKind::RealLine;
  static constexpr int dim = 1;
  static constexpr bool abelian = true;
  static constexpr const char* name = "r";
  // Components of the group element used for spectral differentiation.
  static constexpr int n_embed = 1;
  using A = Alg<1>;
  // The additive group: the element exp(t tau) is stored as t.
  using Value = double;

  static Value identity() { return 0.0; }
  static Value exp(const A& X) { return X[0]; }
  static A log(Value g) { return A{{g}}; }
  static Value mul(Value g, Value h) { return g + h; }
  static Value inv(Value g) { return -g; }
  static A ad(const A&, const A&) { return A{}; }
  static A Ad(Value, const A& X) { return X; }
  static double tr(const A& X, const A& Y) { return X[0] * Y[0]; }
  static double dist(Value g, Value h) { return std::abs(g - h); }
  static bool is_normalized(Value g, double) { return std::isfinite(g); }

  static std::array<double, 1> embed(Value g) { return {g}; }
  static A left_trivialize(Value, const std::array<double, 1>& dg) { return A{{dg[0]}}; }
};

struct CircleU1 {
  static constexpr GroupKind kind = GroupKind::CircleU1;
  static constexpr int dim = 1;
  static constexpr bool abelian = true;
  static constexpr const char* name = "u1";
  static constexpr int n_embed = 2;
  using A = Alg<1>;
  using Value = std::complex<double>;

  static Value identity() { return {1.0, 0.0}; }
  static Value exp(const A& X) { return std::polar(1.0, X[0]); }
  static A log(Value g) {
    if (std::abs(g + 1.0) < kBranchCutTol) throw BranchCut("U(1) element at -1");
    return A{{std::arg(g)}};
  }
  static Value mul(Value g, Value h) {
    const Value p = g * h;
    return p / std::abs(p);
  }
  static Value inv(Value g) { return std::conj(g); }
  static A ad(const A&, const A&) { return A{}; }
  static A Ad(Value, const A& X) { return X; }
  static double tr(const A& X, const A& Y) { return X[0] * Y[0]; }
  static double dist(Value g, Value h) { return std::abs(g - h); }
  static bool is_normalized(Value g, double tol) { return std::abs(std::abs(g) - 1.0) <= tol; }

  static std::array<double, 2> embed(Value g) { return {g.real(), g.imag()}; }
  // g^{-1} dg = i theta'; the tau = i coefficient is Im(conj(g) dg).
  static A left_trivialize(Value g, const std::array<double, 2>& dg) {
    return A{{(std::conj(g) * Value(dg[0], dg[1])).imag()}};
  }
};

struct SU2 {
  static constexpr GroupKind kind = GroupKind::SU2;
  static constexpr int dim = 3;
  static constexpr bool abelian = false;
  static constexpr const char* name = "su2";
  static constexpr int n_embed = 4;
  using A = Alg<3>;
  // Unit quaternion; the quaternion units i, j, k are -i sigma_{1,2,3}, so the
  // algebra element sum_a x_a tau_a is the pure quaternion x/2.
  using Value = Quat;

  static Value identity() { return {}; }

  static Value exp(const A& X) {
    const double th = euclid_norm(X);
    if (th < 1e-12) return Quat{1.0, 0.5 * X[0], 0.5 * X[1], 0.5 * X[2]}.normalized();
    const double s = std::sin(0.5 * th) / th;
    return {std::cos(0.5 * th), s * X[0], s * X[1], s * X[2]};
  }

  static A log(Value g) {
    g = g.normalized();
    const double d = std::sqrt((g.w + 1) * (g.w + 1) + g.x * g.x + g.y * g.y + g.z * g.z);
    if (d < kBranchCutTol) throw BranchCut("SU(2) element at -1");
    const double s = std::sqrt(g.x * g.x + g.y * g.y + g.z * g.z);
    double f;
    if (s < 1e-8 && g.w > 0) {
      f = (2.0 / g.w) * (1.0 - s * s / (3.0 * g.w * g.w));
    } else {
      f = 2.0 * std::atan2(s, g.w) / s;
    }
    return A{{f * g.x, f * g.y, f * g.z}};
  }

  static Value mul(const Value& g, const Value& h) { return (g * h).normalized(); }
  static Value inv(const Value& g) { return g.conj(); }

  static A ad(const A& X, const A& Y) {
    return A{{X[1] * Y[2] - X[2] * Y[1], X[2] * Y[0] - X[0] * Y[2], X[0] * Y[1] - X[1] * Y[0]}};
  }

  static A Ad(const Value& g, const A& X) {
    const Quat v = g * Quat{0.0, X[0], X[1], X[2]} * g.conj();
    return A{{v.x, v.y, v.z}};
  }

  static double tr(const A& X, const A& Y) { return X[0] * Y[0] + X[1] * Y[1] + X[2] * Y[2]; }

  static double dist(const Value& g, const Value& h) {
    const double dw = g.w - h.w, dx = g.x - h.x, dy = g.y - h.y, dz = g.z - h.z;
    return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
  }
  static bool is_normalized(const Value& g, double tol) { return std::abs(g.norm() - 1.0) <= tol; }

  static std::array<double, 4> embed(const Value& g) { return {g.w, g.x, g.y, g.z}; }
  static A left_trivialize(const Value& g, const std::array<double, 4>& dg) {
    const Quat v = g.conj() * Quat{dg[0], dg[1], dg[2], dg[3]};
    return A{{2.0 * v.x, 2.0 * v.y, 2.0 * v.z}};
  }
};

template <class G>
using AlgOf = typename G::A;

template <class G>
GroupSpec group_spec() {
  GroupSpec s{G::kind, G::dim, {}, {}};
  if constexpr (G::kind == GroupKind::RealLine) {
    s.basis = {"1"};
  } else if constexpr (G::kind == GroupKind::CircleU1) {
    s.basis = {"i"};
  } else {
    s.basis = {"-i/2 sigma_1", "-i/2 sigma_2", "-i/2 sigma_3"};
  }
  s.gram.assign(G::dim, std::vector<double>(G::dim, 0.0));
  for (int a = 0; a < G::dim; ++a) {
    for (int b = 0; b < G::dim; ++b) {
      AlgOf<G> ea{}, eb{};
      ea[a] = 1;
      eb[b] = 1;
      s.gram[a][b] = G::tr(ea, eb);
    }
  }
  return s;
}

template <class G>
AlgOf<G> basis_element(int a) {
  AlgOf<G> e{};
  e[a] = 1.0;
  return e;
}

}  // namespace nym
