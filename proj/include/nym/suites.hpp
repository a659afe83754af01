#pragma once

// The acceptance criteria as seeded, self-contained checks. Each criterion
// draws from its own generator stream, so criteria can run in any order or
// concurrently and still reproduce bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "nym/constraint.hpp"
#include "nym/dressing.hpp"
#include "nym/errors.hpp"
#include "nym/fields.hpp"
#include "nym/grid.hpp"
#include "nym/modes.hpp"
#include "nym/random.hpp"
#include "nym/reduction.hpp"

namespace nym {

struct SuiteConfig {
  int nu = 201, nx = 64, k_max = 8;
  double radius = 1.0;
  std::uint64_t seed = 7;
  // Base draw count; criteria with costlier samples use a fixed fraction.
  int draws = 100;
  FieldSpec field{};
  // Gauge transformations are drawn smoother than the fields they act on.
  FieldSpec gauge{.decay = 2.0};
  std::map<std::string, double> tol;

  double tol_or(const std::string& name, double fallback) const {
    const auto it = tol.find(name);
    return it == tol.end() ? fallback : it->second;
  }
  int scaled_draws(int per_hundred) const { return std::max(1, draws * per_hundred / 100); }
};

struct CheckResult {
  std::string name, anchor;
  double max_abs_err = 0, tol = 0;
  int n_samples = 0;
  bool relative = false;
  bool pass = false;
  std::string note;
};

struct Criterion {
  int id = 0;
  std::string title;
  bool applicable = true;
  std::vector<CheckResult> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

inline constexpr int kCriterionCount = 14;

inline const char* criterion_title(int id) {
  static const char* titles[kCriterionCount] = {
      "basis orthonormality",         "zero-mode identity",        "mode-diagonal symplectic form",
      "Gauss solver",                 "momentum split",            "Hamiltonian flow (unreduced)",
      "dressing symplectomorphism",   "dressing fibre",            "reduced momentum map",
      "winding number",               "memory",                    "non-Abelian flux mode identity",
      "Abelian trivialization round trip", "sector labels"};
  return (id >= 1 && id <= kCriterionCount) ? titles[id - 1] : "unknown";
}

// Worst error over samples; NaN poisons the result.
struct ErrorTally {
  double err = 0;
  int n = 0;
  bool nan = false;
  void add(double e) {
    if (std::isnan(e)) nan = true;
    err = std::max(err, e);
    ++n;
  }
};

inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

inline CheckResult make_check(const SuiteConfig& cfg, std::string name, std::string anchor, const ErrorTally& w, double tol,
                          bool relative, std::string note = {}) {
  CheckResult c;
  c.tol = cfg.tol_or(name, tol);
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.max_abs_err = w.nan ? std::numeric_limits<double>::quiet_NaN() : w.err;
  c.n_samples = w.n;
  c.relative = relative;
  c.pass = !w.nan && c.max_abs_err <= c.tol;
  c.note = std::move(note);
  return c;
}

// Runs body; a library error becomes a failed check rather than a crash.
inline CheckResult guarded_check(const SuiteConfig& cfg, const std::string& name, const std::string& anchor, double tol,
                           const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    CheckResult c;
    c.name = name;
    c.anchor = anchor;
    c.tol = cfg.tol_or(name, tol);
    c.max_abs_err = std::numeric_limits<double>::infinity();
    c.note = e.what();
    return c;
  }
}

// Short names for selecting criteria from a config.
inline const char* criterion_key(int id) {
  static const char* keys[kCriterionCount] = {
      "basis",      "zero_mode", "mode_form", "gauss",     "momentum_split", "flow",           "symplectomorphism",
      "fibre",      "reduced_map", "winding", "memory",    "flux_modes",     "trivialization", "sectors"};
  return (id >= 1 && id <= kCriterionCount) ? keys[id - 1] : "unknown";
}

inline int criterion_id(const std::string& key) {
  for (int id = 1; id <= kCriterionCount; ++id)
    if (key == criterion_key(id)) return id;
  throw ConfigError("unknown suite '" + key + "'");
}

namespace detail {

template <class G>
constexpr std::uint64_t group_stream() {
  return static_cast<std::uint64_t>(G::kind) + 1;
}

template <class G>
SplitMix64 stream(const SuiteConfig& cfg, int criterion, int sub = 0) {
  return SplitMix64(cfg.seed, (static_cast<std::uint64_t>(criterion) << 16) | (group_stream<G>() << 8) |
                                   static_cast<std::uint64_t>(sub));
}

inline Grid make_grid(const SuiteConfig& cfg) { return Grid(cfg.nu, cfg.nx, cfg.radius); }

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace detail

template <class G>
Criterion criterion_basis(const SuiteConfig& cfg) {
  Criterion out{1, criterion_title(1), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "basis_orthonormality", "modes/psi-basis", 1e-9, [&] {
    ErrorTally w;
    for (int k = 0; k <= cfg.k_max; ++k) {
      const auto pk = psi_profile(g, k), dk = psi_dot_profile(g, k);
      for (int l = 0; l <= cfg.k_max; ++l) {
        auto pl = psi_profile(g, l), dl = psi_dot_profile(g, l);
        w.add(std::abs(g_pair(g, pk, dk, pl, dl) - Cplx(k == l ? 1.0 : 0.0, 0.0)));
        for (auto& z : pl) z = std::conj(z);
        for (auto& z : dl) z = std::conj(z);
        w.add(std::abs(g_pair(g, pk, dk, pl, dl)));
      }
    }
    return make_check(cfg, "basis_orthonormality", "modes/psi-basis", w, 1e-9, false);
  }));
  return out;
}

template <class G>
Criterion criterion_zero_mode(const SuiteConfig& cfg) {
  Criterion out{2, criterion_title(2), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "zero_mode_identity", "modes/zero-mode", 1e-8, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 2);
    ErrorTally w;
    for (int n = 0; n < cfg.draws; ++n) {
      const AlgSigma<G> a = random_sigma<G>(g, rng, cfg.field);
      const ModeSpectrum<G> s = mode_decompose<G>(g, a, 0);
      const auto b = boundary_functionals(g, a);
      w.add(std::max(sup_norm(s.re2(0) - (b.integral - b.avg)), sup_norm(s.im2(0) - b.diff)));
    }
    return make_check(cfg, "zero_mode_identity", "modes/zero-mode", w, 1e-8, false);
  }));
  return out;
}

template <class G>
Criterion criterion_mode_form(const SuiteConfig& cfg) {
  Criterion out{3, criterion_title(3), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "mode_diagonal_form", "modes/omega-AS", 1e-7, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 3);
    const int k_ref = std::max(cfg.k_max, cfg.field.k_gen) + 8;
    ErrorTally w;
    double worst_bound = 0, worst_raw = 0;
    for (int n = 0; n < cfg.draws; ++n) {
      const AlgSigma<G> aX = random_sigma<G>(g, rng, cfg.field), aY = random_sigma<G>(g, rng, cfg.field);
      const ModeSpectrum<G> X = mode_decompose<G>(g, aX, k_ref), Y = mode_decompose<G>(g, aY, k_ref);
      const double direct = omega_AS<G>(g, aX, aY);
      const double modes = omega_AS_modes<G>(g, X, Y, cfg.k_max);
      const double bound = omega_AS_tail_bound<G>(g, X, Y, cfg.k_max);
      const double scale = std::max(1.0, std::abs(direct));
      worst_bound = std::max(worst_bound, bound / scale);
      worst_raw = std::max(worst_raw, std::abs(direct - modes) / scale);
      // Excess over the truncation bound, relative to the form's size.
      w.add(std::max(0.0, std::abs(direct - modes) - bound) / scale);
    }
    return make_check(cfg, "mode_diagonal_form", "modes/omega-AS", w, 1e-7, true,
                          "raw gap " + detail::sci(worst_raw) + ", truncation bound " + detail::sci(worst_bound));
  }));
  return out;
}

namespace detail {

// Observed order of solve_gauss on smooth analytic data, from errors on
// nested grids against a fine reference.
template <class G>
double gauss_convergence_order(int nx) {
  auto sample = [&](int nu) {
    const Grid g(nu, nx);
    AlgSigma<G> al(g.nu(), g.nx()), ah(g.nu(), g.nx());
    for (int j = 0; j < g.nu(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        for (int c = 0; c < G::dim; ++c) {
          const double u = g.u(j), x = g.x(i) + c;
          al(j, i)[c] = std::sin(2 * u + x) + 0.3 * u * std::cos(2 * x);
          ah(j, i)[c] = std::cos(3 * u) * std::sin(x - 2 * c) + 0.5 * u * u;
        }
    AlgS<G> e0(g.nx());
    for (int i = 0; i < g.nx(); ++i)
      for (int c = 0; c < G::dim; ++c) e0[i][c] = 1.0 - 0.5 * c + 0.2 * std::cos(g.x(i));
    return solve_gauss<G>(g, al, ah, e0, {.tol_cross = 1.0}).E_solved;
  };
  const int fine = 1601;
  const AlgSigma<G> ref = sample(fine);
  std::vector<double> err;
  for (int nu : {51, 101, 201}) {
    const AlgSigma<G> E = sample(nu);
    const int stride = (fine - 1) / (nu - 1);
    double e = 0;
    for (int j = 0; j < nu; ++j)
      for (int i = 0; i < nx; ++i) e = std::max(e, max_abs(E(j, i) - ref(j * stride, i)));
    err.push_back(e);
  }
  double order = std::numeric_limits<double>::infinity();
  for (size_t n = 0; n + 1 < err.size(); ++n) order = std::min(order, std::log2(err[n] / err[n + 1]));
  return order;
}

}  // namespace detail

template <class G>
Criterion criterion_gauss(const SuiteConfig& cfg) {
  Criterion out{4, criterion_title(4), true, {}};
  const Grid g = detail::make_grid(cfg);
  if constexpr (G::abelian) {
    out.checks.push_back(guarded_check(cfg, "gauss_abelian_closed_form", "constraint/solve-gauss", 1e-6, [&] {
      SplitMix64 rng = detail::stream<G>(cfg, 4);
      ErrorTally w;
      for (int n = 0; n < cfg.draws; ++n) {
        const AlgSigma<G> A_ell = random_sigma<G>(g, rng, cfg.field), A_hat = random_sigma<G>(g, rng, cfg.field);
        const AlgS<G> Ei = random_S<G>(g, rng, cfg.field);
        const auto c = solve_gauss<G>(g, A_ell, A_hat, Ei, {.tol_cross = std::numeric_limits<double>::infinity()});
        const AlgSigma<G> src = -divergence_F<G>(g, A_hat, curvature_Fl<G>(g, A_ell, A_hat));
        const AlgSigma<G> closed = AlgSigma<G>::constant_in_u(g.nu(), Ei) + g.antiderivative_u(src);
        const double scale = std::max({sup_norm(closed), 2.0 * sup_norm(src), 1e-300});
        w.add(sup_norm(closed - c.E_solved) / scale);
      }
      return make_check(cfg, "gauss_abelian_closed_form", "constraint/solve-gauss", w, 1e-6, true);
    }));
  } else {
    out.checks.push_back(guarded_check(cfg, "gauss_su2_constant", "constraint/solve-gauss", 1e-8, [&] {
      ErrorTally w;
      for (double th : {0.3, 0.7, 1.9}) {
        AlgSigma<G> A_ell(g.nu(), g.nx(), AlgOf<G>{{0.0, 0.0, th}});
        const auto c = solve_gauss<G>(g, A_ell, AlgSigma<G>(g.nu(), g.nx()), AlgS<G>(g.nx(), basis_element<G>(0)));
        for (int j = 0; j < g.nu(); ++j) {
          const AlgOf<G> exact = G::Ad(G::exp(-(g.u(j) + 1) * th * basis_element<G>(2)), basis_element<G>(0));
          for (int i = 0; i < g.nx(); ++i) w.add(max_abs(c.E_solved(j, i) - exact));
        }
      }
      return make_check(cfg, "gauss_su2_constant", "constraint/solve-gauss", w, 1e-8, false);
    }));
  }
  out.checks.push_back(guarded_check(cfg, "gauss_convergence_order", "grid/transport-ode", 0.25, [&] {
    ErrorTally w;
    const double order = detail::gauss_convergence_order<G>(16);
    w.add(std::max(0.0, 4.0 - order));
    return make_check(cfg, "gauss_convergence_order", "grid/transport-ode", w, 0.25, false,
                          "observed order " + detail::sci(order));
  }));
  return out;
}

template <class G>
Criterion criterion_momentum_split(const SuiteConfig& cfg) {
  Criterion out{5, criterion_title(5), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "momentum_split_off_shell", "constraint/momentum-split", 1e-7, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 5, 0);
    ErrorTally w;
    for (int n = 0; n < cfg.draws; ++n) {
      const auto p = random_phase_point<G>(g, rng, cfg.field);
      const auto xi = random_sigma<G>(g, rng, cfg.field);
      const double H = momentum_pairing<G>(g, p, xi), H0 = constraint_pairing<G>(g, p, xi), h = flux_pairing<G>(g, p, xi);
      w.add(std::abs(H - H0 - h) / std::max({std::abs(H), std::abs(H0), std::abs(h)}));
    }
    return make_check(cfg, "momentum_split_off_shell", "constraint/momentum-split", w, 1e-7, true);
  }));
  out.checks.push_back(guarded_check(cfg, "momentum_split_on_shell", "constraint/momentum-split", 1e-7, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 5, 1);
    ErrorTally w;
    for (int n = 0; n < cfg.draws; ++n) {
      const auto c = random_on_shell<G>(g, rng, cfg.field);
      const auto xi = random_sigma<G>(g, rng, cfg.field);
      const auto p = c.phase_point();
      w.add(rel_err(momentum_pairing<G>(g, p, xi), flux_pairing<G>(g, p, xi)));
    }
    return make_check(cfg, "momentum_split_on_shell", "constraint/momentum-split", w, 1e-7, true);
  }));
  return out;
}

template <class G>
Criterion criterion_flow(const SuiteConfig& cfg) {
  Criterion out{6, criterion_title(6), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "hamiltonian_flow", "constraint/flow-equation", 1e-5, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 6);
    ErrorTally w;
    const double s = 1e-4;
    for (int n = 0; n < cfg.draws; ++n) {
      const auto p = random_phase_point<G>(g, rng, cfg.field);
      const auto xi = random_sigma<G>(g, rng, cfg.field);
      const auto Y = random_tangent<G>(g, rng, cfg.field);
      const double D =
          (momentum_pairing<G>(g, displaced(p, Y, s), xi) - momentum_pairing<G>(g, displaced(p, Y, -s), xi)) / (2 * s);
      w.add(rel_err(omega_nYM<G>(g, p, inf_gauge<G>(g, p, xi), Y), D));
    }
    return make_check(cfg, "hamiltonian_flow", "constraint/flow-equation", w, 1e-5, true);
  }));
  return out;
}

template <class G>
Criterion criterion_symplectomorphism(const SuiteConfig& cfg) {
  Criterion out{7, criterion_title(7), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "dressing_symplectomorphism", "dressing/pullback-form", 1e-4, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 7);
    ErrorTally w;
    for (int n = 0; n < cfg.scaled_draws(50); ++n) {
      const auto c = random_on_shell<G>(g, rng, cfg.field);
      const auto t1 = random_tangent_c<G>(g, rng, cfg.field), t2 = random_tangent_c<G>(g, rng, cfg.field);
      const double lhs = omega_nYM<G>(g, c.phase_point(), lift_tangent<G>(g, c, t1), lift_tangent<G>(g, c, t2));
      const double rhs = omega_eAS<G>(g, dress<G>(g, c), dress_pushforward<G>(g, c, t1), dress_pushforward<G>(g, c, t2));
      w.add(rel_err(lhs, rhs));
    }
    return make_check(cfg, "dressing_symplectomorphism", "dressing/pullback-form", w, 1e-4, true);
  }));
  return out;
}

namespace detail {

template <class G>
double dressed_gap(const DressedPoint<G>& a, const DressedPoint<G>& b) {
  return std::max({sup_norm(a.a - b.a), group_dist<G>(a.Lambda, b.Lambda), sup_norm(a.e - b.e)});
}

}  // namespace detail

template <class G>
Criterion criterion_fibre(const SuiteConfig& cfg) {
  Criterion out{8, criterion_title(8), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "dressing_relative_invariance", "dressing/relative-fibre", 1e-7, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 8, 0);
    const auto c = random_on_shell<G>(g, rng, cfg.field);
    const auto d = dress<G>(g, c);
    ErrorTally w;
    for (int n = 0; n < cfg.scaled_draws(20); ++n) {
      const auto gr = random_relative_gauge<G>(g, rng, cfg.gauge);
      w.add(detail::dressed_gap(dress<G>(g, gauge_transform<G>(g, c, gr)), d));
    }
    return make_check(cfg, "dressing_relative_invariance", "dressing/relative-fibre", w, 1e-7, false);
  }));
  out.checks.push_back(guarded_check(cfg, "dressing_bilocal_equivariance", "reduction/residual-action", 1e-7, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 8, 1);
    const auto c = random_on_shell<G>(g, rng, cfg.field);
    const auto d = dress<G>(g, c);
    ErrorTally w;
    for (int n = 0; n < cfg.scaled_draws(20); ++n) {
      const auto gf = random_gauge<G>(g, rng, cfg.gauge);
      const auto lhs = dress<G>(g, gauge_transform<G>(g, c, gf));
      w.add(detail::dressed_gap(lhs, residual_transform<G>(g, d, gf.init(), gf.fin())));
    }
    return make_check(cfg, "dressing_bilocal_equivariance", "reduction/residual-action", w, 1e-7, false);
  }));
  return out;
}

template <class G>
Criterion criterion_reduced_map(const SuiteConfig& cfg) {
  Criterion out{9, criterion_title(9), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "reduced_flux_pullback", "reduction/reduced-flux", 1e-6, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 9, 0);
    ErrorTally w;
    for (int n = 0; n < cfg.draws; ++n) {
      const auto c = random_on_shell<G>(g, rng, cfg.field);
      const auto xi = random_sigma<G>(g, rng, cfg.field);
      w.add(rel_err(reduced_flux<G>(g, dress<G>(g, c), xi.init(), xi.fin()),
                            flux_pairing<G>(g, c.phase_point(), xi)));
    }
    return make_check(cfg, "reduced_flux_pullback", "reduction/reduced-flux", w, 1e-6, true);
  }));
  out.checks.push_back(guarded_check(cfg, "reduced_hamiltonian_flow", "reduction/reduced-flux", 1e-5, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 9, 1);
    ErrorTally w;
    for (int n = 0; n < cfg.draws; ++n) {
      DressedPoint<G> d;
      d.a = random_sigma<G>(g, rng, cfg.field);
      d.Lambda = group_exp<G>(random_S<G>(g, rng, cfg.field));
      d.e = random_S<G>(g, rng, cfg.field);
      const AlgS<G> xi_i = random_S<G>(g, rng, cfg.field), xi_f = random_S<G>(g, rng, cfg.field);
      const TangentD<G> Y{random_sigma<G>(g, rng, cfg.field), random_S<G>(g, rng, cfg.field),
                          random_S<G>(g, rng, cfg.field)};
      const FlowResidual r = hamiltonian_check<G>(g, d, xi_i, xi_f, Y);
      w.add(r.scale == 0 ? 0.0 : r.residual / r.scale);
    }
    return make_check(cfg, "reduced_hamiltonian_flow", "reduction/reduced-flux", w, 1e-5, true);
  }));
  return out;
}

template <class G>
Criterion criterion_winding(const SuiteConfig& cfg) {
  Criterion out{10, criterion_title(10), true, {}};
  if constexpr (G::kind != GroupKind::CircleU1) {
    out.applicable = false;
    return out;
  } else {
    const Grid g = detail::make_grid(cfg);
    auto g_n = [&](int n) {
      GroupSigma<G> f(g.nu(), g.nx());
      for (int j = 0; j < g.nu(); ++j)
        for (int i = 0; i < g.nx(); ++i) f(j, i) = -std::polar(1.0, kPi * n * g.u(j));
      return f;
    };
    out.checks.push_back(guarded_check(cfg, "winding_lattice", "dressing/winding", 1e-6, [&] {
      ErrorTally w;
      for (int n = -3; n <= 3; ++n) w.add(std::abs(winding<G>(g, g_n(n)).w[0] - n));
      return make_check(cfg, "winding_lattice", "dressing/winding", w, 1e-6, false);
    }));
    out.checks.push_back(guarded_check(cfg, "winding_additivity", "dressing/winding", 1e-6, [&] {
      SplitMix64 rng = detail::stream<G>(cfg, 10);
      ErrorTally w;
      for (int n = 0; n < cfg.scaled_draws(50); ++n) {
        const int n1 = static_cast<int>(std::lround(3 * rng.symmetric()));
        const int n2 = static_cast<int>(std::lround(3 * rng.symmetric()));
        const auto g1 = group_mul<G>(g_n(n1), random_relative_gauge<G>(g, rng, cfg.field));
        const auto g2 = group_mul<G>(g_n(n2), random_relative_gauge<G>(g, rng, cfg.field));
        const double w1 = winding<G>(g, g1).w[0], w2 = winding<G>(g, g2).w[0];
        w.add(std::max({std::abs(winding<G>(g, group_mul<G>(g1, g2)).w[0] - w1 - w2), std::abs(w1 - n1),
                        std::abs(w2 - n2)}));
      }
      return make_check(cfg, "winding_additivity", "dressing/winding", w, 1e-6, false);
    }));
    return out;
  }
}

template <class G>
Criterion criterion_memory(const SuiteConfig& cfg) {
  Criterion out{11, criterion_title(11), true, {}};
  if constexpr (!G::abelian) {
    out.applicable = false;
    return out;
  } else {
    const Grid g = detail::make_grid(cfg);
    SplitMix64 rng = detail::stream<G>(cfg, 11);
    std::vector<OnShellPoint<G>> points;
    for (int n = 0; n < cfg.draws; ++n) points.push_back(random_on_shell<G>(g, rng, cfg.field));
    out.checks.push_back(guarded_check(cfg, "memory_routes", "reduction/abelian-memory", 1e-7, [&] {
      ErrorTally w;
      for (const auto& c : points) w.add(memory_abelian<G>(g, c).gap);
      return make_check(cfg, "memory_routes", "reduction/abelian-memory", w, 1e-7, false);
    }));
    out.checks.push_back(guarded_check(cfg, "abelian_net_flux", "constraint/flux-pair", 1e-7, [&] {
      ErrorTally w;
      for (const auto& c : points) w.add(std::abs(g.integrate_S(flux_pair(c).E_diff())[0]));
      return make_check(cfg, "abelian_net_flux", "constraint/flux-pair", w, 1e-7, false);
    }));
    return out;
  }
}

template <class G>
Criterion criterion_flux_modes(const SuiteConfig& cfg) {
  Criterion out{12, criterion_title(12), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "flux_mode_identity", "reduction/flux-modes", 1e-6, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 12);
    const int k_ref = std::max(cfg.k_max, cfg.field.k_gen) + 8;
    ErrorTally w;
    double worst_bound = 0, worst_raw = 0;
    for (int n = 0; n < cfg.draws; ++n) {
      const AlgSigma<G> a = random_sigma<G>(g, rng, cfg.field);
      const auto r = nonab_flux_mode_identity<G>(g, a, cfg.k_max);
      // The dropped modes contribute at most the sum of their commutators.
      const ModeSpectrum<G> s = mode_decompose<G>(g, a, k_ref);
      double bound = 0;
      for (int k = cfg.k_max + 1; k <= k_ref; ++k) bound += g.gamma_xx() * sup_norm(bracket<G>(s.re2(k), s.im2(k)));
      worst_bound = std::max(worst_bound, bound);
      worst_raw = std::max(worst_raw, r.max_err);
      w.add(std::max(0.0, r.max_err - bound));
    }
    return make_check(cfg, "flux_mode_identity", "reduction/flux-modes", w, 1e-6, false,
                          "raw gap " + detail::sci(worst_raw) + ", truncation bound " + detail::sci(worst_bound));
  }));
  return out;
}

template <class G>
Criterion criterion_trivialization(const SuiteConfig& cfg) {
  Criterion out{13, criterion_title(13), true, {}};
  if constexpr (!G::abelian) {
    out.applicable = false;
    return out;
  } else {
    const Grid g = detail::make_grid(cfg);
    out.checks.push_back(guarded_check(cfg, "trivialization_round_trip", "dressing/abelian-trivialization", 1e-9, [&] {
      SplitMix64 rng = detail::stream<G>(cfg, 13);
      ErrorTally w;
      for (int n = 0; n < cfg.scaled_draws(50); ++n) {
        const auto c = random_on_shell<G>(g, rng, cfg.field);
        const auto t = abelian_trivialize<G>(g, c);
        const auto back = abelian_untrivialize<G>(g, t.point, t.U_rel);
        w.add(std::max({sup_norm(back.A_ell - c.A_ell), sup_norm(back.A_hat - c.A_hat),
                        sup_norm(back.E_solved - c.E_solved)}));
      }
      return make_check(cfg, "trivialization_round_trip", "dressing/abelian-trivialization", w, 1e-9, false);
    }));
    return out;
  }
}

template <class G>
Criterion criterion_sectors(const SuiteConfig& cfg) {
  Criterion out{14, criterion_title(14), true, {}};
  const Grid g = detail::make_grid(cfg);
  out.checks.push_back(guarded_check(cfg, "sector_invariance", "reduction/sector-label", 1e-7, [&] {
    SplitMix64 rng = detail::stream<G>(cfg, 14);
    ErrorTally w;
    for (int n = 0; n < cfg.scaled_draws(50); ++n) {
      const auto c = random_on_shell<G>(g, rng, cfg.field);
      const auto gf = random_gauge<G>(g, rng, cfg.gauge);
      // Re-solve the constraint from the transformed data.
      const auto t = gauge_transform<G>(g, c, gf);
      const auto moved = solve_gauss<G>(g, t.A_ell, t.A_hat, t.E_init);
      w.add(sector_distance(sector_label<G>(g, c), sector_label<G>(g, moved)));
    }
    return make_check(cfg, "sector_invariance", "reduction/sector-label", w, 1e-7, false);
  }));
  return out;
}

template <class G>
Criterion run_criterion(const SuiteConfig& cfg, int id) {
  switch (id) {
    case 1: return criterion_basis<G>(cfg);
    case 2: return criterion_zero_mode<G>(cfg);
    case 3: return criterion_mode_form<G>(cfg);
    case 4: return criterion_gauss<G>(cfg);
    case 5: return criterion_momentum_split<G>(cfg);
    case 6: return criterion_flow<G>(cfg);
    case 7: return criterion_symplectomorphism<G>(cfg);
    case 8: return criterion_fibre<G>(cfg);
    case 9: return criterion_reduced_map<G>(cfg);
    case 10: return criterion_winding<G>(cfg);
    case 11: return criterion_memory<G>(cfg);
    case 12: return criterion_flux_modes<G>(cfg);
    case 13: return criterion_trivialization<G>(cfg);
    case 14: return criterion_sectors<G>(cfg);
    default: throw ConfigError("no criterion " + std::to_string(id));
  }
}

}  // namespace nym
