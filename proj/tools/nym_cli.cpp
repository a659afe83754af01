// nym: runs verification suites and module pipelines on seeded or preset
// configurations and writes a JSON report.
//
//   nym verify --group u1 --seed 7
//   nym gauss --preset abelian-ub-cos --out report.json
//   nym modes --kmax 12 --csv spectrum.csv

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nym/constraint.hpp"
#include "nym/dressing.hpp"
#include "nym/errors.hpp"
#include "nym/lie.hpp"
#include "nym/modes.hpp"
#include "nym/random.hpp"
#include "nym/reduction.hpp"
#include "nym/suites.hpp"

namespace {

using nlohmann::json;
using nym::CheckResult;
using nym::ErrorTally;
using nym::Grid;

constexpr const char* kVersion = "0.1.0";

const std::set<std::string> kSubcommands{"verify", "gauss", "dress", "modes", "flux", "memory", "sector"};
const std::set<std::string> kPresets{"abelian-ub-cos"};

// Every check name a tolerance override may target.
const std::set<std::string> kCheckNames{
    "basis_orthonormality", "zero_mode_identity", "mode_diagonal_form", "gauss_abelian_closed_form",
    "gauss_su2_constant", "gauss_convergence_order", "momentum_split_off_shell", "momentum_split_on_shell",
    "hamiltonian_flow", "dressing_symplectomorphism", "dressing_relative_invariance",
    "dressing_bilocal_equivariance", "reduced_flux_pullback", "reduced_hamiltonian_flow", "winding_lattice",
    "winding_additivity", "memory_routes", "abelian_net_flux", "flux_mode_identity", "trivialization_round_trip",
    "sector_invariance", "gauss_residual", "preset_closed_form", "dressing_residual", "memory_level_set",
    "memory_least_squares"};

struct RunConfig {
  std::string group = "u1";
  nym::SuiteConfig suite;
  std::optional<std::string> preset;
  std::vector<std::string> suites;
  bool zero_flux = false;
  std::string csv;
  int csv_component = 0;
};

json to_json(const RunConfig& c) {
  json j;
  j["group"] = c.group;
  j["nu"] = c.suite.nu;
  j["nx"] = c.suite.nx;
  j["kmax"] = c.suite.k_max;
  j["radius"] = c.suite.radius;
  j["seed"] = c.suite.seed;
  j["draws"] = c.suite.draws;
  j["tolerances"] = c.suite.tol;
  if (c.preset)
    j["generator"] = {{"preset", *c.preset}};
  else
    j["generator"] = {{"decay", c.suite.field.decay}, {"k_gen", c.suite.field.k_gen}};
  j["suites"] = c.suites;
  j["zero_flux"] = c.zero_flux;
  if (!c.csv.empty()) j["csv"] = c.csv;
  j["csv_component"] = c.csv_component;
  return j;
}

void load_config(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw nym::ConfigError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw nym::ConfigError(std::string("config does not parse: ") + e.what());
  }
  if (!j.is_object()) throw nym::ConfigError("config must be an object");
  try {
    for (auto& [key, v] : j.items()) {
      if (key == "group") c.group = v.get<std::string>();
      else if (key == "nu") c.suite.nu = v.get<int>();
      else if (key == "nx") c.suite.nx = v.get<int>();
      else if (key == "kmax") c.suite.k_max = v.get<int>();
      else if (key == "radius") c.suite.radius = v.get<double>();
      else if (key == "seed") c.suite.seed = v.get<std::uint64_t>();
      else if (key == "draws") c.suite.draws = v.get<int>();
      else if (key == "tolerances") c.suite.tol = v.get<std::map<std::string, double>>();
      else if (key == "suites") c.suites = v.get<std::vector<std::string>>();
      else if (key == "zero_flux") c.zero_flux = v.get<bool>();
      else if (key == "csv") c.csv = v.get<std::string>();
      else if (key == "csv_component") c.csv_component = v.get<int>();
      else if (key == "generator") {
        for (auto& [gk, gv] : v.items()) {
          if (gk == "preset") c.preset = gv.get<std::string>();
          else if (gk == "decay") c.suite.field.decay = gv.get<double>();
          else if (gk == "k_gen") c.suite.field.k_gen = gv.get<int>();
          else throw nym::ConfigError("unknown generator key '" + gk + "'");
        }
      } else {
        throw nym::ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw nym::ConfigError(std::string("config has a wrong type: ") + e.what());
  }
}

void validate(const RunConfig& c, const std::string& sub) {
  if (c.group != "r" && c.group != "u1" && c.group != "su2") throw nym::ConfigError("group must be r, u1 or su2");
  if (c.suite.field.decay <= 0) throw nym::ConfigError("decay must be positive");
  if (c.suite.field.k_gen < 0) throw nym::ConfigError("k_gen must be non-negative");
  if (c.suite.k_max < 0) throw nym::ConfigError("kmax must be non-negative");
  if (c.suite.draws < 1) throw nym::ConfigError("draws must be positive");
  if (c.suite.radius <= 0) throw nym::ConfigError("radius must be positive");
  if (c.preset && !kPresets.count(*c.preset)) throw nym::ConfigError("unknown preset '" + *c.preset + "'");
  if (c.preset && sub != "gauss") throw nym::ConfigError("presets apply to gauss only");
  if (c.csv_component < 0 || c.csv_component >= (c.group == "su2" ? 3 : 1))
    throw nym::ConfigError("csv_component out of range for the group");
  for (const auto& s : c.suites) nym::criterion_id(s);
  for (const auto& [name, v] : c.suite.tol) {
    if (!kCheckNames.count(name)) throw nym::ConfigError("unknown tolerance '" + name + "'");
    if (!(v >= 0)) throw nym::ConfigError("tolerance '" + name + "' must be non-negative");
  }
  Grid(c.suite.nu, c.suite.nx, c.suite.radius);
}

struct Report {
  std::vector<CheckResult> checks;
  json values = json::object();

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

template <class T>
json field_json(const T& f) {
  json out = json::array();
  for (int i = 0; i < f.nx(); ++i) {
    json v = json::array();
    for (double a : f[i].c) v.push_back(a);
    out.push_back(v);
  }
  return out;
}

// Sample streams per subcommand, so subcommands do not share draws.
nym::SplitMix64 rng_for(const RunConfig& c, std::uint64_t sub_stream) {
  return nym::SplitMix64(c.suite.seed, 0x100000 + sub_stream);
}

template <class G>
nym::OnShellPoint<G> make_on_shell(const Grid& g, const RunConfig& c, nym::SplitMix64& rng) {
  if (c.preset) {
    // Abelian u cos(x) dx with A_l = 0 and a vanishing initial field.
    nym::AlgSigma<G> A_hat(g.nu(), g.nx());
    for (int j = 0; j < g.nu(); ++j)
      for (int i = 0; i < g.nx(); ++i) A_hat(j, i)[0] = g.u(j) * std::cos(g.x(i));
    return nym::solve_gauss<G>(g, nym::AlgSigma<G>(g.nu(), g.nx()), A_hat, nym::AlgS<G>(g.nx()));
  }
  const auto A_ell = nym::random_sigma<G>(g, rng, c.suite.field);
  const auto A_hat = nym::random_sigma<G>(g, rng, c.suite.field);
  nym::AlgS<G> E_init = nym::random_S<G>(g, rng, c.suite.field);
  if (c.zero_flux) E_init = nym::AlgS<G>(g.nx());
  return nym::solve_gauss<G>(g, A_ell, A_hat, E_init);
}

template <class G>
Report run_verify(const RunConfig& c) {
  std::vector<int> ids;
  for (const auto& s : c.suites) ids.push_back(nym::criterion_id(s));
  if (ids.empty())
    for (int id = 1; id <= nym::kCriterionCount; ++id) ids.push_back(id);

  std::vector<std::future<nym::Criterion>> jobs;
  for (int id : ids) jobs.push_back(std::async(std::launch::async, [&c, id] { return nym::run_criterion<G>(c.suite, id); }));

  Report r;
  r.values["criteria"] = json::array();
  for (size_t n = 0; n < ids.size(); ++n) {
    const nym::Criterion cr = jobs[n].get();
    r.values["criteria"].push_back({{"id", cr.id},
                                    {"suite", nym::criterion_key(cr.id)},
                                    {"title", cr.title},
                                    {"applicable", cr.applicable},
                                    {"pass", cr.pass()}});
    for (auto ch : cr.checks) {
      ch.name = std::string(nym::criterion_key(cr.id)) + "." + ch.name;
      r.checks.push_back(std::move(ch));
    }
  }
  return r;
}

template <class G>
Report run_gauss(const RunConfig& c) {
  const Grid g(c.suite.nu, c.suite.nx, c.suite.radius);
  nym::SplitMix64 rng = rng_for(c, 1);
  Report r;
  std::optional<nym::OnShellPoint<G>> point;
  r.checks.push_back(nym::guarded_check(c.suite, "gauss_residual", "constraint/gauss-residual", 1e-6, [&] {
    point = make_on_shell<G>(g, c, rng);
    const nym::PhasePoint<G> p = point->phase_point();
    const auto F = nym::curvature_Fl<G>(g, p.A_ell, p.A_hat);
    const double scale = std::max({sup_norm(g.d_u(p.E)), sup_norm(nym::bracket<G>(p.A_ell, p.E)),
                                   sup_norm(nym::divergence_F<G>(g, p.A_hat, F)), 1e-300});
    ErrorTally w;
    w.add(sup_norm(nym::gauss_residual<G>(g, p)) / scale);
    return nym::make_check(c.suite, "gauss_residual", "constraint/gauss-residual", w, 1e-6, true);
  }));
  if (!point) return r;
  if constexpr (G::abelian) {
    r.checks.push_back(nym::guarded_check(c.suite, "gauss_abelian_closed_form", "constraint/solve-gauss", 1e-6, [&] {
      const auto src = -1.0 * nym::divergence_F<G>(g, point->A_hat, nym::curvature_Fl<G>(g, point->A_ell, point->A_hat));
      const auto closed = nym::AlgSigma<G>::constant_in_u(g.nu(), point->E_init) + g.antiderivative_u(src);
      ErrorTally w;
      w.add(sup_norm(closed - point->E_solved) / std::max({sup_norm(closed), 2.0 * sup_norm(src), 1e-300}));
      return nym::make_check(c.suite, "gauss_abelian_closed_form", "constraint/solve-gauss", w, 1e-6, true);
    }));
  }
  if (c.preset) {
    r.checks.push_back(nym::guarded_check(c.suite, "preset_closed_form", "constraint/solve-gauss", 1e-8, [&] {
      ErrorTally w;
      const auto E_fin = point->E_solved.fin();
      for (int i = 0; i < g.nx(); ++i) w.add(std::abs(E_fin[i][0] - 2.0 * std::sin(g.x(i))));
      return nym::make_check(c.suite, "preset_closed_form", "constraint/solve-gauss", w, 1e-8, false);
    }));
  }
  const auto E_fin = point->E_solved.fin();
  r.values["x"] = json::array();
  for (int i = 0; i < g.nx(); ++i) r.values["x"].push_back(g.x(i));
  r.values["E_init"] = field_json(point->E_init);
  r.values["E_fin"] = field_json(E_fin);
  r.values["E_sup"] = sup_norm(point->E_solved);
  return r;
}

template <class G>
Report run_dress(const RunConfig& c) {
  const Grid g(c.suite.nu, c.suite.nx, c.suite.radius);
  nym::SplitMix64 rng = rng_for(c, 2);
  Report r;
  std::optional<nym::OnShellPoint<G>> point;
  std::optional<nym::DressedPoint<G>> d;
  r.checks.push_back(nym::guarded_check(c.suite, "dressing_residual", "dressing/wilson-line", 1e-6, [&] {
    point = make_on_shell<G>(g, c, rng);
    d = nym::dress<G>(g, *point, {.tol_residual = std::numeric_limits<double>::infinity()});
    ErrorTally w;
    w.add(d->ell_residual);
    return nym::make_check(c.suite, "dressing_residual", "dressing/wilson-line", w, 1e-6, false);
  }));
  if (!d) return r;
  r.checks.push_back(nym::guarded_check(c.suite, "dressing_relative_invariance", "dressing/relative-fibre", 1e-7, [&] {
    ErrorTally w;
    const auto gr = nym::random_relative_gauge<G>(g, rng, c.suite.gauge);
    const auto moved = nym::dress<G>(g, nym::gauge_transform<G>(g, *point, gr));
    w.add(std::max({sup_norm(moved.a - d->a), nym::group_dist<G>(moved.Lambda, d->Lambda), sup_norm(moved.e - d->e)}));
    return nym::make_check(c.suite, "dressing_relative_invariance", "dressing/relative-fibre", w, 1e-7, false);
  }));
  if constexpr (G::abelian) {
    r.checks.push_back(
        nym::guarded_check(c.suite, "trivialization_round_trip", "dressing/abelian-trivialization", 1e-9, [&] {
          const auto t = nym::abelian_trivialize<G>(g, *point);
          const auto back = nym::abelian_untrivialize<G>(g, t.point, t.U_rel);
          ErrorTally w;
          w.add(std::max({sup_norm(back.A_ell - point->A_ell), sup_norm(back.A_hat - point->A_hat),
                          sup_norm(back.E_solved - point->E_solved)}));
          return nym::make_check(c.suite, "trivialization_round_trip", "dressing/abelian-trivialization", w, 1e-9,
                                 false);
        }));
  }
  r.values["ell_residual"] = d->ell_residual;
  r.values["a_sup"] = sup_norm(d->a);
  r.values["e"] = field_json(d->e);
  return r;
}

template <class G>
Report run_modes(const RunConfig& c) {
  const Grid g(c.suite.nu, c.suite.nx, c.suite.radius);
  nym::SplitMix64 rng = rng_for(c, 3);
  const int K = c.suite.k_max, k_ref = std::max(K, c.suite.field.k_gen) + 8;
  const auto aX = nym::random_sigma<G>(g, rng, c.suite.field), aY = nym::random_sigma<G>(g, rng, c.suite.field);
  const auto X = nym::mode_decompose<G>(g, aX, k_ref), Y = nym::mode_decompose<G>(g, aY, k_ref);
  Report r;
  r.checks.push_back(nym::guarded_check(c.suite, "zero_mode_identity", "modes/zero-mode", 1e-8, [&] {
    const auto b = nym::boundary_functionals(g, aX);
    ErrorTally w;
    w.add(std::max(sup_norm(X.re2(0) - (b.integral - b.avg)), sup_norm(X.im2(0) - b.diff)));
    return nym::make_check(c.suite, "zero_mode_identity", "modes/zero-mode", w, 1e-8, false);
  }));
  const double direct = nym::omega_AS<G>(g, aX, aY), modes = nym::omega_AS_modes<G>(g, X, Y, K);
  const double bound = nym::omega_AS_tail_bound<G>(g, X, Y, K);
  r.checks.push_back(nym::guarded_check(c.suite, "mode_diagonal_form", "modes/omega-AS", 1e-7, [&] {
    ErrorTally w;
    const double scale = std::max(1.0, std::abs(direct));
    w.add(std::max(0.0, std::abs(direct - modes) - bound) / scale);
    return nym::make_check(c.suite, "mode_diagonal_form", "modes/omega-AS", w, 1e-7, true);
  }));
  r.values["omega_AS"] = direct;
  r.values["omega_AS_modes"] = modes;
  r.values["truncation_bound"] = bound;
  json energy = json::array();
  for (int k = 0; k <= K; ++k) {
    double e = 0;
    for (const auto& v : X.modes[k])
      for (const auto& z : v) e += std::norm(z);
    energy.push_back(e / g.nx());
  }
  r.values["mode_energy"] = energy;
  if (!c.csv.empty()) {
    std::ofstream os(c.csv);
    if (!os) throw nym::ConfigError("cannot write " + c.csv);
    nym::ModeSpectrum<G> truncated = X;
    truncated.k_max = K;
    truncated.modes.resize(K + 1);
    nym::write_spectrum_csv(os, nym::spectrum_component<G>(truncated, c.csv_component));
    r.values["csv"] = c.csv;
  }
  return r;
}

template <class G>
Report run_flux(const RunConfig& c) {
  const Grid g(c.suite.nu, c.suite.nx, c.suite.radius);
  nym::SplitMix64 rng = rng_for(c, 4);
  Report r;
  std::optional<nym::OnShellPoint<G>> point;
  const auto xi = nym::random_sigma<G>(g, rng, c.suite.field);
  double flux = 0;
  r.checks.push_back(nym::guarded_check(c.suite, "momentum_split_on_shell", "constraint/momentum-split", 1e-7, [&] {
    point = make_on_shell<G>(g, c, rng);
    const auto p = point->phase_point();
    flux = nym::flux_pairing<G>(g, p, xi);
    ErrorTally w;
    w.add(nym::rel_err(nym::momentum_pairing<G>(g, p, xi), flux));
    return nym::make_check(c.suite, "momentum_split_on_shell", "constraint/momentum-split", w, 1e-7, true);
  }));
  if (!point) return r;
  const nym::FluxPair<G> f = nym::flux_pair(*point);
  if constexpr (G::abelian) {
    r.checks.push_back(nym::guarded_check(c.suite, "abelian_net_flux", "constraint/flux-pair", 1e-7, [&] {
      ErrorTally w;
      w.add(std::abs(g.integrate_S(f.E_diff())[0]));
      return nym::make_check(c.suite, "abelian_net_flux", "constraint/flux-pair", w, 1e-7, false);
    }));
  }
  r.values["flux_pairing"] = flux;
  r.values["f_init"] = field_json(f.f_init());
  r.values["f_fin"] = field_json(f.f_fin());
  return r;
}

template <class G>
Report run_memory(const RunConfig& c) {
  const Grid g(c.suite.nu, c.suite.nx, c.suite.radius);
  nym::SplitMix64 rng = rng_for(c, 5);
  Report r;
  std::optional<nym::OnShellPoint<G>> point;
  if constexpr (G::abelian) {
    nym::AbelianMemory<G> m;
    r.checks.push_back(nym::guarded_check(c.suite, "memory_routes", "reduction/abelian-memory", 1e-7, [&] {
      point = make_on_shell<G>(g, c, rng);
      m = nym::memory_abelian<G>(g, *point);
      ErrorTally w;
      w.add(m.gap);
      return nym::make_check(c.suite, "memory_routes", "reduction/abelian-memory", w, 1e-7, false);
    }));
    if (point) {
      r.values["mu"] = field_json(m.mu);
      r.values["mu_sup"] = sup_norm(m.mu);
    }
  } else {
    std::optional<nym::DressedPoint<G>> d;
    r.checks.push_back(nym::guarded_check(c.suite, "memory_level_set", "reduction/nonabelian-memory", 1e-9, [&] {
      point = make_on_shell<G>(g, c, rng);
      d = nym::dress<G>(g, *point);
      ErrorTally w;
      w.add(sup_norm(d->e));
      CheckResult ch = nym::make_check(c.suite, "memory_level_set", "reduction/nonabelian-memory", w, 1e-9, false);
      if (!ch.pass) ch.note = "memory needs the e = 0 sector; set zero_flux";
      return ch;
    }));
    if (!r.checks.back().pass) return r;
    nym::NonAbelianMemory<G> m;
    r.checks.push_back(nym::guarded_check(c.suite, "memory_least_squares", "reduction/nonabelian-memory", 1e-8, [&] {
      m = nym::memory_nonabelian<G>(g, *d, r.checks.front().tol);
      const auto rhs = g.integrate_u(nym::div_La<G>(g, d->a));
      const auto res = -1.0 * nym::covariant_laplacian_0<G>(g, d->a, m.mu) - rhs;
      ErrorTally w;
      w.add(sup_norm(nym::covariant_laplacian_0<G>(g, d->a, res)) / (1.0 + sup_norm(rhs)));
      return nym::make_check(c.suite, "memory_least_squares", "reduction/nonabelian-memory", w, 1e-8, true,
                             "residual lies in the operator kernel");
    }));
    r.values["mu"] = field_json(m.mu);
    r.values["kernel_dim"] = m.kernel_dim;
    r.values["range_residual"] = m.residual;
  }
  return r;
}

template <class G>
Report run_sector(const RunConfig& c) {
  const Grid g(c.suite.nu, c.suite.nx, c.suite.radius);
  nym::SplitMix64 rng = rng_for(c, 6);
  Report r;
  std::optional<nym::SectorLabel<G>> label;
  r.checks.push_back(nym::guarded_check(c.suite, "sector_invariance", "reduction/sector-label", 1e-7, [&] {
    ErrorTally w;
    const auto point = make_on_shell<G>(g, c, rng);
    label = nym::sector_label<G>(g, point);
    for (int n = 0; n < std::max(1, c.suite.draws / 10); ++n) {
      const auto t = nym::gauge_transform<G>(g, point, nym::random_gauge<G>(g, rng, c.suite.gauge));
      w.add(nym::sector_distance(*label, nym::sector_label<G>(g, nym::solve_gauss<G>(g, t.A_ell, t.A_hat, t.E_init))));
    }
    return nym::make_check(c.suite, "sector_invariance", "reduction/sector-label", w, 1e-7, false);
  }));
  if (!label) return r;
  if constexpr (G::abelian) {
    r.values["f_init"] = field_json(label->f_init);
    r.values["mu"] = field_json(label->mu);
  } else {
    r.values["casimir_init"] = label->casimir_init.v;
    r.values["casimir_fin"] = label->casimir_fin.v;
  }
  return r;
}

template <class G>
Report run_group(const std::string& sub, const RunConfig& c) {
  if (sub == "verify") return run_verify<G>(c);
  if (sub == "gauss") return run_gauss<G>(c);
  if (sub == "dress") return run_dress<G>(c);
  if (sub == "modes") return run_modes<G>(c);
  if (sub == "flux") return run_flux<G>(c);
  if (sub == "memory") return run_memory<G>(c);
  return run_sector<G>(c);
}

Report run(const std::string& sub, const RunConfig& c) {
  if (c.group == "r") return run_group<nym::RealLine>(sub, c);
  if (c.group == "u1") return run_group<nym::CircleU1>(sub, c);
  return run_group<nym::SU2>(sub, c);
}

json report_json(const std::string& sub, const RunConfig& c, const Report& r, double wall) {
  json checks = json::array();
  for (const auto& ch : r.checks) {
    json j{{"name", ch.name},           {"anchor", ch.anchor},       {"status", ch.pass ? "pass" : "fail"},
           {"max_abs_err", ch.max_abs_err}, {"tol", ch.tol},         {"n_samples", ch.n_samples},
           {"relative", ch.relative}};
    if (!ch.note.empty()) j["note"] = ch.note;
    checks.push_back(j);
  }
  return {{"meta", {{"subcommand", sub}, {"config", to_json(c)}, {"version", kVersion}, {"wall_time_s", wall}}},
          {"status", r.pass() ? "pass" : "fail"},
          {"checks", checks},
          {"values", r.values}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"null Yang-Mills numerical laboratory"};
  std::string sub, config_path, out_path, group, preset, csv;
  std::vector<std::string> tols;
  std::uint64_t seed = 0;
  int nu = 0, nx = 0, kmax = 0, draws = 0;
  double decay = 0, radius = 0;
  bool zero_flux = false;

  app.add_option("subcommand", sub, "verify, gauss, dress, modes, flux, memory or sector")
      ->required()
      ->check(CLI::IsMember(kSubcommands));
  auto* o_config = app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "report path (default stdout)");
  auto* o_seed = app.add_option("--seed", seed, "generator seed");
  auto* o_group = app.add_option("--group", group, "gauge group")->check(CLI::IsMember({"r", "u1", "su2"}));
  auto* o_nu = app.add_option("--nu", nu, "u samples (odd)");
  auto* o_nx = app.add_option("--nx", nx, "x samples (even)");
  auto* o_kmax = app.add_option("--kmax", kmax, "mode truncation");
  app.add_option("--tol", tols, "override a tolerance, NAME=VALUE");
  auto* o_draws = app.add_option("--draws", draws, "random draws per verify check");
  auto* o_decay = app.add_option("--decay", decay, "spectral decay of random fields");
  auto* o_radius = app.add_option("--radius", radius, "circle radius");
  auto* o_preset = app.add_option("--preset", preset, "named preset configuration");
  auto* o_csv = app.add_option("--csv", csv, "spectrum CSV path (modes)");
  auto* o_zero = app.add_flag("--zero-flux", zero_flux, "start from a vanishing initial electric field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunConfig cfg;
  try {
    if (o_config->count()) load_config(config_path, cfg);
    if (o_group->count()) cfg.group = group;
    if (o_seed->count()) cfg.suite.seed = seed;
    if (o_nu->count()) cfg.suite.nu = nu;
    if (o_nx->count()) cfg.suite.nx = nx;
    if (o_kmax->count()) cfg.suite.k_max = kmax;
    if (o_draws->count()) cfg.suite.draws = draws;
    if (o_decay->count()) cfg.suite.field.decay = decay;
    if (o_radius->count()) cfg.suite.radius = radius;
    if (o_preset->count()) cfg.preset = preset;
    if (o_csv->count()) cfg.csv = csv;
    if (o_zero->count()) cfg.zero_flux = zero_flux;
    for (const auto& t : tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) throw nym::ConfigError("--tol expects NAME=VALUE, got '" + t + "'");
      try {
        size_t used = 0;
        const double v = std::stod(t.substr(eq + 1), &used);
        if (used != t.size() - eq - 1 || !(v >= 0)) throw std::invalid_argument(t);
        cfg.suite.tol[t.substr(0, eq)] = v;
      } catch (const std::logic_error&) {
        throw nym::ConfigError("bad tolerance value in '" + t + "'");
      }
    }
    validate(cfg, sub);
  } catch (const nym::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    r = run(sub, cfg);
  } catch (const nym::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string text = report_json(sub, cfg, r, wall).dump(2) + "\n";

  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "cannot write " << out_path << '\n';
      return 2;
    }
    os << text;
  }
  for (const auto& ch : r.checks)
    if (!ch.pass) std::cerr << "FAIL " << ch.name << ": err " << ch.max_abs_err << " > tol " << ch.tol << '\n';
  return r.pass() ? 0 : 1;
}
