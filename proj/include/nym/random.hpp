#pragma once

// Seeded test fields. The generator is splitmix64 keyed by (seed, stream):
// the output is fixed by the algorithm, not by the standard library, so a
// seed reproduces the same bits on every platform.
//
// Fields on Sigma are finite sums
//   sum_{k,m} exp(-decay (k + m)) Re(c psi_k(u)) {cos, sin}(m x)
// with complex c uniform in the unit square.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nym/fields.hpp"
#include "nym/grid.hpp"
#include "nym/modes.hpp"

namespace nym {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(seed ^ (stream * 0xD1B54A32D192ED03ULL)) {
    next();
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [-1, 1) with 53 random bits.
  double symmetric() { return 2.0 * static_cast<double>(next() >> 11) * 0x1.0p-53 - 1.0; }

 private:
  std::uint64_t state_;
};

struct FieldSpec {
  double decay = 1.5;
  // Highest psi index in u and Fourier index in x; m_max < 0 means nx / 4.
  int k_gen = 12;
  int m_max = -1;
  double amplitude = 1.0;
};

inline int effective_m_max(const Grid& grid, const FieldSpec& spec) {
  const int cap = grid.nx() / 2 - 1;
  return spec.m_max < 0 ? grid.nx() / 4 : std::min(spec.m_max, cap);
}

template <class G>
AlgSigma<G> random_sigma(const Grid& grid, SplitMix64& rng, const FieldSpec& spec = {}) {
  const int M = effective_m_max(grid, spec), nx = grid.nx();
  AlgSigma<G> f(grid.nu(), nx);
  // Re(c psi_k) = Re(c) Re(psi_k) - Im(c) Im(psi_k): sum over m first.
  std::vector<double> X(nx), Y(nx);
  for (int c = 0; c < G::dim; ++c) {
    for (int k = 0; k <= spec.k_gen; ++k) {
      std::fill(X.begin(), X.end(), 0.0);
      std::fill(Y.begin(), Y.end(), 0.0);
      for (int m = 0; m <= M; ++m) {
        const double w = spec.amplitude * std::exp(-spec.decay * (k + m));
        const double cc_re = rng.symmetric(), cc_im = rng.symmetric();
        const double cs_re = rng.symmetric(), cs_im = rng.symmetric();
        for (int i = 0; i < nx; ++i) {
          const double co = std::cos(m * grid.x(i)), si = m > 0 ? std::sin(m * grid.x(i)) : 0.0;
          X[i] += w * (cc_re * co + cs_re * si);
          Y[i] += w * (cc_im * co + cs_im * si);
        }
      }
      for (int j = 0; j < grid.nu(); ++j) {
        const Cplx p = psi(k, grid.u(j));
        for (int i = 0; i < nx; ++i) f(j, i)[c] += p.real() * X[i] - p.imag() * Y[i];
      }
    }
  }
  return f;
}

template <class G>
AlgS<G> random_S(const Grid& grid, SplitMix64& rng, const FieldSpec& spec = {}) {
  const int M = effective_m_max(grid, spec);
  AlgS<G> f(grid.nx());
  for (int c = 0; c < G::dim; ++c) {
    for (int m = 0; m <= M; ++m) {
      const double w = spec.amplitude * std::exp(-spec.decay * m);
      const double ac = rng.symmetric(), as = rng.symmetric();
      for (int i = 0; i < grid.nx(); ++i) {
        const double x = grid.x(i);
        f[i][c] += w * (ac * std::cos(m * x) + (m > 0 ? as * std::sin(m * x) : 0.0));
      }
    }
  }
  return f;
}

template <class G>
PhasePoint<G> random_phase_point(const Grid& grid, SplitMix64& rng, const FieldSpec& spec = {}) {
  PhasePoint<G> p;
  p.A_ell = random_sigma<G>(grid, rng, spec);
  p.A_hat = random_sigma<G>(grid, rng, spec);
  p.E = random_sigma<G>(grid, rng, spec);
  return p;
}

template <class G>
TangentP<G> random_tangent(const Grid& grid, SplitMix64& rng, const FieldSpec& spec = {}) {
  return {random_sigma<G>(grid, rng, spec), random_sigma<G>(grid, rng, spec), random_sigma<G>(grid, rng, spec)};
}

template <class G>
TangentC<G> random_tangent_c(const Grid& grid, SplitMix64& rng, const FieldSpec& spec = {}) {
  return {random_sigma<G>(grid, rng, spec), random_sigma<G>(grid, rng, spec), random_S<G>(grid, rng, spec)};
}

template <class G>
OnShellPoint<G> random_on_shell(const Grid& grid, SplitMix64& rng, const FieldSpec& spec = {}) {
  const AlgSigma<G> A_ell = random_sigma<G>(grid, rng, spec);
  const AlgSigma<G> A_hat = random_sigma<G>(grid, rng, spec);
  return solve_gauss<G>(grid, A_ell, A_hat, random_S<G>(grid, rng, spec));
}

// exp((1 - u^2) xi): trivial on both boundary circles.
template <class G>
GroupSigma<G> random_relative_gauge(const Grid& grid, SplitMix64& rng, const FieldSpec& spec = {}) {
  AlgSigma<G> xi = random_sigma<G>(grid, rng, spec);
  for (int j = 0; j < grid.nu(); ++j) {
    const double u = grid.u(j);
    for (int i = 0; i < grid.nx(); ++i) xi(j, i) *= (1.0 - u * u);
  }
  return group_exp<G>(xi);
}

template <class G>
GroupSigma<G> random_gauge(const Grid& grid, SplitMix64& rng, const FieldSpec& spec = {}) {
  return group_exp<G>(random_sigma<G>(grid, rng, spec));
}

}  // namespace nym
