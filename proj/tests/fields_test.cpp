#include "nym/fields.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "nym/random.hpp"
#include "test_util.hpp"

namespace nym {
namespace {

using testing::alg_sigma;

TEST(Curvature, ZeroConnection) {
  const Grid g(21, 16);
  const auto p = PhasePoint<SU2>::zero(g);
  EXPECT_EQ(sup_norm(curvature_Fl<SU2>(g, p.A_ell, p.A_hat)), 0.0);
}

TEST(Curvature, AbelianLinearInU) {
  const Grid g(41, 32);
  const auto A_hat = alg_sigma<CircleU1>(g, 0, [](double u, double x) { return u * std::sin(2 * x); });
  const auto F = curvature_Fl<CircleU1>(g, AlgSigma<CircleU1>(g.nu(), g.nx()), A_hat);
  const auto b = alg_sigma<CircleU1>(g, 0, [](double, double x) { return std::sin(2 * x); });
  EXPECT_LT(sup_norm(F - b), 1e-12);
}

TEST(Curvature, PureGaugeIsFlat) {
  const Grid g(201, 64);
  SplitMix64 rng(4);
  const auto gf = random_gauge<SU2>(g, rng, {.decay = 1.0, .k_gen = 6});
  const auto p = gauge_transform<SU2>(g, PhasePoint<SU2>::zero(g), gf);
  EXPECT_GT(sup_norm(p.A_hat), 0.1);
  EXPECT_LT(sup_norm(curvature_Fl<SU2>(g, p.A_ell, p.A_hat)), 1e-8);
}

TEST(Curvature, Equivariant) {
  const Grid g(201, 64);
  SplitMix64 rng(5);
  const auto p = random_phase_point<SU2>(g, rng, {.decay = 1.5});
  const auto gf = random_gauge<SU2>(g, rng, {.decay = 2.0});
  const auto q = gauge_transform<SU2>(g, p, gf);
  const auto lhs = curvature_Fl<SU2>(g, q.A_ell, q.A_hat);
  const auto rhs = Ad_inv_field<SU2>(gf, curvature_Fl<SU2>(g, p.A_ell, p.A_hat));
  EXPECT_LT(sup_norm(lhs - rhs), 1e-9);
}

TEST(BoundaryFunctionals, Examples) {
  const Grid g(101, 8);
  auto check = [&](auto f, double i, double fin, double avg, double diff, double integral) {
    const auto b = boundary_functionals(g, g.sample_Sigma([&](double u, double) { return f(u); }));
    for (int x = 0; x < g.nx(); ++x) {
      EXPECT_NEAR(b.init[x], i, 1e-15);
      EXPECT_NEAR(b.fin[x], fin, 1e-15);
      EXPECT_NEAR(b.avg[x], avg, 1e-15);
      EXPECT_NEAR(b.diff[x], diff, 1e-15);
      EXPECT_NEAR(b.integral[x], integral, 1e-12);
    }
  };
  check([](double u) { return u; }, -1, 1, 0, 2, 0);
  check([](double) { return 1.0; }, 1, 1, 1, 0, 2);
  check([](double u) { return u * u; }, 1, 1, 1, 0, 2.0 / 3.0);
}

TEST(BoundaryFunctionals, Linear) {
  const Grid g(41, 16);
  SplitMix64 rng(1);
  const auto P = random_sigma<SU2>(g, rng), Q = random_sigma<SU2>(g, rng);
  const auto bp = boundary_functionals(g, P), bq = boundary_functionals(g, Q);
  const auto bs = boundary_functionals(g, 2.0 * P + Q);
  EXPECT_LT(sup_norm(bs.avg - (2.0 * bp.avg + bq.avg)), 1e-14);
  EXPECT_LT(sup_norm(bs.diff - (2.0 * bp.diff + bq.diff)), 1e-14);
  EXPECT_LT(sup_norm(bs.integral - (2.0 * bp.integral + bq.integral)), 1e-13);
}

TEST(LogDerivative, OneParameterSubgroup) {
  // g = exp(theta(u, x) tau_3) has g^-1 dg = d theta tau_3.
  const Grid g(201, 64);
  auto theta = [](double u, double x) { return std::sin(2 * u) * std::cos(x) + u; };
  const auto g3 = group_exp<SU2>(alg_sigma<SU2>(g, 2, theta));
  const auto du = log_derivative_u<SU2>(g, g3), dx = log_derivative_x<SU2>(g, g3);
  const auto du_exact =
      alg_sigma<SU2>(g, 2, [](double u, double x) { return 2 * std::cos(2 * u) * std::cos(x) + 1; });
  const auto dx_exact = alg_sigma<SU2>(g, 2, [](double u, double x) { return -std::sin(2 * u) * std::sin(x); });
  EXPECT_LT(sup_norm(du - du_exact), 1e-10);
  EXPECT_LT(sup_norm(dx - dx_exact), 1e-12);
}

TEST(GaugeTransform, IdentityAndAbelianConstant) {
  const Grid g(41, 16);
  SplitMix64 rng(2);
  const auto p = random_phase_point<SU2>(g, rng);
  const auto q = gauge_transform<SU2>(g, p, GroupSigma<SU2>(g.nu(), g.nx()));
  EXPECT_LT(sup_norm(q.A_ell - p.A_ell) + sup_norm(q.A_hat - p.A_hat) + sup_norm(q.E - p.E), 1e-15);

  const auto pa = random_phase_point<CircleU1>(g, rng);
  const auto qa = gauge_transform<CircleU1>(g, pa, GroupSigma<CircleU1>(g.nu(), g.nx(), std::polar(1.0, 2.1)));
  EXPECT_LT(sup_norm(qa.A_ell - pa.A_ell) + sup_norm(qa.A_hat - pa.A_hat) + sup_norm(qa.E - pa.E), 1e-13);
}

TEST(GaugeTransform, AbelianPureGauge) {
  const Grid g(201, 64);
  auto xi = [](double u, double x) { return u * u * std::sin(x) + 0.3 * std::cos(2 * x); };
  const auto gf = group_exp<CircleU1>(alg_sigma<CircleU1>(g, 0, xi));
  const auto p = gauge_transform<CircleU1>(g, PhasePoint<CircleU1>::zero(g), gf);
  const auto du = alg_sigma<CircleU1>(g, 0, [](double u, double x) { return 2 * u * std::sin(x); });
  const auto dx = alg_sigma<CircleU1>(g, 0, [](double u, double x) { return u * u * std::cos(x) - 0.6 * std::sin(2 * x); });
  EXPECT_LT(sup_norm(p.A_ell - du), 1e-10);
  EXPECT_LT(sup_norm(p.A_hat - dx), 1e-12);
  EXPECT_EQ(sup_norm(p.E), 0.0);

  // Same on the additive line.
  const auto gr = group_exp<RealLine>(alg_sigma<RealLine>(g, 0, xi));
  const auto pr = gauge_transform<RealLine>(g, PhasePoint<RealLine>::zero(g), gr);
  EXPECT_LT(sup_norm(pr.A_ell - du), 1e-10);
  EXPECT_LT(sup_norm(pr.A_hat - dx), 1e-12);
}

TEST(GaugeTransform, RightActionLaw) {
  const Grid g(201, 64);
  SplitMix64 rng(3);
  const auto p = random_phase_point<SU2>(g, rng);
  // Smooth enough in u that the 8th-order stencils resolve g to 1e-9.
  const auto g1 = random_gauge<SU2>(g, rng, {.decay = 2.0}), g2 = random_gauge<SU2>(g, rng, {.decay = 2.0});
  const auto lhs = gauge_transform<SU2>(g, gauge_transform<SU2>(g, p, g1), g2);
  const auto rhs = gauge_transform<SU2>(g, p, group_mul<SU2>(g1, g2));
  EXPECT_LT(sup_norm(lhs.A_ell - rhs.A_ell), 1e-9);
  EXPECT_LT(sup_norm(lhs.A_hat - rhs.A_hat), 1e-9);
  EXPECT_LT(sup_norm(lhs.E - rhs.E), 1e-12);
}

TEST(InfGauge, ZeroAndAbelian) {
  const Grid g(41, 16);
  SplitMix64 rng(6);
  const auto p = random_phase_point<SU2>(g, rng);
  const auto t = inf_gauge<SU2>(g, p, AlgSigma<SU2>(g.nu(), g.nx()));
  EXPECT_EQ(sup_norm(t.dA_ell) + sup_norm(t.dA_hat) + sup_norm(t.dE), 0.0);
  const auto pa = random_phase_point<CircleU1>(g, rng);
  EXPECT_EQ(sup_norm(inf_gauge<CircleU1>(g, pa, random_sigma<CircleU1>(g, rng)).dE), 0.0);
}

TEST(InfGauge, MatchesFiniteDifferenceOfAction) {
  const Grid g(201, 64);
  SplitMix64 rng(7);
  const auto p = random_phase_point<SU2>(g, rng);
  const auto xi = random_sigma<SU2>(g, rng);
  const double t = 1e-4;
  const auto qp = gauge_transform<SU2>(g, p, group_exp<SU2>(t * xi));
  const auto qm = gauge_transform<SU2>(g, p, group_exp<SU2>(-t * xi));
  const auto v = inf_gauge<SU2>(g, p, xi);
  EXPECT_LT(sup_norm((0.5 / t) * (qp.A_ell - qm.A_ell) - v.dA_ell), 1e-6);
  EXPECT_LT(sup_norm((0.5 / t) * (qp.A_hat - qm.A_hat) - v.dA_hat), 1e-6);
  EXPECT_LT(sup_norm((0.5 / t) * (qp.E - qm.E) - v.dE), 1e-6);
}

TEST(InfGauge, RelativeGeneratorsFixBoundarySpatialPart) {
  const Grid g(101, 16);
  SplitMix64 rng(8);
  const auto p = random_phase_point<SU2>(g, rng);
  AlgSigma<SU2> xi = random_sigma<SU2>(g, rng);
  for (int j = 0; j < g.nu(); ++j)
    for (int i = 0; i < g.nx(); ++i) xi(j, i) *= 1 - g.u(j) * g.u(j);
  const auto v = inf_gauge<SU2>(g, p, xi);
  EXPECT_LT(sup_norm(v.dA_hat.init()) + sup_norm(v.dA_hat.fin()), 1e-15);
}

}  // namespace
}  // namespace nym
