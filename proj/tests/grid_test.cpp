#include "nym/grid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace nym {
namespace {

double sup_diff(const OnS<double>& a, const OnS<double>& b) { return sup_norm(a - b); }

TEST(GridShape, RejectsBadSizes) {
  EXPECT_THROW(Grid(4, 16), ConfigError);
  EXPECT_THROW(Grid(6, 16), ConfigError);
  EXPECT_THROW(Grid(11, 7), ConfigError);
  EXPECT_THROW(Grid(11, 6), ConfigError);
  EXPECT_THROW(Grid(11, 16, 0.0), ConfigError);
  const Grid g(5, 8);
  EXPECT_DOUBLE_EQ(g.u(0), -1.0);
  EXPECT_DOUBLE_EQ(g.u(4), 1.0);
}

TEST(GridDx, SpectralExamples) {
  const Grid g(11, 64);
  const auto s = g.sample_S([](double x) { return std::sin(x); });
  EXPECT_LT(sup_diff(g.d_x(s), g.sample_S([](double x) { return std::cos(x); })), 1e-12);
  EXPECT_LT(sup_norm(g.d_x(g.sample_S([](double) { return 4.2; }))), 1e-12);
  const auto c3 = g.sample_S([](double x) { return std::cos(3 * x); });
  EXPECT_LT(sup_diff(g.d_x(c3), g.sample_S([](double x) { return -3 * std::sin(3 * x); })), 1e-12);
}

TEST(GridDx, AlgebraValuedComponentsIndependent) {
  const Grid g(5, 32);
  OnS<Alg<3>> f(32);
  for (int i = 0; i < 32; ++i) f[i] = Alg<3>{{std::sin(g.x(i)), std::cos(2 * g.x(i)), 1.0}};
  const auto d = g.d_x(f);
  for (int i = 0; i < 32; ++i) {
    EXPECT_NEAR(d[i][0], std::cos(g.x(i)), 1e-13);
    EXPECT_NEAR(d[i][1], -2 * std::sin(2 * g.x(i)), 1e-13);
    EXPECT_NEAR(d[i][2], 0.0, 1e-13);
  }
}

TEST(GridQuadrature, Examples) {
  const Grid g(201, 64);
  EXPECT_NEAR(g.integrate_S(g.sample_S([](double) { return 1.0; })), 2 * kPi, 1e-13);
  EXPECT_NEAR(g.integrate_S(g.sample_S([](double x) { return std::cos(x) * std::cos(x); })), kPi, 1e-12);
  std::vector<double> u2(g.nu());
  for (int j = 0; j < g.nu(); ++j) u2[j] = g.u(j) * g.u(j);
  EXPECT_NEAR(g.integrate_u(u2), 2.0 / 3.0, 1e-10);
  const Grid r2(11, 16, 2.0);
  EXPECT_NEAR(r2.integrate_S(r2.sample_S([](double) { return 1.0; })), 4 * kPi, 1e-13);
}

TEST(GridQuadrature, CubicsExactOnSmallGrids) {
  for (int nu : {5, 7, 9, 11, 13, 21}) {
    const Grid g(nu, 8);
    for (int deg = 0; deg <= 3; ++deg) {
      std::vector<double> f(nu);
      for (int j = 0; j < nu; ++j) f[j] = std::pow(g.u(j) + 0.3, deg);
      const double exact = (std::pow(1.3, deg + 1) - std::pow(-0.7, deg + 1)) / (deg + 1);
      EXPECT_NEAR(g.integrate_u(f), exact, 1e-13) << "nu=" << nu << " deg=" << deg;
    }
  }
}

TEST(GridQuadrature, NonPeriodicOscillatoryIntegrand) {
  // int_{-1}^{1} u sin(8 pi u) du = -2 cos(8 pi) / (8 pi) = -1/(4 pi).
  const Grid g(201, 8);
  std::vector<double> f(g.nu());
  for (int j = 0; j < g.nu(); ++j) f[j] = g.u(j) * std::sin(8 * kPi * g.u(j));
  EXPECT_NEAR(g.integrate_u(f), -1.0 / (4 * kPi), 1e-10);
}

TEST(GridDu, Examples) {
  const Grid g(201, 8);
  auto u = g.sample_Sigma([](double uu, double) { return uu; });
  const auto du = g.d_u(u);
  for (double v : du.v) EXPECT_NEAR(v, 1.0, 1e-12);
  const auto c = g.d_u(g.sample_Sigma([](double, double) { return 2.0; }));
  EXPECT_LT(sup_norm(c), 1e-12);
  const auto s = g.sample_Sigma([](double uu, double) { return std::sin(kPi * uu); });
  const auto ds = g.d_u(s) - g.sample_Sigma([](double uu, double) { return kPi * std::cos(kPi * uu); });
  EXPECT_LT(sup_norm(ds), std::pow(g.du(), 4));
}

TEST(GridDu, ConvergesAtHighOrder) {
  auto err = [](int nu) {
    const Grid g(nu, 8);
    const auto s = g.sample_Sigma([](double uu, double) { return std::sin(kPi * uu + 0.4); });
    const auto e = g.d_u(s) - g.sample_Sigma([](double uu, double) { return kPi * std::cos(kPi * uu + 0.4); });
    return sup_norm(e);
  };
  EXPECT_GT(err(41) / err(81), 150.0);
}

TEST(GridAntiderivative, MatchesClosedForm) {
  const Grid g(201, 8);
  std::vector<double> f(g.nu());
  for (int j = 0; j < g.nu(); ++j) f[j] = std::cos(5 * kPi * g.u(j)) + g.u(j);
  const auto F = g.antiderivative_u(f);
  for (int j = 0; j < g.nu(); ++j) {
    const double uu = g.u(j);
    const double exact = std::sin(5 * kPi * uu) / (5 * kPi) + 0.5 * (uu * uu - 1.0);
    EXPECT_NEAR(F[j], exact, 1e-10);
  }
}

TEST(GridInvLaplacian, Examples) {
  const Grid g(5, 32);
  const auto c = g.sample_S([](double x) { return std::cos(x); });
  EXPECT_LT(sup_diff(g.inv_laplacian_S(c), -1.0 * c), 1e-13);
  EXPECT_LT(sup_norm(g.inv_laplacian_S(OnS<double>(32))), 1e-300);
  EXPECT_THROW(g.inv_laplacian_S(g.sample_S([](double) { return 1.0; })), NonZeroMean);
  const Grid g2(5, 32, 3.0);
  EXPECT_LT(sup_diff(g2.inv_laplacian_S(c), -9.0 * c), 1e-12);
}

TEST(GridInvLaplacian, TwoSidedInverseOnMeanZero) {
  const Grid g(5, 48, 1.7);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> d;
  OnS<double> f(48);
  for (auto& v : f.v) v = d(rng);
  const double mean = g.integrate_S(f) / (2 * kPi * g.r());
  for (auto& v : f.v) v -= mean;
  EXPECT_LT(sup_diff(g.laplacian_S(g.inv_laplacian_S(f)), f), 1e-12);
  EXPECT_LT(sup_diff(g.inv_laplacian_S(g.laplacian_S(f)), f), 1e-12);
}

TEST(GridProperty, PeriodicIntegrationByParts) {
  const Grid g(5, 64, 1.3);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> d;
  for (int n = 0; n < 20; ++n) {
    OnS<double> f(64), h(64);
    for (int m = 0; m < 10; ++m) {
      const double a = d(rng), b = d(rng), c = d(rng), e = d(rng);
      for (int i = 0; i < 64; ++i) {
        f[i] += a * std::cos(m * g.x(i)) + b * std::sin(m * g.x(i));
        h[i] += c * std::cos(m * g.x(i)) + e * std::sin(m * g.x(i));
      }
    }
    const auto dff = zip(g.d_x(f), h, [](double p, double q) { return p * q; });
    const auto fdh = zip(f, g.d_x(h), [](double p, double q) { return p * q; });
    EXPECT_NEAR(g.integrate_S(dff), -g.integrate_S(fdh), 1e-10);
  }
}

TEST(GridTransport, TrivialCases) {
  const Grid g(21, 8);
  AlgSigma<SU2> zero(21, 8);
  AlgS<SU2> init(8);
  for (int i = 0; i < 8; ++i) init[i] = SU2::A{{1.0 * i, -0.5, 0.25}};
  for (auto dir : {Direction::Forward, Direction::Backward}) {
    const auto Y = transport_ode<SU2>(g, zero, zero, init, dir);
    for (int j = 0; j < 21; ++j)
      for (int i = 0; i < 8; ++i) EXPECT_LT(max_abs(Y(j, i) - init[i]), 1e-15);
  }
}

TEST(GridTransport, AbelianIsQuadrature) {
  const Grid g(201, 8);
  AlgSigma<CircleU1> coef(201, 8), src(201, 8);
  for (int j = 0; j < 201; ++j)
    for (int i = 0; i < 8; ++i) {
      coef(j, i)[0] = 3.0 * std::sin(g.u(j) + g.x(i));
      src(j, i)[0] = std::exp(g.u(j)) * std::cos(g.x(i));
    }
  AlgS<CircleU1> init(8, CircleU1::A{{0.5}});
  const auto Y = transport_ode<CircleU1>(g, coef, src, init, Direction::Forward);
  for (int j = 0; j < 201; ++j)
    for (int i = 0; i < 8; ++i) {
      const double exact = 0.5 + (std::exp(g.u(j)) - std::exp(-1.0)) * std::cos(g.x(i));
      EXPECT_NEAR(Y(j, i)[0], exact, 1e-9);
    }
}

double su2_constant_coefficient_error(int nu, double theta) {
  const Grid g(nu, 8);
  AlgSigma<SU2> coef(nu, 8, SU2::A{{0, 0, theta}}), src(nu, 8);
  AlgS<SU2> init(8, basis_element<SU2>(0));
  const auto Y = transport_ode<SU2>(g, coef, src, init, Direction::Forward);
  double err = 0;
  for (int j = 0; j < nu; ++j) {
    // Oracle: rotation of tau_1 about tau_3 by -(u+1) theta.
    const double phi = -(g.u(j) + 1.0) * theta;
    const SU2::A exact{{std::cos(phi), std::sin(phi), 0.0}};
    for (int i = 0; i < 8; ++i) err = std::max(err, max_abs(Y(j, i) - exact));
  }
  return err;
}

TEST(GridTransport, SU2ConstantCoefficientClosedForm) {
  EXPECT_LT(su2_constant_coefficient_error(201, 0.7), 1e-8);
  // Same oracle through the group action.
  const double th = 0.7, u = 0.3;
  const SU2::A viaAd = SU2::Ad(SU2::exp(SU2::A{{0, 0, -(u + 1) * th}}), basis_element<SU2>(0));
  EXPECT_NEAR(viaAd[0], std::cos(-(u + 1) * th), 1e-15);
  EXPECT_NEAR(viaAd[1], std::sin(-(u + 1) * th), 1e-15);
}

TEST(GridTransport, FourthOrderConvergence) {
  const double e1 = su2_constant_coefficient_error(21, 5.0);
  const double e2 = su2_constant_coefficient_error(41, 5.0);
  EXPECT_GT(e1 / e2, 13.0);
  EXPECT_LT(e1 / e2, 19.0);
}

TEST(GridTransport, BackwardMatchesForward) {
  const Grid g(101, 8);
  AlgSigma<SU2> coef(101, 8), src(101, 8);
  for (int j = 0; j < 101; ++j)
    for (int i = 0; i < 8; ++i) {
      coef(j, i) = SU2::A{{std::sin(g.u(j)), 0.3 * g.u(j), std::cos(g.x(i))}};
      src(j, i) = SU2::A{{g.u(j) * g.u(j), 0.2, -0.1 * std::sin(g.x(i))}};
    }
  AlgS<SU2> init(8, SU2::A{{0.2, -0.3, 1.0}});
  const auto Yf = transport_ode<SU2>(g, coef, src, init, Direction::Forward);
  const auto Yb = transport_ode<SU2>(g, coef, src, Yf.fin(), Direction::Backward);
  EXPECT_LT(sup_norm(Yb - Yf), 1e-9);
}

TEST(GridTransport, SubstepsShrinkErrorAtFixedOrder) {
  // Variable coefficient, so the interpolated stage values matter.
  auto error = [](int nu, int substeps) {
    const Grid g(nu, 8);
    AlgSigma<SU2> coef(nu, 8), zero(nu, 8);
    for (int j = 0; j < nu; ++j)
      for (int i = 0; i < 8; ++i) coef(j, i) = SU2::A{{0.0, 0.0, 3.0 * g.u(j) * g.u(j)}};
    const auto Y = transport_ode<SU2>(g, coef, zero, AlgS<SU2>(8, basis_element<SU2>(0)), Direction::Forward, substeps);
    // Rotation angle -int_{-1}^{u} 3 s^2 ds = -(u^3 + 1).
    double e = 0;
    for (int j = 0; j < nu; ++j) {
      const double phi = -(std::pow(g.u(j), 3) + 1.0);
      e = std::max(e, max_abs(Y(j, 0) - SU2::A{{std::cos(phi), std::sin(phi), 0.0}}));
    }
    return e;
  };
  const double one = error(41, 1), two = error(41, 2);
  EXPECT_GT(one / two, 13.0);
  EXPECT_GT(error(21, 2) / two, 13.0);
  EXPECT_LT(error(21, 2) / two, 19.0);
}

}  // namespace
}  // namespace nym
