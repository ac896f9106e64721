#include <cmath>

#include <gtest/gtest.h>

#include "ecs/elliptic.hpp"
#include "ecs/oracle.hpp"

using namespace ecs;

TEST(FiniteDifference, Polynomial) {
  // exact for a quartic at order 4
  auto fn = [](double t) { return 1.0 + 2.0 * t - 3.0 * t * t + t * t * t * t; };
  const auto d = fd_derivatives(fn, FDScheme{});
  EXPECT_NEAR(d.first, 2.0, 1e-9);
  EXPECT_NEAR(d.second, -6.0, 1e-6);
}

TEST(FiniteDifference, SecondOrderWithRichardson) {
  auto fn = [](double t) { return std::sin(0.3 + t); };
  const auto d = fd_derivatives(fn, FDScheme{2, 1e-2, 2});
  EXPECT_NEAR(d.first, std::cos(0.3), 1e-9);
  EXPECT_NEAR(d.second, -std::sin(0.3), 1e-7);
}

TEST(FiniteDifference, SchemeValidation) {
  EXPECT_THROW((FDScheme{3, 1e-3, 1}.validate()), DomainError);
  EXPECT_THROW((FDScheme{4, 0.0, 1}.validate()), DomainError);
  EXPECT_THROW((FDScheme{4, 1e-3, -1}.validate()), DomainError);
  EXPECT_NO_THROW((FDScheme{2, 1e-3, 0}.validate()));
}

TEST(Oracle, MatchesAnalytic) {
  const auto p = ModulusParams::from_q(0.5);
  const Configuration cfg({-2.1, 0.3, 1.5}, {-0.8, 2.4});
  for (const auto& g : {GeneralCoupling::main_family(1.5), GeneralCoupling::dual_family(0.7),
                        GeneralCoupling{0.8, 1.7, 0.6, 0.9}}) {
    const auto a = apply_H_logform(cfg, g, p);
    const auto o = fd_apply_H(cfg, g, p);
    EXPECT_NEAR(o.value, a.value, 1e-6 * a.scale());
    EXPECT_NEAR(o.h_x, a.h_x, 1e-6 * a.scale());
    const double db = dbeta_logform(cfg, g, p);
    EXPECT_NEAR(fd_dbeta(cfg, g, p), db, 1e-8 * std::max(1.0, std::abs(db)));
  }
}

TEST(Oracle, TrigonometricLimit) {
  const auto p = ModulusParams::from_q(0.0);
  const Configuration cfg({-1.0, 0.2, 2.0}, {});
  const auto g = GeneralCoupling::main_family(2.0);
  const auto o = fd_apply_H(cfg, g, p);
  EXPECT_NEAR(o.value, 4.0 * 3 * 8 / 12.0, 1e-6);
  EXPECT_THROW(fd_dbeta(cfg, g, p), DomainError);
}

TEST(Oracle, RefusesStencilsNearPoles) {
  const auto p = ModulusParams::from_q(0.3);
  const Configuration cfg({0.0, 0.0025}, {}, 1e-3);
  EXPECT_THROW(fd_apply_H(cfg, GeneralCoupling::main_family(1.0), p), DomainError);
}

TEST(Oracle, RefusesBetaStencilPastNomeCap) {
  const auto p = ModulusParams::from_q(0.9499);
  const Configuration cfg({-1.0, 1.0}, {});
  EXPECT_THROW(fd_dbeta(cfg, GeneralCoupling::main_family(1.0), p), DomainError);
}
