#include <cmath>

#include <gtest/gtest.h>

#include "ecs/verifier.hpp"

using namespace ecs;

namespace {
IdentityCase make_case(IdentityKind k, int N, int M, double l, double q, std::uint64_t seed) {
  IdentityCase c;
  c.kind = k;
  c.N = N;
  c.M = M;
  c.lambda = l;
  c.p = ModulusParams::from_q(q);
  c.seed = seed;
  return c;
}
} // namespace

TEST(Kinds, NamesRoundTrip) {
  EXPECT_EQ(all_identity_kinds().size(), 14u);
  for (auto k : all_identity_kinds()) EXPECT_EQ(parse_identity_kind(to_string(k)), k);
  EXPECT_FALSE(parse_identity_kind("bogus"));
}

TEST(Verify, MainAndDualPassAcrossCells) {
  for (double q : {0.0, 0.3, 0.85})
    for (double l : {0.5, 1.0, 2.0, 3.0})
      for (int N = 0; N <= 4; ++N)
        for (int M = 0; M <= 4; ++M) {
          if (N + M == 0) continue;
          const auto seed = static_cast<std::uint64_t>(100 * N + 10 * M + l * 2);
          const auto m = verify_main(make_case(IdentityKind::MainIdentity, N, M, l, q, seed));
          EXPECT_TRUE(m.pass) << N << ' ' << M << ' ' << l << ' ' << q << ' '
                              << m.relative_residual;
          const auto d = verify_dual(make_case(IdentityKind::DualIdentity, N, M, l, q, seed));
          EXPECT_TRUE(d.pass) << N << ' ' << M << ' ' << l << ' ' << q << ' '
                              << d.relative_residual;
        }
}

TEST(Verify, WrongConstantIsDetected) {
  // The main identity with the dual constant must fail: the check has teeth.
  auto c = make_case(IdentityKind::MainIdentity, 3, 1, 1.5, 0.5, 3);
  const auto cfg = resolve_configuration(c);
  const auto g = GeneralCoupling::main_family(1.5);
  const auto H = apply_H_logform(cfg, g, c.p);
  const double db = dbeta_logform(cfg, g, c.p);
  const double wrong = H.value + 2.0 * 2 * 1.5 * db - const_cNM_tilde(3, 1, 1.5, c.p);
  EXPECT_GT(std::abs(wrong) / H.scale(), 1e-3);
}

TEST(Verify, DiagonalNeedsNoConstant) {
  for (double q : {0.0, 0.6}) {
    const auto c = make_case(IdentityKind::MainIdentity, 3, 3, 1.7, q, 9);
    const auto cfg = resolve_configuration(c);
    const auto H = apply_H_logform(cfg, GeneralCoupling::main_family(1.7), c.p);
    EXPECT_NEAR(H.value, 0.0, 1e-8 * H.scale());
  }
}

TEST(Verify, OracleEngineAgrees) {
  for (double q : {0.0, 0.4}) {
    auto c = make_case(IdentityKind::MainIdentity, 3, 2, 1.5, q, 21);
    const auto a = verify_main(c);
    c.engine = Engine::Oracle;
    const auto o = verify_main(c);
    EXPECT_TRUE(o.pass) << o.relative_residual;
    EXPECT_LT(std::abs(o.relative_residual - a.relative_residual), 1e-5);
    EXPECT_EQ(o.tolerance, tolerance::kIdentityOracle);
  }
}

TEST(Verify, MomentumAndLForm) {
  for (double q : {0.0, 0.5}) {
    for (auto k : {IdentityKind::MomentumF, IdentityKind::MomentumFtilde})
      EXPECT_TRUE(verify_momentum(make_case(k, 4, 2, 0.8, q, 5)).pass);
    for (auto fam : {CouplingFamily::Main, CouplingFamily::Dual}) {
      auto c = make_case(IdentityKind::LOperatorForm, 3, 1, 1.2, q, 6);
      c.family = fam;
      EXPECT_TRUE(verify_L_operator_form(c).pass);
    }
  }
}

TEST(Verify, ScalarRelations) {
  for (double q : {0.0, 0.3, 0.9})
    for (const auto& r : verify_scalar_relations(ModulusParams::from_q(q)))
      EXPECT_TRUE(r.pass) << r.label << " q=" << q << " rel=" << r.relative_residual;
}

TEST(Verify, HeatSutherlandGaugePhases) {
  for (double l : {1.0, 2.0, 0.4})
    EXPECT_TRUE(verify_heat_equation(l, 2.2, ModulusParams::from_q(0.3)).pass);
  EXPECT_TRUE(verify_sutherland_limit(5, 1.5).pass);
  auto g = make_case(IdentityKind::GaugeConsistency, 3, 2, 2.0, 0.5, 4);
  for (auto& r : verify(g)) EXPECT_TRUE(r.pass) << r.label;
  EXPECT_TRUE(verify_phases(7, 3, 0.6).pass);
}

TEST(Verify, DomainErrorsBecomeFailedReports) {
  auto c = make_case(IdentityKind::MainIdentity, 2, 1, 1.0, 0.3, 0);
  c.cfg = Configuration({0.0, 1.0}, {2.0});
  c.N = 3;
  const auto r = verify_main(c);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.note.empty());
  c = make_case(IdentityKind::MainIdentity, 2, 1, -1.0, 0.3, 0);
  EXPECT_FALSE(verify_main(c).pass);
}

TEST(Verify, ExplicitConfigurationIsUsed) {
  auto c = make_case(IdentityKind::MainIdentity, 2, 1, 1.5, 0.5, 0);
  c.cfg = Configuration({0.3, -1.2}, {2.0});
  const auto r = verify_main(c);
  ASSERT_TRUE(r.identity.cfg);
  EXPECT_EQ(r.identity.cfg->x()[1], -1.2);
  EXPECT_TRUE(r.pass);
}

TEST(Verify, MonotoneInTailEps) {
  // Halving tail_eps must not make any relative residual more than 2x worse.
  for (double q : {0.25, 0.75}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto c = make_case(IdentityKind::MainIdentity, 3, 2, 1.5, q, seed);
      c.p = ModulusParams::from_q(q, 1e-10);
      const double coarse = verify_main(c).relative_residual;
      c.p = ModulusParams::from_q(q, 5e-11);
      const double fine = verify_main(c).relative_residual;
      EXPECT_LE(fine, std::max(2.0 * coarse, 1e-15));
    }
  }
}

TEST(Sweep, EmptyGrid) {
  SweepGrid g;
  g.lambdas.clear();
  EXPECT_TRUE(sweep(g).reports.empty());
}

TEST(Sweep, SingleCell) {
  SweepGrid g;
  g.sizes = {{2, 1}};
  g.lambdas = {1.0};
  g.qs = {0.3};
  g.configs = 5;
  const auto r = sweep(g);
  EXPECT_GE(r.reports.size(), 5u);
  EXPECT_TRUE(r.all_pass());
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].failures, 0u);
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  SweepGrid g;
  g.n_cap = 3;
  g.configs = 3;
  g.threads = 1;
  const auto a = sweep(g);
  g.threads = 4;
  const auto b = sweep(g);
  ASSERT_EQ(a.reports.size(), b.reports.size());
  for (std::size_t i = 0; i < a.reports.size(); ++i) {
    EXPECT_EQ(a.reports[i].residual, b.reports[i].residual);
    EXPECT_EQ(a.reports[i].label, b.reports[i].label);
  }
}

TEST(Sweep, InvalidGridThrows) {
  SweepGrid g;
  g.qs = {0.97};
  EXPECT_THROW(sweep(g), DomainError);
}

TEST(Selftest, AllPass) {
  for (const auto& r : selftest()) EXPECT_TRUE(r.pass) << r.label << ' ' << r.note;
}
