#ifndef ECS_VERIFIER_HPP
#define ECS_VERIFIER_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecs/configuration.hpp"
#include "ecs/manybody.hpp"
#include "ecs/modulus.hpp"
#include "ecs/oracle.hpp"

namespace ecs {

enum class IdentityKind {
  MainIdentity,
  DualIdentity,
  MomentumF,
  MomentumFtilde,
  Rel1,
  Rel2,
  Rel3,
  LambertSum,
  HeatEquation,
  SutherlandLimit,
  ConstantConsistency,
  GaugeConsistency,
  PhaseConsistency,
  LOperatorForm,
};

/// Command-line spelling: "main", "dual", "momentum-f", ...
std::string_view to_string(IdentityKind k) noexcept;
std::optional<IdentityKind> parse_identity_kind(std::string_view name) noexcept;
const std::vector<IdentityKind>& all_identity_kinds();

enum class Engine { Analytic, Oracle };
std::string_view to_string(Engine e) noexcept;

namespace tolerance {
inline constexpr double kIdentity = 1e-8;
inline constexpr double kIdentityOracle = 1e-5;
inline constexpr double kMomentum = 1e-11;
inline constexpr double kRel1 = 1e-7;
inline constexpr double kRel2 = 1e-10;
inline constexpr double kRel3 = 1e-8;
inline constexpr double kRel3Analytic = 1e-10;
inline constexpr double kLambert = 1e-13;
inline constexpr double kC0Consistency = 1e-13;
inline constexpr double kConstantForms = 1e-12;
inline constexpr double kHeat = 1e-9;
inline constexpr double kSutherland = 1e-9;
inline constexpr double kGauge = 1e-12;
inline constexpr double kPhase = 4.0 * 2.220446049250313e-16;
inline constexpr double kLOperator = 1e-14;
inline constexpr double kConcordanceH = 1e-6;
inline constexpr double kConcordanceBeta = 1e-8;
} // namespace tolerance

struct IdentityCase {
  IdentityKind kind = IdentityKind::MainIdentity;
  int N = 0;
  int M = 0;
  double lambda = 1.0;
  ModulusParams p = ModulusParams::from_q(0.0);
  /// Explicit configuration; sampled from `seed` when absent.
  std::optional<Configuration> cfg;
  std::uint64_t seed = 0;
  double delta_min = kSampleDeltaMin;
  /// Which coupling family LOperatorForm and GaugeConsistency refer to.
  CouplingFamily family = CouplingFamily::Main;
  Engine engine = Engine::Analytic;
  /// Relative coordinate for HeatEquation.
  double x_arg = 1.0;
};

/**
 * Outcome of one residual check.  relative_residual = residual / scale when
 * scale > 0 (residual otherwise) and pass <=> relative_residual <= tolerance.
 * The scale is the largest magnitude of any additive term that entered the
 * residual.
 */
struct ResidualReport {
  IdentityCase identity;
  std::string label;
  double residual = 0.0;
  double scale = 0.0;
  double relative_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::chrono::nanoseconds wall_time{0};
  std::string note;
  std::vector<std::pair<std::string, double>> details;
};

/// The configuration a case refers to: cfg if given, else sampled from seed.
Configuration resolve_configuration(const IdentityCase& c);

ResidualReport verify_main(const IdentityCase& c);
ResidualReport verify_dual(const IdentityCase& c);
ResidualReport verify_momentum(const IdentityCase& c);
ResidualReport verify_heat_equation(double lambda, double x, const ModulusParams& p);
ResidualReport verify_sutherland_limit(int N, double lambda, int configs = 20,
                                       std::uint64_t seed = 1);
std::vector<ResidualReport> verify_scalar_relations(const ModulusParams& p,
                                                    std::uint64_t seed = 2005);
ResidualReport verify_L_operator_form(const IdentityCase& c);

/// c_{N,M} in its c0 form against its c2 form, and the same for the dual
/// constant; one report per constant.
std::vector<ResidualReport> verify_constant_forms(int N, int M, double lambda,
                                                  const ModulusParams& p);
/// Gauge-shifted constants against their simplified form, and the shifted
/// identity re-evaluated on a configuration with V -> V - c0, theta -> theta / B1.
ResidualReport verify_gauge(const IdentityCase& c);
ResidualReport verify_phases(int N, int M, double lambda);

/// Analytic (H G)/G against the finite-difference oracle.
ResidualReport verify_oracle_concordance_H(const IdentityCase& c,
                                           const FDScheme& scheme = {});
/// Analytic (d/dbeta G)/G against the oracle; needs q > 0.
ResidualReport verify_oracle_concordance_beta(const IdentityCase& c,
                                              const FDScheme& scheme = {});

/// Dispatch on c.kind.  Kinds that produce several reports return all of them.
std::vector<ResidualReport> verify(const IdentityCase& c);

struct SweepGrid {
  int n_cap = 6;
  /// Explicit (N, M) cells; when non-empty it replaces the n_cap triangle.
  std::vector<std::pair<int, int>> sizes;
  std::vector<double> lambdas{0.5, 1.0, 1.5, 2.0};
  std::vector<double> qs{0.0, 0.25, 0.5, 0.75};
  int configs = 20;
  std::uint64_t seed = 42;
  double delta_min = kSampleDeltaMin;
  double tail_eps = kDefaultTailEps;
  Engine engine = Engine::Analytic;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct CellSummary {
  int N = 0;
  int M = 0;
  double lambda = 0.0;
  double q = 0.0;
  std::size_t reports = 0;
  std::size_t failures = 0;
  double worst_relative = 0.0;
};

struct SweepResult {
  std::vector<ResidualReport> reports;
  std::vector<CellSummary> cells;

  [[nodiscard]] bool all_pass() const noexcept;
};

/**
 * Runs MainIdentity, DualIdentity, MomentumF, MomentumFtilde and
 * LOperatorForm (both families) on every cell 0 <= M <= N <= n_cap,
 * N >= 1 (or every entry of `sizes`), lambda, q of the grid, `configs` sampled configurations per
 * cell.  Cells run in parallel; output order is cell index, then config.
 */
SweepResult sweep(const SweepGrid& grid);

/// Scalar relations over q in {0, 0.1, ..., 0.9}, constant forms, gauge,
/// phases, heat equation, Sutherland limit and oracle concordance.
std::vector<ResidualReport> selftest();

} // namespace ecs

#endif // ECS_VERIFIER_HPP
