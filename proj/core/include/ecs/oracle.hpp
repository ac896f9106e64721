#ifndef ECS_ORACLE_HPP
#define ECS_ORACLE_HPP

#include <cmath>
#include <vector>

#include "ecs/configuration.hpp"
#include "ecs/manybody.hpp"
#include "ecs/modulus.hpp"

// Finite-difference application of the eCS operators to log G.  Shares
// nothing with the analytic engine beyond log_G_general itself; potential
// terms use the lattice-sum V.

namespace ecs {

struct FDScheme {
  int order = 4;             ///< 2 or 4
  double base_step = 1e-3;   ///< radians for coordinates, also used for beta
  int richardson_levels = 1; ///< number of step halvings combined

  void validate() const;
};

struct OracleHamiltonian {
  double h_x = 0.0;   ///< (H_{l1,N}(x) G) / G
  double h_y = 0.0;   ///< (H_{l2,M}(y) G) / G
  double value = 0.0; ///< h_x - A h_y
};

/// First and second derivative of a scalar function at 0, Richardson
/// extrapolated over `richardson_levels` halvings of the base step.
struct Derivatives {
  double first = 0.0;
  double second = 0.0;
};

template <class F>
Derivatives fd_derivatives(F&& fn, const FDScheme& scheme);

/**
 * (H G)/G per coordinate from G''/G = (log G)'' + ((log G)')^2, with both
 * derivatives of Re log G taken by central differences.  Throws DomainError
 * if a stencil point would come within the pole guard of another particle.
 */
OracleHamiltonian fd_apply_H(const Configuration& cfg, const GeneralCoupling& g,
                             const ModulusParams& p, const FDScheme& scheme = {});

/// (d/dbeta G)/G by central differences of Re log G in beta.  Needs q > 0
/// and every stencil beta inside (0, beta(q_cap)).
double fd_dbeta(const Configuration& cfg, const GeneralCoupling& g, const ModulusParams& p,
                const FDScheme& scheme = {});

// ---------------------------------------------------------------------------

namespace detail {

template <class F>
Derivatives central(F& fn, double h, int order, double f0) {
  if (order == 2) {
    const double fp = fn(h), fm = fn(-h);
    return {(fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
  }
  const double f1 = fn(h), fm1 = fn(-h), f2 = fn(2.0 * h), fm2 = fn(-2.0 * h);
  return {(-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h),
          (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h)};
}

} // namespace detail

template <class F>
Derivatives fd_derivatives(F&& fn, const FDScheme& scheme) {
  scheme.validate();
  const double f0 = fn(0.0);
  const int levels = scheme.richardson_levels;
  // tableau[i] holds estimates with step base_step / 2^i
  std::vector<Derivatives> row;
  row.reserve(static_cast<std::size_t>(levels) + 1);
  double h = scheme.base_step;
  for (int i = 0; i <= levels; ++i, h *= 0.5) row.push_back(detail::central(fn, h, scheme.order, f0));
  int error_order = scheme.order;
  for (int lvl = 1; lvl <= levels; ++lvl) {
    const double factor = std::ldexp(1.0, error_order);
    for (std::size_t i = row.size() - 1; i >= static_cast<std::size_t>(lvl); --i) {
      row[i].first = (factor * row[i].first - row[i - 1].first) / (factor - 1.0);
      row[i].second = (factor * row[i].second - row[i - 1].second) / (factor - 1.0);
    }
    error_order += 2;
  }
  return row.back();
}

} // namespace ecs

#endif // ECS_ORACLE_HPP
