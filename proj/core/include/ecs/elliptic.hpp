#ifndef ECS_ELLIPTIC_HPP
#define ECS_ELLIPTIC_HPP

#include <complex>

#include "ecs/modulus.hpp"

// Scalar elliptic building blocks for the lattice (2 pi, i beta):
//
//   theta(z) = sin(z/2) prod_{n>=1} (1 - 2 q^{2n} cos z + q^{4n})
//   phi(x)   = d/dx log theta(x)
//   V(r)     = -d^2/dr^2 log theta(r) = sum_m 1 / (4 sin^2((r + i beta m)/2))
//   f(x)     = (V(x) - phi(x)^2 - c0) / 2
//
// All real-argument evaluations go through log_theta_jet, which sums the
// log-derivative of every product factor in closed form.

namespace ecs {

/// Values of log theta and its derivatives at one real argument, from a
/// single pass over the product.
struct LogThetaJet {
  double log_abs = 0.0; ///< log |theta(x)|
  int sign = 1;         ///< sign of theta(x)
  double phi = 0.0;     ///< d/dx log theta
  double V = 0.0;       ///< -d^2/dx^2 log theta
  double dbeta = 0.0;   ///< d/dbeta log theta at fixed x
};

/// Throws PoleError when |sin(x/2)| < kPoleEps.
LogThetaJet log_theta_jet(double x, const ModulusParams& p);

/// log |theta(x)| and its sign, without the derivative sums.  Throws
/// PoleError like log_theta_jet.
struct LogAbsTheta {
  double log_abs = 0.0;
  int sign = 1;
};
LogAbsTheta log_abs_theta(double x, const ModulusParams& p);

SeriesValue<double> theta(double z, const ModulusParams& p);

/// Complex argument, restricted to |Im z| <= (1 - kStripMargin) beta.
SeriesValue<std::complex<double>> theta(std::complex<double> z, const ModulusParams& p);

/**
 * Sine series of the first Jacobi theta function, with q^{1/4} removed:
 *
 *   sum_{n>=1} (-1)^{n-1} q^{n(n-1)} sin((2n-1) u)
 *
 * so that the q = 0 value is sin(u).  Against this normalization
 * theta(z) = partition_Z(p) * vartheta1_series(z/2, p).
 */
SeriesValue<double> vartheta1_series(double u, const ModulusParams& p);

/// Production path: term-by-term second log-derivative of the product.
SeriesValue<double> potential_V(double r, const ModulusParams& p);

/// Lattice-sum path over |m| <= n_max with complex sine; used as a
/// cross-check of potential_V.
SeriesValue<double> potential_V_lattice(double r, const ModulusParams& p);

SeriesValue<double> phi(double x, const ModulusParams& p);
SeriesValue<double> f_func(double x, const ModulusParams& p);

/// d/dbeta log theta(x) at fixed x.
SeriesValue<double> dbeta_log_theta(double x, const ModulusParams& p);

/// c0 = 1/12 - sum 2 q^{2n} / (1 - q^{2n})^2.
SeriesValue<double> const_c0(const ModulusParams& p);

/// c0 = 1/12 - sum_m 1 / (2 sinh^2(beta m / 2)); same constant, hyperbolic form.
SeriesValue<double> const_c0_sinh(const ModulusParams& p);

/// c1 = 1/12 exactly.
constexpr double const_c1() noexcept { return 1.0 / 12.0; }

/// c1 written as 1/8 - sum n q^{2n}/(1 - q^{2n}) - c0/2.
SeriesValue<double> const_c1_series(const ModulusParams& p);

/// c2 = sum n q^{2n} / (1 - q^{2n}).
SeriesValue<double> const_c2(const ModulusParams& p);

/// sum q^{2m} / (1 - q^{2m})^2, which equals c2 (Lambert series rearrangement).
SeriesValue<double> const_c2_lambert(const ModulusParams& p);

/// Z = prod 1 / (1 - q^{2n}).
SeriesValue<double> partition_Z(const ModulusParams& p);

/// log Z, summed as -sum log(1 - q^{2n}).
SeriesValue<double> log_partition_Z(const ModulusParams& p);

} // namespace ecs

#endif // ECS_ELLIPTIC_HPP
