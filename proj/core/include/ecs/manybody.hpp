#ifndef ECS_MANYBODY_HPP
#define ECS_MANYBODY_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecs/configuration.hpp"
#include "ecs/modulus.hpp"

// Theta-power products in N + M variables,
//
//   G(x; y) = prod_{j<k} theta(x_k - x_j)^l1 prod_{J<K} theta(y_J - y_K)^l2
//             / prod_{j,K} theta(x_j - y_K)^l3,
//
// and the closed-form action of the eCS Hamiltonians
//
//   H_{l,N}(x) = -sum_j d^2/dx_j^2 + 2 l (l - 1) sum_{j<k} V(x_j - x_k),
//
// the total momenta and d/dbeta on them.  Everything is returned in log form,
// (operator G) / G, which is free of the branch of theta^l.

namespace ecs {

struct CouplingParams {
  explicit CouplingParams(double lambda);
  double lambda;
};

/// Exponents (l1, l2, l3) of G and the weight A in H_{l1,N}(x) - A H_{l2,M}(y).
struct GeneralCoupling {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double A = 1.0;

  /// (l, l, l; A = 1): G = F_{N,M}.
  static GeneralCoupling main_family(double lambda);
  /// (l, 1/l, -1; A = -l): G = F~_{N,M}.
  static GeneralCoupling dual_family(double lambda);
};

enum class CouplingFamily { None, Main, Dual };

const char* to_string(CouplingFamily f) noexcept;

/**
 * Parameter conditions under which W reduces to single-pair f-sums.
 *
 *   cond1: (1 - A) l3 (l3 + 1) = 0
 *   cond2: l3 = A l2 and A l3 = l1
 *   cond3: C_i = C l_i (i = 1, 2, 3) for one common C
 *
 * with C1 = 2(N l1^2 - A M l3^2), C2 = 2(N l3^2 - A M l2^2),
 * C3 = 2(A N - M) l3^2.
 */
struct ConditionReport {
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  /// C0 = c0_coefficient * c0.
  double c0_coefficient = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  std::optional<double> C;
  CouplingFamily family = CouplingFamily::None;
  /// cond1 and cond2 hold, or N M = 0 (no cross pairs to reduce).
  bool reducible = false;

  [[nodiscard]] bool valid() const noexcept { return cond1 && cond2 && cond3; }
};

ConditionReport check_conditions(const GeneralCoupling& g, int N, int M);

struct LogFormTerm {
  std::string label;
  double value = 0.0;
};

struct ReducedForm {
  double value = 0.0;
  std::vector<LogFormTerm> components; ///< C0, C1 sum f_x, C2 sum f_y, -C3 sum f_xy
};

/**
 * Result of applying H_{l1,N}(x) - A H_{l2,M}(y) to G, divided by G.
 *
 * `value` is assembled from the grouped sums W1..W4 plus the potential
 * terms, so that value == sum of `components`.  `h_x` and `h_y` are the two
 * Hamiltonians applied separately, each computed from the per-coordinate
 * log-gradients; h_x - A h_y reproduces `value` up to rounding.
 *
 * Sign convention: W = (1/G)(sum d^2_x - A sum d^2_y) G and
 * (H_{l1,N}(x) - A H_{l2,M}(y)) G / G = -W + 2 l1(l1-1) sum V_x
 *                                         - 2 A l2(l2-1) sum V_y.
 */
struct LogFormResult {
  double value = 0.0;
  double h_x = 0.0;
  double h_y = 0.0;
  double w = 0.0;        ///< W1 + W2 + W3 + W4
  double w_direct = 0.0; ///< sum_j G_{x_j x_j}/G - A sum_J G_{y_J y_J}/G
  std::vector<LogFormTerm> components;
  ConditionReport conditions;
  std::optional<ReducedForm> reduced;

  /// Largest magnitude among value, h_x, h_y and the components.
  [[nodiscard]] double scale() const noexcept;
};

/// Total momenta in units of i: (sum_j d/dx_j log G, sum_J d/dy_J log G).
struct MomentumResult {
  double p_x = 0.0;
  double p_y = 0.0;
  /// Largest single-coordinate log-gradient that entered p_x or p_y.
  double scale = 0.0;
};

struct Phases {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// log G with the principal branch per theta factor (Im in (-pi, pi] before
/// multiplying by the exponent).  The real part is branch free.
std::complex<double> log_G_general(const Configuration& cfg, const GeneralCoupling& g,
                                   const ModulusParams& p);
std::complex<double> log_F(const Configuration& cfg, const CouplingParams& c,
                           const ModulusParams& p);
std::complex<double> log_F_tilde(const Configuration& cfg, const CouplingParams& c,
                                 const ModulusParams& p);

LogFormResult apply_H_logform(const Configuration& cfg, const GeneralCoupling& g,
                              const ModulusParams& p);

MomentumResult apply_P_logform(const Configuration& cfg, const GeneralCoupling& g,
                               const ModulusParams& p);

/// (d/dbeta G) / G from d/dbeta log theta of each pair.
double dbeta_logform(const Configuration& cfg, const GeneralCoupling& g, const ModulusParams& p);

/// Same quantity written through f: l1 sum [c1 - f] + l2 sum [c1 - f] - l3 sum [c1 - f].
double dbeta_logform_via_f(const Configuration& cfg, const GeneralCoupling& g,
                           const ModulusParams& p);

/// c_{N,M} = l^2 [N(N-1) - M(M-1)] c0 + (N-M) l^2 [N(N-1) + M(M-1) - 2NM] c1.
double const_cNM(int N, int M, double lambda, const ModulusParams& p);
/// c_{N,M} = l^2 (N-M) [(N-M)^2 - 1] / 12 - 2 l^2 (N-M)(N+M-1) c2.
double const_cNM_c2form(int N, int M, double lambda, const ModulusParams& p);

double const_cNM_tilde(int N, int M, double lambda, const ModulusParams& p);
double const_cNM_tilde_c2form(int N, int M, double lambda, const ModulusParams& p);

/**
 * Constants after V -> V - b0 and theta -> theta / B1 with
 * d log B1 / d beta = b1.  For b0 = c0, b1 = c1 these reduce to
 * gauge_simplified_constants.
 */
std::pair<double, double> gauge_transform_constants(int N, int M, double lambda, double b0,
                                                    double b1, const ModulusParams& p);

/// l [N(N-1) - M(M-1)] c0 and [l N(N-1) + M(M-1) + (1+l) N M] c0.
std::pair<double, double> gauge_simplified_constants(int N, int M, double lambda,
                                                     const ModulusParams& p);

/// Center-of-mass momenta p1 = (nu^2 N - nu mu M)/2, p2 = (mu^2 M - nu mu N)/2.
Phases correlation_phases(int N, int M, double nu, double mu) noexcept;

} // namespace ecs

#endif // ECS_MANYBODY_HPP
