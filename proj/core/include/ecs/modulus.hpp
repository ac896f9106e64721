#ifndef ECS_MODULUS_HPP
#define ECS_MODULUS_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecs {

/// Raised when an argument lies outside the domain an operation supports
/// (invalid nome, argument outside the convergence strip, bad coupling...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised when an elliptic function is evaluated too close to a zero of theta.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

inline constexpr double kDefaultTailEps = 1e-16;
inline constexpr double kQCap = 0.95;
inline constexpr double kPoleEps = 1e-12;
inline constexpr double kStripMargin = 0.1;

/// A truncated series or product together with a certified bound on the
/// magnitude of everything that was dropped.
template <class T>
struct SeriesValue {
  T value{};
  double tail_bound = 0.0;
};

/**
 * Elliptic modulus for the lattice (2 pi, i beta).
 *
 * The nome is q = exp(-beta/2); q = 0 (beta = +inf) is the trigonometric
 * limit, in which every series below is empty and evaluated exactly.
 *
 * n_max is the truncation index shared by all q^(2n) series and products.
 * It is the smallest n with q^(2n) / (1 - q^2) < tail_eps, unless a larger
 * value is requested explicitly (used for refinement checks).  The powers
 * q^(2n) = exp(-n beta), n = 1..n_max, are precomputed.
 */
class ModulusParams {
public:
  static ModulusParams from_q(double q, double tail_eps = kDefaultTailEps);
  static ModulusParams from_beta(double beta, double tail_eps = kDefaultTailEps);

  /// Same modulus with a larger truncation index.  Throws DomainError if
  /// n_max would fall below the one required by tail_eps.
  [[nodiscard]] ModulusParams with_n_max(std::size_t n_max) const;

  [[nodiscard]] double q() const noexcept { return q_; }
  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double tail_eps() const noexcept { return tail_eps_; }
  [[nodiscard]] std::size_t n_max() const noexcept { return q2n_.size(); }
  [[nodiscard]] bool trigonometric() const noexcept { return q_ == 0.0; }

  /// q^(2n) for n = 1..n_max (index 0 holds n = 1).
  [[nodiscard]] std::span<const double> q2n() const noexcept { return q2n_; }

  /// Geometric bound sum_{n > n_max} q^(2n) = q^(2(n_max+1)) / (1 - q^2).
  [[nodiscard]] double geometric_tail() const noexcept;

  /// Smallest n with q^(2n)/(1-q^2) < eps (0 when q = 0).
  static std::size_t required_terms(double q, double eps);

private:
  ModulusParams(double q, double beta, double tail_eps, std::size_t n_max);

  double q_ = 0.0;
  double beta_ = 0.0;
  double tail_eps_ = kDefaultTailEps;
  std::vector<double> q2n_;
};

std::string describe(const ModulusParams& p);

} // namespace ecs

#endif // ECS_MODULUS_HPP
