#ifndef ECS_CONFIGURATION_HPP
#define ECS_CONFIGURATION_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ecs/modulus.hpp"

namespace ecs {

inline constexpr double kDefaultDeltaMin = 1e-3;
inline constexpr double kSampleDeltaMin = 0.1;

/// Shortest distance between two angles on the circle, in [0, pi].
double angular_distance(double a, double b) noexcept;

/**
 * N particle coordinates x and M anti-particle coordinates y on the circle
 * [-pi, pi].  Every pair of points (x-x, y-y and x-y) is at least
 * delta_min apart, measured mod 2 pi.
 */
class Configuration {
public:
  Configuration(std::vector<double> x, std::vector<double> y,
                double delta_min = kDefaultDeltaMin);

  [[nodiscard]] std::span<const double> x() const noexcept { return x_; }
  [[nodiscard]] std::span<const double> y() const noexcept { return y_; }
  [[nodiscard]] std::size_t N() const noexcept { return x_.size(); }
  [[nodiscard]] std::size_t M() const noexcept { return y_.size(); }

  /// Smallest angular distance between any two of the N+M points (pi if
  /// there is only one point).
  [[nodiscard]] double min_separation() const noexcept;

  /// Copy with x_j (or y_J) moved by delta; no separation check.
  [[nodiscard]] Configuration shifted_x(std::size_t j, double delta) const;
  [[nodiscard]] Configuration shifted_y(std::size_t J, double delta) const;

  /// Copy with every coordinate moved by a (not wrapped back into [-pi, pi]).
  [[nodiscard]] Configuration translated(double a) const;

private:
  struct Unchecked {};
  Configuration(Unchecked, std::vector<double> x, std::vector<double> y);

  std::vector<double> x_;
  std::vector<double> y_;
};

/// splitmix64 finalizer, used to derive independent per-sample seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& rng) noexcept;

/**
 * Draws N + M points uniformly on [-pi, pi) with pairwise separation at
 * least delta_min.  A point that lands too close to an earlier one is
 * redrawn up to 100 times; if that fails the whole configuration is redrawn,
 * again up to 100 times, before DomainError is thrown.
 */
Configuration sample_configuration(std::size_t N, std::size_t M, double delta_min,
                                   std::mt19937_64& rng);

Configuration sample_configuration(std::size_t N, std::size_t M, double delta_min,
                                   std::uint64_t seed);

} // namespace ecs

#endif // ECS_CONFIGURATION_HPP
