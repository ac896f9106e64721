#include "ecs/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ecs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxTries = 100;

} // namespace

double angular_distance(double a, double b) noexcept {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return d > kPi ? 2.0 * kPi - d : d;
}

Configuration::Configuration(Unchecked, std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {}

Configuration::Configuration(std::vector<double> x, std::vector<double> y, double delta_min)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.empty() && y_.empty()) {
    throw DomainError("configuration needs at least one coordinate (N + M >= 1)");
  }
  auto in_range = [](double v) { return std::isfinite(v) && v >= -kPi && v <= kPi; };
  if (!std::all_of(x_.begin(), x_.end(), in_range) ||
      !std::all_of(y_.begin(), y_.end(), in_range)) {
    throw DomainError("coordinates must lie in [-pi, pi]");
  }
  if (const double sep = min_separation(); sep < delta_min) {
    std::ostringstream os;
    os << "configuration points closer than delta_min = " << delta_min << " (min separation "
       << sep << ")";
    throw DomainError(os.str());
  }
}

double Configuration::min_separation() const noexcept {
  std::vector<double> all(x_);
  all.insert(all.end(), y_.begin(), y_.end());
  double best = kPi;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t k = i + 1; k < all.size(); ++k) {
      best = std::min(best, angular_distance(all[i], all[k]));
    }
  }
  return best;
}

Configuration Configuration::shifted_x(std::size_t j, double delta) const {
  auto x = x_;
  x.at(j) += delta;
  return Configuration(Unchecked{}, std::move(x), y_);
}

Configuration Configuration::shifted_y(std::size_t J, double delta) const {
  auto y = y_;
  y.at(J) += delta;
  return Configuration(Unchecked{}, x_, std::move(y));
}

Configuration Configuration::translated(double a) const {
  auto x = x_;
  auto y = y_;
  for (double& v : x) v += a;
  for (double& v : y) v += a;
  return Configuration(Unchecked{}, std::move(x), std::move(y));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Configuration sample_configuration(std::size_t N, std::size_t M, double delta_min,
                                   std::mt19937_64& rng) {
  if (N + M == 0) throw DomainError("sample_configuration: N + M must be >= 1");
  if (!(delta_min > 0.0) || static_cast<double>(N + M) * delta_min >= 2.0 * kPi) {
    throw DomainError("sample_configuration: delta_min incompatible with N + M points");
  }
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    std::vector<double> pts;
    pts.reserve(N + M);
    bool ok = true;
    for (std::size_t i = 0; i < N + M && ok; ++i) {
      ok = false;
      for (int t = 0; t < kMaxTries; ++t) {
        const double v = -kPi + 2.0 * kPi * uniform01(rng);
        const bool clear = std::all_of(pts.begin(), pts.end(), [&](double u) {
          return angular_distance(u, v) >= delta_min;
        });
        if (clear) {
          pts.push_back(v);
          ok = true;
          break;
        }
      }
    }
    if (ok) {
      std::vector<double> x(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(N));
      std::vector<double> y(pts.begin() + static_cast<std::ptrdiff_t>(N), pts.end());
      return Configuration(std::move(x), std::move(y), delta_min);
    }
  }
  throw DomainError("sample_configuration: could not place points with requested separation");
}

Configuration sample_configuration(std::size_t N, std::size_t M, double delta_min,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_configuration(N, M, delta_min, rng);
}

} // namespace ecs
