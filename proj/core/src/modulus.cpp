#include "ecs/modulus.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ecs {

namespace {

void check_tail_eps(double tail_eps) {
  if (!(tail_eps > 0.0) || !std::isfinite(tail_eps)) {
    throw DomainError("tail_eps must be a positive finite number");
  }
}

} // namespace

std::size_t ModulusParams::required_terms(double q, double eps) {
  if (q == 0.0) return 0;
  const double q2 = q * q;
  // q^(2n) < eps (1 - q^2)  <=>  n > log(eps (1 - q^2)) / log(q^2)
  const double bound = std::log(eps * (1.0 - q2)) / std::log(q2);
  auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(bound)));
  while (std::pow(q2, static_cast<double>(n)) / (1.0 - q2) >= eps) ++n;
  return n;
}

ModulusParams::ModulusParams(double q, double beta, double tail_eps, std::size_t n_max)
    : q_(q), beta_(beta), tail_eps_(tail_eps) {
  q2n_.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    q2n_.push_back(std::exp(-static_cast<double>(n) * beta));
  }
}

ModulusParams ModulusParams::from_q(double q, double tail_eps) {
  check_tail_eps(tail_eps);
  if (!(q >= 0.0) || !(q < kQCap)) {
    std::ostringstream os;
    os << "nome q = " << q << " outside [0, " << kQCap << ")";
    throw DomainError(os.str());
  }
  const double beta = q == 0.0 ? std::numeric_limits<double>::infinity() : -2.0 * std::log(q);
  return ModulusParams(q, beta, tail_eps, required_terms(q, tail_eps));
}

ModulusParams ModulusParams::from_beta(double beta, double tail_eps) {
  check_tail_eps(tail_eps);
  if (!(beta > 0.0)) {
    std::ostringstream os;
    os << "beta = " << beta << " must be positive";
    throw DomainError(os.str());
  }
  const double q = std::isinf(beta) ? 0.0 : std::exp(-0.5 * beta);
  if (!(q < kQCap)) {
    std::ostringstream os;
    os << "beta = " << beta << " gives nome q = " << q << " >= " << kQCap;
    throw DomainError(os.str());
  }
  return ModulusParams(q, beta, tail_eps, required_terms(q, tail_eps));
}

ModulusParams ModulusParams::with_n_max(std::size_t n_max) const {
  if (n_max < required_terms(q_, tail_eps_)) {
    throw DomainError("n_max below the truncation required by tail_eps");
  }
  return ModulusParams(q_, beta_, tail_eps_, n_max);
}

double ModulusParams::geometric_tail() const noexcept {
  if (q_ == 0.0) return 0.0;
  const double q2 = q_ * q_;
  return std::exp(-static_cast<double>(n_max() + 1) * beta_) / (1.0 - q2);
}

std::string describe(const ModulusParams& p) {
  std::ostringstream os;
  os << "q=" << p.q() << " beta=" << p.beta() << " n_max=" << p.n_max()
     << " tail_eps=" << p.tail_eps();
  return os.str();
}

} // namespace ecs
