#include "ecs/oracle.hpp"

#include <cmath>
#include <sstream>

#include "ecs/elliptic.hpp"

namespace ecs {

namespace {

double max_shift(const FDScheme& s) {
  return (s.order == 4 ? 2.0 : 1.0) * s.base_step;
}

} // namespace

void FDScheme::validate() const {
  if (order != 2 && order != 4) throw DomainError("FDScheme: order must be 2 or 4");
  if (!(base_step > 0.0) || !std::isfinite(base_step)) {
    throw DomainError("FDScheme: base_step must be positive");
  }
  if (richardson_levels < 0) throw DomainError("FDScheme: richardson_levels must be >= 0");
}

OracleHamiltonian fd_apply_H(const Configuration& cfg, const GeneralCoupling& g,
                             const ModulusParams& p, const FDScheme& scheme) {
  scheme.validate();
  const double reach = max_shift(scheme);
  if (cfg.N() + cfg.M() > 1 && cfg.min_separation() - reach < kDefaultDeltaMin) {
    std::ostringstream os;
    os << "fd_apply_H: stencil reach " << reach << " collides with separation "
       << cfg.min_separation();
    throw DomainError(os.str());
  }

  OracleHamiltonian out;
  double wx = 0.0;
  for (std::size_t j = 0; j < cfg.N(); ++j) {
    auto logG = [&](double t) { return log_G_general(cfg.shifted_x(j, t), g, p).real(); };
    const Derivatives d = fd_derivatives(logG, scheme);
    wx += d.second + d.first * d.first;
  }
  double wy = 0.0;
  for (std::size_t J = 0; J < cfg.M(); ++J) {
    auto logG = [&](double t) { return log_G_general(cfg.shifted_y(J, t), g, p).real(); };
    const Derivatives d = fd_derivatives(logG, scheme);
    wy += d.second + d.first * d.first;
  }

  const auto x = cfg.x();
  const auto y = cfg.y();
  double vx = 0.0, vy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = j + 1; k < x.size(); ++k) vx += potential_V_lattice(x[j] - x[k], p).value;
  for (std::size_t J = 0; J < y.size(); ++J)
    for (std::size_t K = J + 1; K < y.size(); ++K) vy += potential_V_lattice(y[J] - y[K], p).value;

  out.h_x = -wx + 2.0 * g.lambda1 * (g.lambda1 - 1.0) * vx;
  out.h_y = -wy + 2.0 * g.lambda2 * (g.lambda2 - 1.0) * vy;
  out.value = out.h_x - g.A * out.h_y;
  return out;
}

double fd_dbeta(const Configuration& cfg, const GeneralCoupling& g, const ModulusParams& p,
                const FDScheme& scheme) {
  scheme.validate();
  if (p.trigonometric()) throw DomainError("fd_dbeta: beta is infinite at q = 0");
  const double reach = max_shift(scheme);
  const double beta_lo = p.beta() - reach;
  const double beta_cap = -2.0 * std::log(kQCap);
  if (!(beta_lo > beta_cap)) {
    std::ostringstream os;
    os << "fd_dbeta: stencil beta " << beta_lo << " leaves the admissible range (> " << beta_cap
       << ")";
    throw DomainError(os.str());
  }
  auto logG = [&](double t) {
    return log_G_general(cfg, g, ModulusParams::from_beta(p.beta() + t, p.tail_eps())).real();
  };
  return fd_derivatives(logG, scheme).first;
}

} // namespace ecs
