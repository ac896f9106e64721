#include "ecs/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ecs {

namespace {

struct Tail {
  double rho = 0.0;   // q^{2(K+1)}: largest omitted q^{2n}
  double geom = 0.0;  // sum_{n>K} q^{2n}
  double nweighted = 0.0; // bound on sum_{n>K} n q^{2n}
};

Tail tail_of(const ModulusParams& p) {
  Tail t;
  if (p.trigonometric()) return t;
  const double q2 = p.q() * p.q();
  const auto K = static_cast<double>(p.n_max());
  t.rho = std::exp(-(K + 1.0) * p.beta());
  t.geom = t.rho / (1.0 - q2);
  t.nweighted = t.rho * (K + 1.0) / ((1.0 - q2) * (1.0 - q2));
  return t;
}

void pole_check(double s, double x) {
  if (std::abs(s) < kPoleEps) {
    std::ostringstream os;
    os << "argument " << x << " is within the pole guard of a zero of theta";
    throw PoleError(os.str());
  }
}

// Bounds on the omitted parts of phi, V and d/dbeta log theta.
struct JetTail {
  double log_abs = 0.0;
  double phi = 0.0;
  double V = 0.0;
  double dbeta = 0.0;
};

JetTail jet_tail(const ModulusParams& p) {
  const Tail t = tail_of(p);
  JetTail j;
  if (t.rho == 0.0) return j;
  const double one_minus = 1.0 - t.rho;
  j.log_abs = 3.0 * t.geom;
  j.phi = 2.0 * t.geom / (one_minus * one_minus);
  j.V = 12.0 * t.geom / std::pow(one_minus, 4);
  j.dbeta = 4.0 * t.nweighted / (one_minus * one_minus);
  return j;
}

} // namespace

LogThetaJet log_theta_jet(double x, const ModulusParams& p) {
  const double s = std::sin(0.5 * x);
  const double c = std::cos(0.5 * x);
  pole_check(s, x);

  LogThetaJet jet;
  jet.log_abs = std::log(std::abs(s));
  jet.sign = s < 0.0 ? -1 : 1;
  jet.phi = 0.5 * c / s;
  jet.V = 0.25 / (s * s);
  if (p.trigonometric()) return jet;

  const double cx = std::cos(x);
  const double sx = std::sin(x);
  const double s2 = s * s;
  const auto q2n = p.q2n();
  double log_acc = 0.0;
  double phi_acc = 0.0;
  double v_acc = 0.0;
  double db_acc = 0.0;
  for (std::size_t i = 0; i < q2n.size(); ++i) {
    const double a = q2n[i];
    const double n = static_cast<double>(i + 1);
    // 1 - 2a cos x + a^2, written to stay accurate near x = 0
    const double D = (1.0 - a) * (1.0 - a) + 4.0 * a * s2;
    log_acc += std::log1p(a * (a - 2.0 * cx));
    phi_acc += 2.0 * a * sx / D;
    v_acc += (2.0 * a * cx * D - 4.0 * a * a * sx * sx) / (D * D);
    db_acc += 2.0 * n * a * (cx - a) / D;
  }
  jet.log_abs += log_acc;
  jet.phi += phi_acc;
  jet.V -= v_acc;
  jet.dbeta = db_acc;
  return jet;
}

LogAbsTheta log_abs_theta(double x, const ModulusParams& p) {
  const double s = std::sin(0.5 * x);
  pole_check(s, x);
  const double cx = std::cos(x);
  double acc = 0.0;
  for (double a : p.q2n()) acc += std::log1p(a * (a - 2.0 * cx));
  return {std::log(std::abs(s)) + acc, s < 0.0 ? -1 : 1};
}

SeriesValue<double> theta(double z, const ModulusParams& p) {
  double value = std::sin(0.5 * z);
  const double cz = std::cos(z);
  for (double a : p.q2n()) value *= 1.0 - 2.0 * a * cz + a * a;
  const double tail_log = jet_tail(p).log_abs;
  return {value, std::abs(value) * std::expm1(tail_log)};
}

SeriesValue<std::complex<double>> theta(std::complex<double> z, const ModulusParams& p) {
  const double y = std::abs(z.imag());
  if (!std::isfinite(z.real()) || !std::isfinite(y)) {
    throw DomainError("theta: non-finite argument");
  }
  if (!p.trigonometric() && y > (1.0 - kStripMargin) * p.beta()) {
    std::ostringstream os;
    os << "theta: |Im z| = " << y << " outside the strip " << (1.0 - kStripMargin) * p.beta();
    throw DomainError(os.str());
  }
  std::complex<double> value = std::sin(0.5 * z);
  if (p.trigonometric()) return {value, 0.0};

  const std::complex<double> cz = std::cos(z);
  const double q2 = p.q() * p.q();
  // |a e^{+-iz}| <= exp(y - n beta); extend past n_max until that is below tail_eps.
  std::size_t n = 1;
  double tail_log = 0.0;
  for (;; ++n) {
    const double a = std::exp(-static_cast<double>(n) * p.beta());
    const double r = a * std::exp(y);
    if (n > p.n_max() && r / (1.0 - q2) < p.tail_eps()) {
      // sum_{m>=n} (2 r_m + a_m^2) with geometric ratio q^2
      tail_log = (2.0 * r + a * a) / (1.0 - q2);
      break;
    }
    value *= 1.0 - 2.0 * a * cz + a * a;
  }
  return {value, std::abs(value) * std::expm1(tail_log)};
}

SeriesValue<double> vartheta1_series(double u, const ModulusParams& p) {
  const double q = p.q();
  double sum = std::sin(u);
  if (q == 0.0) return {sum, 0.0};
  // term n carries q^{n(n-1)}; consecutive ratio q^{2n}
  double weight = 1.0;
  std::size_t n = 1;
  for (;;) {
    const double next = weight * std::pow(q, 2.0 * static_cast<double>(n));
    const double tail = next / (1.0 - std::pow(q, 2.0 * static_cast<double>(n + 1)));
    if (tail < p.tail_eps()) return {sum, tail};
    ++n;
    weight = next;
    const double sgn = (n % 2 == 0) ? -1.0 : 1.0;
    sum += sgn * weight * std::sin(static_cast<double>(2 * n - 1) * u);
  }
}

SeriesValue<double> potential_V(double r, const ModulusParams& p) {
  const LogThetaJet jet = log_theta_jet(r, p);
  return {jet.V, jet_tail(p).V};
}

SeriesValue<double> potential_V_lattice(double r, const ModulusParams& p) {
  const double s = std::sin(0.5 * r);
  pole_check(s, r);
  double sum = 0.25 / (s * s);
  if (p.trigonometric()) return {sum, 0.0};
  const auto M = static_cast<long>(p.n_max());
  // pair m and -m so the small terms are added to each other first
  double lattice = 0.0;
  for (long m = M; m >= 1; --m) {
    const double im = p.beta() * static_cast<double>(m);
    const std::complex<double> sp = std::sin(std::complex<double>(r, im) * 0.5);
    const std::complex<double> sm = std::sin(std::complex<double>(r, -im) * 0.5);
    lattice += (0.25 / (sp * sp)).real() + (0.25 / (sm * sm)).real();
  }
  sum += lattice;
  const Tail t = tail_of(p);
  const double one_minus = 1.0 - t.rho;
  return {sum, 2.0 * t.geom / (one_minus * one_minus)};
}

SeriesValue<double> phi(double x, const ModulusParams& p) {
  return {log_theta_jet(x, p).phi, jet_tail(p).phi};
}

SeriesValue<double> f_func(double x, const ModulusParams& p) {
  const LogThetaJet jet = log_theta_jet(x, p);
  const auto c0 = const_c0(p);
  const JetTail t = jet_tail(p);
  const double value = 0.5 * (jet.V - jet.phi * jet.phi - c0.value);
  const double tail =
      0.5 * (t.V + 2.0 * std::abs(jet.phi) * t.phi + t.phi * t.phi + c0.tail_bound);
  return {value, tail};
}

SeriesValue<double> dbeta_log_theta(double x, const ModulusParams& p) {
  return {log_theta_jet(x, p).dbeta, jet_tail(p).dbeta};
}

SeriesValue<double> const_c0(const ModulusParams& p) {
  double sum = 0.0;
  for (double a : p.q2n()) sum += 2.0 * a / ((1.0 - a) * (1.0 - a));
  const Tail t = tail_of(p);
  const double one_minus = 1.0 - t.rho;
  return {1.0 / 12.0 - sum, 2.0 * t.geom / (one_minus * one_minus)};
}

SeriesValue<double> const_c0_sinh(const ModulusParams& p) {
  double sum = 0.0;
  for (std::size_t m = 1; m <= p.n_max(); ++m) {
    const double sh = std::sinh(0.5 * p.beta() * static_cast<double>(m));
    sum += 0.5 / (sh * sh);
  }
  const Tail t = tail_of(p);
  const double one_minus = 1.0 - t.rho;
  return {1.0 / 12.0 - sum, 2.0 * t.geom / (one_minus * one_minus)};
}

SeriesValue<double> const_c1_series(const ModulusParams& p) {
  const auto c2 = const_c2(p);
  const auto c0 = const_c0(p);
  return {0.125 - c2.value - 0.5 * c0.value, c2.tail_bound + 0.5 * c0.tail_bound};
}

SeriesValue<double> const_c2(const ModulusParams& p) {
  double sum = 0.0;
  const auto q2n = p.q2n();
  for (std::size_t i = 0; i < q2n.size(); ++i) {
    const double a = q2n[i];
    sum += static_cast<double>(i + 1) * a / (1.0 - a);
  }
  const Tail t = tail_of(p);
  return {sum, t.nweighted / (1.0 - t.rho)};
}

SeriesValue<double> const_c2_lambert(const ModulusParams& p) {
  double sum = 0.0;
  for (double a : p.q2n()) sum += a / ((1.0 - a) * (1.0 - a));
  const Tail t = tail_of(p);
  const double one_minus = 1.0 - t.rho;
  return {sum, t.geom / (one_minus * one_minus)};
}

SeriesValue<double> log_partition_Z(const ModulusParams& p) {
  double sum = 0.0;
  for (double a : p.q2n()) sum -= std::log1p(-a);
  const Tail t = tail_of(p);
  return {sum, t.geom / (1.0 - t.rho)};
}

SeriesValue<double> partition_Z(const ModulusParams& p) {
  double prod = 1.0;
  for (double a : p.q2n()) prod /= 1.0 - a;
  const double tail_log = log_partition_Z(p).tail_bound;
  return {prod, prod * std::expm1(tail_log)};
}

} // namespace ecs
