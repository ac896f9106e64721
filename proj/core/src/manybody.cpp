#include "ecs/manybody.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ecs/elliptic.hpp"

namespace ecs {

namespace {

constexpr double kCondTol = 1e-12;

bool near(double a, double b) noexcept {
  return std::abs(a - b) <= kCondTol * std::max({1.0, std::abs(a), std::abs(b)});
}

void check_counts(int N, int M) {
  if (N < 0 || M < 0) throw DomainError("particle numbers N, M must be non-negative");
}

std::complex<double> principal_log(const LogAbsTheta& t) {
  return {t.log_abs, t.sign < 0 ? std::numbers::pi : 0.0};
}

// Jets of log theta at every ordered difference a - b that enters G and its
// derivatives.  Both orders are evaluated independently.
struct PairTable {
  std::size_t N = 0;
  std::size_t M = 0;
  std::vector<LogThetaJet> xx; // x_j - x_k, row-major N x N (diagonal unused)
  std::vector<LogThetaJet> yy; // y_J - y_K, M x M
  std::vector<LogThetaJet> xy; // x_j - y_K, N x M
  std::vector<LogThetaJet> yx; // y_J - x_k, M x N

  PairTable(const Configuration& cfg, const ModulusParams& p) : N(cfg.N()), M(cfg.M()) {
    const auto x = cfg.x();
    const auto y = cfg.y();
    xx.resize(N * N);
    yy.resize(M * M);
    xy.resize(N * M);
    yx.resize(M * N);
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        if (j != k) xx[j * N + k] = log_theta_jet(x[j] - x[k], p);
    for (std::size_t J = 0; J < M; ++J)
      for (std::size_t K = 0; K < M; ++K)
        if (J != K) yy[J * M + K] = log_theta_jet(y[J] - y[K], p);
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t K = 0; K < M; ++K) {
        xy[j * M + K] = log_theta_jet(x[j] - y[K], p);
        yx[K * N + j] = log_theta_jet(y[K] - x[j], p);
      }
  }

  const LogThetaJet& XX(std::size_t j, std::size_t k) const { return xx[j * N + k]; }
  const LogThetaJet& YY(std::size_t J, std::size_t K) const { return yy[J * M + K]; }
  const LogThetaJet& XY(std::size_t j, std::size_t K) const { return xy[j * M + K]; }
  const LogThetaJet& YX(std::size_t J, std::size_t k) const { return yx[J * N + k]; }
};

// Per-coordinate first and second derivatives of log G.
struct Gradients {
  std::vector<double> gx, gx2; // d/dx_j log G, d^2/dx_j^2 log G
  std::vector<double> gy, gy2;
};

Gradients gradients(const PairTable& t, const GeneralCoupling& g) {
  Gradients d;
  d.gx.assign(t.N, 0.0);
  d.gx2.assign(t.N, 0.0);
  d.gy.assign(t.M, 0.0);
  d.gy2.assign(t.M, 0.0);
  for (std::size_t j = 0; j < t.N; ++j) {
    double phi_x = 0.0, v_x = 0.0, phi_c = 0.0, v_c = 0.0;
    for (std::size_t k = 0; k < t.N; ++k) {
      if (k == j) continue;
      phi_x += t.XX(j, k).phi;
      v_x += t.XX(j, k).V;
    }
    for (std::size_t K = 0; K < t.M; ++K) {
      phi_c += t.XY(j, K).phi;
      v_c += t.XY(j, K).V;
    }
    d.gx[j] = g.lambda1 * phi_x - g.lambda3 * phi_c;
    d.gx2[j] = -g.lambda1 * v_x + g.lambda3 * v_c;
  }
  for (std::size_t J = 0; J < t.M; ++J) {
    double phi_y = 0.0, v_y = 0.0, phi_c = 0.0, v_c = 0.0;
    for (std::size_t K = 0; K < t.M; ++K) {
      if (K == J) continue;
      phi_y += t.YY(J, K).phi;
      v_y += t.YY(J, K).V;
    }
    for (std::size_t k = 0; k < t.N; ++k) {
      phi_c += t.YX(J, k).phi;
      v_c += t.YX(J, k).V;
    }
    d.gy[J] = g.lambda2 * phi_y - g.lambda3 * phi_c;
    d.gy2[J] = -g.lambda2 * v_y + g.lambda3 * v_c;
  }
  return d;
}

} // namespace

CouplingParams::CouplingParams(double l) : lambda(l) {
  if (!(l > 0.0) || !std::isfinite(l)) {
    std::ostringstream os;
    os << "coupling lambda = " << l << " must be positive";
    throw DomainError(os.str());
  }
}

GeneralCoupling GeneralCoupling::main_family(double lambda) {
  const CouplingParams c(lambda);
  return {c.lambda, c.lambda, c.lambda, 1.0};
}

GeneralCoupling GeneralCoupling::dual_family(double lambda) {
  const CouplingParams c(lambda);
  return {c.lambda, 1.0 / c.lambda, -1.0, -c.lambda};
}

const char* to_string(CouplingFamily f) noexcept {
  switch (f) {
  case CouplingFamily::Main: return "main";
  case CouplingFamily::Dual: return "dual";
  case CouplingFamily::None: break;
  }
  return "none";
}

ConditionReport check_conditions(const GeneralCoupling& g, int N, int M) {
  check_counts(N, M);
  const double l1 = g.lambda1, l2 = g.lambda2, l3 = g.lambda3, A = g.A;
  const double n = N, m = M;
  ConditionReport r;
  r.cond1 = near((1.0 - A) * l3 * (l3 + 1.0), 0.0);
  r.cond2 = near(l3, A * l2) && near(A * l3, l1);
  r.c0_coefficient = n * (n - 1.0) * l1 * l1 - A * m * (m - 1.0) * l2 * l2 + (1.0 - A) * l3 * l3 * n * m;
  r.C1 = 2.0 * (n * l1 * l1 - A * m * l3 * l3);
  r.C2 = 2.0 * (n * l3 * l3 - A * m * l2 * l2);
  r.C3 = 2.0 * (A * n - m) * l3 * l3;
  r.reducible = (r.cond1 && r.cond2) || N * M == 0;

  // common C, read off from the first non-zero exponent
  std::optional<double> C;
  if (l1 != 0.0) C = r.C1 / l1;
  else if (l2 != 0.0) C = r.C2 / l2;
  else if (l3 != 0.0) C = r.C3 / l3;
  else C = 0.0;
  r.cond3 = near(r.C1, *C * l1) && near(r.C2, *C * l2) && near(r.C3, *C * l3);
  if (r.cond3) r.C = C;

  if (r.valid()) {
    if (near(A, 1.0) && near(l1, l2) && near(l2, l3)) {
      r.family = CouplingFamily::Main;
    } else if (near(A, -l1) && near(l2 * l1, 1.0) && near(l3, -1.0)) {
      r.family = CouplingFamily::Dual;
    }
  }
  return r;
}

double LogFormResult::scale() const noexcept {
  double s = std::max({std::abs(value), std::abs(h_x), std::abs(h_y)});
  for (const auto& c : components) s = std::max(s, std::abs(c.value));
  return s;
}

std::complex<double> log_G_general(const Configuration& cfg, const GeneralCoupling& g,
                                   const ModulusParams& p) {
  const auto x = cfg.x();
  const auto y = cfg.y();
  std::complex<double> sx, sy, sc;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = j + 1; k < x.size(); ++k)
      sx += principal_log(log_abs_theta(x[k] - x[j], p));
  for (std::size_t J = 0; J < y.size(); ++J)
    for (std::size_t K = J + 1; K < y.size(); ++K)
      sy += principal_log(log_abs_theta(y[J] - y[K], p));
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t K = 0; K < y.size(); ++K)
      sc += principal_log(log_abs_theta(x[j] - y[K], p));
  return g.lambda1 * sx + g.lambda2 * sy - g.lambda3 * sc;
}

std::complex<double> log_F(const Configuration& cfg, const CouplingParams& c,
                           const ModulusParams& p) {
  return log_G_general(cfg, GeneralCoupling::main_family(c.lambda), p);
}

std::complex<double> log_F_tilde(const Configuration& cfg, const CouplingParams& c,
                                 const ModulusParams& p) {
  return log_G_general(cfg, {c.lambda, 1.0 / c.lambda, -1.0, -c.lambda}, p);
}

LogFormResult apply_H_logform(const Configuration& cfg, const GeneralCoupling& g,
                              const ModulusParams& p) {
  const PairTable t(cfg, p);
  const std::size_t N = t.N, M = t.M;
  const double l1 = g.lambda1, l2 = g.lambda2, l3 = g.lambda3, A = g.A;

  LogFormResult r;
  r.conditions = check_conditions(g, static_cast<int>(N), static_cast<int>(M));

  // direct route through the per-coordinate gradients
  const Gradients d = gradients(t, g);
  double wx = 0.0, wy = 0.0;
  for (std::size_t j = 0; j < N; ++j) wx += d.gx2[j] + d.gx[j] * d.gx[j];
  for (std::size_t J = 0; J < M; ++J) wy += d.gy2[J] + d.gy[J] * d.gy[J];
  double vx = 0.0, vy = 0.0;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = j + 1; k < N; ++k) vx += t.XX(j, k).V;
  for (std::size_t J = 0; J < M; ++J)
    for (std::size_t K = J + 1; K < M; ++K) vy += t.YY(J, K).V;
  const double pot_x = 2.0 * l1 * (l1 - 1.0) * vx;
  const double pot_y = 2.0 * l2 * (l2 - 1.0) * vy;
  r.h_x = -wx + pot_x;
  r.h_y = -wy + pot_y;
  r.w_direct = wx - A * wy;

  // grouped route: pairs (W1), triples (W2), x-y diagonal (W3), x-y mixed (W4)
  double w11 = 0.0, w12 = 0.0, w21 = 0.0, w22 = 0.0, w3 = 0.0, w4 = 0.0;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) {
      if (k == j) continue;
      const auto& e = t.XX(j, k);
      w11 += -l1 * e.V + l1 * l1 * e.phi * e.phi;
    }
  for (std::size_t J = 0; J < M; ++J)
    for (std::size_t K = 0; K < M; ++K) {
      if (K == J) continue;
      const auto& e = t.YY(J, K);
      w12 += -l2 * e.V + l2 * l2 * e.phi * e.phi;
    }
  w12 *= A;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t l = 0; l < N; ++l) {
        if (j == k || j == l || k == l) continue;
        w21 += t.XX(j, k).phi * t.XX(j, l).phi;
      }
  w21 *= l1 * l1;
  for (std::size_t J = 0; J < M; ++J)
    for (std::size_t K = 0; K < M; ++K)
      for (std::size_t L = 0; L < M; ++L) {
        if (J == K || J == L || K == L) continue;
        w22 += t.YY(J, K).phi * t.YY(J, L).phi;
      }
  w22 *= A * l2 * l2;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t K = 0; K < M; ++K) {
      const auto& e = t.XY(j, K);
      w3 += l3 * e.V + l3 * l3 * e.phi * e.phi;
    }
  w3 *= 1.0 - A;
  double w4a = 0.0, w4b = 0.0, w4c = 0.0, w4d = 0.0;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t K = 0; K < M; ++K)
      for (std::size_t L = 0; L < M; ++L)
        if (K != L) w4a += t.XY(j, K).phi * t.XY(j, L).phi;
  for (std::size_t J = 0; J < M; ++J)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t l = 0; l < N; ++l)
        if (k != l) w4b += t.YX(J, k).phi * t.YX(J, l).phi;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) {
      if (k == j) continue;
      for (std::size_t K = 0; K < M; ++K) w4c += t.XX(j, k).phi * t.XY(j, K).phi;
    }
  for (std::size_t J = 0; J < M; ++J)
    for (std::size_t K = 0; K < M; ++K) {
      if (K == J) continue;
      for (std::size_t k = 0; k < N; ++k) w4d += t.YY(J, K).phi * t.YX(J, k).phi;
    }
  w4 = l3 * l3 * w4a - A * l3 * l3 * w4b - 2.0 * l1 * l3 * w4c + 2.0 * A * l2 * l3 * w4d;

  const double W1 = w11 - w12;
  const double W2 = w21 - w22;
  r.w = W1 + W2 + w3 + w4;
  r.components = {{"-W1", -W1},         {"-W2", -W2},          {"-W3", -w3},
                  {"-W4", -w4},         {"V_x", pot_x},        {"V_y", -A * pot_y}};
  r.value = 0.0;
  for (const auto& c : r.components) r.value += c.value;

  if (r.conditions.reducible) {
    const double c0 = const_c0(p).value;
    double fx = 0.0, fy = 0.0, fxy = 0.0;
    auto f_of = [c0](const LogThetaJet& e) { return 0.5 * (e.V - e.phi * e.phi - c0); };
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = j + 1; k < N; ++k) fx += f_of(t.XX(j, k));
    for (std::size_t J = 0; J < M; ++J)
      for (std::size_t K = J + 1; K < M; ++K) fy += f_of(t.YY(J, K));
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t K = 0; K < M; ++K) fxy += f_of(t.XY(j, K));
    ReducedForm red;
    const auto& c = r.conditions;
    red.components = {{"C0", c.c0_coefficient * c0},
                      {"C1*f_x", c.C1 * fx},
                      {"C2*f_y", c.C2 * fy},
                      {"-C3*f_xy", -c.C3 * fxy}};
    for (const auto& term : red.components) red.value += term.value;
    r.reduced = std::move(red);
  }
  return r;
}

MomentumResult apply_P_logform(const Configuration& cfg, const GeneralCoupling& g,
                               const ModulusParams& p) {
  const PairTable t(cfg, p);
  const Gradients d = gradients(t, g);
  MomentumResult r;
  for (double v : d.gx) {
    r.p_x += v;
    r.scale = std::max(r.scale, std::abs(v));
  }
  for (double v : d.gy) {
    r.p_y += v;
    r.scale = std::max(r.scale, std::abs(v));
  }
  return r;
}

double dbeta_logform(const Configuration& cfg, const GeneralCoupling& g, const ModulusParams& p) {
  if (p.trigonometric()) return 0.0;
  const auto x = cfg.x();
  const auto y = cfg.y();
  double sx = 0.0, sy = 0.0, sc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = j + 1; k < x.size(); ++k) sx += log_theta_jet(x[k] - x[j], p).dbeta;
  for (std::size_t J = 0; J < y.size(); ++J)
    for (std::size_t K = J + 1; K < y.size(); ++K) sy += log_theta_jet(y[J] - y[K], p).dbeta;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t K = 0; K < y.size(); ++K) sc += log_theta_jet(x[j] - y[K], p).dbeta;
  return g.lambda1 * sx + g.lambda2 * sy - g.lambda3 * sc;
}

double dbeta_logform_via_f(const Configuration& cfg, const GeneralCoupling& g,
                           const ModulusParams& p) {
  const auto x = cfg.x();
  const auto y = cfg.y();
  const double c1 = const_c1();
  double sx = 0.0, sy = 0.0, sc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = j + 1; k < x.size(); ++k) sx += c1 - f_func(x[j] - x[k], p).value;
  for (std::size_t J = 0; J < y.size(); ++J)
    for (std::size_t K = J + 1; K < y.size(); ++K) sy += c1 - f_func(y[J] - y[K], p).value;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t K = 0; K < y.size(); ++K) sc += c1 - f_func(x[j] - y[K], p).value;
  return g.lambda1 * sx + g.lambda2 * sy - g.lambda3 * sc;
}

double const_cNM(int N, int M, double lambda, const ModulusParams& p) {
  check_counts(N, M);
  const double n = N, m = M, l2 = lambda * lambda;
  const double c0 = const_c0(p).value;
  return l2 * (n * (n - 1.0) - m * (m - 1.0)) * c0 +
         (n - m) * l2 * (n * (n - 1.0) + m * (m - 1.0) - 2.0 * n * m) * const_c1();
}

double const_cNM_c2form(int N, int M, double lambda, const ModulusParams& p) {
  check_counts(N, M);
  const double d = N - M, s = N + M, l2 = lambda * lambda;
  const double c2 = const_c2(p).value;
  return l2 * d * (d * d - 1.0) / 12.0 - 2.0 * l2 * d * (s - 1.0) * c2;
}

double const_cNM_tilde(int N, int M, double lambda, const ModulusParams& p) {
  check_counts(N, M);
  const CouplingParams c(lambda);
  const double n = N, m = M, l = c.lambda;
  const double c0 = const_c0(p).value;
  return (l * l * n * (n - 1.0) + m * (m - 1.0) / l + (1.0 + l) * n * m) * c0 +
         (l * n + m) * (l * n * (n - 1.0) + m * (m - 1.0) / l + 2.0 * n * m) * const_c1();
}

double const_cNM_tilde_c2form(int N, int M, double lambda, const ModulusParams& p) {
  check_counts(N, M);
  const CouplingParams c(lambda);
  const double n = N, m = M, l = c.lambda;
  const double c2 = const_c2(p).value;
  const double lin = l * l * n + m / l;
  return (l * l * n * n * n + m * m * m / l + 3.0 * n * m * (l * n + m) - lin) / 12.0 -
         2.0 * (l * l * n * n + m * m / l - lin + (l + 1.0) * m * n) * c2;
}

std::pair<double, double> gauge_transform_constants(int N, int M, double lambda, double b0,
                                                    double b1, const ModulusParams& p) {
  const double n = N, m = M, l = CouplingParams(lambda).lambda;
  const double c = const_cNM(N, M, l, p);
  const double ct = const_cNM_tilde(N, M, l, p);
  const double c_new = c - l * (l - 1.0) * (n * (n - 1.0) - m * (m - 1.0)) * b0 -
                       (n - m) * l * l * (n * (n - 1.0) + m * (m - 1.0) - 2.0 * n * m) * b1;
  const double ct_new = ct -
                        (l * (l - 1.0) * n * (n - 1.0) + (1.0 / l - 1.0) * m * (m - 1.0)) * b0 -
                        (l * n + m) * (l * n * (n - 1.0) + m * (m - 1.0) / l + 2.0 * n * m) * b1;
  return {c_new, ct_new};
}

std::pair<double, double> gauge_simplified_constants(int N, int M, double lambda,
                                                     const ModulusParams& p) {
  check_counts(N, M);
  const double n = N, m = M, l = CouplingParams(lambda).lambda;
  const double c0 = const_c0(p).value;
  return {l * (n * (n - 1.0) - m * (m - 1.0)) * c0,
          (l * n * (n - 1.0) + m * (m - 1.0) + (1.0 + l) * m * n) * c0};
}

Phases correlation_phases(int N, int M, double nu, double mu) noexcept {
  const double n = N, m = M;
  return {0.5 * (nu * nu * n - nu * mu * m), 0.5 * (mu * mu * m - nu * mu * n)};
}

} // namespace ecs
