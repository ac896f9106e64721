// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ecs/elliptic.hpp"
#include "ecs/verifier.hpp"
#include "ecs_cli/report_io.hpp"

using namespace ecs;

namespace {

const std::vector<double> kLambdas{0.5, 1.0, 1.5, 2.0, 3.0};
const std::vector<double> kQs{0.0, 0.25, 0.5, 0.75};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tracks the worst relative and absolute residual over a set of reports.
struct Tally {
  std::size_t count = 0;
  std::size_t failures = 0;
  double worst_rel = 0.0;
  double worst_abs = 0.0;
  std::string first_failure;

  void add(const ResidualReport& r, double abs_limit = -1.0) {
    ++count;
    worst_rel = std::max(worst_rel, std::isfinite(r.relative_residual) ? r.relative_residual
                                                                      : INFINITY);
    worst_abs = std::max(worst_abs, std::isfinite(r.residual) ? r.residual : INFINITY);
    const bool abs_ok = abs_limit < 0.0 || r.residual <= abs_limit;
    if (!r.pass || !abs_ok) {
      if (failures == 0) {
        std::ostringstream os;
        os << r.label << " N=" << r.identity.N << " M=" << r.identity.M
           << " lambda=" << r.identity.lambda << " q=" << r.identity.p.q()
           << " rel=" << r.relative_residual << " abs=" << r.residual;
        if (!r.note.empty()) os << " (" << r.note << ")";
        first_failure = os.str();
      }
      ++failures;
    }
  }

  [[nodiscard]] Outcome outcome() const {
    std::ostringstream os;
    os << count << " checks, worst relative " << worst_rel << ", worst absolute " << worst_abs;
    if (failures) os << "; " << failures << " failed, first: " << first_failure;
    return {failures == 0 && count > 0, os.str()};
  }
};

SweepGrid identity_grid() {
  SweepGrid g;
  g.n_cap = 5;
  g.lambdas = kLambdas;
  g.qs = kQs;
  g.configs = 20;
  g.seed = 20240611;
  g.delta_min = 0.1;
  return g;
}

const SweepResult& identity_sweep() {
  static const SweepResult r = sweep(identity_grid());
  return r;
}

Outcome sweep_labels(std::initializer_list<std::string_view> labels, double abs_limit = -1.0) {
  Tally t;
  for (const auto& r : identity_sweep().reports) {
    if (std::find(labels.begin(), labels.end(), r.label) != labels.end() ||
        r.label == "sample")
      t.add(r, abs_limit);
  }
  return t.outcome();
}

Outcome criterion_main() { return sweep_labels({"main"}); }
Outcome criterion_dual() { return sweep_labels({"dual"}); }
Outcome criterion_momentum() {
  return sweep_labels({"momentum-f", "momentum-ftilde"}, tolerance::kMomentum);
}

Outcome criterion_scalar() {
  Tally t;
  for (int i = 1; i <= 9; ++i) {
    for (const auto& r : verify_scalar_relations(ModulusParams::from_q(0.1 * i))) {
      // finite-difference relations are graded on the relative residual only;
      // the exact sums must also meet their tolerance in absolute terms
      if (r.label == "rel1" || r.label == "rel3")
        t.add(r);
      else if (r.label == "rel2" || r.label == "lambert" || r.label == "c0=1/12-2c2")
        t.add(r, r.tolerance);
    }
  }
  return t.outcome();
}

Outcome criterion_constants() {
  Tally t;
  bool diagonal_exact = true;
  for (double q : kQs) {
    const auto p = ModulusParams::from_q(q);
    for (double l : kLambdas)
      for (int N = 0; N <= 8; ++N)
        for (int M = 0; M <= 8; ++M) {
          for (const auto& r : verify_constant_forms(N, M, l, p)) t.add(r);
          if (N == M && (const_cNM(N, M, l, p) != 0.0 || const_cNM_c2form(N, M, l, p) != 0.0))
            diagonal_exact = false;
        }
  }
  Outcome o = t.outcome();
  if (!diagonal_exact) {
    o.pass = false;
    o.detail += "; c_{N,N} not exactly 0";
  } else {
    o.detail += "; c_{N,N} == 0 exactly in both forms";
  }
  return o;
}

Outcome criterion_heat() {
  Tally t;
  for (double q : {0.3, 0.6})
    for (double l : {1.0, 2.0})
      for (int i = 0; i < 20; ++i) {
        const double x = 0.3 + (2.0 * std::numbers::pi - 0.6) * i / 19.0;
        t.add(verify_heat_equation(l, x, ModulusParams::from_q(q)), tolerance::kHeat);
      }
  return t.outcome();
}

Outcome criterion_sutherland() {
  Tally t;
  double worst_spread = 0.0;
  for (double l : kLambdas)
    for (int N = 1; N <= 6; ++N) {
      const auto r = verify_sutherland_limit(N, l, 20, 1000 + N);
      t.add(r, tolerance::kSutherland);
      for (const auto& [k, v] : r.details)
        if (k == "spread") worst_spread = std::max(worst_spread, v);
    }
  Outcome o = t.outcome();
  o.detail += "; worst spread " + cli::format_double(worst_spread);
  if (!(worst_spread <= 1e-9)) o.pass = false;
  return o;
}

Outcome criterion_oracle() {
  Tally th, tb;
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> n_dist(1, 4), m_dist(0, 3);
  std::uniform_real_distribution<double> q_dist(0.05, 0.8);
  for (int i = 0; i < 100; ++i) {
    IdentityCase c;
    c.N = n_dist(rng);
    c.M = m_dist(rng);
    c.lambda = kLambdas[static_cast<std::size_t>(i) % kLambdas.size()];
    c.p = ModulusParams::from_q(q_dist(rng));
    c.seed = mix_seed(77, static_cast<std::uint64_t>(i));
    c.family = i % 2 ? CouplingFamily::Dual : CouplingFamily::Main;
    th.add(verify_oracle_concordance_H(c));
    tb.add(verify_oracle_concordance_beta(c));
  }
  const Outcome a = th.outcome(), b = tb.outcome();
  return {a.pass && b.pass, "H: " + a.detail + " | d/dbeta: " + b.detail};
}

Outcome criterion_gauge() {
  Tally t;
  for (double q : kQs)
    for (double l : kLambdas)
      for (int N = 0; N <= 5; ++N)
        for (int M = 0; M <= 5; ++M) {
          IdentityCase c;
          c.kind = IdentityKind::GaugeConsistency;
          c.N = N;
          c.M = M;
          c.lambda = l;
          c.p = ModulusParams::from_q(q);
          c.seed = mix_seed(31, static_cast<std::uint64_t>(6 * N + M));
          for (const auto& r : verify(c)) t.add(r);
        }
  return t.outcome();
}

Outcome criterion_phases() {
  Tally t;
  for (double l : kLambdas)
    for (int N = 0; N <= 10; ++N)
      for (int M = 0; M <= 10; ++M) t.add(verify_phases(N, M, l));
  return t.outcome();
}

Outcome criterion_determinism() {
  SweepGrid g;
  g.seed = 99;
  auto render = [](const SweepGrid& grid) {
    const SweepResult r = sweep(grid);
    std::ostringstream os;
    cli::write_json(os, {"sweep", grid.seed}, r.reports, r.cells);
    return os.str();
  };
  const std::string a = render(g);
  const std::string b = render(g);
  g.threads = 1;
  const std::string c = render(g);
  const bool same = a == b && a == c;
  return {same, std::to_string(a.size()) + " bytes; repeated run " + (a == b ? "identical" : "differs") +
                    ", single-thread run " + (a == c ? "identical" : "differs")};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"main identity, relative residual <= 1e-8", criterion_main},
      {"dual identity, relative residual <= 1e-8", criterion_dual},
      {"momentum identities, residual <= 1e-11", criterion_momentum},
      {"scalar relations and Lambert/c0 sums", criterion_scalar},
      {"constant cross-forms <= 1e-12, diagonal exactly zero", criterion_constants},
      {"heat equation, residual <= 1e-9", criterion_heat},
      {"trigonometric ground-state energy <= 1e-9", criterion_sutherland},
      {"finite-difference oracle concordance", criterion_oracle},
      {"gauge-shifted constants <= 1e-12", criterion_gauge},
      {"center-of-mass phases to machine epsilon", criterion_phases},
      {"sweep JSON byte-identical across runs", criterion_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s [%2zu] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
              criteria.size());
  return failures == 0 ? 0 : 1;
}
