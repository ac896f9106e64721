#include "ecs_cli/cli.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecs/elliptic.hpp"
#include "ecs/verifier.hpp"
#include "ecs_cli/report_io.hpp"

namespace ecs::cli {

namespace {

struct OutputOptions {
  std::string format = "json";
  std::string output;
};

void add_output_options(CLI::App* sub, OutputOptions& o) {
  sub->add_option("--format", o.format, "json, csv or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  sub->add_option("--output", o.output, "write to this file instead of stdout");
}

// Writes through the file named by --output, or `out` when none was given.
int emit(const OutputOptions& o, std::ostream& out, std::ostream& err, const RunInfo& info,
         const std::vector<ResidualReport>& reports, std::span<const CellSummary> cells = {}) {
  const Format f = *parse_format(o.format);
  if (o.output.empty()) {
    write_reports(out, f, info, reports, cells);
  } else {
    std::ofstream file(o.output);
    if (!file) {
      err << "cannot open " << o.output << " for writing\n";
      return kExitUsage;
    }
    write_reports(file, f, info, reports, cells);
  }
  for (const auto& r : reports)
    if (!r.pass) return kExitResidualFailure;
  return kExitPass;
}

Engine parse_engine(const std::string& s) { return s == "oracle" ? Engine::Oracle : Engine::Analytic; }

std::vector<std::string> identity_names() {
  std::vector<std::string> v;
  for (auto k : all_identity_kinds()) v.emplace_back(to_string(k));
  return v;
}

struct VerifyOptions {
  std::string identity;
  int N = 2;
  int M = 1;
  double lambda = 1.0;
  double q = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  std::uint64_t seed = 0;
  int configs = 1;
  std::string engine = "analytic";
  double x_arg = 1.0;
  OutputOptions out;
};

int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  (void)CouplingParams(o.lambda);
  IdentityCase base;
  base.kind = *parse_identity_kind(o.identity);
  base.lambda = o.lambda;
  base.p = ModulusParams::from_q(o.q);
  base.engine = parse_engine(o.engine);
  base.x_arg = o.x_arg;
  base.N = o.N;
  base.M = o.M;
  const bool explicit_cfg = !o.x.empty() || !o.y.empty();
  if (explicit_cfg) {
    if (o.configs != 1) {
      err << "--configs cannot be combined with an explicit configuration\n";
      return kExitUsage;
    }
    base.cfg = Configuration(o.x, o.y);
    base.N = static_cast<int>(o.x.size());
    base.M = static_cast<int>(o.y.size());
  }
  std::vector<ResidualReport> reports;
  for (int i = 0; i < o.configs; ++i) {
    IdentityCase c = base;
    c.seed = o.configs == 1 ? o.seed : mix_seed(o.seed, static_cast<std::uint64_t>(i));
    for (auto& r : verify(c)) reports.push_back(std::move(r));
  }
  return emit(o.out, out, err, {"verify", o.seed}, reports);
}

struct SweepOptions {
  SweepGrid grid;
  std::string engine = "analytic";
  OutputOptions out;
};

int run_sweep(SweepOptions o, std::ostream& out, std::ostream& err) {
  o.grid.engine = parse_engine(o.engine);
  const SweepResult res = sweep(o.grid);
  return emit(o.out, out, err, {"sweep", o.grid.seed}, res.reports, res.cells);
}

struct ConstantsOptions {
  int N = 2;
  int M = 1;
  double lambda = 1.0;
  double q = 0.0;
  std::string format = "json";
};

int run_constants(const ConstantsOptions& o, std::ostream& out) {
  const auto p = ModulusParams::from_q(o.q);
  const CouplingParams cp(o.lambda);
  if (o.N < 0 || o.M < 0) throw DomainError("N, M must be non-negative");
  nlohmann::json j;
  j["N"] = o.N;
  j["M"] = o.M;
  j["lambda"] = cp.lambda;
  j["q"] = p.q();
  j["n_max"] = p.n_max();
  j["c0"] = const_c0(p).value;
  j["c1"] = const_c1();
  j["c2"] = const_c2(p).value;
  j["c_NM"] = const_cNM(o.N, o.M, cp.lambda, p);
  j["c_NM_c2form"] = const_cNM_c2form(o.N, o.M, cp.lambda, p);
  j["c_NM_dual"] = const_cNM_tilde(o.N, o.M, cp.lambda, p);
  j["c_NM_dual_c2form"] = const_cNM_tilde_c2form(o.N, o.M, cp.lambda, p);
  if (o.format == "pretty") {
    for (const auto& [k, v] : j.items()) out << k << " = " << v.dump() << '\n';
  } else {
    out << j.dump(2) << '\n';
  }
  return kExitPass;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of theta-function identities for elliptic "
               "Calogero-Sutherland Hamiltonians"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "check one identity on one or more configurations");
  verify_cmd->add_option("--identity", vo.identity, "identity to check")
      ->required()
      ->check(CLI::IsMember(identity_names()));
  verify_cmd->add_option("--N", vo.N, "number of x coordinates")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--M", vo.M, "number of y coordinates")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--lambda", vo.lambda, "coupling, > 0");
  verify_cmd->add_option("--q", vo.q, "nome, 0 <= q < 0.95");
  verify_cmd->add_option("--x", vo.x, "explicit x coordinates")->delimiter(',');
  verify_cmd->add_option("--y", vo.y, "explicit y coordinates")->delimiter(',');
  verify_cmd->add_option("--seed", vo.seed, "sampling seed");
  verify_cmd->add_option("--configs", vo.configs, "number of sampled configurations")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--engine", vo.engine, "analytic or oracle")
      ->check(CLI::IsMember({"analytic", "oracle"}));
  verify_cmd->add_option("--x-arg", vo.x_arg, "relative coordinate for the heat equation");
  add_output_options(verify_cmd, vo.out);

  SweepOptions so;
  auto* sweep_cmd = app.add_subcommand("sweep", "main, dual, momentum and L-form checks over a grid");
  sweep_cmd->add_option("--N-max", so.grid.n_cap, "largest N; cells are 0 <= M <= N")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--lambdas", so.grid.lambdas)->delimiter(',');
  sweep_cmd->add_option("--qs", so.grid.qs)->delimiter(',');
  sweep_cmd->add_option("--configs", so.grid.configs)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", so.grid.seed);
  sweep_cmd->add_option("--threads", so.grid.threads, "0 = all hardware threads");
  sweep_cmd->add_option("--delta-min", so.grid.delta_min, "minimum pair separation")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--engine", so.engine)->check(CLI::IsMember({"analytic", "oracle"}));
  add_output_options(sweep_cmd, so.out);

  ConstantsOptions co;
  auto* const_cmd = app.add_subcommand("constants", "print c0, c1, c2 and the identity constants");
  const_cmd->add_option("--N", co.N);
  const_cmd->add_option("--M", co.M);
  const_cmd->add_option("--lambda", co.lambda);
  const_cmd->add_option("--q", co.q);
  const_cmd->add_option("--format", co.format)->check(CLI::IsMember({"json", "pretty"}));

  OutputOptions to;
  auto* self_cmd = app.add_subcommand("selftest", "built-in battery of checks");
  add_output_options(self_cmd, to);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify_cmd) return run_verify(vo, out, err);
    if (*sweep_cmd) return run_sweep(so, out, err);
    if (*const_cmd) return run_constants(co, out);
    if (*self_cmd) return emit(to, out, err, {"selftest", 0}, selftest());
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("ecs");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace ecs::cli
