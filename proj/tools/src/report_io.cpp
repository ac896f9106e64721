#include "ecs_cli/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>

#include <json.hpp>

namespace ecs::cli {

namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json case_json(const IdentityCase& c) {
  json j;
  j["kind"] = std::string(to_string(c.kind));
  j["N"] = c.N;
  j["M"] = c.M;
  j["lambda"] = c.lambda;
  j["q"] = c.p.q();
  j["beta"] = number(c.p.beta());
  j["n_max"] = c.p.n_max();
  j["seed"] = c.seed;
  j["engine"] = std::string(to_string(c.engine));
  if (c.cfg) {
    j["x"] = std::vector<double>(c.cfg->x().begin(), c.cfg->x().end());
    j["y"] = std::vector<double>(c.cfg->y().begin(), c.cfg->y().end());
  }
  if (c.kind == IdentityKind::HeatEquation) j["x_arg"] = c.x_arg;
  return j;
}

json report_json(const ResidualReport& r) {
  json j;
  j["case"] = case_json(r.identity);
  j["label"] = r.label;
  j["residual"] = number(r.residual);
  j["scale"] = number(r.scale);
  j["relative"] = number(r.relative_residual);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.details.empty()) {
    json d = json::object();
    for (const auto& [k, v] : r.details) d[k] = number(v);
    j["details"] = std::move(d);
  }
  return j;
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

} // namespace

std::optional<Format> parse_format(std::string_view s) noexcept {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "pretty") return Format::Pretty;
  return std::nullopt;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_json(std::ostream& os, const RunInfo& info, std::span<const ResidualReport> reports,
                std::span<const CellSummary> cells) {
  json root;
  std::size_t failures = 0;
  json arr = json::array();
  for (const auto& r : reports) {
    if (!r.pass) ++failures;
    arr.push_back(report_json(r));
  }
  root["run"] = {{"command", info.command},
                 {"seed", info.seed},
                 {"reports", reports.size()},
                 {"failures", failures},
                 {"all_pass", failures == 0}};
  root["reports"] = std::move(arr);
  if (!cells.empty()) {
    json c = json::array();
    for (const auto& s : cells) {
      c.push_back({{"N", s.N},
                   {"M", s.M},
                   {"lambda", s.lambda},
                   {"q", s.q},
                   {"reports", s.reports},
                   {"failures", s.failures},
                   {"worst_relative", number(s.worst_relative)}});
    }
    root["cells"] = std::move(c);
  }
  os << root.dump(2) << '\n';
}

void write_csv(std::ostream& os, std::span<const ResidualReport> reports) {
  os << "kind,label,N,M,lambda,q,seed,engine,residual,scale,relative,tolerance,pass,note\n";
  for (const auto& r : reports) {
    const auto& c = r.identity;
    os << to_string(c.kind) << ',' << csv_field(r.label) << ',' << c.N << ',' << c.M << ','
       << format_double(c.lambda) << ',' << format_double(c.p.q()) << ',' << c.seed << ','
       << to_string(c.engine) << ',' << format_double(r.residual) << ','
       << format_double(r.scale) << ',' << format_double(r.relative_residual) << ','
       << format_double(r.tolerance) << ',' << (r.pass ? "true" : "false") << ','
       << csv_field(r.note) << '\n';
  }
}

void write_pretty(std::ostream& os, std::span<const ResidualReport> reports) {
  std::size_t failures = 0;
  for (const auto& r : reports) {
    const auto& c = r.identity;
    if (!r.pass) ++failures;
    os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(22) << r.label
       << " N=" << c.N << " M=" << c.M << " lambda=" << format_double(c.lambda)
       << " q=" << format_double(c.p.q()) << "  rel=" << std::scientific << std::setprecision(3)
       << r.relative_residual << " tol=" << r.tolerance << std::defaultfloat
       << "  (" << std::fixed << std::setprecision(3)
       << std::chrono::duration<double, std::milli>(r.wall_time).count() << " ms)"
       << std::defaultfloat << std::setprecision(6);
    if (!r.note.empty()) os << "  " << r.note;
    os << '\n';
  }
  os << reports.size() - failures << '/' << reports.size() << " passed\n";
}

void write_reports(std::ostream& os, Format f, const RunInfo& info,
                   std::span<const ResidualReport> reports, std::span<const CellSummary> cells) {
  switch (f) {
  case Format::Json: write_json(os, info, reports, cells); break;
  case Format::Csv: write_csv(os, reports); break;
  case Format::Pretty: write_pretty(os, reports); break;
  }
}

} // namespace ecs::cli
