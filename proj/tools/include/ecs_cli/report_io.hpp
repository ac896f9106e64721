#ifndef ECS_CLI_REPORT_IO_HPP
#define ECS_CLI_REPORT_IO_HPP

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "ecs/verifier.hpp"

namespace ecs::cli {

enum class Format { Json, Csv, Pretty };

std::optional<Format> parse_format(std::string_view s) noexcept;

struct RunInfo {
  std::string command;
  std::uint64_t seed = 0;
};

// JSON output has sorted keys and shortest round-trip floats; wall times are
// left out so repeated runs produce identical bytes.  Non-finite numbers are
// written as null.
void write_json(std::ostream& os, const RunInfo& info, std::span<const ResidualReport> reports,
                std::span<const CellSummary> cells = {});
void write_csv(std::ostream& os, std::span<const ResidualReport> reports);
void write_pretty(std::ostream& os, std::span<const ResidualReport> reports);

void write_reports(std::ostream& os, Format f, const RunInfo& info,
                   std::span<const ResidualReport> reports,
                   std::span<const CellSummary> cells = {});

/// Shortest round-trip decimal form of a double ("inf", "-inf", "nan" for
/// non-finite values).
std::string format_double(double v);

} // namespace ecs::cli

#endif // ECS_CLI_REPORT_IO_HPP
