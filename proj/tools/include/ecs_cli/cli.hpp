#ifndef ECS_CLI_CLI_HPP
#define ECS_CLI_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ecs::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitResidualFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `ecs` tool.  Subcommands: verify, sweep, constants,
/// selftest.  Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with argv[0] omitted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ecs::cli

#endif // ECS_CLI_CLI_HPP
