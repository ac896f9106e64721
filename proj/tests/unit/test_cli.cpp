#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ecs_cli/cli.hpp"
#include "ecs_cli/report_io.hpp"

using ecs::cli::run;

namespace {
struct Out {
  int code;
  std::string out;
  std::string err;
};
Out call(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = run(args, o, e);
  return {code, o.str(), e.str()};
}
} // namespace

TEST(Cli, VerifyJson) {
  const auto r = call({"verify", "--identity", "main", "--N", "3", "--M", "1", "--lambda", "1.5",
                       "--q", "0.4", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["run"]["command"], "verify");
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_EQ(j["reports"][0]["case"]["kind"], "main");
  EXPECT_EQ(j["reports"][0]["case"]["N"], 3);
  EXPECT_TRUE(j["reports"][0]["pass"].get<bool>());
  EXPECT_FALSE(j["reports"][0].contains("wall_time"));
}

TEST(Cli, ExplicitCoordinates) {
  const auto r = call({"verify", "--identity", "dual", "--x", "0.3,-1.2", "--y", "2.0,-2.6",
                       "--lambda", "2", "--q", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["reports"][0]["case"]["M"], 2);
  EXPECT_EQ(j["reports"][0]["case"]["y"][1], -2.6);
}

TEST(Cli, ZeroNomeHasNullBeta) {
  const auto r = call({"verify", "--identity", "momentum-f", "--q", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["reports"][0]["case"]["beta"].is_null());
}

TEST(Cli, CsvAndPretty) {
  auto r = call({"verify", "--identity", "constants", "--N", "3", "--M", "2", "--q", "0.3",
                 "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("kind,label,", 0), 0u);
  r = call({"verify", "--identity", "heat", "--lambda", "2", "--q", "0.3", "--format", "pretty"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"verify"}).code, 2);
  EXPECT_EQ(call({"verify", "--identity", "nope"}).code, 2);
  EXPECT_EQ(call({"verify", "--identity", "main", "--q", "0.97"}).code, 2);
  EXPECT_EQ(call({"verify", "--identity", "main", "--lambda", "-1"}).code, 2);
  EXPECT_EQ(call({"verify", "--identity", "main", "--x", "0.1,0.1"}).code, 2);
  EXPECT_EQ(call({"sweep", "--qs", "0.99"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, SweepIsByteDeterministic) {
  const std::vector<std::string> args{"sweep", "--N-max", "2", "--configs", "2", "--seed", "3"};
  const auto a = call(args);
  auto b_args = args;
  b_args.insert(b_args.end(), {"--threads", "1"});
  const auto b = call(b_args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out).contains("cells"));
}

TEST(Cli, Constants) {
  const auto r = call({"constants", "--N", "3", "--M", "3", "--lambda", "2", "--q", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["c_NM"].get<double>(), 0.0);
  EXPECT_EQ(j["c1"].get<double>(), 1.0 / 12.0);
}

TEST(ReportIo, FormatDouble) {
  EXPECT_EQ(ecs::cli::format_double(0.1), "0.1");
  EXPECT_EQ(ecs::cli::format_double(1e-300), "1e-300");
  EXPECT_EQ(ecs::cli::format_double(-std::numeric_limits<double>::infinity()), "-inf");
}
