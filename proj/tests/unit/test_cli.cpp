#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cadse/external.hpp"
#include "test_support.hpp"

using namespace cadse;

namespace {

ProcessResult cli(const std::string& args) { return run_command(std::string(CADSE_CLI) + " " + args); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(cli("").exit_status, 1);
  EXPECT_EQ(cli("campaign run").exit_status, 1);
  EXPECT_EQ(cli("config emit --key 8,x").exit_status, 1);
  EXPECT_EQ(cli("--help").exit_status, 0);
}

TEST(Cli, CampaignRunResumeAndReports) {
  support::TempDir dir("cli");
  const auto journal = (dir / "j.jsonl").string();
  auto r = cli("campaign run --mode adse --cost linear --limit 5 --weight 3 --seed 4 --journal " + journal);
  ASSERT_EQ(r.exit_status, 0) << r.output;
  EXPECT_NE(r.output.find("final reference"), std::string::npos);
  EXPECT_EQ(cli("campaign run --journal " + journal).exit_status, 1);

  const auto before = slurp(journal);
  r = cli("campaign resume --journal " + journal);
  ASSERT_EQ(r.exit_status, 0) << r.output;
  EXPECT_EQ(slurp(journal), before);

  r = cli("report pareto --journal " + journal);
  ASSERT_EQ(r.exit_status, 0) << r.output;
  EXPECT_EQ(r.output.rfind("bdr,bdde,key\n", 0), 0u);

  const auto svg = (dir / "p.svg").string();
  ASSERT_EQ(cli("report export --format plot --out " + svg + " --journal " + journal).exit_status, 0);
  const auto first = slurp(svg);
  ASSERT_EQ(cli("report export --format plot --out " + svg + " --journal " + journal).exit_status, 0);
  EXPECT_EQ(slurp(svg), first);

  r = cli("report export --format csv --journal " + journal);
  EXPECT_EQ(r.output.rfind("iteration,key,bdr,bdde,cost,label\n", 0), 0u);
}

TEST(Cli, CorruptJournalExitsThreeUnlessLenient) {
  support::TempDir dir("cli-corrupt");
  const auto journal = (dir / "j.jsonl").string();
  ASSERT_EQ(cli("campaign run --mode adse --journal " + journal).exit_status, 0);
  std::ofstream(journal, std::ios::app) << "garbage\n";
  EXPECT_EQ(cli("report export --format csv --journal " + journal).exit_status, 3);
  const auto r = cli("report export --format csv --lenient --journal " + journal);
  EXPECT_EQ(r.exit_status, 0);
  EXPECT_NE(r.output.find("warning"), std::string::npos);
  EXPECT_EQ(cli("campaign resume --journal " + journal).exit_status, 3);
}

TEST(Cli, BackendFailureExitsTwo) {
  support::TempDir dir("cli-backend");
  const std::string mock = std::string(CADSE_FIXTURE_DIR) + "/mock_codec";
  std::ofstream(dir / "energy") << "0\n";
  std::ofstream(dir / "campaign.json") << R"({
  "catalog": {"tools": [{"name": "A", "granular": true}, {"name": "B", "granular": true}]},
  "evaluator": "external",
  "external": {
    "sequences": [{"name": "alpha"}, {"name": "beta"}],
    "workdir": ")" + (dir / "work").string() + R"(",
    "commands": {
      "encode": "sh )" + mock + R"(/encode.sh {config} {bitstream} {qp} {sequence}",
      "decode": "sh )" + mock + R"(/decode.sh {config} {bitstream} {qp} {sequence} )" + (dir / "energy").string() + R"( 27",
      "quality": "sh )" + mock + R"J(/quality.sh {config} {qp} {sequence}"
    },
    "patterns": {"bitrate": "Bitrate: ([0-9.]+) kbps", "quality": "VMAF score: ([0-9.]+)"},
    "energy_probe": {"kind": "counter_file", "path": ")J" + (dir / "energy").string() + R"(", "scale": 1e-6}
  }
})";
  const auto r = cli("campaign run --config " + (dir / "campaign.json").string() + " --journal " +
                     (dir / "j.jsonl").string());
  EXPECT_EQ(r.exit_status, 2) << r.output;
  EXPECT_NE(r.output.find("QP 27"), std::string::npos) << r.output;
}

TEST(Cli, BdCompute) {
  support::TempDir dir("cli-bd");
  std::ofstream(dir / "a.txt") << "sequence s\n37 1000 70 10\n32 2000 80 12\n27 4000 90 14\n22 8000 95 16\n";
  std::ofstream(dir / "t.txt") << "sequence s\n37 1100 71 9\n32 2300 81 11\n27 4500 90.5 13\n22 8800 95.5 15\n";
  const auto r = cli("bd compute --anchor " + (dir / "a.txt").string() + " --test " + (dir / "t.txt").string() +
                     " --axis rate");
  ASSERT_EQ(r.exit_status, 0) << r.output;
  EXPECT_NE(r.output.find("s 6.28023040372"), std::string::npos) << r.output;
  EXPECT_EQ(cli("bd compute --anchor " + (dir / "a.txt").string() + " --test " + (dir / "t.txt").string() +
                " --axis volume")
                .exit_status,
            1);
}

TEST(Cli, ScheduleAndConfig) {
  auto r = cli("config emit --rate 0.5");
  ASSERT_EQ(r.exit_status, 0) << r.output;
  EXPECT_NE(r.output.find("TransformSkipRate: 4/8\n"), std::string::npos);
  EXPECT_NE(r.output.find("MTSRate: 8/8\n"), std::string::npos);
  r = cli("schedule show --rate 0.875");
  ASSERT_EQ(r.exit_status, 0) << r.output;
  EXPECT_NE(r.output.find("TransformSkip 28/32"), std::string::npos) << r.output;
}
