#include <cmath>
#include <fstream>

#include <gtest/gtest.h>

#include "cadse/error.hpp"
#include "cadse/external.hpp"
#include "test_support.hpp"

using namespace cadse;

namespace {

const std::string kMock = std::string(CADSE_FIXTURE_DIR) + "/mock_codec";

// Energy draw multipliers cycled by the mock decoder, divided by 5.
const double kDraws[] = {5.00, 5.30, 4.85, 5.10, 4.95, 5.05, 4.98, 5.02, 5.01, 4.99, 5.00, 5.03};

ToolCatalog two_tools() {
  return load_catalog(R"({"tools":[{"name":"A","granular":true},{"name":"B","granular":true}]})");
}

ExternalConfig mock_config(const support::TempDir& dir, const std::string& fail_qp = "") {
  const auto counter = dir / "energy_uj";
  std::ofstream(counter) << "0\n";
  ExternalConfig c;
  c.sequences = {{"alpha", "alpha.yuv"}, {"beta", "beta.yuv"}};
  c.workdir = dir / "work";
  c.commands.encode = "sh " + kMock + "/encode.sh {config} {bitstream} {qp} {sequence}";
  c.commands.decode =
      "sh " + kMock + "/decode.sh {config} {bitstream} {qp} {sequence} " + counter.string() + " " + fail_qp;
  c.commands.quality = "sh " + kMock + "/quality.sh {config} {qp} {sequence}";
  c.patterns.bitrate = R"(Bitrate: ([0-9.]+) kbps)";
  c.patterns.quality = R"(VMAF score: ([0-9.]+))";
  c.probe.kind = EnergyProbe::Kind::counter_file;
  c.probe.path = counter.string();
  c.probe.scale = 1e-6;
  return c;
}

struct Row {
  int qp;
  double bitrate, vmaf, energy;
};

// The fixture table, with energies replaced by the mean the probe yields.
std::vector<RdeCurve> fixture_curves(bool anchor) {
  const std::vector<std::pair<std::string, std::vector<Row>>> a{
      {"alpha", {{37, 1000, 70, 30}, {32, 2000, 80, 36}, {27, 4000, 90, 44}, {22, 8000, 95, 54}}},
      {"beta", {{37, 1500, 68, 20}, {32, 2900, 78.5, 24}, {27, 5600, 88, 29}, {22, 11000, 94, 35}}}};
  const std::vector<std::pair<std::string, std::vector<Row>>> t{
      {"alpha", {{37, 1100, 71, 27}, {32, 2300, 81, 32.4}, {27, 4500, 90.5, 39}, {22, 8800, 95.5, 48}}},
      {"beta", {{37, 1620, 68.5, 18}, {32, 3100, 79, 21.5}, {27, 6000, 88.2, 26}, {22, 11900, 94.3, 31.5}}}};
  std::vector<RdeCurve> out;
  for (const auto& [name, rows] : anchor ? a : t) {
    RdeCurve c{name, {}};
    for (const auto& r : rows) {
      double mean = 0.0;
      for (int k = 0; k < 12; ++k) mean += (std::round(r.energy * kDraws[k] * 200000.0) * 1e-6 - mean) / (k + 1);
      c.points.push_back({r.qp, r.bitrate, r.vmaf, mean});
    }
    out.push_back(c);
  }
  return out;
}

void expect_curves_near(const std::vector<RdeCurve>& got, const std::vector<RdeCurve>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t s = 0; s < got.size(); ++s) {
    EXPECT_EQ(got[s].sequence, want[s].sequence);
    ASSERT_EQ(got[s].points.size(), want[s].points.size());
    for (std::size_t k = 0; k < got[s].points.size(); ++k) {
      EXPECT_EQ(got[s].points[k].qp, want[s].points[k].qp);
      EXPECT_EQ(got[s].points[k].bitrate, want[s].points[k].bitrate);
      EXPECT_EQ(got[s].points[k].quality, want[s].points[k].quality);
      EXPECT_NEAR(got[s].points[k].energy, want[s].points[k].energy, 1e-9);
    }
  }
}

}  // namespace

TEST(ExpandTemplate, ReplacesPlaceholders) {
  EXPECT_EQ(expand_template("x {qp} {sequence}", {{"qp", "22"}, {"sequence", "s"}}), "x 22 s");
  EXPECT_THROW((void)expand_template("{nope}", {{"qp", "1"}}), Error);
}

TEST(CaptureNumber, FirstGroup) {
  EXPECT_EQ(capture_number(R"(E=([0-9.]+))", "foo E=1.5 J", "energy"), 1.5);
  EXPECT_THROW((void)capture_number(R"(E=([0-9.]+))", "nothing here", "energy"), Error);
  EXPECT_THROW((void)capture_number("(", "x", "energy"), Error);
}

TEST(RunCommand, CapturesOutputAndStatus) {
  const auto r = run_command("echo hi; echo err >&2; exit 3");
  EXPECT_EQ(r.exit_status, 3);
  EXPECT_NE(r.output.find("hi"), std::string::npos);
  EXPECT_NE(r.output.find("err"), std::string::npos);
}

TEST(ExternalSource, MockRoundTripMatchesFixture) {
  support::TempDir dir("ext");
  ExternalSource source(mock_config(dir), two_tools());
  const auto anchor = source.measure(ToolRateVector::filled(2, 1.0));
  expect_curves_near(anchor.curves, fixture_curves(true));
  EXPECT_EQ(anchor.repetitions, std::vector<int>(8, 12));
  EXPECT_TRUE(anchor.converged);

  const auto test = source.measure(ToolRateVector(std::vector<int>{4, 8}));
  expect_curves_near(test.curves, fixture_curves(false));
  EXPECT_TRUE(std::filesystem::exists(dir / "work/4-8/profile.cfg"));

  const auto point = efficiency_of(anchor.curves, test.curves);
  const auto expected = efficiency_of(fixture_curves(true), fixture_curves(false));
  EXPECT_NEAR(point.bdr, expected.bdr, 1e-9);
  EXPECT_NEAR(point.bdde, expected.bdde, 1e-9);
  // SciPy PCHIP over the same fixture curves.
  EXPECT_NEAR(point.bdr, 5.270320942141716, 1e-9);
  EXPECT_NEAR(point.bdde, -11.515619551863143, 1e-9);
}

TEST(ExternalSource, DecoderFailureNamesSequenceQpAndStatus) {
  support::TempDir dir("ext-fail");
  ExternalSource source(mock_config(dir, "27"), two_tools());
  try {
    (void)source.measure(ToolRateVector::filled(2, 1.0));
    FAIL();
  } catch (const Error& e) {
    const std::string m = e.what();
    EXPECT_EQ(e.kind(), ErrorKind::backend);
    EXPECT_NE(m.find("alpha"), std::string::npos) << m;
    EXPECT_NE(m.find("QP 27"), std::string::npos) << m;
    EXPECT_NE(m.find("exit status 7"), std::string::npos) << m;
    EXPECT_NE(m.find("decoder crashed"), std::string::npos) << m;
  }
}

TEST(ExternalSource, MissingBitstreamIsReported) {
  support::TempDir dir("ext-nobs");
  auto c = mock_config(dir);
  c.commands.encode = "echo 'Bitrate: 10 kbps'";
  ExternalSource source(c, two_tools());
  try {
    (void)source.measure(ToolRateVector::filled(2, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("bitstream"), std::string::npos) << e.what();
  }
}

TEST(ExternalSource, UnparseableOutputCarriesPatternAndText) {
  support::TempDir dir("ext-parse");
  auto c = mock_config(dir);
  c.commands.quality = "echo garbled";
  ExternalSource source(c, two_tools());
  try {
    (void)source.measure(ToolRateVector::filled(2, 1.0));
    FAIL();
  } catch (const Error& e) {
    const std::string m = e.what();
    EXPECT_NE(m.find("VMAF score"), std::string::npos) << m;
    EXPECT_NE(m.find("garbled"), std::string::npos) << m;
  }
}

TEST(ExternalSource, DecoderOutputProbe) {
  support::TempDir dir("ext-out");
  auto c = mock_config(dir);
  c.probe = EnergyProbe{};
  c.commands.decode = "echo 'Energy: 2.5 J'";
  c.patterns.energy = R"(Energy: ([0-9.]+) J)";
  ExternalSource source(c, two_tools());
  const auto m = source.measure(ToolRateVector::filled(2, 1.0));
  for (const auto& curve : m.curves) {
    for (const auto& p : curve.points) EXPECT_EQ(p.energy, 2.5);
  }
  EXPECT_EQ(m.repetitions, std::vector<int>(8, 3));
}

TEST(ExternalConfig, Validation) {
  ExternalConfig c;
  EXPECT_THROW(c.validate(), Error);
}
