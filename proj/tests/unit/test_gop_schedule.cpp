#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "cadse/error.hpp"
#include "cadse/gop_schedule.hpp"
#include "test_support.hpp"

using namespace cadse;

namespace {

ToolCatalog chain_catalog() {
  // a requires b, b requires c
  return load_catalog(
      R"({"tools":[{"name":"a","granular":true,"requires":["b"]},{"name":"b","granular":true,"requires":["c"]},{"name":"c","granular":true}]})");
}

std::set<int> enabled_set(const FrameSchedule& s, ToolId t) {
  std::set<int> out;
  for (int f = 1; f <= s.frames(); ++f) {
    if (s.enabled(f, t)) out.insert(f);
  }
  return out;
}

}  // namespace

TEST(TemporalLayer, HierarchicalMap) {
  const GopStructure gop;
  EXPECT_EQ(gop.temporal_layer(32), 0);
  EXPECT_EQ(gop.temporal_layer(16), 1);
  EXPECT_EQ(gop.temporal_layer(8), 2);
  EXPECT_EQ(gop.temporal_layer(24), 2);
  for (int i : {4, 12, 20, 28}) EXPECT_EQ(gop.temporal_layer(i), 3);
  for (int i = 2; i <= 30; i += 4) EXPECT_EQ(gop.temporal_layer(i), 4) << i;
  for (int i = 1; i <= 31; i += 2) EXPECT_EQ(gop.temporal_layer(i), 5) << i;
}

TEST(TemporalLayer, Cardinalities) {
  const GopStructure gop;
  EXPECT_EQ(gop.layer_count(), 6);
  EXPECT_EQ(gop.layer_cardinalities(), (std::vector<int>{1, 1, 2, 4, 8, 16}));
}

TEST(TemporalLayer, OutOfRange) {
  const GopStructure gop;
  EXPECT_THROW((void)gop.temporal_layer(0), Error);
  EXPECT_THROW((void)gop.temporal_layer(33), Error);
  EXPECT_THROW(GopStructure(24), Error);
}

TEST(FramesEnabled, LayerBoundaries) {
  EXPECT_EQ(frames_enabled(1.0), 32);
  EXPECT_EQ(frames_enabled(0.125), 4);
  EXPECT_EQ(frames_enabled(0.0), 0);
}

TEST(BuildSchedule, HalfRateKeepsLayersZeroToFour) {
  const auto catalog = support::flat_catalog(1);
  const auto s = build_schedule(ToolRateVector(std::vector<int>{4}), catalog).schedule;
  const GopStructure gop;
  EXPECT_EQ(s.enabled_frames(0), 16);
  for (int f = 1; f <= 32; ++f) EXPECT_EQ(s.enabled(f, 0), gop.temporal_layer(f) <= 4) << f;
}

TEST(BuildSchedule, SevenEighthsDisablesFourLayerFiveFrames) {
  const auto catalog = support::flat_catalog(1);
  const auto s = build_schedule(ToolRateVector(std::vector<int>{7}), catalog).schedule;
  EXPECT_EQ(s.enabled_frames(0), 28);
  std::set<int> disabled;
  for (int f = 1; f <= 32; ++f) {
    if (!s.enabled(f, 0)) disabled.insert(f);
  }
  EXPECT_EQ(disabled, (std::set<int>{25, 27, 29, 31}));
}

TEST(BuildSchedule, FullRateIsFullMask) {
  const auto catalog = support::flat_catalog(4);
  const auto r = build_schedule(ToolRateVector::filled(4, 1.0), catalog);
  EXPECT_EQ(r.schedule, FrameSchedule(32, 4, true));
  EXPECT_TRUE(r.repairs.empty());
}

TEST(BuildSchedule, CountsNestingAndLayerOrderOverAllRates) {
  const GopStructure gop;
  const auto catalog = support::flat_catalog(1);
  std::set<int> previous;
  for (int m = 0; m <= 8; ++m) {
    const auto s = rate_schedule(ToolRateVector(std::vector<int>{m}), gop);
    const auto now = enabled_set(s, 0);
    EXPECT_EQ(static_cast<int>(now.size()), 4 * m);
    EXPECT_TRUE(std::includes(now.begin(), now.end(), previous.begin(), previous.end())) << m;
    if (m > 0) {
      // Frames added at this step sit on a layer >= every layer fully enabled before.
      int highest_full = -1;
      for (int layer = 0; layer < gop.layer_count(); ++layer) {
        bool full = true;
        for (int f = 1; f <= 32; ++f) {
          if (gop.temporal_layer(f) == layer && !previous.contains(f)) full = false;
        }
        if (full) highest_full = layer;
      }
      for (int f : now) {
        if (!previous.contains(f)) EXPECT_GE(gop.temporal_layer(f), highest_full);
      }
    }
    previous = now;
  }
}

TEST(EnforceConstraints, DependentSwitchedOffWherePrerequisiteIsOff) {
  const auto catalog = load_catalog_file(default_catalog_path());
  const ToolId bdpcm = *catalog.find("BDPCM");
  const ToolId ts = *catalog.find("TransformSkip");
  FrameSchedule s(32, catalog.size(), true);
  s.set(7, ts, false);
  const auto r = enforce_constraints(s, catalog);
  EXPECT_FALSE(r.schedule.enabled(7, bdpcm));
  ASSERT_EQ(r.repairs.size(), 1u);
  EXPECT_EQ(r.repairs.front(), (Repair{7, bdpcm, ts}));
}

TEST(EnforceConstraints, DependencyFreeIsUntouched) {
  const auto catalog = support::flat_catalog(3);
  FrameSchedule s(32, 3, false);
  s.set(3, 1, true);
  s.set(30, 2, true);
  const auto r = enforce_constraints(s, catalog);
  EXPECT_EQ(r.schedule, s);
  EXPECT_TRUE(r.repairs.empty());
}

TEST(EnforceConstraints, ChainResolvesTransitively) {
  const auto catalog = chain_catalog();
  FrameSchedule s(32, 3, true);
  for (int f = 1; f <= 32; ++f) s.set(f, 2, false);
  const auto r = enforce_constraints(s, catalog);
  EXPECT_EQ(r.schedule, FrameSchedule(32, 3, false));
  EXPECT_EQ(r.repairs.size(), 64u);
}

TEST(EnforceConstraints, IdempotentAndOnlyDisables) {
  const auto catalog = chain_catalog();
  const GopStructure gop;
  for (int a = 0; a <= 8; ++a) {
    for (int b = 0; b <= 8; ++b) {
      for (int c = 0; c <= 8; c += 2) {
        const auto raw = rate_schedule(ToolRateVector(std::vector<int>{a, b, c}), gop);
        const auto once = enforce_constraints(raw, catalog);
        const auto twice = enforce_constraints(once.schedule, catalog);
        EXPECT_EQ(twice.schedule, once.schedule);
        EXPECT_TRUE(twice.repairs.empty());
        for (int f = 1; f <= 32; ++f) {
          for (ToolId t = 0; t < 3; ++t) {
            if (once.schedule.enabled(f, t)) EXPECT_TRUE(raw.enabled(f, t));
            for (ToolId p : catalog.tool(t).prerequisites) {
              if (once.schedule.enabled(f, t)) EXPECT_TRUE(once.schedule.enabled(f, p));
            }
          }
        }
      }
    }
  }
}

TEST(EncoderConfig, FormatAndDeterminism) {
  const auto catalog = load_catalog(
      R"({"tools":[{"name":"TransformSkip","granular":true},{"name":"BDPCM","granular":true,"requires":["TransformSkip"]}]})");
  const ToolRateVector ctp(std::vector<int>{8, 4});
  const auto text = emit_encoder_config(ctp, catalog);
  EXPECT_EQ(text, "TransformSkipRate: 8/8\nBDPCMRate: 4/8\n");
  EXPECT_EQ(emit_encoder_config(ctp, catalog), text);
  EXPECT_EQ(parse_encoder_config(text, catalog), ctp);
}

TEST(EncoderConfig, AllZero) {
  const auto catalog = load_catalog_file(default_catalog_path());
  const auto text = emit_encoder_config(ToolRateVector::filled(catalog.size(), 0.0), catalog);
  std::size_t lines = 0, zeros = 0;
  for (std::size_t pos = 0; (pos = text.find('\n', pos)) != std::string::npos; ++pos) ++lines;
  for (std::size_t pos = 0; (pos = text.find(": 0/8\n", pos)) != std::string::npos; ++pos) ++zeros;
  EXPECT_EQ(lines, 30u);
  EXPECT_EQ(zeros, 30u);
}

TEST(EncoderConfig, ParseErrors) {
  const auto catalog = support::flat_catalog(2);
  EXPECT_THROW((void)parse_encoder_config("T0Rate: 8/8\n", catalog), Error);
  EXPECT_THROW((void)parse_encoder_config("T0Rate: 8/8\nT0Rate: 8/8\nT1Rate: 8/8\n", catalog), Error);
  EXPECT_THROW((void)parse_encoder_config("T0Rate: 8/8\nT1Rate: 9/8\n", catalog), Error);
  EXPECT_THROW((void)parse_encoder_config("T0Rate: 8/8\nXRate: 8/8\nT1Rate: 8/8\n", catalog), Error);
  EXPECT_EQ(parse_encoder_config("# c\n\nT0Rate: 2/8\nT1Rate: 8/8\n", catalog),
            ToolRateVector(std::vector<int>{2, 8}));
}

TEST(RenderSchedule, OneRowPerFrame) {
  const auto catalog = support::flat_catalog(2);
  const GopStructure gop;
  const auto text = render_schedule(build_schedule(ToolRateVector(std::vector<int>{4, 8}), catalog), catalog, gop);
  EXPECT_NE(text.find("T0"), std::string::npos);
  // Legend lines carry four '#' of their own.
  EXPECT_EQ(std::count(text.begin(), text.end(), '#'), 16 + 32 + 4);
}
