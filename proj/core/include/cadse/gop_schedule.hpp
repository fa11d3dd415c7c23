#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cadse/catalog.hpp"
#include "cadse/rate_vector.hpp"

namespace cadse {

/// Hierarchical random-access GOP. Frames carry GOP-local indices 1..size;
/// index size sits on layer 0 and odd indices on the highest layer.
class GopStructure {
 public:
  /// Dyadic hierarchy over `size` frames; size must be a power of two.
  explicit GopStructure(int size = 32);

  [[nodiscard]] int size() const noexcept { return size_; }
  [[nodiscard]] int layer_count() const noexcept { return layer_count_; }

  /// Throws for index outside 1..size.
  [[nodiscard]] int temporal_layer(int index) const;
  [[nodiscard]] std::vector<int> layer_cardinalities() const;

  /// GOP-local indices in the order tools get switched off: highest layer
  /// first, decreasing index within a layer.
  [[nodiscard]] const std::vector<int>& disable_order() const noexcept { return disable_order_; }

 private:
  int size_;
  int layer_count_;
  std::vector<int> disable_order_;
};

/// Number of frames per GOP in which a tool at `rate` is enabled.
/// Throws if rate * size is not an integer.
[[nodiscard]] int frames_enabled(double rate, const GopStructure& gop = GopStructure{});

/// Per-frame, per-tool enable mask for one GOP. Frames use GOP-local indices.
class FrameSchedule {
 public:
  FrameSchedule() = default;
  FrameSchedule(int frames, std::size_t tools, bool value = false);

  [[nodiscard]] int frames() const noexcept { return frames_; }
  [[nodiscard]] std::size_t tools() const noexcept { return tools_; }

  [[nodiscard]] bool enabled(int frame, ToolId tool) const;
  void set(int frame, ToolId tool, bool value);
  [[nodiscard]] int enabled_frames(ToolId tool) const;

  friend bool operator==(const FrameSchedule&, const FrameSchedule&) = default;

 private:
  [[nodiscard]] std::size_t offset(int frame, ToolId tool) const;

  int frames_ = 0;
  std::size_t tools_ = 0;
  std::vector<unsigned char> mask_;
};

struct Repair {
  int frame;
  ToolId tool;          // switched off
  ToolId prerequisite;  // the disabled prerequisite that forced it

  friend bool operator==(const Repair&, const Repair&) = default;
};

struct RepairedSchedule {
  FrameSchedule schedule;
  std::vector<Repair> repairs;
};

/// Mask straight from the rates, before dependency repair.
[[nodiscard]] FrameSchedule rate_schedule(const ToolRateVector& ctp, const GopStructure& gop);

/// Switches off, per frame, every tool whose prerequisite is off in that frame.
/// Tools are visited in dependency order so chains resolve in one pass.
[[nodiscard]] RepairedSchedule enforce_constraints(FrameSchedule schedule,
                                                   const ToolCatalog& catalog);

[[nodiscard]] RepairedSchedule build_schedule(const ToolRateVector& ctp,
                                              const ToolCatalog& catalog,
                                              const GopStructure& gop = GopStructure{});

/// One "<Name>Rate: m/d" line per tool in catalog order.
[[nodiscard]] std::string emit_encoder_config(const ToolRateVector& ctp,
                                              const ToolCatalog& catalog);

/// Reads the emit_encoder_config format back. Every catalog tool must appear
/// exactly once; blank lines and '#' comments are ignored.
[[nodiscard]] ToolRateVector parse_encoder_config(std::string_view text,
                                                  const ToolCatalog& catalog);

/// Text grid for `schedule show`: one row per frame, one column per tool.
[[nodiscard]] std::string render_schedule(const RepairedSchedule& schedule,
                                          const ToolCatalog& catalog,
                                          const GopStructure& gop);

}  // namespace cadse
