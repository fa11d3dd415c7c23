#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cadse {

using ToolId = std::size_t;

/// Rate grid with step 1/divisions. The default grid has eight steps.
class GridStep {
 public:
  constexpr GridStep() = default;
  explicit GridStep(int divisions);

  [[nodiscard]] constexpr int divisions() const noexcept { return divisions_; }
  [[nodiscard]] constexpr double value() const noexcept {
    return 1.0 / static_cast<double>(divisions_);
  }

  friend constexpr bool operator==(GridStep, GridStep) = default;

 private:
  int divisions_ = 8;
};

/// Nearest grid multiple of x. Exact midpoints go to whichever neighbour is
/// closer to 0.5. Throws for x outside [0, 1].
[[nodiscard]] double snap_to_grid(double x, GridStep step = GridStep{});

/// A coding tool profile: one grid rate per catalog tool.
///
/// Rates are stored as integer grid numerators, so equality and hashing are
/// exact. A binary profile has every numerator at 0 or divisions.
class ToolRateVector {
 public:
  ToolRateVector() = default;
  explicit ToolRateVector(std::vector<int> numerators, GridStep grid = GridStep{});

  /// Every rate must already lie on the grid.
  [[nodiscard]] static ToolRateVector from_rates(std::span<const double> rates,
                                                 GridStep grid = GridStep{});
  [[nodiscard]] static ToolRateVector filled(std::size_t tools, double rate,
                                             GridStep grid = GridStep{});

  [[nodiscard]] std::size_t size() const noexcept { return numerators_.size(); }
  [[nodiscard]] GridStep grid() const noexcept { return grid_; }
  [[nodiscard]] int numerator(ToolId tool) const { return numerators_.at(tool); }
  [[nodiscard]] double rate(ToolId tool) const;
  [[nodiscard]] std::span<const int> numerators() const noexcept { return numerators_; }
  [[nodiscard]] std::vector<double> rates() const;
  [[nodiscard]] bool is_binary() const noexcept;

  [[nodiscard]] ToolRateVector with_numerator(ToolId tool, int numerator) const;
  [[nodiscard]] ToolRateVector with_rate(ToolId tool, double rate) const;

  friend bool operator==(const ToolRateVector&, const ToolRateVector&) = default;

 private:
  std::vector<int> numerators_;
  GridStep grid_;
};

/// Cache key: comma separated grid numerators in catalog order, e.g. "8,4,0".
/// Grids other than eighths are prefixed with "<divisions>:".
[[nodiscard]] std::string canonical_key(const ToolRateVector& ctp);

/// Inverse of canonical_key.
[[nodiscard]] ToolRateVector parse_canonical_key(const std::string& key);

struct RateDelta {
  ToolId tool;
  double delta;

  friend bool operator==(const RateDelta&, const RateDelta&) = default;
};

/// Coordinates where a and b differ, with delta = a - b.
[[nodiscard]] std::vector<RateDelta> diff(const ToolRateVector& a, const ToolRateVector& b);

}  // namespace cadse
