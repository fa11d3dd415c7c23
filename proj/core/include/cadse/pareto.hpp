#pragma once

#include <string>
#include <vector>

#include "cadse/bd_metrics.hpp"

namespace cadse {

struct KeyedPoint {
  std::string key;
  EfficiencyPoint point;

  friend bool operator==(const KeyedPoint&, const KeyedPoint&) = default;
};

/// a dominates b when it is no worse in both BDR and BDDE and strictly
/// better in at least one (both minimized).
[[nodiscard]] bool dominates(const EfficiencyPoint& a, const EfficiencyPoint& b);

/// Non-dominated subset sorted by ascending BDR. Points with identical
/// coordinates collapse to the lexicographically smallest key.
[[nodiscard]] std::vector<KeyedPoint> pareto_front(std::vector<KeyedPoint> points);

}  // namespace cadse
