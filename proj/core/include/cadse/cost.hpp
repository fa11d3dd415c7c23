#pragma once

#include <string>
#include <string_view>

#include "cadse/bd_metrics.hpp"

namespace cadse {

enum class CostKind { classic, linear, linear_cubic };

/// Optimization criterion. limit and band are BDR percentages, weight is
/// dimensionless.
struct CostSpec {
  CostKind kind = CostKind::classic;
  double limit = 5.0;
  double weight = 3.0;
  double band = 0.5;

  void validate() const;

  friend bool operator==(const CostSpec&, const CostSpec&) = default;
};

/// Scalar cost in percent units; lower is better.
///
///   classic       bdr + bdde
///   linear        max(bdr - limit, 0) * weight + bdde
///   linear_cubic  min(bdr - (limit - band), 0) + max(bdr - (limit + band), 0)^3 + bdde
[[nodiscard]] double evaluate_cost(const EfficiencyPoint& p, const CostSpec& spec);

[[nodiscard]] std::string_view to_string(CostKind kind);
/// Accepts "classic", "linear", "linear-cubic" and "linear_cubic".
[[nodiscard]] CostKind parse_cost_kind(std::string_view text);

}  // namespace cadse
