#include "cadse/cost.hpp"

#include <algorithm>
#include <cmath>

#include "cadse/error.hpp"

namespace cadse {

void CostSpec::validate() const {
  if (!(weight > 0.0)) throw_usage("cost weight must be positive");
  if (!(band >= 0.0)) throw_usage("cost band must be non-negative");
  if (!(limit >= 0.0)) throw_usage("cost limit must be non-negative");
}

double evaluate_cost(const EfficiencyPoint& p, const CostSpec& spec) {
  switch (spec.kind) {
    case CostKind::classic:
      return p.bdr + p.bdde;
    case CostKind::linear:
      return std::max(p.bdr - spec.limit, 0.0) * spec.weight + p.bdde;
    case CostKind::linear_cubic: {
      const double below = std::min(p.bdr - (spec.limit - spec.band), 0.0);
      const double above = std::max(p.bdr - (spec.limit + spec.band), 0.0);
      return below + above * above * above + p.bdde;
    }
  }
  throw_usage("unknown cost kind");
}

std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::classic: return "classic";
    case CostKind::linear: return "linear";
    case CostKind::linear_cubic: return "linear-cubic";
  }
  return "?";
}

CostKind parse_cost_kind(std::string_view text) {
  if (text == "classic") return CostKind::classic;
  if (text == "linear") return CostKind::linear;
  if (text == "linear-cubic" || text == "linear_cubic") return CostKind::linear_cubic;
  throw_usage("unknown cost function '" + std::string(text) + "'");
}

}  // namespace cadse
