#include "cadse/pareto.hpp"

#include <algorithm>
#include <limits>

namespace cadse {

bool dominates(const EfficiencyPoint& a, const EfficiencyPoint& b) {
  return a.bdr <= b.bdr && a.bdde <= b.bdde && (a.bdr < b.bdr || a.bdde < b.bdde);
}

std::vector<KeyedPoint> pareto_front(std::vector<KeyedPoint> points) {
  // Sweep by ascending BDR (ties: ascending BDDE, then key); a point survives
  // when its BDDE is strictly below everything seen so far.
  std::sort(points.begin(), points.end(), [](const KeyedPoint& a, const KeyedPoint& b) {
    if (a.point.bdr != b.point.bdr) return a.point.bdr < b.point.bdr;
    if (a.point.bdde != b.point.bdde) return a.point.bdde < b.point.bdde;
    return a.key < b.key;
  });
  std::vector<KeyedPoint> front;
  double best_bdde = std::numeric_limits<double>::infinity();
  for (auto& p : points) {
    if (p.point.bdde < best_bdde) {
      best_bdde = p.point.bdde;
      front.push_back(std::move(p));
    }
  }
  return front;
}

}  // namespace cadse
