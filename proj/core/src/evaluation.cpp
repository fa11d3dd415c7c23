#include "cadse/evaluation.hpp"

#include <cmath>

#include "cadse/error.hpp"

namespace cadse {

EfficiencyPoint efficiency_of(const std::vector<RdeCurve>& anchor,
                              const std::vector<RdeCurve>& test, Interpolation mode) {
  const auto per_sequence = per_sequence_efficiency(anchor, test, mode);
  return aggregate(per_sequence);
}

Evaluator::Evaluator(CurveSource& source, std::vector<RdeCurve> anchor, Interpolation mode)
    : source_(source), anchor_(std::move(anchor)), mode_(mode) {
  if (anchor_.empty()) throw_usage("evaluator needs at least one anchor curve");
  for (const auto& c : anchor_) (void)validated_points(c);
}

EvaluationRecord Evaluator::evaluate(const ToolRateVector& ctp) {
  const std::string key = canonical_key(ctp);
  {
    std::lock_guard lock(mutex_);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  }

  EvaluationRecord record;
  record.key = key;
  ++backend_calls_;
  try {
    record.measurement = source_.measure(ctp);
    record.efficiency = efficiency_of(anchor_, record.measurement.curves, mode_);
  } catch (const Error& e) {
    throw Error(e.kind(), "evaluation of profile " + key + " failed: " + e.what());
  } catch (const std::exception& e) {
    throw_backend("evaluation of profile " + key + " failed: " + e.what());
  }

  std::lock_guard lock(mutex_);
  return cache_.emplace(key, std::move(record)).first->second;
}

void Evaluator::preload(EvaluationRecord record) {
  const auto recomputed = efficiency_of(anchor_, record.measurement.curves, mode_);
  if (std::abs(recomputed.bdr - record.efficiency.bdr) > 1e-9 ||
      std::abs(recomputed.bdde - record.efficiency.bdde) > 1e-9) {
    throw_corruption("stored efficiency of profile " + record.key +
                     " does not match its stored curves");
  }
  std::lock_guard lock(mutex_);
  cache_.insert_or_assign(record.key, std::move(record));
}

bool Evaluator::cached(const std::string& key) const {
  std::lock_guard lock(mutex_);
  return cache_.contains(key);
}

}  // namespace cadse
