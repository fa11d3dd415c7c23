#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "cadse/bd_metrics.hpp"
#include "cadse/rate_vector.hpp"

namespace cadse {

/// Test curves for one profile as returned by a measurement backend.
struct Measurement {
  std::vector<RdeCurve> curves;
  /// Repetitions used per energy measurement, sequence-major in QP order.
  /// Empty for backends that do not repeat measurements.
  std::vector<int> repetitions;
  bool converged = true;

  friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// Produces per-sequence curves for a profile (codec runs, a surrogate, ...).
/// Implementations must tolerate concurrent calls for distinct profiles.
class CurveSource {
 public:
  virtual ~CurveSource() = default;
  virtual Measurement measure(const ToolRateVector& ctp) = 0;
};

struct EvaluationRecord {
  std::string key;
  Measurement measurement;
  EfficiencyPoint efficiency;

  friend bool operator==(const EvaluationRecord&, const EvaluationRecord&) = default;
};

/// Aggregated (BDR, BDDE) of test curves against the campaign anchor.
[[nodiscard]] EfficiencyPoint efficiency_of(const std::vector<RdeCurve>& anchor,
                                            const std::vector<RdeCurve>& test,
                                            Interpolation mode = Interpolation::pchip);

/// The evaluator contract: profile in, curves and efficiency against a fixed
/// anchor out. Results are cached by canonical key, so a profile reaches the
/// backend at most once.
class Evaluator {
 public:
  Evaluator(CurveSource& source, std::vector<RdeCurve> anchor,
            Interpolation mode = Interpolation::pchip);

  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  EvaluationRecord evaluate(const ToolRateVector& ctp);

  /// Seeds the cache with a previously journaled record. The stored
  /// efficiency must match what the stored curves recompute to.
  void preload(EvaluationRecord record);

  [[nodiscard]] bool cached(const std::string& key) const;
  [[nodiscard]] std::size_t backend_calls() const noexcept { return backend_calls_.load(); }
  [[nodiscard]] const std::vector<RdeCurve>& anchor() const noexcept { return anchor_; }
  [[nodiscard]] Interpolation interpolation() const noexcept { return mode_; }

 private:
  CurveSource& source_;
  std::vector<RdeCurve> anchor_;
  Interpolation mode_;
  mutable std::mutex mutex_;
  std::map<std::string, EvaluationRecord> cache_;
  std::atomic<std::size_t> backend_calls_{0};
};

}  // namespace cadse
