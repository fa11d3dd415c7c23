#pragma once

#include <functional>

namespace cadse {

/// Stopping rule for repeated energy measurements: keep sampling until the
/// two-sided Student-t interval at `confidence` has a half-width of at most
/// relative_half_width * mean, bounded by [min_repetitions, max_repetitions].
struct MeasurementPolicy {
  double confidence = 0.99;
  double relative_half_width = 0.02;
  int min_repetitions = 3;
  int max_repetitions = 30;

  void validate() const;

  friend bool operator==(const MeasurementPolicy&, const MeasurementPolicy&) = default;
};

struct MeasurementResult {
  double mean = 0.0;
  int repetitions = 0;
  bool converged = false;
};

/// Draws samples from `sample` until the policy is satisfied or the cap is
/// hit (then converged is false). Throws on a non-positive sample.
[[nodiscard]] MeasurementResult measure_with_ci(const std::function<double()>& sample,
                                                const MeasurementPolicy& policy);

/// Half-width of the two-sided Student-t interval for the given samples.
[[nodiscard]] double t_interval_half_width(double stddev, int n, double confidence);

}  // namespace cadse
