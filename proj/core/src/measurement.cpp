#include "cadse/measurement.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "cadse/error.hpp"

namespace cadse {

void MeasurementPolicy::validate() const {
  if (!(confidence > 0.0 && confidence < 1.0)) throw_usage("confidence level must lie in (0, 1)");
  if (!(relative_half_width > 0.0 && relative_half_width < 1.0)) {
    throw_usage("relative half-width must lie in (0, 1)");
  }
  if (min_repetitions < 1 || min_repetitions > max_repetitions) {
    throw_usage("repetition bounds must satisfy 1 <= min <= max");
  }
}

double t_interval_half_width(double stddev, int n, double confidence) {
  const boost::math::students_t dist(static_cast<double>(n - 1));
  // Upper tail via the complement keeps precision near confidence 1.
  const double t = boost::math::quantile(boost::math::complement(dist, (1.0 - confidence) / 2.0));
  return t * stddev / std::sqrt(static_cast<double>(n));
}

MeasurementResult measure_with_ci(const std::function<double()>& sample,
                                  const MeasurementPolicy& policy) {
  policy.validate();
  // Welford running mean and variance.
  double mean = 0.0;
  double m2 = 0.0;
  int n = 0;
  while (true) {
    const double x = sample();
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw_backend("energy sample " + std::to_string(x) + " is not a positive number");
    }
    ++n;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);

    if (n >= policy.min_repetitions && n >= 2) {
      const double stddev = std::sqrt(m2 / (n - 1));
      if (t_interval_half_width(stddev, n, policy.confidence) <=
          policy.relative_half_width * mean) {
        return {mean, n, true};
      }
    }
    if (n >= policy.max_repetitions) {
      // A single permitted draw cannot be tested; report it as unconverged.
      return {mean, n, false};
    }
  }
}

}  // namespace cadse
