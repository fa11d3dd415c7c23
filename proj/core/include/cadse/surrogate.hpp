#pragma once

#include <cstdint>
#include <vector>

#include "cadse/bd_metrics.hpp"
#include "cadse/evaluation.hpp"
#include "cadse/rate_vector.hpp"

namespace cadse {

struct Interaction {
  ToolId first = 0;
  ToolId second = 0;
  double coefficient = 0.0;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

/// Deterministic desk-scale stand-in for encoder, decoder and energy meter.
///
/// With u(t) = 1 - r(t) the unused fraction of tool t, a profile scales the
/// anchor curves by
///
///   bitrate  prod_t (1 + rate_impact[t] * u(t))   * (1 + I)
///   energy   prod_t (1 - energy_impact[t] * u(t)) * (1 + I)
///   quality  1 - sum_t quality_impact[t] * u(t)
///
/// where I = sum over interactions of coefficient * u(first) * u(second).
struct SurrogateModel {
  std::vector<double> rate_impact;     // >= 0
  std::vector<double> energy_impact;   // in [0, 1)
  std::vector<double> quality_impact;  // empty, or >= 0 per tool
  std::vector<Interaction> interactions;
  std::vector<RdeCurve> anchor_curves;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t tools() const noexcept { return rate_impact.size(); }
  [[nodiscard]] bool separable() const;
  void validate() const;

  friend bool operator==(const SurrogateModel&, const SurrogateModel&) = default;
};

/// Ranges for seeded model generation.
struct SurrogateOptions {
  int sequences = 5;
  double rate_impact_max = 0.06;
  double energy_impact_max = 0.08;
  double interaction_scale = 0.0;   // coefficients drawn from [-s, s]
  double quality_impact_max = 0.0;  // 0 keeps qualities at the anchor

  friend bool operator==(const SurrogateOptions&, const SurrogateOptions&) = default;
};

/// Anchor curves over QPs {37, 32, 27, 22} with plausible HD class-B shapes.
[[nodiscard]] std::vector<RdeCurve> synthetic_anchor_curves(int sequences, std::uint64_t seed);

[[nodiscard]] SurrogateModel generate_surrogate(std::size_t tools, const SurrogateOptions& options,
                                                std::uint64_t seed);

/// Throws if an energy factor is not positive.
[[nodiscard]] std::vector<RdeCurve> surrogate_curves(const ToolRateVector& ctp,
                                                     const SurrogateModel& model);

class SurrogateSource final : public CurveSource {
 public:
  explicit SurrogateSource(SurrogateModel model);
  Measurement measure(const ToolRateVector& ctp) override;
  [[nodiscard]] const SurrogateModel& model() const noexcept { return model_; }

 private:
  SurrogateModel model_;
};

}  // namespace cadse
