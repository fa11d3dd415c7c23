#include "cadse/surrogate.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cadse/error.hpp"

namespace cadse {

namespace {

// Portable uniform draw; std::uniform_real_distribution is not
// reproducible across standard libraries.
class UnitStream {
 public:
  explicit UnitStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

double round_to(double v, double step) { return std::round(v / step) * step; }

constexpr int kQps[] = {37, 32, 27, 22};

}  // namespace

bool SurrogateModel::separable() const {
  for (const auto& i : interactions) {
    if (i.coefficient != 0.0) return false;
  }
  return true;
}

void SurrogateModel::validate() const {
  const std::size_t n = rate_impact.size();
  if (energy_impact.size() != n || (!quality_impact.empty() && quality_impact.size() != n)) {
    throw_usage("surrogate impact vectors differ in length");
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (!(rate_impact[t] >= 0.0)) throw_usage("surrogate rate impact must be >= 0");
    if (!(energy_impact[t] >= 0.0 && energy_impact[t] < 1.0)) {
      throw_usage("surrogate energy impact must lie in [0, 1)");
    }
    if (!quality_impact.empty() && !(quality_impact[t] >= 0.0)) {
      throw_usage("surrogate quality impact must be >= 0");
    }
  }
  for (const auto& i : interactions) {
    if (i.first >= n || i.second >= n || i.first == i.second) {
      throw_usage("surrogate interaction refers to an invalid tool pair");
    }
  }
  if (anchor_curves.empty()) throw_usage("surrogate has no anchor curves");
  for (const auto& c : anchor_curves) (void)validated_points(c);
}

std::vector<RdeCurve> synthetic_anchor_curves(int sequences, std::uint64_t seed) {
  if (sequences < 1) throw_usage("surrogate needs at least one sequence");
  UnitStream rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<RdeCurve> curves;
  for (int s = 0; s < sequences; ++s) {
    RdeCurve curve;
    curve.sequence = "synthetic-" + std::to_string(s + 1);
    const double base_rate = rng.uniform(1500.0, 6000.0);
    const double base_quality = rng.uniform(68.0, 76.0);
    const double gain = rng.uniform(7.0, 10.0);
    const double base_energy = rng.uniform(20.0, 60.0);
    const double quality_steps[] = {0.0, gain, 1.6 * gain, 1.95 * gain};
    for (int k = 0; k < 4; ++k) {
      const int qp = kQps[k];
      RdePoint p;
      p.qp = qp;
      p.bitrate = round_to(base_rate * std::exp2((37 - qp) / 5.5), 0.1);
      p.quality = round_to(base_quality + quality_steps[k], 0.01);
      p.energy = round_to(base_energy * (1.0 + 0.035 * (37 - qp)), 0.001);
      curve.points.push_back(p);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

SurrogateModel generate_surrogate(std::size_t tools, const SurrogateOptions& options,
                                  std::uint64_t seed) {
  UnitStream rng(seed);
  SurrogateModel model;
  model.seed = seed;
  for (std::size_t t = 0; t < tools; ++t) {
    model.rate_impact.push_back(rng.uniform(0.0, options.rate_impact_max));
    model.energy_impact.push_back(rng.uniform(0.0, options.energy_impact_max));
  }
  if (options.quality_impact_max > 0.0) {
    for (std::size_t t = 0; t < tools; ++t) {
      model.quality_impact.push_back(rng.uniform(0.0, options.quality_impact_max));
    }
  }
  if (options.interaction_scale > 0.0) {
    for (ToolId a = 0; a < tools; ++a) {
      for (ToolId b = a + 1; b < tools; ++b) {
        model.interactions.push_back(
            {a, b, rng.uniform(-options.interaction_scale, options.interaction_scale)});
      }
    }
  }
  model.anchor_curves = synthetic_anchor_curves(options.sequences, seed);
  model.validate();
  return model;
}

std::vector<RdeCurve> surrogate_curves(const ToolRateVector& ctp, const SurrogateModel& model) {
  if (ctp.size() != model.tools()) {
    throw_usage("profile length " + std::to_string(ctp.size()) + " does not match the surrogate (" +
                std::to_string(model.tools()) + " tools)");
  }
  double rate_factor = 1.0;
  double energy_factor = 1.0;
  double quality_factor = 1.0;
  for (ToolId t = 0; t < ctp.size(); ++t) {
    const double unused = 1.0 - ctp.rate(t);
    rate_factor *= 1.0 + model.rate_impact[t] * unused;
    energy_factor *= 1.0 - model.energy_impact[t] * unused;
    if (!model.quality_impact.empty()) quality_factor -= model.quality_impact[t] * unused;
  }
  double interaction = 0.0;
  for (const auto& i : model.interactions) {
    interaction += i.coefficient * (1.0 - ctp.rate(i.first)) * (1.0 - ctp.rate(i.second));
  }
  rate_factor *= 1.0 + interaction;
  energy_factor *= 1.0 + interaction;
  if (!(energy_factor > 0.0) || !(rate_factor > 0.0) || !(quality_factor > 0.0)) {
    throw_usage("surrogate misconfigured: non-positive scale factor for profile " +
                canonical_key(ctp));
  }

  std::vector<RdeCurve> curves = model.anchor_curves;
  for (auto& c : curves) {
    for (auto& p : c.points) {
      p.bitrate *= rate_factor;
      p.energy *= energy_factor;
      p.quality *= quality_factor;
    }
  }
  return curves;
}

SurrogateSource::SurrogateSource(SurrogateModel model) : model_(std::move(model)) {
  model_.validate();
}

Measurement SurrogateSource::measure(const ToolRateVector& ctp) {
  return Measurement{surrogate_curves(ctp, model_), {}, true};
}

}  // namespace cadse
