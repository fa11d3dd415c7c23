#include "cadse/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <stdexcept>

#include "cadse/error.hpp"

namespace cadse {

std::string_view to_string(SearchMode mode) {
  return mode == SearchMode::adse ? "adse" : "cadse";
}

SearchMode parse_search_mode(std::string_view text) {
  if (text == "adse") return SearchMode::adse;
  if (text == "cadse") return SearchMode::cadse;
  throw_usage("unknown search mode '" + std::string(text) + "'");
}

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

Candidate flip(const ToolRateVector& ref, ToolId tool) {
  const int full = ref.grid().divisions();
  const int m = ref.numerator(tool);
  if (m != 0 && m != full) {
    throw_usage("tool " + std::to_string(tool) + " has non-binary rate " +
                std::to_string(ref.rate(tool)) + " and cannot be flipped");
  }
  return {tool, ref.with_numerator(tool, full - m)};
}

}  // namespace

std::vector<Candidate> generate_candidates_adse(const ToolRateVector& ref,
                                                const ToolCatalog& catalog) {
  catalog.validate(ref);
  if (!ref.is_binary()) throw_usage("ADSE needs a binary reference profile, got " + canonical_key(ref));
  std::vector<Candidate> out;
  out.reserve(ref.size());
  for (ToolId t = 0; t < ref.size(); ++t) out.push_back(flip(ref, t));
  return out;
}

std::vector<Candidate> generate_candidates_cadse_first(const ToolRateVector& ref,
                                                       const ToolCatalog& catalog) {
  catalog.validate(ref);
  std::vector<Candidate> out;
  for (const auto& tool : catalog.tools()) {
    if (!tool.granular) {
      out.push_back(flip(ref, tool.id));
      continue;
    }
    auto candidate = ref.with_rate(tool.id, snap_to_grid(0.5, ref.grid()));
    if (candidate != ref) out.push_back({tool.id, std::move(candidate)});
  }
  return out;
}

double rate_change(double efficiency_difference, int test_direction, int development) {
  // ceil(|e| * 0.4) written as 2|e| / 5 so exact multiples stay exact.
  const double magnitude =
      std::min(std::ceil(2.0 * std::abs(efficiency_difference) / 5.0) / 8.0, 0.5);
  const double directed = magnitude * static_cast<double>(test_direction);
  return development == 0 ? -directed : directed;
}

std::vector<Candidate> generate_candidates_cadse(const IterationState& state,
                                                 const ToolCatalog& catalog) {
  if (state.iteration < 2 || !state.prev_ref || !state.prev_ref_cost) {
    throw_usage("CADSE iteration " + std::to_string(state.iteration) +
                " is missing previous-iteration data");
  }
  catalog.validate(state.ref);
  const ToolRateVector& ref = state.ref;
  const ToolRateVector& prev_ref = *state.prev_ref;

  std::vector<Candidate> out;
  for (const auto& tool : catalog.tools()) {
    const ToolId t = tool.id;
    if (!tool.granular) {
      out.push_back(flip(ref, t));
      continue;
    }
    const auto prev = state.prev_candidates.find(t);
    if (prev == state.prev_candidates.end()) continue;

    const double e = *state.prev_ref_cost - prev->second.cost;
    const int test_direction = sign(prev_ref.rate(t) - prev->second.candidate.rate(t));
    const int development = sign(prev_ref.rate(t) - ref.rate(t));
    const double step = rate_change(e, test_direction, development);
    if (step == 0.0) continue;

    const double next = snap_to_grid(std::clamp(ref.rate(t) + step, 0.0, 1.0), ref.grid());
    auto candidate = ref.with_rate(t, next);
    if (candidate != ref) out.push_back({t, std::move(candidate)});
  }
  return out;
}

std::vector<ToolId> select(double ref_cost, const std::map<ToolId, double>& candidate_costs) {
  std::vector<ToolId> out;
  for (const auto& [tool, cost] : candidate_costs) {
    if (cost < ref_cost) out.push_back(tool);
  }
  return out;
}

ToolRateVector combine(const ToolRateVector& ref, std::span<const ToolRate> selected) {
  std::set<ToolId> seen;
  ToolRateVector out = ref;
  for (const auto& s : selected) {
    if (!seen.insert(s.tool).second) {
      throw_usage("tool " + std::to_string(s.tool) + " selected twice");
    }
    out = out.with_rate(s.tool, s.rate);
  }
  return out;
}

namespace {

class CampaignRunner {
 public:
  CampaignRunner(const ToolCatalog& catalog, Evaluator& evaluator, const CampaignOptions& options,
                 CampaignObserver* observer)
      : catalog_(catalog), evaluator_(evaluator), options_(options), observer_(observer) {}

  CampaignResult run(const ToolRateVector& baseline) {
    IterationState state;
    state.iteration = 1;
    state.ref = baseline;
    state.ref_cost = evaluate_one(baseline, 1);
    result_.reference_costs.push_back(state.ref_cost);

    while (true) {
      const auto candidates = generate(state);
      check_candidates(state.ref, candidates);

      std::vector<ToolRateVector> profiles;
      for (const auto& c : candidates) profiles.push_back(c.ctp);
      const auto costs = evaluate_many(profiles, state.iteration);

      std::map<ToolId, double> cost_by_tool;
      IterationSummary summary;
      summary.iteration = state.iteration;
      summary.reference = canonical_key(state.ref);
      summary.reference_cost = state.ref_cost;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        cost_by_tool[candidates[k].tool] = costs[k];
        summary.candidates.push_back(
            {candidates[k].tool, canonical_key(candidates[k].ctp), costs[k]});
      }
      summary.selected = select(state.ref_cost, cost_by_tool);

      std::vector<ToolRate> chosen;
      for (ToolId t : summary.selected) {
        const auto it = std::find_if(candidates.begin(), candidates.end(),
                                     [t](const Candidate& c) { return c.tool == t; });
        chosen.push_back({t, it->ctp.rate(t)});
      }
      const ToolRateVector next = combine(state.ref, chosen);
      summary.next_reference = canonical_key(next);
      ++result_.rounds;
      if (observer_ != nullptr) observer_->on_iteration(summary);
      result_.summaries.push_back(std::move(summary));

      if (next == state.ref) {
        return finish(state.ref, state.ref_cost, state.iteration + 1, Termination::converged);
      }
      if (result_.rounds >= options_.max_iterations) {
        const double cost = evaluate_one(next, state.iteration + 1);
        result_.reference_costs.push_back(cost);
        return finish(next, cost, state.iteration + 1, Termination::iteration_cap);
      }

      IterationState following;
      following.iteration = state.iteration + 1;
      following.prev_ref = state.ref;
      following.prev_ref_cost = state.ref_cost;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        following.prev_candidates[candidates[k].tool] = {candidates[k].ctp, costs[k]};
      }
      following.ref = next;
      following.ref_cost = evaluate_one(next, following.iteration);
      result_.reference_costs.push_back(following.ref_cost);
      state = std::move(following);
    }
  }

 private:
  std::vector<Candidate> generate(const IterationState& state) const {
    if (options_.mode == SearchMode::adse) return generate_candidates_adse(state.ref, catalog_);
    if (state.iteration == 1) return generate_candidates_cadse_first(state.ref, catalog_);
    return generate_candidates_cadse(state, catalog_);
  }

  void check_candidates(const ToolRateVector& ref, const std::vector<Candidate>& candidates) const {
    if (candidates.size() > ref.size()) throw std::logic_error("more candidates than tools");
    for (const auto& c : candidates) {
      const auto d = diff(c.ctp, ref);
      if (d.size() != 1 || d.front().tool != c.tool) {
        throw std::logic_error("candidate for tool " + std::to_string(c.tool) +
                               " must differ from the reference in exactly that tool");
      }
      catalog_.validate(c.ctp);
    }
  }

  double evaluate_one(const ToolRateVector& ctp, int iteration) {
    return evaluate_many({ctp}, iteration).front();
  }

  // Evaluates profiles (concurrently up to the parallelism limit) and records
  // new ones in input order, so the journal does not depend on completion order.
  std::vector<double> evaluate_many(const std::vector<ToolRateVector>& profiles, int iteration) {
    std::vector<std::string> keys;
    std::vector<std::size_t> fresh;
    for (std::size_t k = 0; k < profiles.size(); ++k) {
      keys.push_back(canonical_key(profiles[k]));
      const bool repeated = std::find(keys.begin(), keys.end() - 1, keys.back()) != keys.end() - 1;
      if (!seen_.contains(keys.back()) && !repeated) fresh.push_back(k);
    }

    std::vector<EvaluationRecord> records(fresh.size());
    const auto width = static_cast<std::size_t>(std::max(1, options_.parallelism));
    for (std::size_t begin = 0; begin < fresh.size(); begin += width) {
      const std::size_t end = std::min(fresh.size(), begin + width);
      if (width == 1) {
        records[begin] = evaluator_.evaluate(profiles[fresh[begin]]);
        continue;
      }
      std::vector<std::future<EvaluationRecord>> pending;
      for (std::size_t j = begin; j < end; ++j) {
        pending.push_back(std::async(std::launch::async, [this, &profiles, &fresh, j] {
          return evaluator_.evaluate(profiles[fresh[j]]);
        }));
      }
      for (auto& f : pending) f.wait();
      for (std::size_t j = begin; j < end; ++j) records[j] = pending[j - begin].get();
    }

    for (std::size_t j = 0; j < fresh.size(); ++j) {
      JournalEntry entry;
      entry.iteration = iteration;
      entry.ordinal = result_.journal.size();
      entry.ctp = profiles[fresh[j]];
      entry.key = keys[fresh[j]];
      entry.cost = evaluate_cost(records[j].efficiency, options_.cost);
      entry.record = std::move(records[j]);
      seen_.emplace(entry.key, entry.cost);
      if (observer_ != nullptr) observer_->on_evaluation(entry);
      result_.journal.push_back(std::move(entry));
    }

    std::vector<double> costs;
    costs.reserve(profiles.size());
    for (const auto& key : keys) costs.push_back(seen_.at(key));
    return costs;
  }

  CampaignResult finish(const ToolRateVector& final_ref, double final_cost, int iterations,
                        Termination termination) {
    result_.final_reference = final_ref;
    result_.final_cost = final_cost;
    result_.iterations = iterations;
    result_.termination = termination;
    result_.evaluations = result_.journal.size();
    if (observer_ != nullptr) observer_->on_finish(result_);
    return std::move(result_);
  }

  const ToolCatalog& catalog_;
  Evaluator& evaluator_;
  const CampaignOptions& options_;
  CampaignObserver* observer_;
  std::map<std::string, double> seen_;
  CampaignResult result_;
};

}  // namespace

CampaignResult run(const ToolRateVector& baseline, const ToolCatalog& catalog,
                   Evaluator& evaluator, const CampaignOptions& options,
                   CampaignObserver* observer) {
  catalog.validate(baseline);
  options.cost.validate();
  if (options.max_iterations < 2) throw_usage("max_iterations must be at least 2");
  if (options.parallelism < 1) throw_usage("parallelism must be at least 1");
  if (options.mode == SearchMode::adse && !baseline.is_binary()) {
    throw_usage("ADSE needs a binary baseline profile");
  }
  return CampaignRunner(catalog, evaluator, options, observer).run(baseline);
}

}  // namespace cadse
