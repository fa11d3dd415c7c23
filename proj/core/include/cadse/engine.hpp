#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cadse/catalog.hpp"
#include "cadse/cost.hpp"
#include "cadse/evaluation.hpp"
#include "cadse/rate_vector.hpp"

namespace cadse {

enum class SearchMode { adse, cadse };

[[nodiscard]] std::string_view to_string(SearchMode mode);
[[nodiscard]] SearchMode parse_search_mode(std::string_view text);

/// A profile tested for one tool: the reference with that tool changed.
struct Candidate {
  ToolId tool = 0;
  ToolRateVector ctp;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Binary flip of every tool. Throws unless ref is binary.
[[nodiscard]] std::vector<Candidate> generate_candidates_adse(const ToolRateVector& ref,
                                                              const ToolCatalog& catalog);

/// First CADSE iteration: granular tools probe rate 0.5, non-granular tools
/// flip. Candidates equal to the reference are omitted.
[[nodiscard]] std::vector<Candidate> generate_candidates_cadse_first(const ToolRateVector& ref,
                                                                     const ToolCatalog& catalog);

/// Signed rate step from the previous cost improvement e (percent), the
/// previous test direction t and the reference development d:
///
///   |step| = min(ceil(|e| * 0.4) / 8, 0.5)
///   step   = -|step| * t   if d == 0
///          =  |step| * t   otherwise
[[nodiscard]] double rate_change(double efficiency_difference, int test_direction,
                                 int development);

struct PreviousTest {
  ToolRateVector candidate;
  double cost = 0.0;
};

/// Search state entering iteration `iteration`.
struct IterationState {
  int iteration = 1;
  ToolRateVector ref;
  double ref_cost = 0.0;
  std::optional<ToolRateVector> prev_ref;
  std::optional<double> prev_ref_cost;
  std::map<ToolId, PreviousTest> prev_candidates;
};

/// CADSE candidates for iteration >= 2. Granular tools step by rate_change
/// from their previous test; non-granular tools flip. Tools without a
/// previous test, with a zero step, or whose clamped rate equals the
/// reference are omitted.
[[nodiscard]] std::vector<Candidate> generate_candidates_cadse(const IterationState& state,
                                                               const ToolCatalog& catalog);

/// Tools whose candidate cost is strictly below the reference cost.
[[nodiscard]] std::vector<ToolId> select(double ref_cost,
                                         const std::map<ToolId, double>& candidate_costs);

struct ToolRate {
  ToolId tool = 0;
  double rate = 0.0;
};

/// Reference with each selected coordinate replaced. Tool ids must be distinct.
[[nodiscard]] ToolRateVector combine(const ToolRateVector& ref, std::span<const ToolRate> selected);

struct CampaignOptions {
  SearchMode mode = SearchMode::cadse;
  CostSpec cost;
  int max_iterations = 50;
  int parallelism = 1;
};

/// One profile evaluated during the campaign, in evaluation order.
struct JournalEntry {
  int iteration = 0;
  std::size_t ordinal = 0;
  ToolRateVector ctp;
  std::string key;
  EvaluationRecord record;
  double cost = 0.0;
};

struct CandidateOutcome {
  ToolId tool = 0;
  std::string key;
  double cost = 0.0;
};

struct IterationSummary {
  int iteration = 0;
  std::string reference;
  double reference_cost = 0.0;
  std::vector<CandidateOutcome> candidates;
  std::vector<ToolId> selected;
  std::string next_reference;
};

enum class Termination { converged, iteration_cap };

struct CampaignResult {
  ToolRateVector final_reference;
  double final_cost = 0.0;
  /// Number of reference profiles established, counting the repeated final
  /// one: a campaign whose first round selects nothing reports 2.
  int iterations = 0;
  int rounds = 0;  // candidate rounds executed
  Termination termination = Termination::converged;
  std::vector<JournalEntry> journal;
  std::vector<IterationSummary> summaries;
  std::vector<double> reference_costs;
  std::size_t evaluations = 0;  // distinct profiles evaluated
};

/// Receives campaign events as they happen, in deterministic order.
class CampaignObserver {
 public:
  virtual ~CampaignObserver() = default;
  virtual void on_evaluation(const JournalEntry& entry) = 0;
  virtual void on_iteration(const IterationSummary& summary) = 0;
  virtual void on_finish(const CampaignResult& result) = 0;
};

/// Runs ADSE or CADSE from `baseline` until two consecutive references
/// coincide or the iteration cap is reached.
[[nodiscard]] CampaignResult run(const ToolRateVector& baseline, const ToolCatalog& catalog,
                                 Evaluator& evaluator, const CampaignOptions& options,
                                 CampaignObserver* observer = nullptr);

}  // namespace cadse
