#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "cadse/engine.hpp"

namespace cadse {

// Journal layout: one JSON object per line, fields in a fixed order.
//
//   {"type":"campaign",...}     configuration, catalog and evaluator setup
//   {"type":"anchor",...}       anchor curves, measured once
//   {"type":"evaluation",...}   one per distinct profile, in evaluation order
//   {"type":"iteration",...}    candidates, costs and selection of a round
//   {"type":"result",...}       final reference and termination reason
//
// The file is append-only. A line without its trailing newline is an
// interrupted write and is ignored by readers.

struct JournalEvaluation {
  int iteration = 0;
  std::size_t ordinal = 0;  // logical timestamp: position in evaluation order
  std::string key;
  EfficiencyPoint efficiency;
  double cost = 0.0;
  Measurement measurement;
};

struct JournalResult {
  int iterations = 0;
  int rounds = 0;
  std::string final_reference;
  double final_cost = 0.0;
  std::string termination;
  std::size_t evaluations = 0;
};

struct JournalContents {
  std::string header;  // raw campaign line
  std::string label;
  std::optional<std::vector<RdeCurve>> anchor;
  std::vector<JournalEvaluation> evaluations;
  std::vector<IterationSummary> iterations;
  std::optional<JournalResult> result;
  std::vector<std::string> lines;     // complete lines, verbatim
  std::vector<std::string> warnings;  // lines skipped in lenient mode
};

/// Reads every complete line. A malformed line throws a corruption error
/// naming its line number unless `lenient`, in which case it is skipped and
/// reported in warnings.
[[nodiscard]] JournalContents read_journal(const std::filesystem::path& path, bool lenient = false);

[[nodiscard]] std::string anchor_line(const std::vector<RdeCurve>& anchor);
[[nodiscard]] std::string evaluation_line(const JournalEntry& entry);
[[nodiscard]] std::string iteration_line(const IterationSummary& summary);
[[nodiscard]] std::string result_line(const CampaignResult& result);

[[nodiscard]] JournalEvaluation parse_evaluation_line(const std::string& line);

/// Appends campaign events to a journal file.
///
/// When reopened for resume, the existing lines form a replay prefix: each
/// line the campaign produces must equal the next existing line and is not
/// written again; only lines past the prefix are appended. A mismatch means
/// the journal does not belong to this deterministic replay.
class JournalWriter final : public CampaignObserver {
 public:
  enum class Mode { create, overwrite, resume };

  JournalWriter(const std::filesystem::path& path, Mode mode);

  void write_line(const std::string& line);

  void on_evaluation(const JournalEntry& entry) override;
  void on_iteration(const IterationSummary& summary) override;
  void on_finish(const CampaignResult& result) override;

  [[nodiscard]] std::size_t replayed() const noexcept { return cursor_; }
  [[nodiscard]] std::size_t appended() const noexcept { return appended_; }
  [[nodiscard]] const std::vector<std::string>& existing() const noexcept { return replay_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::vector<std::string> replay_;
  std::size_t cursor_ = 0;
  std::size_t appended_ = 0;
};

}  // namespace cadse
