#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cadse/journal.hpp"
#include "cadse/pareto.hpp"

namespace cadse {

enum class ReportFormat { csv, structured, plot };

[[nodiscard]] ReportFormat parse_report_format(std::string_view text);

/// Every evaluated profile in journal order.
[[nodiscard]] std::vector<KeyedPoint> journal_points(const JournalContents& journal);

/// Pareto front over all evaluations of the journal.
[[nodiscard]] std::vector<KeyedPoint> journal_front(const JournalContents& journal);

/// Header "iteration,key,bdr,bdde,cost,label" and one row per evaluation.
[[nodiscard]] std::string export_csv(const JournalContents& journal);

/// JSON document with the records and the Pareto front.
[[nodiscard]] std::string export_structured(const JournalContents& journal);

/// Self-contained SVG scatter of (BDR, BDDE) with the front as a polyline.
[[nodiscard]] std::string export_plot(const JournalContents& journal);

[[nodiscard]] std::string export_report(const JournalContents& journal, ReportFormat format);

/// Shortest decimal text that reads back to the same double.
[[nodiscard]] std::string format_number(double value);

}  // namespace cadse
