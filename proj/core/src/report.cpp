#include "cadse/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "cadse/error.hpp"

namespace cadse {

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "structured" || text == "json") return ReportFormat::structured;
  if (text == "plot" || text == "svg") return ReportFormat::plot;
  throw_usage("unknown report format '" + std::string(text) + "'");
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::vector<KeyedPoint> journal_points(const JournalContents& journal) {
  std::vector<KeyedPoint> out;
  out.reserve(journal.evaluations.size());
  for (const auto& e : journal.evaluations) out.push_back({e.key, e.efficiency});
  return out;
}

std::vector<KeyedPoint> journal_front(const JournalContents& journal) {
  return pareto_front(journal_points(journal));
}

std::string export_csv(const JournalContents& journal) {
  std::string out = "iteration,key,bdr,bdde,cost,label\n";
  for (const auto& e : journal.evaluations) {
    out += std::to_string(e.iteration) + ",\"" + e.key + "\"," + format_number(e.efficiency.bdr) +
           "," + format_number(e.efficiency.bdde) + "," + format_number(e.cost) + "," +
           journal.label + "\n";
  }
  return out;
}

std::string export_structured(const JournalContents& journal) {
  using Json = nlohmann::ordered_json;
  Json records = Json::array();
  for (const auto& e : journal.evaluations) {
    records.push_back(Json{{"iteration", e.iteration},
                           {"key", e.key},
                           {"bdr", e.efficiency.bdr},
                           {"bdde", e.efficiency.bdde},
                           {"cost", e.cost}});
  }
  Json front = Json::array();
  for (const auto& p : journal_front(journal)) {
    front.push_back(Json{{"key", p.key}, {"bdr", p.point.bdr}, {"bdde", p.point.bdde}});
  }
  Json doc{{"label", journal.label}, {"records", std::move(records)}, {"pareto", std::move(front)}};
  if (journal.result) {
    doc["final_reference"] = journal.result->final_reference;
    doc["iterations"] = journal.result->iterations;
  }
  return doc.dump(2) + "\n";
}

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Axis range padded to whole ticks.
struct Axis {
  double lo, hi, step;
};

Axis make_axis(double lo, double hi) {
  if (hi - lo < 1e-9) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double raw = (hi - lo) / 6.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * magnitude >= raw) {
      step = m * magnitude;
      break;
    }
  }
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

}  // namespace

std::string export_plot(const JournalContents& journal) {
  constexpr double width = 640, height = 480, left = 70, right = 20, top = 30, bottom = 60;
  const auto points = journal_points(journal);
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  for (const auto& p : points) {
    min_x = std::min(min_x, p.point.bdr);
    max_x = std::max(max_x, p.point.bdr);
    min_y = std::min(min_y, p.point.bdde);
    max_y = std::max(max_y, p.point.bdde);
  }
  const Axis ax = make_axis(min_x, max_x);
  const Axis ay = make_axis(min_y, max_y);
  auto sx = [&](double x) { return left + (x - ax.lo) / (ax.hi - ax.lo) * (width - left - right); };
  auto sy = [&](double y) { return top + (ay.hi - y) / (ay.hi - ay.lo) * (height - top - bottom); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<title>" + (journal.label.empty() ? std::string("campaign") : journal.label) + "</title>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";

  const int x_ticks = static_cast<int>(std::lround((ax.hi - ax.lo) / ax.step));
  for (int i = 0; i <= x_ticks; ++i) {
    const double v = ax.lo + i * ax.step;
    svg += "<line x1=\"" + fixed(sx(v)) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(sx(v)) +
           "\" y2=\"" + fixed(height - bottom) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fixed(sx(v)) + "\" y=\"" + fixed(height - bottom + 16) +
           "\" text-anchor=\"middle\">" + format_number(std::round(v * 1e6) / 1e6) + "</text>\n";
  }
  const int y_ticks = static_cast<int>(std::lround((ay.hi - ay.lo) / ay.step));
  for (int i = 0; i <= y_ticks; ++i) {
    const double v = ay.lo + i * ay.step;
    svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(sy(v)) + "\" x2=\"" +
           fixed(width - right) + "\" y2=\"" + fixed(sy(v)) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(sy(v) + 4) +
           "\" text-anchor=\"end\">" + format_number(std::round(v * 1e6) / 1e6) + "</text>\n";
  }
  svg += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" +
         fixed(width - left - right) + "\" height=\"" + fixed(height - top - bottom) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + fixed(left + (width - left - right) / 2) + "\" y=\"" + fixed(height - 18) +
         "\" text-anchor=\"middle\">BDR_VMAF [%]</text>\n";
  svg += "<text transform=\"translate(18 " + fixed(top + (height - top - bottom) / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">BDDE_VMAF [%]</text>\n";

  svg += "<g fill=\"#1f77b4\" fill-opacity=\"0.6\">\n";
  for (const auto& p : points) {
    svg += "<circle cx=\"" + fixed(sx(p.point.bdr)) + "\" cy=\"" + fixed(sy(p.point.bdde)) +
           "\" r=\"3\"><title>" + p.key + "</title></circle>\n";
  }
  svg += "</g>\n";

  const auto front = pareto_front(points);
  if (!front.empty()) {
    svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < front.size(); ++i) {
      if (i > 0) svg += " ";
      svg += fixed(sx(front[i].point.bdr)) + "," + fixed(sy(front[i].point.bdde));
    }
    svg += "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string export_report(const JournalContents& journal, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return export_csv(journal);
    case ReportFormat::structured: return export_structured(journal);
    case ReportFormat::plot: return export_plot(journal);
  }
  return {};
}

}  // namespace cadse
