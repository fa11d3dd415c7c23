#include "cadse/gop_schedule.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cadse/error.hpp"

namespace cadse {

GopStructure::GopStructure(int size) : size_(size) {
  if (size < 1 || !std::has_single_bit(static_cast<unsigned>(size))) {
    throw_usage("GOP size must be a power of two, got " + std::to_string(size));
  }
  layer_count_ = std::countr_zero(static_cast<unsigned>(size)) + 1;

  disable_order_.resize(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) disable_order_[static_cast<std::size_t>(i)] = i + 1;
  std::sort(disable_order_.begin(), disable_order_.end(), [this](int a, int b) {
    const int la = temporal_layer(a);
    const int lb = temporal_layer(b);
    return la != lb ? la > lb : a > b;
  });
}

int GopStructure::temporal_layer(int index) const {
  if (index < 1 || index > size_) {
    throw_usage("GOP-local frame index " + std::to_string(index) + " outside 1.." +
                std::to_string(size_));
  }
  return (layer_count_ - 1) - std::countr_zero(static_cast<unsigned>(index));
}

std::vector<int> GopStructure::layer_cardinalities() const {
  std::vector<int> counts(static_cast<std::size_t>(layer_count_), 0);
  for (int i = 1; i <= size_; ++i) ++counts[static_cast<std::size_t>(temporal_layer(i))];
  return counts;
}

int frames_enabled(double rate, const GopStructure& gop) {
  const double frames = rate * gop.size();
  const double rounded = std::round(frames);
  if (!(rate >= 0.0 && rate <= 1.0) || std::abs(frames - rounded) > 1e-9) {
    throw_usage("rate " + std::to_string(rate) + " does not map to whole frames in a GOP of " +
                std::to_string(gop.size()));
  }
  return static_cast<int>(rounded);
}

FrameSchedule::FrameSchedule(int frames, std::size_t tools, bool value)
    : frames_(frames), tools_(tools),
      mask_(static_cast<std::size_t>(frames) * tools, value ? 1 : 0) {}

std::size_t FrameSchedule::offset(int frame, ToolId tool) const {
  if (frame < 1 || frame > frames_ || tool >= tools_) {
    throw_usage("schedule entry (" + std::to_string(frame) + ", " + std::to_string(tool) +
                ") out of range");
  }
  return static_cast<std::size_t>(frame - 1) * tools_ + tool;
}

bool FrameSchedule::enabled(int frame, ToolId tool) const { return mask_[offset(frame, tool)] != 0; }

void FrameSchedule::set(int frame, ToolId tool, bool value) {
  mask_[offset(frame, tool)] = value ? 1 : 0;
}

int FrameSchedule::enabled_frames(ToolId tool) const {
  int count = 0;
  for (int f = 1; f <= frames_; ++f) count += enabled(f, tool) ? 1 : 0;
  return count;
}

FrameSchedule rate_schedule(const ToolRateVector& ctp, const GopStructure& gop) {
  FrameSchedule schedule(gop.size(), ctp.size(), true);
  const auto& order = gop.disable_order();
  for (ToolId t = 0; t < ctp.size(); ++t) {
    const int disabled = gop.size() - frames_enabled(ctp.rate(t), gop);
    for (int k = 0; k < disabled; ++k) schedule.set(order[static_cast<std::size_t>(k)], t, false);
  }
  return schedule;
}

RepairedSchedule enforce_constraints(FrameSchedule schedule, const ToolCatalog& catalog) {
  if (schedule.tools() != catalog.size()) {
    throw_usage("schedule has " + std::to_string(schedule.tools()) +
                " tool columns but the catalog has " + std::to_string(catalog.size()));
  }
  std::vector<Repair> repairs;
  for (int f = 1; f <= schedule.frames(); ++f) {
    for (ToolId t : catalog.topological_order()) {
      if (!schedule.enabled(f, t)) continue;
      for (ToolId dep : catalog.tool(t).prerequisites) {
        if (!schedule.enabled(f, dep)) {
          schedule.set(f, t, false);
          repairs.push_back({f, t, dep});
          break;
        }
      }
    }
  }
  return {std::move(schedule), std::move(repairs)};
}

RepairedSchedule build_schedule(const ToolRateVector& ctp, const ToolCatalog& catalog,
                                const GopStructure& gop) {
  catalog.validate(ctp);
  return enforce_constraints(rate_schedule(ctp, gop), catalog);
}

std::string emit_encoder_config(const ToolRateVector& ctp, const ToolCatalog& catalog) {
  catalog.validate(ctp);
  std::string out;
  const std::string denominator = "/" + std::to_string(ctp.grid().divisions()) + "\n";
  for (const auto& tool : catalog.tools()) {
    out += tool.name;
    out += "Rate: ";
    out += std::to_string(ctp.numerator(tool.id));
    out += denominator;
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view token, std::string_view line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw_usage("malformed rate line '" + std::string(line) + "'");
  }
  return value;
}

}  // namespace

ToolRateVector parse_encoder_config(std::string_view text, const ToolCatalog& catalog) {
  std::vector<int> numerators(catalog.size(), -1);
  int divisions = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;

    const auto colon = line.find(':');
    const auto slash = line.find('/');
    const auto key = trim(line.substr(0, colon));
    if (colon == std::string_view::npos || slash == std::string_view::npos || slash < colon ||
        key.size() <= 4 || key.substr(key.size() - 4) != "Rate") {
      throw_usage("malformed rate line '" + std::string(line) + "'");
    }
    const auto name = key.substr(0, key.size() - 4);
    const auto tool = catalog.find(name);
    if (!tool) throw_usage("unknown tool '" + std::string(name) + "' in profile");
    if (numerators[*tool] >= 0) throw_usage("tool '" + std::string(name) + "' listed twice");

    const int m = parse_int(trim(line.substr(colon + 1, slash - colon - 1)), line);
    const int d = parse_int(trim(line.substr(slash + 1)), line);
    if (divisions == 0) divisions = d;
    if (d != divisions) throw_usage("mixed rate denominators in profile");
    numerators[*tool] = m;
  }
  for (const auto& t : catalog.tools()) {
    if (numerators[t.id] < 0) throw_usage("profile is missing tool '" + t.name + "'");
  }
  ToolRateVector ctp(std::move(numerators), GridStep(divisions));
  catalog.validate(ctp);
  return ctp;
}

std::string render_schedule(const RepairedSchedule& repaired, const ToolCatalog& catalog,
                            const GopStructure& gop) {
  const FrameSchedule& s = repaired.schedule;
  std::ostringstream out;
  out << "# '#' enabled, '.' off by rate, 'x' off by dependency repair\n";
  for (const auto& t : catalog.tools()) {
    out << "# " << (t.id < 10 ? " " : "") << t.id << " " << t.name << " "
        << s.enabled_frames(t.id) << "/" << gop.size() << "\n";
  }
  out << "frame layer ";
  for (ToolId t = 0; t < s.tools(); ++t) out << static_cast<char>('0' + t % 10);
  out << "\n";
  for (int f = 1; f <= s.frames(); ++f) {
    out << (f < 10 ? "    " : "   ") << f << "     " << gop.temporal_layer(f) << " ";
    for (ToolId t = 0; t < s.tools(); ++t) {
      char c = s.enabled(f, t) ? '#' : '.';
      for (const auto& r : repaired.repairs) {
        if (r.frame == f && r.tool == t) c = 'x';
      }
      out << c;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace cadse
