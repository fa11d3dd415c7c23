#include "cadse/rate_vector.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "cadse/error.hpp"

namespace cadse {

GridStep::GridStep(int divisions) : divisions_(divisions) {
  if (divisions < 1) {
    throw_usage("grid divisions must be positive, got " + std::to_string(divisions));
  }
}

double snap_to_grid(double x, GridStep step) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw_usage("rate " + std::to_string(x) + " outside [0, 1]");
  }
  const int divisions = step.divisions();
  const double scaled = x * divisions;
  const double lower = std::floor(scaled);
  const double frac = scaled - lower;
  double numerator = lower;
  if (frac > 0.5) {
    numerator = lower + 1.0;
  } else if (frac == 0.5) {
    // Tie: prefer the neighbour nearer the middle of the range.
    const double middle = divisions / 2.0;
    numerator = std::abs(lower - middle) < std::abs(lower + 1.0 - middle) ? lower : lower + 1.0;
  }
  return numerator / divisions;
}

ToolRateVector::ToolRateVector(std::vector<int> numerators, GridStep grid)
    : numerators_(std::move(numerators)), grid_(grid) {
  for (std::size_t i = 0; i < numerators_.size(); ++i) {
    if (numerators_[i] < 0 || numerators_[i] > grid_.divisions()) {
      throw_usage("rate numerator " + std::to_string(numerators_[i]) + " of tool " +
                  std::to_string(i) + " outside 0.." + std::to_string(grid_.divisions()));
    }
  }
}

ToolRateVector ToolRateVector::from_rates(std::span<const double> rates, GridStep grid) {
  std::vector<int> numerators;
  numerators.reserve(rates.size());
  for (double r : rates) {
    const double scaled = r * grid.divisions();
    const double rounded = std::round(scaled);
    if (!(r >= 0.0 && r <= 1.0) || std::abs(scaled - rounded) > 1e-9) {
      throw_usage("rate " + std::to_string(r) + " is not on the 1/" +
                  std::to_string(grid.divisions()) + " grid");
    }
    numerators.push_back(static_cast<int>(rounded));
  }
  return ToolRateVector(std::move(numerators), grid);
}

ToolRateVector ToolRateVector::filled(std::size_t tools, double rate, GridStep grid) {
  const std::vector<double> rates(tools, rate);
  return from_rates(rates, grid);
}

double ToolRateVector::rate(ToolId tool) const {
  return static_cast<double>(numerators_.at(tool)) / grid_.divisions();
}

std::vector<double> ToolRateVector::rates() const {
  std::vector<double> out;
  out.reserve(numerators_.size());
  for (int m : numerators_) out.push_back(static_cast<double>(m) / grid_.divisions());
  return out;
}

bool ToolRateVector::is_binary() const noexcept {
  for (int m : numerators_) {
    if (m != 0 && m != grid_.divisions()) return false;
  }
  return true;
}

ToolRateVector ToolRateVector::with_numerator(ToolId tool, int numerator) const {
  auto numerators = numerators_;
  numerators.at(tool) = numerator;
  return ToolRateVector(std::move(numerators), grid_);
}

ToolRateVector ToolRateVector::with_rate(ToolId tool, double rate) const {
  const double scaled = rate * grid_.divisions();
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9) {
    throw_usage("rate " + std::to_string(rate) + " is not on the grid");
  }
  return with_numerator(tool, static_cast<int>(rounded));
}

std::string canonical_key(const ToolRateVector& ctp) {
  std::string key;
  if (ctp.grid().divisions() != GridStep{}.divisions()) {
    key = std::to_string(ctp.grid().divisions()) + ":";
  }
  bool first = true;
  for (int m : ctp.numerators()) {
    if (!first) key += ',';
    key += std::to_string(m);
    first = false;
  }
  return key;
}

ToolRateVector parse_canonical_key(const std::string& key) {
  std::string_view body = key;
  GridStep grid;
  if (const auto colon = body.find(':'); colon != std::string_view::npos) {
    int divisions = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + colon, divisions);
    if (ec != std::errc{} || ptr != body.data() + colon) throw_usage("bad ctp key '" + key + "'");
    grid = GridStep(divisions);
    body.remove_prefix(colon + 1);
  }
  if (body.empty()) throw_usage("empty ctp key");
  std::vector<int> numerators;
  for (;;) {
    const auto comma = body.find(',');
    const auto token = body.substr(0, comma);
    int m = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), m);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw_usage("bad ctp key '" + key + "'");
    }
    numerators.push_back(m);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return ToolRateVector(std::move(numerators), grid);
}

std::vector<RateDelta> diff(const ToolRateVector& a, const ToolRateVector& b) {
  if (a.size() != b.size()) {
    throw_usage("cannot diff profiles of length " + std::to_string(a.size()) + " and " +
                std::to_string(b.size()));
  }
  std::vector<RateDelta> out;
  for (ToolId t = 0; t < a.size(); ++t) {
    if (a.rate(t) != b.rate(t)) out.push_back({t, a.rate(t) - b.rate(t)});
  }
  return out;
}

}  // namespace cadse
