#include "cadse/external.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <regex>
#include <sstream>

#include "cadse/error.hpp"
#include "cadse/gop_schedule.hpp"

namespace cadse {

void ExternalConfig::validate() const {
  if (sequences.empty()) throw_usage("external evaluator needs at least one sequence");
  if (qps.size() < 4) throw_usage("external evaluator needs at least four QPs");
  if (commands.encode.empty() || commands.decode.empty() || commands.quality.empty()) {
    throw_usage("external evaluator needs encode, decode and quality commands");
  }
  if (patterns.bitrate.empty() || patterns.quality.empty()) {
    throw_usage("external evaluator needs bitrate and quality patterns");
  }
  if (probe.kind == EnergyProbe::Kind::decoder_output && patterns.energy.empty()) {
    throw_usage("decoder_output energy probe needs an energy pattern");
  }
  if (probe.kind == EnergyProbe::Kind::counter_file && probe.path.empty()) {
    throw_usage("counter_file energy probe needs a path");
  }
  measurement.validate();
}

std::string expand_template(std::string_view text, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find('{', pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    const auto close = text.find('}', open);
    if (close == std::string_view::npos) throw_usage("unterminated placeholder in '" + std::string(text) + "'");
    out.append(text.substr(pos, open - pos));
    const std::string name(text.substr(open + 1, close - open - 1));
    const auto it = values.find(name);
    if (it == values.end()) throw_usage("unknown placeholder {" + name + "} in command template");
    out += it->second;
    pos = close + 1;
  }
  return out;
}

ProcessResult run_command(const std::string& command) {
  const std::string wrapped = "( " + command + " ) 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(wrapped.c_str(), "r"), pclose);
  if (!pipe) throw_backend("cannot start command: " + command);
  ProcessResult result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe.get())) > 0) {
    result.output.append(buffer.data(), n);
  }
  const int status = pclose(pipe.release());
  if (status == -1) throw_backend("cannot collect status of command: " + command);
  result.exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return result;
}

double capture_number(const std::string& pattern, const std::string& text, const std::string& what) {
  std::regex re;
  try {
    re = std::regex(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw_usage("invalid " + what + " pattern '" + pattern + "': " + e.what());
  }
  std::smatch match;
  if (!std::regex_search(text, match, re) || match.size() < 2) {
    throw_backend("could not parse " + what + " with pattern '" + pattern + "' from output:\n" + text);
  }
  try {
    std::size_t used = 0;
    const std::string captured = match[1].str();
    const double value = std::stod(captured, &used);
    if (used != captured.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw_backend("captured " + what + " '" + match[1].str() + "' is not a number; output:\n" + text);
  }
}

namespace {

std::string describe(const SequenceSpec& sequence, int qp) {
  return "sequence '" + sequence.name + "' at QP " + std::to_string(qp);
}

double read_counter(const std::string& path) {
  std::ifstream in(path);
  double value = 0.0;
  if (!(in >> value)) throw_backend("cannot read energy counter file " + path);
  return value;
}

}  // namespace

ExternalSource::ExternalSource(ExternalConfig config, ToolCatalog catalog)
    : config_(std::move(config)), catalog_(std::move(catalog)) {
  config_.validate();
}

Measurement ExternalSource::measure(const ToolRateVector& ctp) {
  std::string dir_name = canonical_key(ctp);
  for (char& c : dir_name) {
    if (c == ',' || c == ':') c = '-';
  }
  const auto dir = config_.workdir / dir_name;
  std::filesystem::create_directories(dir);
  {
    std::ofstream cfg(dir / "profile.cfg", std::ios::binary);
    cfg << emit_encoder_config(ctp, catalog_);
    if (!cfg) throw_backend("cannot write encoder config in " + dir.string());
  }

  Measurement m;
  for (const auto& sequence : config_.sequences) {
    RdeCurve curve;
    curve.sequence = sequence.name;
    for (int qp : config_.qps) {
      int repetitions = 0;
      bool converged = true;
      curve.points.push_back(measure_point(sequence, qp, dir, repetitions, converged));
      m.repetitions.push_back(repetitions);
      m.converged = m.converged && converged;
    }
    std::sort(curve.points.begin(), curve.points.end(),
              [](const RdePoint& a, const RdePoint& b) { return a.qp > b.qp; });
    m.curves.push_back(std::move(curve));
  }
  return m;
}

RdePoint ExternalSource::measure_point(const SequenceSpec& sequence, int qp,
                                       const std::filesystem::path& dir, int& repetitions,
                                       bool& converged) {
  const std::string stem = sequence.name + "_qp" + std::to_string(qp);
  const auto bitstream = dir / (stem + ".bin");
  const auto output = dir / (stem + ".yuv");
  const std::map<std::string, std::string> values{
      {"config", (dir / "profile.cfg").string()},
      {"input", sequence.input},
      {"bitstream", bitstream.string()},
      {"output", output.string()},
      {"qp", std::to_string(qp)},
      {"sequence", sequence.name},
  };
  const std::string where = describe(sequence, qp);

  const auto encode = run_command(expand_template(config_.commands.encode, values));
  if (encode.exit_status != 0) {
    throw_backend("encode failed for " + where + " (exit status " +
                  std::to_string(encode.exit_status) + "):\n" + encode.output);
  }
  if (!std::filesystem::exists(bitstream)) {
    throw_backend("encode of " + where + " produced no bitstream file " + bitstream.string());
  }

  RdePoint point;
  point.qp = qp;
  point.bitrate = capture_number(config_.patterns.bitrate, encode.output, "bitrate for " + where);

  const std::string decode_command = expand_template(config_.commands.decode, values);
  {
    std::lock_guard lock(energy_mutex_);
    const auto result = measure_with_ci(
        [&] { return energy_sample(decode_command, sequence, qp); }, config_.measurement);
    point.energy = result.mean;
    repetitions = result.repetitions;
    converged = result.converged;
  }

  const auto quality = run_command(expand_template(config_.commands.quality, values));
  if (quality.exit_status != 0) {
    throw_backend("quality measurement failed for " + where + " (exit status " +
                  std::to_string(quality.exit_status) + "):\n" + quality.output);
  }
  point.quality = capture_number(config_.patterns.quality, quality.output, "quality for " + where);
  return point;
}

double ExternalSource::energy_sample(const std::string& decode_command, const SequenceSpec& sequence,
                                     int qp) {
  const bool counter = config_.probe.kind == EnergyProbe::Kind::counter_file;
  const double before = counter ? read_counter(config_.probe.path) : 0.0;
  const auto decode = run_command(decode_command);
  if (decode.exit_status != 0) {
    throw_backend("decode failed for " + describe(sequence, qp) + " (exit status " +
                  std::to_string(decode.exit_status) + "):\n" + decode.output);
  }
  if (!counter) {
    return capture_number(config_.patterns.energy, decode.output,
                          "energy for " + describe(sequence, qp));
  }
  const double after = read_counter(config_.probe.path);
  return (after - before) * config_.probe.scale;
}

}  // namespace cadse
