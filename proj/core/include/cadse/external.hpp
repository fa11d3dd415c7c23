#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "cadse/catalog.hpp"
#include "cadse/evaluation.hpp"
#include "cadse/measurement.hpp"

namespace cadse {

struct SequenceSpec {
  std::string name;
  std::string input;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

/// Shell command templates. Placeholders: {config} {input} {bitstream} {qp}
/// {output} {sequence}.
struct CommandTemplates {
  std::string encode;
  std::string decode;
  std::string quality;

  friend bool operator==(const CommandTemplates&, const CommandTemplates&) = default;
};

/// ECMAScript regexes; the first capture group holds the number.
struct OutputPatterns {
  std::string bitrate;  // applied to encoder output
  std::string quality;  // applied to quality tool output
  std::string energy;   // applied to decoder output when the probe is decoder_output

  friend bool operator==(const OutputPatterns&, const OutputPatterns&) = default;
};

struct EnergyProbe {
  enum class Kind {
    decoder_output,  // parse the energy pattern from the decoder's output
    counter_file,    // cumulative counter file (RAPL energy_uj style), read around each decode
  };
  Kind kind = Kind::decoder_output;
  std::string path;    // counter file
  double scale = 1.0;  // counter units to joules

  friend bool operator==(const EnergyProbe&, const EnergyProbe&) = default;
};

struct ExternalConfig {
  std::vector<SequenceSpec> sequences;
  std::vector<int> qps{22, 27, 32, 37};
  CommandTemplates commands;
  OutputPatterns patterns;
  EnergyProbe probe;
  MeasurementPolicy measurement;
  std::filesystem::path workdir = "cadse-work";

  void validate() const;

  friend bool operator==(const ExternalConfig&, const ExternalConfig&) = default;
};

/// Replaces {name} placeholders; unknown placeholders are an error.
[[nodiscard]] std::string expand_template(std::string_view text,
                                          const std::map<std::string, std::string>& values);

struct ProcessResult {
  int exit_status = 0;
  std::string output;  // stdout and stderr combined
};

/// Runs a command through /bin/sh.
[[nodiscard]] ProcessResult run_command(const std::string& command);

/// First capture group of `pattern` in `text` as a number.
[[nodiscard]] double capture_number(const std::string& pattern, const std::string& text,
                                    const std::string& what);

/// Encodes, decodes and scores every sequence and QP through external
/// commands. Energy measurements are serialized; encodes and quality runs of
/// different profiles may overlap.
class ExternalSource final : public CurveSource {
 public:
  ExternalSource(ExternalConfig config, ToolCatalog catalog);

  Measurement measure(const ToolRateVector& ctp) override;

 private:
  RdePoint measure_point(const SequenceSpec& sequence, int qp, const std::filesystem::path& dir,
                         int& repetitions, bool& converged);
  double energy_sample(const std::string& decode_command, const SequenceSpec& sequence, int qp);

  ExternalConfig config_;
  ToolCatalog catalog_;
  std::mutex energy_mutex_;
};

}  // namespace cadse
