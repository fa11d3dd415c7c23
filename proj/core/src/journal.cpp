#include "cadse/journal.hpp"

#include <sstream>

#include "cadse/error.hpp"
#include "json_io.hpp"

namespace cadse {

using json_io::Json;

namespace {

struct SplitFile {
  std::vector<std::string> lines;
  std::size_t complete_bytes = 0;
  bool partial_tail = false;
};

SplitFile split_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_usage("cannot open journal " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  SplitFile out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      out.partial_tail = true;
      break;
    }
    out.lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
    out.complete_bytes = pos;
  }
  return out;
}

IterationSummary parse_iteration(const Json& j) {
  IterationSummary s;
  s.iteration = j.at("iteration").get<int>();
  s.reference = j.at("reference").get<std::string>();
  s.reference_cost = j.at("reference_cost").get<double>();
  for (const auto& c : j.at("candidates")) {
    s.candidates.push_back(
        {c.at("tool").get<ToolId>(), c.at("key").get<std::string>(), c.at("cost").get<double>()});
  }
  s.selected = j.at("selected").get<std::vector<ToolId>>();
  s.next_reference = j.at("next_reference").get<std::string>();
  return s;
}

JournalEvaluation parse_evaluation(const Json& j) {
  JournalEvaluation e;
  e.iteration = j.at("iteration").get<int>();
  e.ordinal = j.at("ordinal").get<std::size_t>();
  e.key = j.at("key").get<std::string>();
  e.efficiency = {j.at("bdr").get<double>(), j.at("bdde").get<double>()};
  e.cost = j.at("cost").get<double>();
  e.measurement = json_io::measurement_from_json(j);
  return e;
}

JournalResult parse_result(const Json& j) {
  JournalResult r;
  r.termination = j.at("termination").get<std::string>();
  r.iterations = j.at("iterations").get<int>();
  r.rounds = j.at("rounds").get<int>();
  r.final_reference = j.at("final_reference").get<std::string>();
  r.final_cost = j.at("final_cost").get<double>();
  r.evaluations = j.at("evaluations").get<std::size_t>();
  return r;
}

}  // namespace

JournalContents read_journal(const std::filesystem::path& path, bool lenient) {
  const auto split = split_lines(path);
  JournalContents out;
  out.lines = split.lines;
  for (std::size_t k = 0; k < split.lines.size(); ++k) {
    const std::string& line = split.lines[k];
    try {
      const Json j = Json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "campaign") {
        out.header = line;
        out.label = j.value("label", std::string());
      } else if (type == "anchor") {
        out.anchor = json_io::curves_from_json(j.at("curves"));
      } else if (type == "evaluation") {
        out.evaluations.push_back(parse_evaluation(j));
      } else if (type == "iteration") {
        out.iterations.push_back(parse_iteration(j));
      } else if (type == "result") {
        out.result = parse_result(j);
      } else {
        throw std::runtime_error("unknown record type '" + type + "'");
      }
    } catch (const std::exception& e) {
      const std::string message =
          "journal " + path.string() + " line " + std::to_string(k + 1) + ": " + e.what();
      if (!lenient) throw_corruption(message);
      out.warnings.push_back(message);
    }
  }
  return out;
}

std::string anchor_line(const std::vector<RdeCurve>& anchor) {
  return Json{{"type", "anchor"}, {"curves", json_io::to_json(anchor)}}.dump();
}

std::string evaluation_line(const JournalEntry& entry) {
  Json j{{"type", "evaluation"},
         {"iteration", entry.iteration},
         {"ordinal", entry.ordinal},
         {"key", entry.key},
         {"bdr", entry.record.efficiency.bdr},
         {"bdde", entry.record.efficiency.bdde},
         {"cost", entry.cost}};
  const Json measurement = json_io::to_json(entry.record.measurement);
  for (const auto& [name, value] : measurement.items()) j[name] = value;
  return j.dump();
}

JournalEvaluation parse_evaluation_line(const std::string& line) {
  return parse_evaluation(Json::parse(line));
}

std::string iteration_line(const IterationSummary& s) {
  Json candidates = Json::array();
  for (const auto& c : s.candidates) {
    candidates.push_back(Json{{"tool", c.tool}, {"key", c.key}, {"cost", c.cost}});
  }
  return Json{{"type", "iteration"},
              {"iteration", s.iteration},
              {"reference", s.reference},
              {"reference_cost", s.reference_cost},
              {"candidates", std::move(candidates)},
              {"selected", s.selected},
              {"next_reference", s.next_reference}}
      .dump();
}

std::string result_line(const CampaignResult& r) {
  return Json{{"type", "result"},
              {"termination",
               r.termination == Termination::converged ? "converged" : "iteration_cap"},
              {"iterations", r.iterations},
              {"rounds", r.rounds},
              {"final_reference", canonical_key(r.final_reference)},
              {"final_cost", r.final_cost},
              {"evaluations", r.evaluations}}
      .dump();
}

JournalWriter::JournalWriter(const std::filesystem::path& path, Mode mode) : path_(path) {
  if (mode == Mode::resume) {
    auto split = split_lines(path);
    if (split.partial_tail) std::filesystem::resize_file(path, split.complete_bytes);
    replay_ = std::move(split.lines);
    out_.open(path, std::ios::binary | std::ios::app);
  } else {
    if (mode == Mode::create && std::filesystem::exists(path)) {
      throw_usage("journal " + path.string() + " already exists");
    }
    out_.open(path, std::ios::binary | std::ios::trunc);
  }
  if (!out_) throw_backend("cannot open journal " + path.string() + " for writing");
}

void JournalWriter::write_line(const std::string& line) {
  if (cursor_ < replay_.size()) {
    if (replay_[cursor_] != line) {
      throw_corruption("journal " + path_.string() + " diverges from the replayed campaign at line " +
                       std::to_string(cursor_ + 1));
    }
    ++cursor_;
    return;
  }
  out_ << line << '\n';
  out_.flush();
  if (!out_) throw_backend("write to journal " + path_.string() + " failed");
  ++appended_;
}

void JournalWriter::on_evaluation(const JournalEntry& entry) { write_line(evaluation_line(entry)); }

void JournalWriter::on_iteration(const IterationSummary& summary) {
  write_line(iteration_line(summary));
}

void JournalWriter::on_finish(const CampaignResult& result) { write_line(result_line(result)); }

}  // namespace cadse
