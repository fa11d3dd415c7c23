#include "cadse/campaign.hpp"

#include <fstream>
#include <sstream>

#include "cadse/error.hpp"
#include "cadse/gop_schedule.hpp"
#include "cadse/journal.hpp"
#include "json_io.hpp"

namespace cadse {

using json_io::Json;

namespace {

constexpr int kJournalVersion = 1;

std::string read_text(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_usage(std::string("cannot open ") + what + " " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

Interpolation parse_interpolation(const std::string& text) {
  if (text == "pchip") return Interpolation::pchip;
  if (text == "cubic-fit" || text == "cubic_fit") return Interpolation::cubic_fit;
  throw_usage("unknown interpolation '" + text + "'");
}

std::string to_string(Interpolation mode) {
  return mode == Interpolation::pchip ? "pchip" : "cubic-fit";
}

ToolRateVector profile_with_grid(ToolRateVector ctp, GridStep grid) {
  if (ctp.grid() == grid) return ctp;
  return ToolRateVector::from_rates(ctp.rates(), grid);
}

}  // namespace

ToolRateVector CampaignConfig::anchor_profile() const {
  return anchor ? profile_with_grid(*anchor, grid) : catalog.baseline(grid);
}

ToolRateVector CampaignConfig::baseline_profile() const {
  return baseline ? profile_with_grid(*baseline, grid) : anchor_profile();
}

ToolRateVector load_profile_file(const std::filesystem::path& path, const ToolCatalog& catalog) {
  return parse_encoder_config(read_text(path, "profile"), catalog);
}

CampaignConfig parse_campaign_config(std::string_view document,
                                     const std::filesystem::path& base_dir) {
  Json j;
  try {
    j = Json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw_usage(std::string("campaign config parse error: ") + e.what());
  }
  if (!j.is_object()) throw_usage("campaign config must be a JSON object");

  CampaignConfig c;
  try {
    c.label = j.value("label", c.label);
    if (j.contains("catalog") && j["catalog"].is_object()) {
      c.catalog = load_catalog(j["catalog"].dump());
    } else if (j.contains("catalog")) {
      c.catalog = load_catalog_file(resolve(base_dir, j["catalog"].get<std::string>()));
    } else {
      c.catalog = load_catalog_file(default_catalog_path());
    }
    c.grid = GridStep(j.value("grid_divisions", 8));
    c.options.mode = parse_search_mode(j.value("mode", std::string("cadse")));
    if (j.contains("cost")) c.options.cost = json_io::cost_from_json(j["cost"]);
    c.options.max_iterations = j.value("max_iterations", c.options.max_iterations);
    c.options.parallelism = j.value("parallelism", c.options.parallelism);
    c.interpolation = parse_interpolation(j.value("interpolation", std::string("pchip")));
    c.seed = j.value("seed", c.seed);

    const auto evaluator = j.value("evaluator", std::string("synthetic"));
    if (evaluator == "synthetic") {
      c.evaluator = EvaluatorKind::synthetic;
    } else if (evaluator == "external") {
      c.evaluator = EvaluatorKind::external;
    } else {
      throw_usage("unknown evaluator '" + evaluator + "'");
    }
    if (j.contains("synthetic")) c.synthetic = json_io::surrogate_options_from_json(j["synthetic"]);
    if (j.contains("model")) c.model = json_io::surrogate_from_json(j["model"]);
    if (j.contains("external")) c.external = json_io::external_from_json(j["external"]);

    if (j.contains("anchor")) {
      c.anchor = load_profile_file(resolve(base_dir, j["anchor"].get<std::string>()), c.catalog);
    }
    if (j.contains("baseline")) {
      c.baseline = load_profile_file(resolve(base_dir, j["baseline"].get<std::string>()), c.catalog);
    }
  } catch (const nlohmann::json::exception& e) {
    throw_usage(std::string("campaign config: ") + e.what());
  }
  return c;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  return parse_campaign_config(read_text(path, "campaign config"), path.parent_path());
}

std::unique_ptr<CurveSource> make_curve_source(const CampaignConfig& config) {
  if (config.evaluator == EvaluatorKind::external) {
    if (!config.external) throw_usage("external evaluator selected but no 'external' section given");
    return std::make_unique<ExternalSource>(*config.external, config.catalog);
  }
  auto model = config.model ? *config.model
                            : generate_surrogate(config.catalog.size(), config.synthetic, config.seed);
  if (model.tools() != config.catalog.size()) {
    throw_usage("surrogate model covers " + std::to_string(model.tools()) +
                " tools but the catalog has " + std::to_string(config.catalog.size()));
  }
  return std::make_unique<SurrogateSource>(std::move(model));
}

std::string header_line(const CampaignConfig& c) {
  Json evaluator;
  if (c.evaluator == EvaluatorKind::external) {
    evaluator = Json{{"kind", "external"}, {"config", json_io::to_json(*c.external)}};
  } else {
    const auto model =
        c.model ? *c.model : generate_surrogate(c.catalog.size(), c.synthetic, c.seed);
    evaluator = Json{{"kind", "synthetic"},
                     {"options", json_io::to_json(c.synthetic)},
                     {"model", json_io::to_json(model)}};
  }
  return Json{{"type", "campaign"},
              {"version", kJournalVersion},
              {"label", c.label},
              {"mode", std::string(to_string(c.options.mode))},
              {"cost", json_io::to_json(c.options.cost)},
              {"max_iterations", c.options.max_iterations},
              {"parallelism", c.options.parallelism},
              {"interpolation", to_string(c.interpolation)},
              {"seed", c.seed},
              {"grid_divisions", c.grid.divisions()},
              {"catalog", Json::parse(c.catalog.to_json())},
              {"anchor", canonical_key(c.anchor_profile())},
              {"baseline", canonical_key(c.baseline_profile())},
              {"evaluator", std::move(evaluator)}}
      .dump();
}

CampaignConfig config_from_header(const std::string& line) {
  try {
    const Json j = Json::parse(line);
    if (j.at("type") != "campaign") throw_corruption("first journal record is not a campaign header");
    if (j.at("version").get<int>() != kJournalVersion) {
      throw_corruption("unsupported journal version " + j["version"].dump());
    }
    CampaignConfig c;
    c.label = j.at("label").get<std::string>();
    c.options.mode = parse_search_mode(j.at("mode").get<std::string>());
    c.options.cost = json_io::cost_from_json(j.at("cost"));
    c.options.max_iterations = j.at("max_iterations").get<int>();
    c.options.parallelism = j.at("parallelism").get<int>();
    c.interpolation = parse_interpolation(j.at("interpolation").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.grid = GridStep(j.at("grid_divisions").get<int>());
    c.catalog = load_catalog(j.at("catalog").dump());
    c.anchor = parse_canonical_key(j.at("anchor").get<std::string>());
    c.baseline = parse_canonical_key(j.at("baseline").get<std::string>());
    const auto& evaluator = j.at("evaluator");
    if (evaluator.at("kind") == "external") {
      c.evaluator = EvaluatorKind::external;
      c.external = json_io::external_from_json(evaluator.at("config"));
    } else {
      c.evaluator = EvaluatorKind::synthetic;
      c.synthetic = json_io::surrogate_options_from_json(evaluator.at("options"));
      c.model = json_io::surrogate_from_json(evaluator.at("model"));
    }
    return c;
  } catch (const Error& e) {
    throw_corruption(std::string("invalid journal header: ") + e.what());
  } catch (const std::exception& e) {
    throw_corruption(std::string("invalid journal header: ") + e.what());
  }
}

namespace {

CampaignResult execute(const CampaignConfig& config, JournalWriter& writer,
                       const std::string& header, const JournalContents* previous) {
  writer.write_line(header);
  auto source = make_curve_source(config);

  std::vector<RdeCurve> anchor;
  if (previous != nullptr && previous->anchor) {
    anchor = *previous->anchor;
  } else {
    anchor = source->measure(config.anchor_profile()).curves;
  }
  writer.write_line(anchor_line(anchor));

  Evaluator evaluator(*source, anchor, config.interpolation);
  if (previous != nullptr) {
    for (const auto& e : previous->evaluations) {
      evaluator.preload({e.key, e.measurement, e.efficiency});
    }
  }
  auto result = run(config.baseline_profile(), config.catalog, evaluator, config.options, &writer);
  if (writer.replayed() < writer.existing().size()) {
    throw_corruption("journal holds " + std::to_string(writer.existing().size() - writer.replayed()) +
                     " records beyond the replayed campaign");
  }
  return result;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config, const std::filesystem::path& journal,
                            bool overwrite) {
  const auto header = header_line(config);
  JournalWriter writer(journal, overwrite ? JournalWriter::Mode::overwrite
                                          : JournalWriter::Mode::create);
  return execute(config, writer, header, nullptr);
}

CampaignResult resume_campaign(const std::filesystem::path& journal) {
  const auto contents = read_journal(journal);
  if (contents.header.empty()) throw_corruption("journal " + journal.string() + " has no campaign header");
  if (contents.lines.empty() || contents.lines.front() != contents.header) {
    throw_corruption("journal " + journal.string() + " does not start with its campaign header");
  }
  const auto config = config_from_header(contents.header);
  JournalWriter writer(journal, JournalWriter::Mode::resume);
  return execute(config, writer, contents.header, &contents);
}

}  // namespace cadse
