// Command line front end for campaigns, reports and the standalone helpers.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI/CLI.hpp>

#include "cadse/bd_metrics.hpp"
#include "cadse/campaign.hpp"
#include "cadse/catalog.hpp"
#include "cadse/error.hpp"
#include "cadse/gop_schedule.hpp"
#include "cadse/journal.hpp"
#include "cadse/report.hpp"

namespace {

using namespace cadse;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return 1;
    case ErrorKind::backend: return 2;
    case ErrorKind::corruption: return 3;
  }
  return 2;
}

struct RunArgs {
  std::string config;
  std::string catalog;
  std::string mode;
  std::string evaluator;
  std::string cost;
  std::optional<double> limit, weight, band;
  std::string baseline;
  std::string journal;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iterations;
  std::optional<int> parallelism;
  bool force = false;
};

struct ProfileArgs {
  std::string catalog;
  std::string profile;  // encoder config file
  std::string key;      // canonical key
  std::optional<double> rate;
};

ToolCatalog catalog_from(const std::string& path) {
  return load_catalog_file(path.empty() ? default_catalog_path() : std::filesystem::path(path));
}

ToolRateVector profile_from(const ProfileArgs& a, const ToolCatalog& catalog) {
  const int given = !a.profile.empty() + !a.key.empty() + a.rate.has_value();
  if (given > 1) throw_usage("give only one of --profile, --key and --rate");
  ToolRateVector ctp;
  if (!a.profile.empty()) {
    ctp = load_profile_file(a.profile, catalog);
  } else if (!a.key.empty()) {
    ctp = parse_canonical_key(a.key);
  } else if (a.rate) {
    ctp = catalog.baseline();
    for (const auto& tool : catalog.tools()) {
      if (tool.granular) ctp = ctp.with_rate(tool.id, snap_to_grid(*a.rate));
    }
  } else {
    ctp = catalog.baseline();
  }
  catalog.validate(ctp);
  return ctp;
}

void print_result(const CampaignResult& r, const ToolCatalog& catalog) {
  std::cout << "termination: "
            << (r.termination == Termination::converged ? "converged" : "iteration cap") << "\n"
            << "iterations: " << r.iterations << "\n"
            << "evaluations: " << r.evaluations << "\n"
            << "final cost: " << format_number(r.final_cost) << "\n"
            << "final reference: " << canonical_key(r.final_reference) << "\n\n"
            << emit_encoder_config(r.final_reference, catalog);
}

int campaign_run(const RunArgs& a) {
  CampaignConfig config;
  if (!a.config.empty()) {
    config = load_campaign_config(a.config);
  } else {
    config.catalog = catalog_from(a.catalog);
  }
  if (!a.catalog.empty() && !a.config.empty()) config.catalog = catalog_from(a.catalog);
  if (!a.mode.empty()) config.options.mode = parse_search_mode(a.mode);
  if (!a.evaluator.empty()) {
    if (a.evaluator == "synthetic") {
      config.evaluator = EvaluatorKind::synthetic;
    } else if (a.evaluator == "external") {
      config.evaluator = EvaluatorKind::external;
    } else {
      throw_usage("unknown evaluator '" + a.evaluator + "'");
    }
  }
  if (!a.cost.empty()) config.options.cost.kind = parse_cost_kind(a.cost);
  if (a.limit) config.options.cost.limit = *a.limit;
  if (a.weight) config.options.cost.weight = *a.weight;
  if (a.band) config.options.cost.band = *a.band;
  config.options.cost.validate();
  if (!a.baseline.empty()) config.baseline = load_profile_file(a.baseline, config.catalog);
  if (a.seed) config.seed = *a.seed;
  if (a.max_iterations) config.options.max_iterations = *a.max_iterations;
  if (a.parallelism) config.options.parallelism = *a.parallelism;

  const auto result = run_campaign(config, a.journal, a.force);
  print_result(result, config.catalog);
  return 0;
}

int campaign_resume(const std::string& journal) {
  const auto result = resume_campaign(journal);
  const auto contents = read_journal(journal);
  print_result(result, config_from_header(contents.header).catalog);
  return 0;
}

JournalContents load_report_journal(const std::string& path, bool lenient) {
  auto contents = read_journal(path, lenient);
  for (const auto& w : contents.warnings) std::cerr << "warning: " << w << "\n";
  return contents;
}

int report_pareto(const std::string& journal, bool lenient) {
  const auto contents = load_report_journal(journal, lenient);
  std::cout << "bdr,bdde,key\n";
  for (const auto& p : journal_front(contents)) {
    std::cout << format_number(p.point.bdr) << "," << format_number(p.point.bdde) << ",\""
              << p.key << "\"\n";
  }
  return 0;
}

int report_export(const std::string& journal, const std::string& format, const std::string& out,
                  bool lenient) {
  const auto kind = parse_report_format(format);
  const auto contents = load_report_journal(journal, lenient);
  const auto text = export_report(contents, kind);
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) throw_backend("cannot write " + out);
  return 0;
}

int bd_compute(const std::string& anchor_path, const std::string& test_path,
               const std::string& axis_name, const std::string& interpolation) {
  BdAxis axis;
  if (axis_name == "rate") {
    axis = BdAxis::rate;
  } else if (axis_name == "energy") {
    axis = BdAxis::energy;
  } else {
    throw_usage("unknown axis '" + axis_name + "'");
  }
  Interpolation mode;
  if (interpolation == "pchip") {
    mode = Interpolation::pchip;
  } else if (interpolation == "cubic-fit") {
    mode = Interpolation::cubic_fit;
  } else {
    throw_usage("unknown interpolation '" + interpolation + "'");
  }
  const auto anchor = read_curves_file(anchor_path);
  const auto test = read_curves_file(test_path);
  std::vector<EfficiencyPoint> values;
  for (const auto& a : anchor) {
    const auto it = std::find_if(test.begin(), test.end(),
                                 [&](const RdeCurve& t) { return t.sequence == a.sequence; });
    if (it == test.end()) throw_usage("test curves lack sequence '" + a.sequence + "'");
    const double v = bd_delta(a, *it, axis, mode);
    values.push_back({v, v});
    std::cout << a.sequence << " " << format_number(v) << "\n";
  }
  if (values.empty()) throw_usage("no curves in " + anchor_path);
  std::cout << "mean " << format_number(aggregate(values).bdr) << "\n";
  return 0;
}

int schedule_show(const ProfileArgs& a) {
  const auto catalog = catalog_from(a.catalog);
  const auto ctp = profile_from(a, catalog);
  const GopStructure gop;
  std::cout << render_schedule(build_schedule(ctp, catalog, gop), catalog, gop);
  return 0;
}

int config_emit(const ProfileArgs& a) {
  const auto catalog = catalog_from(a.catalog);
  std::cout << emit_encoder_config(profile_from(a, catalog), catalog);
  return 0;
}

void add_profile_options(CLI::App* cmd, ProfileArgs& a) {
  cmd->add_option("--catalog", a.catalog, "Tool catalog (default: shipped 30-tool catalog)");
  cmd->add_option("--profile", a.profile, "Profile in encoder-config form");
  cmd->add_option("--key", a.key, "Profile as a canonical key, e.g. 8,4,0");
  cmd->add_option("--rate", a.rate, "Same rate for every granular tool");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coding tool profile search for decoding energy versus bit rate"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto* campaign = app.add_subcommand("campaign", "Run or resume a search campaign");
  campaign->require_subcommand(1);
  RunArgs run_args;
  auto* run_cmd = campaign->add_subcommand("run", "Start a campaign");
  run_cmd->add_option("--config", run_args.config, "Campaign config (JSON)");
  run_cmd->add_option("--catalog", run_args.catalog, "Tool catalog override");
  run_cmd->add_option("--mode", run_args.mode, "adse|cadse");
  run_cmd->add_option("--evaluator", run_args.evaluator, "synthetic|external");
  run_cmd->add_option("--cost", run_args.cost, "classic|linear|linear-cubic");
  run_cmd->add_option("--limit", run_args.limit, "BDR limit l in percent");
  run_cmd->add_option("--weight", run_args.weight, "Linear weight w");
  run_cmd->add_option("--band", run_args.band, "Band half-width b in percent");
  run_cmd->add_option("--baseline", run_args.baseline, "Start profile in encoder-config form");
  run_cmd->add_option("--journal", run_args.journal, "Journal path")->required();
  run_cmd->add_option("--seed", run_args.seed, "Surrogate seed");
  run_cmd->add_option("--max-iterations", run_args.max_iterations, "Iteration cap");
  run_cmd->add_option("--parallelism", run_args.parallelism, "Concurrent candidate evaluations");
  run_cmd->add_flag("--force", run_args.force, "Replace an existing journal");
  run_cmd->callback([&] { action = [&] { return campaign_run(run_args); }; });

  std::string resume_journal;
  auto* resume_cmd = campaign->add_subcommand("resume", "Continue an interrupted campaign");
  resume_cmd->add_option("--journal", resume_journal, "Journal path")->required();
  resume_cmd->callback([&] { action = [&] { return campaign_resume(resume_journal); }; });

  auto* report = app.add_subcommand("report", "Reports over a campaign journal");
  report->require_subcommand(1);
  std::string report_journal, report_format = "csv", report_out;
  bool lenient = false;
  auto* pareto_cmd = report->add_subcommand("pareto", "Print the Pareto front");
  pareto_cmd->add_option("--journal", report_journal, "Journal path")->required();
  pareto_cmd->add_flag("--lenient", lenient, "Skip corrupt lines");
  pareto_cmd->callback([&] { action = [&] { return report_pareto(report_journal, lenient); }; });
  auto* export_cmd = report->add_subcommand("export", "Export evaluations");
  export_cmd->add_option("--journal", report_journal, "Journal path")->required();
  export_cmd->add_option("--format", report_format, "csv|structured|plot (json and svg accepted)");
  export_cmd->add_option("--out", report_out, "Output file (default stdout)");
  export_cmd->add_flag("--lenient", lenient, "Skip corrupt lines");
  export_cmd->callback([&] {
    action = [&] { return report_export(report_journal, report_format, report_out, lenient); };
  });

  auto* bd = app.add_subcommand("bd", "Bjontegaard deltas");
  bd->require_subcommand(1);
  std::string anchor_path, test_path, axis = "rate", interpolation = "pchip";
  auto* bd_cmd = bd->add_subcommand("compute", "BD delta per sequence and their mean");
  bd_cmd->add_option("--anchor", anchor_path, "Anchor curve file")->required();
  bd_cmd->add_option("--test", test_path, "Test curve file")->required();
  bd_cmd->add_option("--axis", axis, "rate|energy");
  bd_cmd->add_option("--interpolation", interpolation, "pchip|cubic-fit");
  bd_cmd->callback([&] {
    action = [&] { return bd_compute(anchor_path, test_path, axis, interpolation); };
  });

  ProfileArgs profile_args;
  auto* schedule = app.add_subcommand("schedule", "GOP frame schedules");
  schedule->require_subcommand(1);
  auto* show_cmd = schedule->add_subcommand("show", "Print the per-frame enable mask");
  add_profile_options(show_cmd, profile_args);
  show_cmd->callback([&] { action = [&] { return schedule_show(profile_args); }; });

  auto* config = app.add_subcommand("config", "Encoder configuration");
  config->require_subcommand(1);
  auto* emit_cmd = config->add_subcommand("emit", "Print tool rate lines for a profile");
  add_profile_options(emit_cmd, profile_args);
  emit_cmd->callback([&] { action = [&] { return config_emit(profile_args); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
