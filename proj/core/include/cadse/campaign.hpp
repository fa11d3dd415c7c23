#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "cadse/catalog.hpp"
#include "cadse/engine.hpp"
#include "cadse/external.hpp"
#include "cadse/surrogate.hpp"

namespace cadse {

enum class EvaluatorKind { synthetic, external };

/// Everything a campaign needs. The whole configuration is pinned in the
/// journal header, so a journal alone is enough to resume.
struct CampaignConfig {
  std::string label = "campaign";
  ToolCatalog catalog;
  GridStep grid;
  CampaignOptions options;
  Interpolation interpolation = Interpolation::pchip;
  std::uint64_t seed = 1;
  EvaluatorKind evaluator = EvaluatorKind::synthetic;
  SurrogateOptions synthetic;
  std::optional<SurrogateModel> model;  // overrides seeded generation
  std::optional<ExternalConfig> external;
  std::optional<ToolRateVector> baseline;  // defaults to the anchor
  std::optional<ToolRateVector> anchor;    // defaults to the catalog baseline

  [[nodiscard]] ToolRateVector anchor_profile() const;
  [[nodiscard]] ToolRateVector baseline_profile() const;
};

/// Parses a campaign config document. Relative catalog and profile paths are
/// resolved against base_dir; a missing catalog means the shipped default.
[[nodiscard]] CampaignConfig parse_campaign_config(std::string_view document,
                                                   const std::filesystem::path& base_dir);
[[nodiscard]] CampaignConfig load_campaign_config(const std::filesystem::path& path);

[[nodiscard]] std::unique_ptr<CurveSource> make_curve_source(const CampaignConfig& config);

/// Reads a profile in encoder-config form ("<Tool>Rate: m/d" lines).
[[nodiscard]] ToolRateVector load_profile_file(const std::filesystem::path& path,
                                               const ToolCatalog& catalog);

/// Starts a campaign and journals it to `journal`. Refuses to replace an
/// existing journal unless `overwrite`.
CampaignResult run_campaign(const CampaignConfig& config, const std::filesystem::path& journal,
                            bool overwrite = false);

/// Replays a (possibly interrupted) journal and continues the campaign,
/// appending only what the original run had not yet written.
CampaignResult resume_campaign(const std::filesystem::path& journal);

/// Reconstructs the configuration pinned in a journal header line.
[[nodiscard]] CampaignConfig config_from_header(const std::string& header_line);
[[nodiscard]] std::string header_line(const CampaignConfig& config);

}  // namespace cadse
