#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cadse/rate_vector.hpp"

namespace cadse {

/// One switchable coding tool. Tools are opaque; only their switching
/// granularity and prerequisites matter to the search.
struct Tool {
  ToolId id = 0;
  std::string name;
  bool granular = true;                // frame-level switching permitted
  std::vector<ToolId> prerequisites;   // must be enabled wherever this tool is
  bool baseline_enabled = true;        // state in the anchor profile
};

/// Ordered, validated set of coding tools.
///
/// Invariants: ids equal positions, names are unique, prerequisites refer to
/// catalog tools and form a DAG.
class ToolCatalog {
 public:
  struct Entry {
    std::string name;
    bool granular = true;
    std::vector<std::string> requires_tools;
    bool baseline_enabled = true;
  };

  ToolCatalog() = default;
  explicit ToolCatalog(const std::vector<Entry>& entries);

  [[nodiscard]] std::size_t size() const noexcept { return tools_.size(); }
  [[nodiscard]] const std::vector<Tool>& tools() const noexcept { return tools_; }
  [[nodiscard]] const Tool& tool(ToolId id) const { return tools_.at(id); }
  [[nodiscard]] std::optional<ToolId> find(std::string_view name) const;

  /// Tool ids ordered so that every prerequisite precedes its dependents.
  [[nodiscard]] const std::vector<ToolId>& topological_order() const noexcept { return topo_; }

  /// The anchor profile: baseline states mapped to rates 0 or 1.
  [[nodiscard]] ToolRateVector baseline(GridStep grid = GridStep{}) const;

  /// Throws unless ctp matches the catalog length and every non-granular tool
  /// sits at rate 0 or 1.
  void validate(const ToolRateVector& ctp) const;

  /// The catalog in its file representation.
  [[nodiscard]] std::string to_json() const;

 private:
  std::vector<Tool> tools_;
  std::vector<ToolId> topo_;
};

/// Parses a catalog document (JSON, see docs in README).
[[nodiscard]] ToolCatalog load_catalog(std::string_view document);
[[nodiscard]] ToolCatalog load_catalog_file(const std::filesystem::path& path);

/// Location of the shipped 30-tool catalog.
[[nodiscard]] std::filesystem::path default_catalog_path();

}  // namespace cadse
