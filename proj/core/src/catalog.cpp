#include "cadse/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "cadse/error.hpp"

namespace cadse {

using nlohmann::ordered_json;

ToolCatalog::ToolCatalog(const std::vector<Entry>& entries) {
  if (entries.empty()) throw_usage("empty catalog");

  std::unordered_map<std::string, ToolId> ids;
  for (ToolId i = 0; i < entries.size(); ++i) {
    if (entries[i].name.empty()) throw_usage("tool #" + std::to_string(i) + " has no name");
    if (!ids.emplace(entries[i].name, i).second) {
      throw_usage("duplicate tool name '" + entries[i].name + "'");
    }
  }

  tools_.reserve(entries.size());
  for (ToolId i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    Tool tool{i, e.name, e.granular, {}, e.baseline_enabled};
    for (const auto& dep : e.requires_tools) {
      const auto it = ids.find(dep);
      if (it == ids.end()) {
        throw_usage("tool '" + e.name + "' requires unknown tool '" + dep + "'");
      }
      if (it->second == i) throw_usage("dependency cycle: tool '" + e.name + "' requires itself");
      tool.prerequisites.push_back(it->second);
    }
    tools_.push_back(std::move(tool));
  }

  // Depth-first topological sort; a grey node reached again closes a cycle.
  enum class Mark { white, grey, black };
  std::vector<Mark> mark(tools_.size(), Mark::white);
  topo_.reserve(tools_.size());
  auto visit = [&](auto&& self, ToolId id) -> void {
    if (mark[id] == Mark::black) return;
    if (mark[id] == Mark::grey) {
      throw_usage("dependency cycle involving tool '" + tools_[id].name + "'");
    }
    mark[id] = Mark::grey;
    for (ToolId dep : tools_[id].prerequisites) self(self, dep);
    mark[id] = Mark::black;
    topo_.push_back(id);
  };
  for (ToolId id = 0; id < tools_.size(); ++id) visit(visit, id);
}

std::optional<ToolId> ToolCatalog::find(std::string_view name) const {
  for (const auto& t : tools_) {
    if (t.name == name) return t.id;
  }
  return std::nullopt;
}

ToolRateVector ToolCatalog::baseline(GridStep grid) const {
  std::vector<int> numerators;
  numerators.reserve(tools_.size());
  for (const auto& t : tools_) numerators.push_back(t.baseline_enabled ? grid.divisions() : 0);
  return ToolRateVector(std::move(numerators), grid);
}

void ToolCatalog::validate(const ToolRateVector& ctp) const {
  if (ctp.size() != tools_.size()) {
    throw_usage("profile has " + std::to_string(ctp.size()) + " rates but the catalog has " +
                std::to_string(tools_.size()) + " tools");
  }
  for (const auto& t : tools_) {
    const int m = ctp.numerator(t.id);
    if (!t.granular && m != 0 && m != ctp.grid().divisions()) {
      throw_usage("tool '" + t.name + "' is not granular and must have rate 0 or 1");
    }
  }
}

std::string ToolCatalog::to_json() const {
  ordered_json doc;
  doc["tools"] = ordered_json::array();
  for (const auto& t : tools_) {
    ordered_json entry;
    entry["name"] = t.name;
    entry["granular"] = t.granular;
    if (!t.prerequisites.empty()) {
      entry["requires"] = ordered_json::array();
      for (ToolId dep : t.prerequisites) entry["requires"].push_back(tools_[dep].name);
    }
    entry["baseline"] = t.baseline_enabled ? 1 : 0;
    doc["tools"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

ToolCatalog load_catalog(std::string_view document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw_usage(std::string("catalog parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tools") || !doc["tools"].is_array()) {
    throw_usage("catalog parse error: expected an object with a 'tools' array");
  }

  std::vector<ToolCatalog::Entry> entries;
  for (const auto& item : doc["tools"]) {
    ToolCatalog::Entry e;
    try {
      e.name = item.at("name").get<std::string>();
      e.granular = item.at("granular").get<bool>();
      if (item.contains("requires")) {
        e.requires_tools = item["requires"].get<std::vector<std::string>>();
      }
      e.baseline_enabled = item.value("baseline", 1) != 0;
    } catch (const nlohmann::json::exception& ex) {
      throw_usage(std::string("catalog parse error in tool '") + item.value("name", "?") +
                  "': " + ex.what());
    }
    entries.push_back(std::move(e));
  }
  return ToolCatalog(entries);
}

ToolCatalog load_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_usage("cannot open catalog file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_catalog(buf.str());
}

std::filesystem::path default_catalog_path() {
  if (const char* env = std::getenv("CADSE_CATALOG"); env != nullptr && *env != '\0') {
    return env;
  }
  const std::filesystem::path source_tree = CADSE_SOURCE_DATA_DIR "/default_catalog.json";
  if (std::filesystem::exists(source_tree)) return source_tree;
  return CADSE_INSTALL_DATA_DIR "/default_catalog.json";
}

}  // namespace cadse
