#include "json_io.hpp"

#include "cadse/error.hpp"

namespace cadse::json_io {

Json to_json(const RdeCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points) points.push_back(Json::array({p.qp, p.bitrate, p.quality, p.energy}));
  return Json{{"sequence", curve.sequence}, {"points", std::move(points)}};
}

RdeCurve curve_from_json(const Json& j) {
  RdeCurve curve;
  curve.sequence = j.at("sequence").get<std::string>();
  for (const auto& row : j.at("points")) {
    if (!row.is_array() || row.size() != 4) throw_corruption("curve point must have 4 fields");
    curve.points.push_back({row[0].get<int>(), row[1].get<double>(), row[2].get<double>(),
                            row[3].get<double>()});
  }
  return curve;
}

Json to_json(const std::vector<RdeCurve>& curves) {
  Json out = Json::array();
  for (const auto& c : curves) out.push_back(to_json(c));
  return out;
}

std::vector<RdeCurve> curves_from_json(const Json& j) {
  std::vector<RdeCurve> out;
  for (const auto& c : j) out.push_back(curve_from_json(c));
  return out;
}

Json to_json(const CostSpec& spec) {
  return Json{{"kind", std::string(to_string(spec.kind))},
              {"limit", spec.limit},
              {"weight", spec.weight},
              {"band", spec.band}};
}

CostSpec cost_from_json(const Json& j) {
  CostSpec spec;
  spec.kind = parse_cost_kind(j.value("kind", std::string("classic")));
  spec.limit = j.value("limit", spec.limit);
  spec.weight = j.value("weight", spec.weight);
  spec.band = j.value("band", spec.band);
  spec.validate();
  return spec;
}

Json to_json(const MeasurementPolicy& policy) {
  return Json{{"confidence", policy.confidence},
              {"relative_half_width", policy.relative_half_width},
              {"min_repetitions", policy.min_repetitions},
              {"max_repetitions", policy.max_repetitions}};
}

MeasurementPolicy policy_from_json(const Json& j) {
  MeasurementPolicy p;
  p.confidence = j.value("confidence", p.confidence);
  p.relative_half_width = j.value("relative_half_width", p.relative_half_width);
  p.min_repetitions = j.value("min_repetitions", p.min_repetitions);
  p.max_repetitions = j.value("max_repetitions", p.max_repetitions);
  p.validate();
  return p;
}

Json to_json(const SurrogateOptions& o) {
  return Json{{"sequences", o.sequences},
              {"rate_impact_max", o.rate_impact_max},
              {"energy_impact_max", o.energy_impact_max},
              {"interaction_scale", o.interaction_scale},
              {"quality_impact_max", o.quality_impact_max}};
}

SurrogateOptions surrogate_options_from_json(const Json& j) {
  SurrogateOptions o;
  o.sequences = j.value("sequences", o.sequences);
  o.rate_impact_max = j.value("rate_impact_max", o.rate_impact_max);
  o.energy_impact_max = j.value("energy_impact_max", o.energy_impact_max);
  o.interaction_scale = j.value("interaction_scale", o.interaction_scale);
  o.quality_impact_max = j.value("quality_impact_max", o.quality_impact_max);
  return o;
}

Json to_json(const SurrogateModel& model) {
  Json interactions = Json::array();
  for (const auto& i : model.interactions) {
    interactions.push_back(Json::array({i.first, i.second, i.coefficient}));
  }
  return Json{{"seed", model.seed},
              {"rate_impact", model.rate_impact},
              {"energy_impact", model.energy_impact},
              {"quality_impact", model.quality_impact},
              {"interactions", std::move(interactions)},
              {"anchor_curves", to_json(model.anchor_curves)}};
}

SurrogateModel surrogate_from_json(const Json& j) {
  SurrogateModel model;
  model.seed = j.value("seed", std::uint64_t{0});
  model.rate_impact = j.at("rate_impact").get<std::vector<double>>();
  model.energy_impact = j.at("energy_impact").get<std::vector<double>>();
  if (j.contains("quality_impact")) {
    model.quality_impact = j["quality_impact"].get<std::vector<double>>();
  }
  if (j.contains("interactions")) {
    for (const auto& row : j["interactions"]) {
      model.interactions.push_back(
          {row.at(0).get<ToolId>(), row.at(1).get<ToolId>(), row.at(2).get<double>()});
    }
  }
  model.anchor_curves = curves_from_json(j.at("anchor_curves"));
  model.validate();
  return model;
}

Json to_json(const ExternalConfig& c) {
  Json sequences = Json::array();
  for (const auto& s : c.sequences) sequences.push_back(Json{{"name", s.name}, {"input", s.input}});
  Json probe{{"kind", c.probe.kind == EnergyProbe::Kind::counter_file ? "counter_file"
                                                                      : "decoder_output"}};
  if (c.probe.kind == EnergyProbe::Kind::counter_file) {
    probe["path"] = c.probe.path;
    probe["scale"] = c.probe.scale;
  }
  return Json{{"sequences", std::move(sequences)},
              {"qps", c.qps},
              {"workdir", c.workdir.string()},
              {"commands",
               {{"encode", c.commands.encode},
                {"decode", c.commands.decode},
                {"quality", c.commands.quality}}},
              {"patterns",
               {{"bitrate", c.patterns.bitrate},
                {"quality", c.patterns.quality},
                {"energy", c.patterns.energy}}},
              {"energy_probe", std::move(probe)},
              {"measurement", to_json(c.measurement)}};
}

ExternalConfig external_from_json(const Json& j) {
  ExternalConfig c;
  for (const auto& s : j.at("sequences")) {
    c.sequences.push_back({s.at("name").get<std::string>(), s.value("input", std::string())});
  }
  if (j.contains("qps")) c.qps = j["qps"].get<std::vector<int>>();
  c.workdir = j.value("workdir", c.workdir.string());
  const auto& commands = j.at("commands");
  c.commands.encode = commands.at("encode").get<std::string>();
  c.commands.decode = commands.at("decode").get<std::string>();
  c.commands.quality = commands.at("quality").get<std::string>();
  const auto& patterns = j.at("patterns");
  c.patterns.bitrate = patterns.at("bitrate").get<std::string>();
  c.patterns.quality = patterns.at("quality").get<std::string>();
  c.patterns.energy = patterns.value("energy", std::string());
  if (j.contains("energy_probe")) {
    const auto& probe = j["energy_probe"];
    const auto kind = probe.value("kind", std::string("decoder_output"));
    if (kind == "counter_file") {
      c.probe.kind = EnergyProbe::Kind::counter_file;
    } else if (kind != "decoder_output") {
      throw_usage("unknown energy probe kind '" + kind + "'");
    }
    c.probe.path = probe.value("path", std::string());
    c.probe.scale = probe.value("scale", 1.0);
  }
  if (j.contains("measurement")) c.measurement = policy_from_json(j["measurement"]);
  c.validate();
  return c;
}

Json to_json(const Measurement& m) {
  return Json{{"converged", m.converged},
              {"repetitions", m.repetitions},
              {"curves", to_json(m.curves)}};
}

Measurement measurement_from_json(const Json& j) {
  Measurement m;
  m.converged = j.at("converged").get<bool>();
  m.repetitions = j.at("repetitions").get<std::vector<int>>();
  m.curves = curves_from_json(j.at("curves"));
  return m;
}

}  // namespace cadse::json_io
