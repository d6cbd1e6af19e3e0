#include "slitworks/app/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "slitworks/core/formulas.hpp"
#include "slitworks/errors.hpp"

namespace slitworks::app {

namespace {

// Plain scalars become numbers/bools where they parse as such; quoted scalars stay strings.
Json scalarToJson(const YAML::Node& node) {
  const std::string& s = node.Scalar();
  if (node.Tag() == "!") return s;
  if (s == "true" || s == "True") return true;
  if (s == "false" || s == "False") return false;
  if (s == "null" || s == "~" || s.empty()) return nullptr;
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (end != s.c_str() && *end == '\0') {
    if (s.find_first_of(".eEnN") == std::string::npos && std::abs(d) < 9e15) return static_cast<long long>(d);
    return d;
  }
  return s;
}

Json yamlToJson(const YAML::Node& node, const std::string& path, LineMap& lines) {
  switch (node.Type()) {
    case YAML::NodeType::Map: {
      Json obj = Json::object();
      for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        const std::string sub = path.empty() ? key : path + "." + key;
        lines[sub] = kv.first.Mark().line + 1;
        obj[key] = yamlToJson(kv.second, sub, lines);
      }
      return obj;
    }
    case YAML::NodeType::Sequence: {
      Json arr = Json::array();
      for (std::size_t i = 0; i < node.size(); ++i) arr.push_back(yamlToJson(node[i], path, lines));
      return arr;
    }
    case YAML::NodeType::Scalar:
      return scalarToJson(node);
    default:
      return nullptr;
  }
}

VelocityKind velocityKind(const std::string& s) {
  if (s == "maxwell_boltzmann") return VelocityKind::MaxwellBoltzmann;
  if (s == "flux_weighted") return VelocityKind::FluxWeighted;
  if (s == "uniform") return VelocityKind::UniformBand;
  return VelocityKind::Delta;
}

const char* velocityKindName(VelocityKind k) {
  switch (k) {
    case VelocityKind::MaxwellBoltzmann: return "maxwell_boltzmann";
    case VelocityKind::FluxWeighted: return "flux_weighted";
    case VelocityKind::UniformBand: return "uniform";
    case VelocityKind::Delta: return "delta";
  }
  return "delta";
}

template <class T>
std::optional<T> opt(const Json& obj, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return obj.at(key).get<T>();
}

// Domain checks that the schema cannot express, reported against the section.
template <class F>
void check(const std::string& path, const LineMap* lines, F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    int line = 0;
    if (lines) {
      const auto it = lines->find(path);
      if (it != lines->end()) line = it->second;
    }
    throw ScenarioError(path, e.what(), line);
  }
}

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

VelocitySelector Scenario::resolvedSelector() const {
  VelocitySelector s = selector;
  if (!selectorDistanceSet) s.distanceFromSource = beamline.L1;
  return s;
}

double Scenario::referenceSpeed() const {
  if (options.traceVMin && options.traceVMax) return 0.5 * (*options.traceVMin + *options.traceVMax);
  switch (velocity.kind) {
    case VelocityKind::Delta: return velocity.v0;
    case VelocityKind::UniformBand: return 0.5 * (velocity.vMin + velocity.vMax);
    case VelocityKind::FluxWeighted: return fluxWeightedPeakSpeed(velocity.temperature, molecule.mass);
    case VelocityKind::MaxwellBoltzmann: return velocity.vMp();
  }
  return velocity.vMp();
}

Scenario scenarioFromJson(const Json& raw, const Limits& limits, const LineMap* lines) {
  const Json doc = normalizeScenario(raw, lines, limits);
  Scenario s;
  s.name = doc["name"].get<std::string>();
  s.description = doc["description"].get<std::string>();
  s.seed = doc["seed"].get<std::uint64_t>();

  const auto& mol = doc["molecule"];
  s.molecule.name = mol["name"].get<std::string>();
  s.molecule.mass = mol["mass"].get<double>();

  const auto& m = doc["mask"];
  s.mask.slitCount = m["slits"].get<int>();
  s.mask.period = opt<double>(m, "period").value_or(0.0);
  s.mask.slitWidth = m["slit_width"].get<double>();
  s.mask.thickness = m["thickness"].get<double>();
  s.mask.rotation = m["rotation"].get<double>();
  s.mask.totalWidth = opt<double>(m, "total_width");
  check("mask", lines, [&] { s.mask.validate(); });

  const auto& v = doc["vdw"];
  s.vdw.enabled = v["enabled"].get<bool>();
  s.vdw.c3 = v["c3"].get<double>();
  s.vdw.cutoffDistance = v["cutoff"].get<double>();
  s.vdw.model = v["model"].get<std::string>() == "as_printed" ? PhaseModel::AsPrinted : PhaseModel::Eikonal;

  const auto& b = doc["beamline"];
  s.beamline.s1 = b["source_width"].get<double>();
  s.beamline.s2 = opt<double>(b, "collimation_width");
  s.beamline.L1 = b["L1"].get<double>();
  s.beamline.L2 = b["L2"].get<double>();
  s.beamline.latitude = b["latitude"].get<double>();
  s.beamline.sourceHeight = b["source_height"].get<double>();
  check("beamline", lines, [&] { s.beamline.validate(); });

  const auto& sel = doc["selector"];
  s.selector.height = sel["height"].get<double>();
  s.selector.opening = sel["opening"].get<double>();
  s.selectorDistanceSet = sel.contains("distance_from_source");
  s.selector.distanceFromSource = opt<double>(sel, "distance_from_source").value_or(0.0);
  if (s.resolvedSelector().distanceFromSource >= s.beamline.totalLength())
    throw ScenarioError("selector.distance_from_source", "selector must sit between source and detector");

  const auto& vel = doc["velocity"];
  s.velocity.kind = velocityKind(vel["kind"].get<std::string>());
  s.velocity.mass = s.molecule.mass;
  s.velocity.temperature = opt<double>(vel, "temperature").value_or(0.0);
  s.velocity.vMin = opt<double>(vel, "v_min").value_or(0.0);
  s.velocity.vMax = opt<double>(vel, "v_max").value_or(0.0);
  s.velocity.v0 = opt<double>(vel, "v0").value_or(0.0);
  check("velocity", lines, [&] { s.velocity.validate(); });

  const auto& d = doc["detector"];
  s.detector.xMin = d["x_min"].get<double>();
  s.detector.xMax = d["x_max"].get<double>();
  s.detector.nx = d["nx"].get<int>();
  s.detector.yMin = d["y_min"].get<double>();
  s.detector.yMax = d["y_max"].get<double>();
  s.detector.ny = d["ny"].get<int>();
  s.heightMapping = d["height_mapping"].get<std::string>() == "post_grating_fall" ? HeightMapping::PostGratingFall
                                                                                   : HeightMapping::SelectorParabola;
  check("detector", lines, [&] { s.detector.validate(); });

  const auto& o = doc["options"];
  s.options.collimation = o["collimation"].get<bool>();
  s.options.coriolis = o["coriolis"].get<bool>();
  s.options.subBandThreshold = o["sub_band_threshold"].get<double>();
  s.options.gridStep = o["grid_step"].get<double>();
  s.options.smoothingPeriod = o["smoothing_period"].get<double>();
  s.options.traceVMin = opt<double>(o, "trace_v_min");
  s.options.traceVMax = opt<double>(o, "trace_v_max");
  s.options.arrivals = o["arrivals"].get<long long>();
  s.options.psfWidth = o["psf_width"].get<double>();
  s.options.peakThreshold = o["peak_threshold"].get<double>();

  if (doc.contains("carpet")) {
    const auto& c = doc["carpet"];
    CarpetSettings cs;
    cs.zMax = c["z_max"].get<double>();
    cs.zSteps = c["z_steps"].get<int>();
    cs.gridExponent = c["grid_exponent"].get<int>();
    cs.wavelength = opt<double>(c, "wavelength");
    cs.speed = opt<double>(c, "speed");
    cs.cropHalfWidth = c["crop_half_width"].get<double>();
    s.carpet = cs;
  }
  return s;
}

Scenario scenarioFromYaml(const std::string& text, const Limits& limits) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ScenarioError("", e.msg, e.mark.line + 1);
  }
  LineMap lines;
  lines[""] = 1;
  const Json doc = yamlToJson(root, "", lines);
  return scenarioFromJson(doc, limits, &lines);
}

Scenario loadScenarioFile(const std::string& path, const Limits& limits) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    Json doc;
    try {
      doc = Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
      throw ScenarioError("", e.what());
    }
    return scenarioFromJson(doc, limits);
  }
  return scenarioFromYaml(ss.str(), limits);
}

Json scenarioToJson(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["description"] = s.description;
  j["seed"] = s.seed;
  j["molecule"] = {{"name", s.molecule.name}, {"mass", s.molecule.mass}};

  Json m{{"slits", s.mask.slitCount},
         {"slit_width", s.mask.slitWidth},
         {"thickness", s.mask.thickness},
         {"rotation", s.mask.rotation}};
  if (s.mask.period > 0) m["period"] = s.mask.period;
  if (s.mask.totalWidth) m["total_width"] = *s.mask.totalWidth;
  j["mask"] = m;

  j["vdw"] = {{"enabled", s.vdw.enabled},
              {"c3", s.vdw.c3},
              {"cutoff", s.vdw.cutoffDistance},
              {"model", s.vdw.model == PhaseModel::AsPrinted ? "as_printed" : "eikonal"}};

  Json b{{"source_width", s.beamline.s1},
         {"L1", s.beamline.L1},
         {"L2", s.beamline.L2},
         {"latitude", s.beamline.latitude},
         {"source_height", s.beamline.sourceHeight}};
  if (s.beamline.s2) b["collimation_width"] = *s.beamline.s2;
  j["beamline"] = b;

  Json sel{{"height", s.selector.height}, {"opening", s.selector.opening}};
  if (s.selectorDistanceSet) sel["distance_from_source"] = s.selector.distanceFromSource;
  j["selector"] = sel;

  Json vel{{"kind", velocityKindName(s.velocity.kind)}};
  if (s.velocity.temperature > 0) vel["temperature"] = s.velocity.temperature;
  if (s.velocity.vMin > 0) vel["v_min"] = s.velocity.vMin;
  if (s.velocity.vMax > 0) vel["v_max"] = s.velocity.vMax;
  if (s.velocity.v0 > 0) vel["v0"] = s.velocity.v0;
  j["velocity"] = vel;

  j["detector"] = {{"x_min", s.detector.xMin},
                   {"x_max", s.detector.xMax},
                   {"nx", s.detector.nx},
                   {"y_min", s.detector.yMin},
                   {"y_max", s.detector.yMax},
                   {"ny", s.detector.ny},
                   {"height_mapping", s.heightMapping == HeightMapping::PostGratingFall ? "post_grating_fall"
                                                                                        : "selector_parabola"}};

  Json o{{"collimation", s.options.collimation},
         {"coriolis", s.options.coriolis},
         {"sub_band_threshold", s.options.subBandThreshold},
         {"grid_step", s.options.gridStep},
         {"smoothing_period", s.options.smoothingPeriod},
         {"arrivals", s.options.arrivals},
         {"psf_width", s.options.psfWidth},
         {"peak_threshold", s.options.peakThreshold}};
  if (s.options.traceVMin) o["trace_v_min"] = *s.options.traceVMin;
  if (s.options.traceVMax) o["trace_v_max"] = *s.options.traceVMax;
  j["options"] = o;

  if (s.carpet) {
    Json c{{"z_max", s.carpet->zMax},
           {"z_steps", s.carpet->zSteps},
           {"grid_exponent", s.carpet->gridExponent},
           {"crop_half_width", s.carpet->cropHalfWidth}};
    if (s.carpet->wavelength) c["wavelength"] = *s.carpet->wavelength;
    if (s.carpet->speed) c["speed"] = *s.carpet->speed;
    j["carpet"] = c;
  }
  return j;
}

std::string scenarioToYaml(const Scenario& s) {
  const Json doc = scenarioToJson(s);
  YAML::Emitter out;
  out << YAML::BeginMap;
  std::string open;
  for (const auto& f : scenarioFields()) {
    const auto dot = f.path.find('.');
    const std::string section = dot == std::string::npos ? "" : f.path.substr(0, dot);
    const std::string key = dot == std::string::npos ? f.path : f.path.substr(dot + 1);
    const Json* v = nullptr;
    if (section.empty()) {
      if (doc.contains(key)) v = &doc[key];
    } else if (doc.contains(section) && doc[section].contains(key)) {
      v = &doc[section][key];
    }
    if (!v) continue;
    if (section != open) {
      if (!open.empty()) out << YAML::EndMap;
      if (!section.empty()) out << YAML::Key << section << YAML::Value << YAML::BeginMap;
      open = section;
    }
    out << YAML::Key << key << YAML::Value;
    if (v->is_string())
      out << YAML::DoubleQuoted << v->get<std::string>();
    else if (v->is_boolean())
      out << (v->get<bool>() ? "true" : "false");
    else if (v->is_number_integer() || v->is_number_unsigned())
      out << std::to_string(v->get<long long>());
    else
      out << num17(v->get<double>());
  }
  if (!open.empty()) out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

bool operator==(const Scenario& a, const Scenario& b) { return scenarioToJson(a) == scenarioToJson(b); }

}  // namespace slitworks::app
