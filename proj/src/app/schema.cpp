#include "slitworks/app/schema.hpp"

#include <cmath>
#include <set>

#include "slitworks/core/constants.hpp"
#include "slitworks/errors.hpp"

namespace slitworks::app {

using units::Dimension;

namespace {

constexpr double kDeg = constants::pi / 180;

FieldSpec number(std::string path, Dimension dim, bool required, std::optional<double> min, std::optional<double> max,
                 Json def, std::string description, bool exclusiveMin = false) {
  FieldSpec f{std::move(path), FieldKind::Number, dim, required, min, max, exclusiveMin, std::move(def), {},
              std::move(description)};
  return f;
}

FieldSpec integer(std::string path, bool required, std::optional<double> min, std::optional<double> max, Json def,
                  std::string description) {
  return {std::move(path), FieldKind::Integer, Dimension::Dimensionless, required, min, max, false, std::move(def), {},
          std::move(description)};
}

FieldSpec boolean(std::string path, bool def, std::string description) {
  return {std::move(path), FieldKind::Boolean, Dimension::Dimensionless, false, {}, {}, false, def, {},
          std::move(description)};
}

FieldSpec string(std::string path, Json def, std::string description) {
  return {std::move(path), FieldKind::String, Dimension::Dimensionless, false, {}, {}, false, std::move(def), {},
          std::move(description)};
}

FieldSpec choice(std::string path, bool required, Json def, std::vector<std::string> choices, std::string description) {
  return {std::move(path), FieldKind::Enum, Dimension::Dimensionless, required, {}, {}, false, std::move(def),
          std::move(choices), std::move(description)};
}

std::vector<FieldSpec> build() {
  const Json none;
  return {
      string("name", "scenario", "scenario label, used for output file names"),
      string("description", "", "free text"),
      integer("seed", false, 0, 9.007199254740992e15, 1, "seed for arrival sampling"),

      string("molecule.name", "PcH2", "label"),
      number("molecule.mass", Dimension::Mass, false, 0, {}, 514.54 * constants::u, "particle mass", true),

      integer("mask.slits", true, 1, 10000, none, "number of illuminated slits N"),
      number("mask.period", Dimension::Length, false, 0, {}, none, "period d, required for N > 1", true),
      number("mask.slit_width", Dimension::Length, true, 0, {}, none, "geometric slit width s", true),
      number("mask.thickness", Dimension::Length, false, 0, {}, 0.0, "membrane thickness T"),
      number("mask.rotation", Dimension::Angle, false, -90 * kDeg, 90 * kDeg, 0.0, "rotation about the slit axis"),
      number("mask.total_width", Dimension::Length, false, 0, {}, none, "illuminated width, default N d", true),

      boolean("vdw.enabled", false, "apply the wall phase and the adsorption cutoff"),
      number("vdw.c3", Dimension::C3, false, 0, {}, 0.0, "van der Waals C3"),
      number("vdw.cutoff", Dimension::Length, false, 0, {}, 0.0, "molecules closer to a wall are lost"),
      choice("vdw.model", false, "eikonal", {"eikonal", "as_printed"}, "wall phase model"),

      number("beamline.source_width", Dimension::Length, true, 0, {}, none, "source width s1", true),
      number("beamline.collimation_width", Dimension::Length, false, 0, {}, none,
             "collimation slit s2 next to the grating, default: the mask width", true),
      number("beamline.L1", Dimension::Length, true, 0, {}, none, "source to grating", true),
      number("beamline.L2", Dimension::Length, true, 0, {}, none, "grating to detector", true),
      number("beamline.latitude", Dimension::Angle, false, -90 * kDeg, 90 * kDeg, 0.0, "for the Coriolis shift"),
      number("beamline.source_height", Dimension::Length, false, {}, {}, 0.0, "vertical source position"),

      number("selector.height", Dimension::Length, false, {}, {}, 0.0, "centre of the selector opening"),
      number("selector.opening", Dimension::Length, false, 0, {}, 20e-6, "vertical opening of the selector slit"),
      number("selector.distance_from_source", Dimension::Length, false, 0, {}, none,
             "selector position, default: at the grating", true),

      choice("velocity.kind", true, none, {"maxwell_boltzmann", "flux_weighted", "uniform", "delta"},
             "velocity distribution"),
      number("velocity.temperature", Dimension::Temperature, false, 0, {}, none, "source temperature", true),
      number("velocity.v_min", Dimension::Speed, false, 0, {}, none, "lower edge of a uniform band", true),
      number("velocity.v_max", Dimension::Speed, false, 0, {}, none, "upper edge of a uniform band", true),
      number("velocity.v0", Dimension::Speed, false, 0, {}, none, "speed of a delta distribution", true),

      number("detector.x_min", Dimension::Length, true, {}, {}, none, "left edge"),
      number("detector.x_max", Dimension::Length, true, {}, {}, none, "right edge"),
      integer("detector.nx", true, 1, 1e6, none, "columns"),
      number("detector.y_min", Dimension::Length, true, {}, {}, none, "bottom edge"),
      number("detector.y_max", Dimension::Length, true, {}, {}, none, "top edge"),
      integer("detector.ny", true, 1, 1e6, none, "rows"),
      choice("detector.height_mapping", false, "selector_parabola", {"selector_parabola", "post_grating_fall"},
             "how a detector height selects speeds"),

      boolean("options.collimation", true, "convolve rows with the collimation kernel"),
      boolean("options.coriolis", false, "shift rows by the Coriolis drift"),
      number("options.sub_band_threshold", Dimension::Dimensionless, false, 0, 1, 0.02,
             "relative band width above which a row averages several speeds"),
      number("options.grid_step", Dimension::Length, false, 0, {}, 0.0, "transmission cell size, 0 = automatic"),
      number("options.smoothing_period", Dimension::Length, false, 0, {}, 0.0, "trace low-pass period, 0 = off"),
      number("options.trace_v_min", Dimension::Speed, false, 0, {}, none, "trace band lower speed", true),
      number("options.trace_v_max", Dimension::Speed, false, 0, {}, none, "trace band upper speed", true),
      integer("options.arrivals", false, 0, 9e15, 0, "number of sampled molecule arrivals"),
      number("options.psf_width", Dimension::Length, false, 0, {}, 400e-9, "dot point spread FWHM", true),
      number("options.peak_threshold", Dimension::Dimensionless, false, 0, 1, 0.02,
             "orders weaker than this fraction of the strongest are not fitted"),

      number("carpet.z_max", Dimension::Length, true, 0, {}, none, "largest distance behind the mask"),
      integer("carpet.z_steps", false, 1, 1e6, 200, "number of rows"),
      integer("carpet.grid_exponent", false, 8, 26, 14, "log2 of the transverse grid size"),
      number("carpet.wavelength", Dimension::Length, false, 0, {}, none, "wavelength, overrides speed", true),
      number("carpet.speed", Dimension::Speed, false, 0, {}, none, "speed, default: reference speed", true),
      number("carpet.crop_half_width", Dimension::Length, false, 0, {}, 0.0, "stored half width, 0 = automatic"),
  };
}

const std::set<std::string>& sections() {
  static const std::set<std::string> s{"molecule", "mask",     "vdw",     "beamline", "selector",
                                       "velocity", "detector", "options", "carpet"};
  return s;
}

std::pair<std::string, std::string> split(const std::string& path) {
  const auto dot = path.find('.');
  if (dot == std::string::npos) return {"", path};
  return {path.substr(0, dot), path.substr(dot + 1)};
}

int lineOf(const LineMap* lines, std::string path) {
  if (!lines) return 0;
  while (true) {
    const auto it = lines->find(path);
    if (it != lines->end()) return it->second;
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) return 0;
    path = path.substr(0, dot);
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Json convert(const FieldSpec& f, const Json& v, const LineMap* lines) {
  auto fail = [&](const std::string& msg) -> ScenarioError { return ScenarioError(f.path, msg, lineOf(lines, f.path)); };
  switch (f.kind) {
    case FieldKind::Boolean:
      if (!v.is_boolean()) throw fail("expected true or false");
      return v;
    case FieldKind::String:
      if (!v.is_string()) throw fail("expected a string");
      return v;
    case FieldKind::Enum: {
      if (!v.is_string()) throw fail("expected a string");
      const auto s = v.get<std::string>();
      for (const auto& c : f.choices)
        if (c == s) return v;
      std::string all;
      for (const auto& c : f.choices) all += (all.empty() ? "" : ", ") + c;
      throw fail("unknown value '" + s + "', expected one of " + all);
    }
    case FieldKind::Integer: {
      if (!v.is_number()) throw fail("expected an integer");
      const double d = v.get<double>();
      if (d != std::floor(d)) throw fail("expected an integer");
      if (f.min && d < *f.min) throw fail("must be at least " + fmt(*f.min));
      if (f.max && d > *f.max) throw fail("must be at most " + fmt(*f.max));
      return static_cast<long long>(d);
    }
    case FieldKind::Number: {
      double d;
      if (v.is_number()) {
        d = v.get<double>();
      } else if (v.is_string()) {
        try {
          d = units::parse(v.get<std::string>(), f.dim);
        } catch (const Error& e) {
          throw fail(e.what());
        }
      } else {
        throw fail("expected a number, optionally with a unit");
      }
      if (!std::isfinite(d)) throw fail("must be finite");
      if (f.min && (f.exclusiveMin ? d <= *f.min : d < *f.min))
        throw fail(std::string("must be ") + (f.exclusiveMin ? "greater than " : "at least ") + fmt(*f.min) + " (SI)");
      if (f.max && d > *f.max) throw fail("must be at most " + fmt(*f.max) + " (SI)");
      return d;
    }
  }
  return v;
}

}  // namespace

const std::vector<FieldSpec>& scenarioFields() {
  static const std::vector<FieldSpec> fields = build();
  return fields;
}

bool optionalSection(const std::string& section) { return section == "carpet"; }

Json normalizeScenario(const Json& raw, const LineMap* lines, const Limits& limits) {
  if (!raw.is_object()) throw ScenarioError("", "scenario must be a mapping", lineOf(lines, ""));
  const auto& fields = scenarioFields();

  std::set<std::string> known;
  for (const auto& f : fields) known.insert(f.path);
  for (const auto& [key, value] : raw.items()) {
    if (sections().count(key)) {
      if (value.is_null()) continue;
      if (!value.is_object()) throw ScenarioError(key, "expected a mapping", lineOf(lines, key));
      for (const auto& [sub, _] : value.items())
        if (!known.count(key + "." + sub))
          throw ScenarioError(key + "." + sub, "unknown field", lineOf(lines, key + "." + sub));
    } else if (!known.count(key)) {
      throw ScenarioError(key, "unknown field", lineOf(lines, key));
    }
  }

  Json out = Json::object();
  for (const auto& f : fields) {
    const auto [section, key] = split(f.path);
    const Json* v = nullptr;
    if (section.empty()) {
      if (raw.contains(key)) v = &raw.at(key);
    } else {
      const bool present = raw.contains(section) && raw.at(section).is_object();
      if (!present && optionalSection(section)) continue;
      if (present && raw.at(section).contains(key)) v = &raw.at(section).at(key);
    }
    if (v && v->is_null()) v = nullptr;

    Json value;
    if (v) {
      value = convert(f, *v, lines);
    } else if (f.required) {
      throw ScenarioError(f.path, "required field is missing", lineOf(lines, section.empty() ? f.path : section));
    } else if (!f.defaultValue.is_null()) {
      value = f.defaultValue;
    } else {
      continue;
    }
    if (section.empty())
      out[key] = value;
    else
      out[section][key] = value;
  }

  // cross-field rules
  auto fail = [&](const std::string& path, const std::string& msg) { return ScenarioError(path, msg, lineOf(lines, path)); };
  const auto& mask = out["mask"];
  const long long n = mask["slits"].get<long long>();
  if (n > limits.maxSlits) throw fail("mask.slits", "exceeds the limit of " + std::to_string(limits.maxSlits));
  if (n > 1) {
    if (!mask.contains("period")) throw fail("mask.period", "required when there is more than one slit");
    if (mask["slit_width"].get<double>() >= mask["period"].get<double>())
      throw fail("mask.slit_width", "slit width must be smaller than the period");
  }

  const auto& vel = out["velocity"];
  const auto kind = vel["kind"].get<std::string>();
  if ((kind == "maxwell_boltzmann" || kind == "flux_weighted") && !vel.contains("temperature"))
    throw fail("velocity.temperature", "required for a thermal distribution");
  if (kind == "uniform") {
    if (!vel.contains("v_min") || !vel.contains("v_max")) throw fail("velocity", "uniform band needs v_min and v_max");
    if (vel["v_max"].get<double>() <= vel["v_min"].get<double>())
      throw fail("velocity.v_max", "must exceed v_min");
  }
  if (kind == "delta" && !vel.contains("v0")) throw fail("velocity.v0", "required for a delta distribution");

  const auto& det = out["detector"];
  if (det["x_max"].get<double>() <= det["x_min"].get<double>()) throw fail("detector.x_max", "must exceed x_min");
  if (det["y_max"].get<double>() <= det["y_min"].get<double>()) throw fail("detector.y_max", "must exceed y_min");
  if (det["nx"].get<long long>() * det["ny"].get<long long>() > limits.maxPixels)
    throw fail("detector", "nx * ny exceeds the limit of " + std::to_string(limits.maxPixels) + " pixels");

  const auto& opt = out["options"];
  if (opt.contains("trace_v_min") != opt.contains("trace_v_max"))
    throw fail("options.trace_v_min", "trace_v_min and trace_v_max go together");
  if (opt.contains("trace_v_min") && opt["trace_v_max"].get<double>() <= opt["trace_v_min"].get<double>())
    throw fail("options.trace_v_max", "must exceed trace_v_min");
  if (opt["arrivals"].get<long long>() > limits.maxArrivals)
    throw fail("options.arrivals", "exceeds the limit of " + std::to_string(limits.maxArrivals));

  if (out.contains("carpet")) {
    const auto& c = out["carpet"];
    if (c["grid_exponent"].get<int>() > limits.maxGridExponent)
      throw fail("carpet.grid_exponent", "exceeds the limit of " + std::to_string(limits.maxGridExponent));
    if (c["z_steps"].get<int>() > limits.maxZSteps)
      throw fail("carpet.z_steps", "exceeds the limit of " + std::to_string(limits.maxZSteps));
  }
  return out;
}

Json scenarioJsonSchema() {
  Json props = Json::object();
  std::map<std::string, Json> required;
  for (const auto& f : scenarioFields()) {
    Json p;
    switch (f.kind) {
      case FieldKind::Boolean: p["type"] = "boolean"; break;
      case FieldKind::String: p["type"] = "string"; break;
      case FieldKind::Enum: p["type"] = "string"; p["enum"] = f.choices; break;
      case FieldKind::Integer:
        p["type"] = "integer";
        if (f.min) p["minimum"] = *f.min;
        if (f.max) p["maximum"] = *f.max;
        break;
      case FieldKind::Number: {
        Json num{{"type", "number"}};
        if (f.min) num[f.exclusiveMin ? "exclusiveMinimum" : "minimum"] = *f.min;
        if (f.max) num["maximum"] = *f.max;
        p["oneOf"] = Json::array({num, Json{{"type", "string"}, {"pattern", R"(^\s*[-+]?[0-9.]+([eE][-+]?[0-9]+)?\s*\S.*$)"}}});
        p["x-unit"] = units::symbols(f.dim).front();
        p["x-units"] = units::symbols(f.dim);
        break;
      }
    }
    p["description"] = f.description;
    if (!f.defaultValue.is_null()) p["default"] = f.defaultValue;

    const auto [section, key] = split(f.path);
    if (section.empty()) {
      props[key] = p;
      if (f.required) required[""].push_back(key);
    } else {
      auto& s = props[section];
      if (s.is_null()) s = Json{{"type", "object"}, {"additionalProperties", false}, {"properties", Json::object()}};
      s["properties"][key] = p;
      if (f.required) s["required"].push_back(key);
    }
  }
  Json top = Json::array();
  for (const auto& s : sections())
    if (!optionalSection(s) && props.contains(s) && props[s].contains("required")) top.push_back(s);
  for (const auto& k : required[""]) top.push_back(k);
  return Json{{"$schema", "https://json-schema.org/draft/2020-12/schema"},
              {"title", "slitworks scenario"},
              {"type", "object"},
              {"additionalProperties", false},
              {"properties", props},
              {"required", top}};
}

}  // namespace slitworks::app
