#include "srs/scenario.hpp"

#include "srs/constants.hpp"
#include "srs/errors.hpp"
#include "srs/units.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace srs {

using json = nlohmann::ordered_json;

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  if (steps <= 1) return {min};
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out.push_back(i == steps - 1 ? max : min + (max - min) * i / (steps - 1));
  }
  return out;
}

double ScenarioConfig::rabi_dipole_sq() const {
  return model.type == "lorentzian" ? model.dipole_sq : reference_dipole_sq;
}

double ScenarioConfig::field_amplitude(const PulseStrength& s) const {
  if (!s.by_rabi) return s.value;
  return 2.0 * s.value / (duration * std::sqrt(rabi_dipole_sq()));
}

double ScenarioConfig::rabi_tau(const PulseStrength& s) const {
  if (s.by_rabi) return s.value;
  return 0.5 * s.value * std::sqrt(rabi_dipole_sq()) * duration;
}

PulsePair ScenarioConfig::pulse_pair(double t0_value) const {
  PulsePair pair;
  pair.pump = {field_amplitude(pump), carrier, duration, 0.0, geometry.axis};
  const Eigen::Vector3d tilted =
      Eigen::AngleAxisd(beam_angle, Eigen::Vector3d::UnitX()) * geometry.axis;
  pair.probe = {field_amplitude(probe), carrier, duration, t0_value * duration, tilted.normalized()};
  return pair;
}

json parse_config_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

json quantity(double value, std::string_view unit) {
  return json{{"value", value}, {"unit", std::string(unit)}};
}

double read_quantity(const json& j, Dimension dim, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_object() && j.contains("value") && j["value"].is_number()) {
    const std::string unit = j.value("unit", std::string("au"));
    return to_atomic({j["value"].get<double>(), dim}, parse_unit(unit, dim));
  }
  fail(where + ": expected a number (atomic units) or {\"value\": .., \"unit\": ..}");
}

double read_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) fail(where + ": unknown key '" + key + "'");
  }
}

json object_or_empty(const json& parent, const char* key) {
  if (!parent.contains(key)) return json::object();
  return parent[key];
}

struct SweepDefaults {
  const char* var;
  double min;
  double max;
  int steps;
  std::vector<std::string> allowed;
};

SweepDefaults sweep_defaults(const std::string& command) {
  if (command == "fig2") return {"t0", -4.0, 4.0, 161, {"t0"}};
  if (command == "fig3") return {"x", 1.01, 3.0, 200, {"x"}};
  if (command == "wt") return {"t0", -3.0, 3.0, 61, {"t0", "gamma", "omega", "x"}};
  if (command == "gain") return {"t0", 1.0, 1.0, 1, {"t0", "density"}};
  if (command == "phasematch") return {"beam_angle", 0.0, 0.0, 1, {"beam_angle", "density"}};
  if (command == "oracle") return {"t0", 1.0, 1.0, 1, {"t0"}};
  fail("unknown command '" + command + "'");
}

json resolve_pulse_strength(const json& in, const std::string& where) {
  if (!in.is_object()) fail(where + " must be an object");
  reject_unknown(in, {"rabi_tau", "field"}, where);
  const bool rabi = in.contains("rabi_tau");
  const bool field = in.contains("field");
  if (rabi == field) fail(where + ": give exactly one of rabi_tau or field");
  return in;
}

PulseStrength read_strength(const json& in, const std::string& where) {
  PulseStrength s;
  if (in.contains("rabi_tau")) {
    s.by_rabi = true;
    s.value = read_number(in["rabi_tau"], where + ".rabi_tau");
  } else {
    s.by_rabi = false;
    s.value = read_quantity(in["field"], Dimension::field, where + ".field");
  }
  if (!(s.value >= 0.0)) fail(where + ": strength must be non-negative");
  return s;
}

json resolve_model(const std::string& command, const json& in) {
  json m = in;
  std::string type = m.value("type", std::string(command == "fig3" ? "delta" : "lorentzian"));
  if (command == "fig3") type = "delta";
  m["type"] = type;
  json out;
  out["type"] = type;
  if (type == "lorentzian") {
    reject_unknown(m, {"type", "dipole_sq", "width", "gamma"}, "model");
    out["dipole_sq"] = m.value("dipole_sq", 1.0);
    if (m.contains("width") && m.contains("gamma")) fail("model: give width or gamma, not both");
    if (m.contains("width")) out["width"] = m["width"];
    if (m.contains("gamma")) out["gamma"] = m["gamma"];
    if (!m.contains("width") && !m.contains("gamma") && command != "gain" && command != "phasematch") {
      out["gamma"] = 10.0;
    }
  } else if (type == "delta") {
    reject_unknown(m, {"type", "binding_energy", "x", "branch"}, "model");
    if (m.contains("binding_energy") && m.contains("x")) fail("model: give binding_energy or x, not both");
    if (m.contains("binding_energy")) {
      out["binding_energy"] = m["binding_energy"];
    } else {
      out["x"] = m.value("x", 1.2);
    }
    out["branch"] = m.value("branch", std::string("physical"));
  } else if (type == "discrete") {
    reject_unknown(m, {"type", "levels", "levels_file", "broadening"}, "model");
    if (m.contains("levels") == m.contains("levels_file")) {
      fail("model: discrete model needs exactly one of levels or levels_file");
    }
    if (m.contains("levels_file")) {
      const auto path = m["levels_file"].get<std::string>();
      std::ifstream file(path);
      if (!file) fail("model: cannot open level table '" + path + "'");
      const auto table = load_levels(file, 1.0);
      auto rows = json::array();
      for (const auto& l : table.levels) rows.push_back(json::array({l.transition_energy, l.dipole_sq}));
      out["levels"] = rows;
    } else {
      out["levels"] = m["levels"];
    }
    if (!m.contains("broadening")) fail("model: discrete model needs a broadening");
    out["broadening"] = m["broadening"];
  } else {
    fail("model: unknown type '" + type + "' (lorentzian, delta, discrete)");
  }
  return out;
}

ModelConfig read_model(const json& m) {
  ModelConfig out;
  out.type = m["type"].get<std::string>();
  if (out.type == "lorentzian") {
    out.dipole_sq = read_number(m["dipole_sq"], "model.dipole_sq");
    if (!(out.dipole_sq > 0.0)) fail("model.dipole_sq must be positive");
    if (m.contains("width")) out.width = read_quantity(m["width"], Dimension::frequency, "model.width");
    if (m.contains("gamma")) out.gamma = read_number(m["gamma"], "model.gamma");
    if (out.width && !(*out.width > 0.0)) fail("model.width must be positive");
    if (out.gamma && !(*out.gamma > 0.0)) fail("model.gamma must be positive");
  } else if (out.type == "delta") {
    if (m.contains("binding_energy")) {
      out.binding_energy = read_quantity(m["binding_energy"], Dimension::energy, "model.binding_energy");
      if (!(*out.binding_energy > 0.0)) fail("model.binding_energy must be positive");
    }
    if (m.contains("x")) {
      out.x = read_number(m["x"], "model.x");
      if (!(*out.x > 1.0)) fail("model.x must exceed 1 (above threshold)");
    }
    const auto branch = m["branch"].get<std::string>();
    if (branch == "physical") {
      out.branch = DeltaBranch::physical;
    } else if (branch == "alternate_sign") {
      out.branch = DeltaBranch::alternate_sign;
    } else {
      fail("model.branch must be 'physical' or 'alternate_sign'");
    }
  } else {
    for (const auto& row : m["levels"]) {
      if (!row.is_array() || row.size() != 2) fail("model.levels rows must be [energy, dipole_sq]");
      out.levels.push_back({read_number(row[0], "model.levels"), read_number(row[1], "model.levels")});
    }
    out.broadening = read_quantity(m["broadening"], Dimension::energy, "model.broadening");
    DiscreteLevels check{out.levels, out.broadening};
    try {
      check.validate();
    } catch (const DomainError& e) {
      fail(std::string("model: ") + e.what());
    }
  }
  return out;
}

} // namespace

ScenarioConfig resolve_config(const std::string& command, const json& config, const json& overrides) {
  json merged = config.is_null() ? json::object() : config;
  if (!merged.is_object()) fail("config must be a JSON object");
  merged.merge_patch(overrides);
  reject_unknown(merged,
                 {"pulses", "model", "geometry", "radiative_width", "sweep", "routes", "seed",
                  "subsample", "direction_samples", "quadrature", "output"},
                 "config");

  const auto sd = sweep_defaults(command);
  json r;

  // pulses
  const json p = object_or_empty(merged, "pulses");
  reject_unknown(p,
                 {"wavelength", "carrier", "duration", "t0", "delay", "beam_angle", "reference_dipole_sq",
                  "pump", "probe"},
                 "pulses");
  json rp;
  if (p.contains("wavelength") && p.contains("carrier")) fail("pulses: give wavelength or carrier, not both");
  if (p.contains("carrier")) {
    rp["carrier"] = p["carrier"];
  } else {
    rp["wavelength"] = p.contains("wavelength") ? p["wavelength"] : quantity(1e-4, "cm");
  }
  rp["duration"] = p.contains("duration") ? p["duration"] : quantity(100.0, "fs");
  if (p.contains("t0") && p.contains("delay")) fail("pulses: give t0 or delay, not both");
  if (p.contains("delay")) {
    rp["delay"] = p["delay"];
  } else {
    rp["t0"] = p.value("t0", 1.0);
  }
  rp["beam_angle"] = p.value("beam_angle", 0.0);
  rp["reference_dipole_sq"] = p.value("reference_dipole_sq", 1.0);
  rp["pump"] = resolve_pulse_strength(p.contains("pump") ? p["pump"] : json{{"rabi_tau", 1e-2}}, "pulses.pump");
  rp["probe"] = resolve_pulse_strength(p.contains("probe") ? p["probe"] : json{{"rabi_tau", 1e-2}}, "pulses.probe");
  r["pulses"] = rp;

  r["model"] = resolve_model(command, object_or_empty(merged, "model"));

  const json g = object_or_empty(merged, "geometry");
  reject_unknown(g, {"waist", "length", "density"}, "geometry");
  r["geometry"] = {
      {"waist", g.contains("waist") ? g["waist"] : quantity(1e-3, "cm")},
      {"length", g.contains("length") ? g["length"] : quantity(1e-2, "cm")},
      {"density", g.contains("density") ? g["density"] : quantity(1e16, "cm-3")},
  };
  r["radiative_width"] = merged.contains("radiative_width") ? merged["radiative_width"] : quantity(1e8, "s-1");

  const json s = object_or_empty(merged, "sweep");
  reject_unknown(s, {"var", "min", "max", "steps"}, "sweep");
  // Single-point commands sweep nothing by default: the point is the
  // configured delay or beam angle.
  const std::string var = s.value("var", std::string(sd.var));
  json lo = sd.min;
  json hi = sd.max;
  if (sd.steps == 1) {
    if (var == "t0" && rp.contains("t0")) lo = rp["t0"];
    if (var == "t0" && rp.contains("delay")) {
      lo = read_quantity(rp["delay"], Dimension::time, "pulses.delay") /
           read_quantity(rp["duration"], Dimension::time, "pulses.duration");
    }
    if (var == "beam_angle") lo = rp["beam_angle"];
    if (s.contains("min")) lo = s["min"];
    hi = lo;
  }
  r["sweep"] = {
      {"var", var},
      {"min", s.contains("min") ? s["min"] : lo},
      {"max", s.contains("max") ? s["max"] : hi},
      {"steps", s.contains("steps") ? s["steps"] : json(sd.steps)},
  };

  if (merged.contains("routes")) {
    r["routes"] = merged["routes"];
  } else {
    const auto type = r["model"]["type"].get<std::string>();
    if (type == "delta") r["routes"] = {"frequency", "continuum"};
    else if (type == "discrete") r["routes"] = {"time", "frequency"};
    else r["routes"] = {"frequency", "resonant"};
  }
  r["seed"] = merged.value("seed", std::uint64_t{1});
  r["subsample"] = merged.value("subsample", 10000L);
  r["direction_samples"] = merged.value("direction_samples", 2000L);

  const json q = object_or_empty(merged, "quadrature");
  reject_unknown(q, {"abs_tol", "rel_tol", "max_subdivisions", "truncation_sigmas"}, "quadrature");
  const QuadratureSpec qd;
  r["quadrature"] = {
      {"abs_tol", q.value("abs_tol", qd.abs_tol)},
      {"rel_tol", q.value("rel_tol", qd.rel_tol)},
      {"max_subdivisions", q.value("max_subdivisions", qd.max_subdivisions)},
      {"truncation_sigmas", q.value("truncation_sigmas", qd.truncation_sigmas)},
  };

  // Output settings are not part of the run's identity and stay out of the
  // echoed config.
  const json o = object_or_empty(merged, "output");
  reject_unknown(o, {"path", "format"}, "output");

  // Convert to atomic units and validate.
  ScenarioConfig c;
  c.command = command;
  c.resolved = r;
  try {
    if (rp.contains("carrier")) {
      c.carrier = read_quantity(rp["carrier"], Dimension::energy, "pulses.carrier");
    } else {
      c.carrier = carrier_from_wavelength(read_quantity(rp["wavelength"], Dimension::length, "pulses.wavelength"));
    }
    c.duration = read_quantity(rp["duration"], Dimension::time, "pulses.duration");
    if (!(c.carrier > 0.0)) fail("pulses: carrier must be positive");
    if (!(c.duration > 0.0)) fail("pulses: duration must be positive");
    c.t0 = rp.contains("delay") ? read_quantity(rp["delay"], Dimension::time, "pulses.delay") / c.duration
                                : read_number(rp["t0"], "pulses.t0");
    c.beam_angle = read_number(rp["beam_angle"], "pulses.beam_angle");
    c.reference_dipole_sq = read_number(rp["reference_dipole_sq"], "pulses.reference_dipole_sq");
    if (!(c.reference_dipole_sq > 0.0)) fail("pulses.reference_dipole_sq must be positive");
    c.pump = read_strength(rp["pump"], "pulses.pump");
    c.probe = read_strength(rp["probe"], "pulses.probe");

    c.model = read_model(r["model"]);

    c.geometry.waist = read_quantity(r["geometry"]["waist"], Dimension::length, "geometry.waist");
    c.geometry.length = read_quantity(r["geometry"]["length"], Dimension::length, "geometry.length");
    c.geometry.density = read_quantity(r["geometry"]["density"], Dimension::density, "geometry.density");
    try {
      c.geometry.validate();
    } catch (const DomainError& e) {
      fail(std::string("geometry: ") + e.what());
    }
    c.radiative_width = read_quantity(r["radiative_width"], Dimension::frequency, "radiative_width");
    if (!(c.radiative_width > 0.0)) fail("radiative_width must be positive");

    c.sweep.var = r["sweep"]["var"].get<std::string>();
    c.sweep.min = read_number(r["sweep"]["min"], "sweep.min");
    c.sweep.max = read_number(r["sweep"]["max"], "sweep.max");
    if (!r["sweep"]["steps"].is_number_integer()) fail("sweep.steps must be an integer");
    c.sweep.steps = r["sweep"]["steps"].get<int>();
    if (std::find(sd.allowed.begin(), sd.allowed.end(), c.sweep.var) == sd.allowed.end()) {
      fail("sweep.var '" + c.sweep.var + "' is not valid for " + command);
    }
    if (c.sweep.steps < 1) fail("sweep.steps must be >= 1");
    if (command == "fig2" && c.sweep.steps < 2) fail("fig2 needs at least 2 steps");
    if (c.sweep.min > c.sweep.max) fail("sweep.min must not exceed sweep.max");
    if (c.sweep.var == "x" && !(c.sweep.min > 1.0)) fail("x range must lie above threshold (x > 1)");
    if ((c.sweep.var == "gamma" || c.sweep.var == "density" || c.sweep.var == "omega") &&
        !(c.sweep.min > 0.0)) {
      fail("sweep." + c.sweep.var + " must be positive");
    }

    for (const auto& route : r["routes"]) {
      const auto name = route.get<std::string>();
      if (name != "time" && name != "frequency" && name != "resonant" && name != "asymptotic" &&
          name != "continuum") {
        fail("unknown route '" + name + "'");
      }
      c.routes.push_back(name);
    }
    if (c.routes.empty()) fail("at least one route is required");
    c.seed = r["seed"].get<std::uint64_t>();
    c.subsample = r["subsample"].get<long>();
    c.direction_samples = r["direction_samples"].get<long>();
    if (c.subsample < 2) fail("subsample must be >= 2");
    if (c.direction_samples < 100) fail("direction_samples must be >= 100");

    c.quadrature.abs_tol = r["quadrature"]["abs_tol"].get<double>();
    c.quadrature.rel_tol = r["quadrature"]["rel_tol"].get<double>();
    c.quadrature.max_subdivisions = r["quadrature"]["max_subdivisions"].get<int>();
    c.quadrature.truncation_sigmas = r["quadrature"]["truncation_sigmas"].get<double>();
    try {
      c.quadrature.validate();
    } catch (const std::invalid_argument& e) {
      fail(std::string("quadrature: ") + e.what());
    }

    c.out_path = o.value("path", std::string());
    c.format = o.value("format", std::string("csv"));
    if (c.format != "csv" && c.format != "json") fail("output.format must be csv or json");
  } catch (const json::exception& e) {
    fail(std::string("config: ") + e.what());
  }
  return c;
}

} // namespace srs
