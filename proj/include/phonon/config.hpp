#pragma once

// JSON documents for fluid specs and material presets. Parse failures name
// the offending field; files that cannot be opened raise ConfigMissing.
//
//   fluid:    {"units": "natural"|"SI", "hbar": num, "rho0": num, "cS": num}
//   material: {"name": str, "eta": num, "depsdrho": num, "cS": num, "rho0": num, "T": num}

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "phonon/core.hpp"
#include "phonon/scattering.hpp"

namespace phonon {

using json = nlohmann::json;

namespace detail {

inline double number_field(const json& doc, const std::string& key, const std::string& path) {
  const std::string field = path.empty() ? key : path + "." + key;
  if (!doc.contains(key)) throw ConfigError(field, "missing required field");
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(field, "must be finite");
  return d;
}

inline void require_object(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path, "expected a JSON object");
}

inline json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigMissing("cannot open config file " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("", "malformed JSON in " + p.string() + ": " + e.what());
  }
}

}  // namespace detail

inline FluidSpec parse_fluid_spec(const json& doc, const std::string& path = "") {
  detail::require_object(doc, path);
  UnitSystem units = UnitSystem::natural;
  const std::string ufield = path.empty() ? "units" : path + ".units";
  if (doc.contains("units")) {
    const auto& u = doc.at("units");
    if (!u.is_string()) throw ConfigError(ufield, "expected \"natural\" or \"SI\"");
    const auto s = u.get<std::string>();
    if (s == "natural") units = UnitSystem::natural;
    else if (s == "SI") units = UnitSystem::SI;
    else throw ConfigError(ufield, "expected \"natural\" or \"SI\", got \"" + s + "\"");
  }
  auto get = [&](const char* key) {
    if (units == UnitSystem::natural && !doc.contains(key)) return 1.0;
    const double v = detail::number_field(doc, key, path);
    if (!(v > 0.0)) throw ConfigError(path.empty() ? key : path + "." + key, std::string(key) + " must be positive");
    return v;
  };
  const double hbar = get("hbar"), rho0 = get("rho0"), cS = get("cS");
  return make_fluid_spec(hbar, rho0, cS, units);
}

inline json to_json(const FluidSpec& s) {
  return json{{"units", std::string(to_string(s.units))}, {"hbar", s.hbar}, {"rho0", s.rho0}, {"cS", s.cS}};
}

inline FluidSpec load_fluid_spec(const std::filesystem::path& p) { return parse_fluid_spec(detail::read_json_file(p)); }

/// Optical data plus the fluid constants the scattering formulas need.
struct MaterialRecord {
  MaterialOptics optics;
  double cS = 0.0;    // m / s
  double rho0 = 0.0;  // kg / m^3

  /// SI fluid spec for this material.
  FluidSpec fluid() const { return make_fluid_spec(hbar_SI, rho0, cS, UnitSystem::SI); }
};

inline MaterialRecord parse_material(const json& doc, const std::string& path = "") {
  detail::require_object(doc, path);
  MaterialRecord m;
  const std::string nfield = path.empty() ? "name" : path + ".name";
  if (!doc.contains("name")) throw ConfigError(nfield, "missing required field");
  if (!doc.at("name").is_string()) throw ConfigError(nfield, "expected a string");
  m.optics.name = doc.at("name").get<std::string>();
  m.optics.eta = detail::number_field(doc, "eta", path);
  m.optics.depsdrho = detail::number_field(doc, "depsdrho", path);
  m.optics.T = detail::number_field(doc, "T", path);
  m.cS = detail::number_field(doc, "cS", path);
  m.rho0 = detail::number_field(doc, "rho0", path);
  auto field = [&](const char* k) { return path.empty() ? std::string(k) : path + "." + k; };
  if (!(m.optics.eta >= 1.0)) throw ConfigError(field("eta"), "eta must be at least 1");
  if (!(m.optics.depsdrho > 0.0)) throw ConfigError(field("depsdrho"), "depsdrho must be positive");
  if (!(m.optics.T >= 0.0)) throw ConfigError(field("T"), "T must be non-negative");
  if (!(m.cS > 0.0)) throw ConfigError(field("cS"), "cS must be positive");
  if (!(m.rho0 > 0.0)) throw ConfigError(field("rho0"), "rho0 must be positive");
  return m;
}

inline json to_json(const MaterialRecord& m) {
  return json{{"name", m.optics.name}, {"eta", m.optics.eta}, {"depsdrho", m.optics.depsdrho},
              {"cS", m.cS},            {"rho0", m.rho0},      {"T", m.optics.T}};
}

/// A path to a material file, or a preset name resolved as <data_dir>/materials/<name>.json.
inline MaterialRecord load_material(const std::string& name_or_path, const std::filesystem::path& data_dir) {
  std::filesystem::path p(name_or_path);
  if (!std::filesystem::exists(p)) {
    const auto preset = data_dir / "materials" / (name_or_path + ".json");
    if (!std::filesystem::exists(preset))
      throw ConfigMissing("no material file or preset named '" + name_or_path + "'");
    p = preset;
  }
  return parse_material(detail::read_json_file(p));
}

}  // namespace phonon
