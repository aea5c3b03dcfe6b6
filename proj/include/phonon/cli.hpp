#pragma once

// Command-line front end. `run` parses arguments, dispatches to the library,
// and writes one JSON document or a CSV table. Exit codes:
//   0 success, 1 domain error, 2 numerical non-convergence,
//   64 usage error, 65 malformed config, 66 missing config, 70 internal error,
//   73 output file cannot be created.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "phonon/boundaries.hpp"
#include "phonon/config.hpp"
#include "phonon/core.hpp"
#include "phonon/freefield.hpp"
#include "phonon/numerics/fock.hpp"
#include "phonon/parabola.hpp"
#include "phonon/scattering.hpp"
#include "phonon/squeezed.hpp"

#ifndef PHONON_DATA_DIR
#define PHONON_DATA_DIR "data"
#endif

namespace phonon::cli {

enum ExitCode : int {
  ok = 0,
  domain_error = 1,
  numerical_error = 2,
  usage_error = 64,
  config_malformed = 65,
  config_missing = 66,
  internal_error = 70,
  cannot_create = 73,
};

inline constexpr const char* config_env_var = "PHONON_CASIMIR_CONFIG";

struct Column {
  std::string name;
  std::string unit;
};

/// What a subcommand produces: the JSON document and the same numbers as a table.
struct Outcome {
  json doc;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
};

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string to_csv(const Outcome& o) {
  std::ostringstream s;
  for (std::size_t i = 0; i < o.columns.size(); ++i)
    s << (i ? "," : "") << o.columns[i].name << " [" << o.columns[i].unit << "]";
  s << '\n';
  for (const auto& row : o.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << format_number(row[i]);
    s << '\n';
  }
  return s.str();
}

namespace detail {

inline std::string density2_unit(const FluidSpec& spec) {
  return spec.units == UnitSystem::natural ? "natural" : "kg^2/m^6";
}
inline std::string length_unit(const FluidSpec& spec) { return spec.units == UnitSystem::natural ? "natural" : "m"; }

inline json inputs_json(const std::map<std::string, double>& in) {
  json j = json::object();
  for (const auto& [k, v] : in) j[k] = v;
  return j;
}

inline Outcome geometry_outcome(const std::string& command, const FluidSpec& spec, const GeometryResult& r) {
  Outcome o;
  o.doc = {{"command", command},
           {"geometry", std::string(to_string(r.geometry))},
           {"value", r.value},
           {"coefficient", r.coefficient},
           {"scale", r.scale},
           {"units", std::string(to_string(spec.units))},
           {"fluid", to_json(spec)},
           {"inputs", inputs_json(r.inputs)}};
  if (r.error_bound != 0.0) o.doc["error_bound"] = r.error_bound;
  if (!r.warnings.empty()) o.doc["warnings"] = r.warnings;
  const auto u = density2_unit(spec);
  o.columns = {{"value", u}, {"coefficient", "1"}, {"scale", u}};
  o.rows = {{r.value, r.coefficient, r.scale}};
  return o;
}

/// Attach an oracle block and discrepancy_ratio = oracle / value.
inline void attach_oracle(Outcome& o, json oracle, double oracle_value, const std::string& unit) {
  const double printed = o.doc.at("value").get<double>();
  const double ratio = oracle_value / printed;
  oracle["value"] = oracle_value;
  o.doc["oracle"] = std::move(oracle);
  o.doc["discrepancy_ratio"] = ratio;
  o.columns.push_back({"oracle", unit});
  o.columns.push_back({"discrepancy_ratio", "1"});
  for (auto& row : o.rows) {
    row.push_back(oracle_value);
    row.push_back(ratio);
  }
}

/// Result whose value is fixed as coefficient * scale so the pair reconstructs it exactly.
inline Outcome scaled_outcome(const std::string& command, const FluidSpec& spec, double raw, double scale,
                              const std::string& unit, json inputs) {
  const double coefficient = raw / scale;
  Outcome o;
  o.doc = {{"command", command},       {"value", coefficient * scale},
           {"coefficient", coefficient}, {"scale", scale},
           {"units", std::string(to_string(spec.units))}, {"fluid", to_json(spec)},
           {"inputs", std::move(inputs)}};
  o.columns = {{"value", unit}, {"coefficient", "1"}, {"scale", unit}};
  o.rows = {{coefficient * scale, coefficient, scale}};
  return o;
}

inline json table_json(const Outcome& o) {
  json cols = json::array();
  for (const auto& c : o.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
  return {{"columns", cols}, {"rows", o.rows}};
}

}  // namespace detail

/// Fluid from --config, then the environment variable, then natural units.
inline FluidSpec resolve_fluid(const std::string& config_path, const std::optional<std::string>& env_path) {
  if (!config_path.empty()) return load_fluid_spec(config_path);
  if (env_path && !env_path->empty()) return load_fluid_spec(*env_path);
  return natural_units();
}

struct Environment {
  std::optional<std::string> config;  // value of PHONON_CASIMIR_CONFIG
  std::filesystem::path data_dir = PHONON_DATA_DIR;

  static Environment from_process() {
    Environment e;
    if (const char* v = std::getenv(config_env_var)) e.config = std::string(v);
    return e;
  }
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
               const Environment& env = Environment::from_process()) {
  CLI::App app{"Zero-point density fluctuations of a quantized fluid near boundaries", "phonon-casimir"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string config_path, output = "json", out_path;
  app.add_option("--config", config_path, "Fluid spec JSON (falls back to $PHONON_CASIMIR_CONFIG, then natural units)");
  app.add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write the result to this file instead of stdout");

  std::function<Outcome(const FluidSpec&)> action;

  // freespace ---------------------------------------------------------------
  auto* fs = app.add_subcommand("freespace", "Free-space density correlation function");
  struct {
    double dx = 0, dt = 0, eps0 = 0;
    std::string variant = "standard";
    bool oracle = false;
  } fsa;
  fs->add_option("--dx", fsa.dx, "Spatial separation |x - x'|")->required();
  fs->add_option("--dt", fsa.dt, "Time separation t - t'");
  fs->add_option("--variant", fsa.variant, "Denominator form")->check(CLI::IsMember({"printed", "standard"}));
  fs->add_flag("--oracle", fsa.oracle, "Also run the regulated Fourier-integral oracle");
  fs->add_option("--epsilon", fsa.eps0, "First regulator of the eps -> 0 ladder (implies --oracle)");
  fs->callback([&] {
    action = [&](const FluidSpec& spec) {
      const SpacetimeSeparation sep{fsa.dx, fsa.dt};
      const auto variant = fsa.variant == "printed" ? CorrelationVariant::as_printed : CorrelationVariant::standard;
      const double len = std::hypot(sep.dx, spec.cS * sep.dt);
      if (!(len > 0.0)) throw DomainError("separation must be nonzero");
      auto o = detail::scaled_outcome("freespace", spec, correlation(spec, sep, variant), fluctuation_scale(spec, len),
                                      detail::density2_unit(spec),
                                      {{"dx", sep.dx}, {"dt", sep.dt}, {"length_scale", len}});
      o.doc["variant"] = std::string(to_string(variant));
      o.doc["sign_class"] = std::string(to_string(correlation_sign(spec, sep, variant)));
      if (fsa.oracle || fsa.eps0 > 0.0) {
        const auto r = fourier_oracle_extrapolated(spec, sep, 6, fsa.eps0);
        detail::attach_oracle(o,
                              {{"method", "fourier_eps_extrapolation"},
                               {"error_estimate", r.table.error_estimate},
                               {"imaginary", r.imaginary}},
                              r.value, detail::density2_unit(spec));
      }
      return o;
    };
  });

  // squeezed ----------------------------------------------------------------
  auto* sq = app.add_subcommand("squeezed", "Single-mode squeezed vacuum <rho^2>_R");
  struct {
    double r = 0, delta = 0, V = 1, z = 0, t = 0;
    std::optional<double> omega, k;
    int profile = 0, dim = 60;
    bool oracle = false;
  } sqa;
  sq->add_option("--r", sqa.r, "Squeeze magnitude")->required();
  sq->add_option("--delta", sqa.delta, "Squeeze phase");
  sq->add_option("--omega", sqa.omega, "Mode angular frequency (defaults to cS k)");
  sq->add_option("--k", sqa.k, "Mode wavenumber (defaults to omega / cS, or 1)");
  sq->add_option("--V", sqa.V, "Quantization volume");
  sq->add_option("--z", sqa.z, "Position along the mode");
  sq->add_option("--t", sqa.t, "Time");
  sq->add_option("--profile", sqa.profile, "Emit N samples over one period in t instead of a single value");
  sq->add_flag("--oracle", sqa.oracle, "Also evaluate the truncated Fock-space oracle");
  sq->add_option("--dim", sqa.dim, "Starting Fock dimension for the oracle");
  sq->callback([&] {
    action = [&](const FluidSpec& spec) {
      SqueezeState s{sqa.r, sqa.delta, 1.0, 1.0, sqa.V};
      if (sqa.omega && sqa.k) {
        s.omega = *sqa.omega;
        s.k = *sqa.k;
      } else if (sqa.omega) {
        s.omega = *sqa.omega;
        s.k = s.omega / spec.cS;
      } else {
        s.k = sqa.k.value_or(1.0);
        s.omega = spec.cS * s.k;
      }
      const double pref = squeeze_prefactor(spec, s);
      const auto ext = squeezed_extrema(spec, s);
      json inputs = {{"r", s.r}, {"delta", s.delta}, {"omega", s.omega}, {"k", s.k}, {"V", s.V}};
      const auto unit = detail::density2_unit(spec);
      if (sqa.profile > 0) {
        Outcome o;
        const double period = 2.0 * pi / s.omega;
        o.columns = {{"t", spec.units == UnitSystem::natural ? "natural" : "s"}, {"phase", "rad"}, {"value", unit},
                     {"coefficient", "1"}};
        for (int j = 0; j < sqa.profile; ++j) {
          const double t = period * j / sqa.profile;
          const double phase = s.k * sqa.z - s.omega * t;
          const double c = squeezed_shape(s.r, s.delta, phase);
          o.rows.push_back({t, phase, c * pref, c});
        }
        inputs["z"] = sqa.z;
        o.doc = {{"command", "squeezed"}, {"units", std::string(to_string(spec.units))}, {"fluid", to_json(spec)},
                 {"inputs", inputs},      {"scale", pref},   {"average", squeezed_average(spec, s)},
                 {"min", ext.min},        {"max", ext.max}};
        o.doc.update(detail::table_json(o));
        return o;
      }
      inputs["z"] = sqa.z;
      inputs["t"] = sqa.t;
      const double phase = s.k * sqa.z - s.omega * sqa.t;
      auto o = detail::scaled_outcome("squeezed", spec, pref * squeezed_shape(s.r, s.delta, phase), pref, unit, inputs);
      o.doc["phase"] = phase;
      o.doc["average"] = squeezed_average(spec, s);
      o.doc["min"] = ext.min;
      o.doc["max"] = ext.max;
      if (sqa.oracle) {
        numerics::SqueezedFockState st(s.r, s.delta, sqa.dim);
        const double c = st.variance_coefficient(phase);
        detail::attach_oracle(o, {{"method", "fock_space"}, {"dim", st.dim()}}, c * pref, unit);
      }
      return o;
    };
  });

  // plate / plates ----------------------------------------------------------
  auto* pl = app.add_subcommand("plate", "Single Neumann plate");
  double plate_z = 0;
  pl->add_option("--z", plate_z, "Distance from the plate")->required();
  pl->callback([&] {
    action = [&](const FluidSpec& spec) { return detail::geometry_outcome("plate", spec, single_plate(spec, plate_z)); };
  });

  auto* pp = app.add_subcommand("plates", "Two parallel Neumann plates");
  struct {
    double a = 0, z = 0;
    bool image_sum = false;
    int nmax = 2000, profile = 0;
  } ppa;
  pp->add_option("--a", ppa.a, "Plate separation")->required();
  pp->add_option("--z", ppa.z, "Distance from one plate");
  pp->add_flag("--image-sum", ppa.image_sum, "Also evaluate the method-of-images sum");
  pp->add_option("--nmax", ppa.nmax, "Image-sum truncation");
  pp->add_option("--profile", ppa.profile, "Emit N points across the gap instead of a single value");
  pp->callback([&] {
    action = [&](const FluidSpec& spec) {
      const auto unit = detail::density2_unit(spec);
      if (ppa.profile > 0) {
        Outcome o;
        o.columns = {{"z", detail::length_unit(spec)}, {"printed", unit}, {"image_normalized", unit}};
        if (ppa.image_sum) o.columns.push_back({"image_sum", unit});
        for (int j = 0; j < ppa.profile; ++j) {
          const double z = ppa.a * (j + 0.5) / ppa.profile;
          std::vector<double> row{z, parallel_plates_closed(spec, ppa.a, z).value,
                                  parallel_plates_image_normalized(spec, ppa.a, z).value};
          if (ppa.image_sum) row.push_back(parallel_plates_image_sum(spec, ppa.a, z, ppa.nmax).value);
          o.rows.push_back(std::move(row));
        }
        o.doc = {{"command", "plates"},
                 {"units", std::string(to_string(spec.units))},
                 {"fluid", to_json(spec)},
                 {"inputs", {{"a", ppa.a}, {"n_max", ppa.nmax}}}};
        o.doc.update(detail::table_json(o));
        return o;
      }
      auto o = detail::geometry_outcome("plates", spec, parallel_plates_closed(spec, ppa.a, ppa.z));
      if (ppa.image_sum) {
        const auto im = parallel_plates_image_sum(spec, ppa.a, ppa.z, ppa.nmax);
        json block = {{"method", "image_sum"}, {"n_max", ppa.nmax}, {"error_bound", im.error_bound},
                      {"coefficient", im.coefficient}};
        if (!im.warnings.empty()) block["warnings"] = im.warnings;
        detail::attach_oracle(o, block, im.value, unit);
      }
      return o;
    };
  });

  // torus -------------------------------------------------------------------
  auto* to = app.add_subcommand("torus", "Periodic box with sides L1, L2, L3");
  struct {
    double L1 = 0, L2 = 0, L3 = 0, tol = 1e-6;
    int max_shells = 400;
  } toa;
  to->add_option("--L1", toa.L1)->required();
  to->add_option("--L2", toa.L2)->required();
  to->add_option("--L3", toa.L3)->required();
  to->add_option("--tol", toa.tol, "Relative tolerance of the shell sum");
  to->add_option("--max-shells", toa.max_shells);
  to->callback([&] {
    action = [&](const FluidSpec& spec) {
      return detail::geometry_outcome("torus", spec, torus(spec, toa.L1, toa.L2, toa.L3, toa.tol, toa.max_shells));
    };
  });

  // wedge / string ----------------------------------------------------------
  auto* we = app.add_subcommand("wedge", "Wedge of opening angle alpha");
  struct {
    double alpha = 0, r = 0, theta = 0;
    bool oracle = false;
  } wea;
  we->add_option("--alpha", wea.alpha)->required();
  we->add_option("--r", wea.r)->required();
  we->add_option("--theta", wea.theta)->required();
  we->add_flag("--oracle", wea.oracle, "Also run the point-split oracle");
  we->callback([&] {
    action = [&](const FluidSpec& spec) {
      auto o = detail::geometry_outcome("wedge", spec, wedge(spec, wea.alpha, wea.r, wea.theta));
      if (wea.oracle) {
        const auto ps = point_split_oracle(spec, ConicalKind::wedge, wea.alpha, wea.r, wea.theta);
        detail::attach_oracle(o, {{"method", "point_split"}, {"error_estimate", ps.error_estimate}}, ps.value,
                              detail::density2_unit(spec));
      }
      return o;
    };
  });

  auto* st = app.add_subcommand("string", "Cosmic string with angular period alpha");
  struct {
    double alpha = 0, r = 0;
    bool oracle = false;
  } sta;
  st->add_option("--alpha", sta.alpha)->required();
  st->add_option("--r", sta.r)->required();
  st->add_flag("--oracle", sta.oracle, "Also run the point-split oracle");
  st->callback([&] {
    action = [&](const FluidSpec& spec) {
      auto o = detail::geometry_outcome("string", spec, cosmic_string(spec, sta.alpha, sta.r));
      if (sta.oracle) {
        const auto ps = point_split_oracle(spec, ConicalKind::string, sta.alpha, sta.r, 0.5 * sta.alpha);
        detail::attach_oracle(o, {{"method", "point_split"}, {"error_estimate", ps.error_estimate}}, ps.value,
                              detail::density2_unit(spec));
      }
      return o;
    };
  });

  // parabola ----------------------------------------------------------------
  auto* pa = app.add_subcommand("parabola", "Near the focus of a parabolic mirror");
  pa->require_subcommand(1);
  struct {
    double a = 0, b = 0, theta0 = 0, gamma = pi / 2, alpha = 0, max_aspect = 0.01;
    double gmin = 0.3, gmax = 2.0 * pi / 3.0 - 1e-3;
    std::optional<double> rays_b;
    bool cylinder = false;
    int n = 0;
  } paa;
  auto* rho2 = pa->add_subcommand("rho2", "<rho^2>_R at gamma = pi/2");
  rho2->add_option("--a", paa.a, "Distance from the focus")->required();
  rho2->add_option("--b", paa.b, "Twice the focus-to-mirror distance")->required();
  rho2->add_option("--theta0", paa.theta0, "Angular aperture")->required();
  rho2->add_option("--max-aspect", paa.max_aspect, "Upper bound on a/b");
  rho2->add_flag("--cylinder", paa.cylinder, "Parabolic cylinder instead of a paraboloid");
  rho2->callback([&] {
    action = [&](const FluidSpec& spec) {
      const MirrorConfig cfg{paa.a, paa.b, pi / 2, paa.theta0, paa.max_aspect};
      return detail::geometry_outcome("parabola rho2", spec,
                                      rho2_focus(spec, cfg, paa.cylinder ? MirrorShape::cylinder : MirrorShape::revolution));
    };
  });
  auto* rays = pa->add_subcommand("rays", "Conjugate reflected rays and their path difference");
  rays->add_option("--gamma", paa.gamma, "Polar angle of the field point")->required();
  rays->add_option("--alpha", paa.alpha, "First reflected angle")->required();
  rays->add_option("--theta0", paa.theta0, "Angular aperture")->required();
  rays->add_option("--a", paa.a, "Distance from the focus")->required();
  rays->add_option("--b", paa.rays_b, "Mirror scale; when given, the incident angle is reported");
  rays->callback([&] {
    action = [&](const FluidSpec& spec) {
      const double beta = conjugate_angle(paa.gamma, paa.alpha, paa.theta0);
      const auto p = path_difference(paa.a, paa.gamma, paa.alpha, beta);
      json inputs = {{"gamma", paa.gamma}, {"alpha", paa.alpha}, {"theta0", paa.theta0}, {"a", paa.a}};
      auto o = detail::scaled_outcome("parabola rays", spec, p.dl, paa.a, detail::length_unit(spec), inputs);
      o.doc["alpha"] = p.alpha;
      o.doc["beta"] = p.beta;
      o.doc["dl"] = p.dl;
      o.doc["dl1"] = p.dl1;
      o.doc["dl2"] = p.dl2;
      o.doc["dl_expanded"] = p.dl_expanded;
      o.doc["f_residual"] = mirror_f(paa.gamma, beta) - mirror_f(paa.gamma, paa.alpha);
      if (paa.rays_b) {
        if (!(*paa.rays_b > 0.0)) throw DomainError("b must be positive");
        o.doc["inputs"]["b"] = *paa.rays_b;
        o.doc["theta"] = paa.a / *paa.rays_b * mirror_f(paa.gamma, paa.alpha);
      }
      return o;
    };
  });
  auto* gc = pa->add_subcommand("gcurve", "g(theta0) sampled over the aperture range");
  gc->add_option("--n", paa.n, "Number of points")->required()->check(CLI::PositiveNumber);
  gc->add_option("--min", paa.gmin, "Smallest aperture");
  gc->add_option("--max", paa.gmax, "Largest aperture");
  gc->callback([&] {
    action = [&](const FluidSpec& spec) {
      if (!(paa.gmin > 0.0) || !(paa.gmax < 2.0 * pi / 3.0) || !(paa.gmin <= paa.gmax))
        throw DomainError("aperture range must satisfy 0 < min <= max < 2 pi/3");
      Outcome o;
      o.columns = {{"theta0", "rad"}, {"g", "1"}};
      for (int j = 0; j < paa.n; ++j) {
        const double t = paa.n == 1 ? paa.gmin : paa.gmin + (paa.gmax - paa.gmin) * j / (paa.n - 1);
        o.rows.push_back({t, g_closed(t)});
      }
      o.doc = {{"command", "parabola gcurve"},
               {"units", std::string(to_string(spec.units))},
               {"inputs", {{"n", paa.n}, {"min", paa.gmin}, {"max", paa.gmax}}}};
      o.doc.update(detail::table_json(o));
      return o;
    };
  });

  // scattering --------------------------------------------------------------
  auto* sc = app.add_subcommand("scattering", "Zero-point Brillouin scattering and the ratio R");
  struct {
    std::string material;
    double lambda_nm = 0, theta = pi, volume = 1.0, pol_dot = 1.0;
    std::optional<double> T;
    std::string data_dir;
  } sca;
  sc->add_option("--material", sca.material, "Preset name or material JSON file")->required();
  sc->add_option("--lambda-nm", sca.lambda_nm, "Vacuum wavelength of the light in nm")->required();
  sc->add_option("--theta", sca.theta, "Scattering angle");
  sc->add_option("--temperature", sca.T, "Override the material temperature (K)");
  sc->add_option("--volume", sca.volume, "Scattering volume (m^3)");
  sc->add_option("--pol-dot", sca.pol_dot, "Dot product of the polarization vectors");
  sc->add_option("--data-dir", sca.data_dir, "Directory holding materials/<name>.json");
  sc->callback([&] {
    action = [&](const FluidSpec&) {
      const auto m = load_material(sca.material, sca.data_dir.empty() ? env.data_dir : std::filesystem::path(sca.data_dir));
      if (!(sca.lambda_nm > 0.0)) throw DomainError("lambda must be positive");
      auto optics = m.optics;
      if (sca.T) optics.T = *sca.T;
      const FluidSpec spec = m.fluid();
      const auto lc = light_constants(spec.units);
      const ScatteringKinematics kin{2.0 * pi * lc.c / (sca.lambda_nm * 1e-9), sca.theta, sca.volume, sca.pol_dot};
      const double R = thermal_ratio(spec, optics, kin);
      const double Omega = phonon_frequency(spec, optics, kin);
      json inputs = {{"lambda_nm", sca.lambda_nm}, {"theta", sca.theta}, {"volume", sca.volume},
                     {"pol_dot", sca.pol_dot},     {"T", double(optics.T)},      {"omega", kin.omega}};
      auto o = detail::scaled_outcome("scattering", spec, R, 1.0, "1", inputs);
      o.doc["material"] = to_json(m);
      o.doc["material"]["T"] = optics.T;
      o.doc["R"] = R;
      o.doc["dsigma_zp"] = zp_cross_section(spec, optics, kin);
      o.doc["phonon_frequency"] = Omega;
      o.doc["stokes_factor"] = stokes_factor(spec, Omega, optics.T);
      o.doc["total_factor"] = total_factor(spec, Omega, optics.T);
      o.columns = {{"R", "1"}, {"dsigma_zp", "m^2/sr"}, {"stokes_factor", "1"}, {"total_factor", "1"},
                   {"phonon_frequency", "rad/s"}};
      o.rows = {{R, o.doc["dsigma_zp"].get<double>(), o.doc["stokes_factor"].get<double>(),
                 o.doc["total_factor"].get<double>(), Omega}};
      return o;
    };
  });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return usage_error;
  }

  if (!action) {
    err << "error: no subcommand given\n" << app.help();
    return usage_error;
  }

  std::string payload;
  try {
    const FluidSpec spec = resolve_fluid(config_path, env.config);
    const Outcome o = action(spec);
    payload = output == "csv" ? to_csv(o) : o.doc.dump(2) + "\n";
  } catch (const ConfigMissing& e) {
    err << "error: " << e.what() << "\n";
    return config_missing;
  } catch (const ConfigError& e) {
    err << "error: invalid config: " << e.what() << "\n";
    return config_malformed;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return domain_error;
  } catch (const NumericalError& e) {
    err << "error: numerical: " << e.what() << "\n";
    return numerical_error;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return internal_error;
  }

  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << out_path << "\n";
      return cannot_create;
    }
    f << payload;
  } else {
    out << payload;
  }
  return ok;
}

}  // namespace phonon::cli
