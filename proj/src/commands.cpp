#include "srs/commands.hpp"

#include "srs/constants.hpp"
#include "srs/errors.hpp"
#include "srs/phasematch.hpp"
#include "srs/rayleigh.hpp"
#include "srs/units.hpp"

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace srs {

using json = nlohmann::ordered_json;

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double to_fs(double t) { return from_atomic(t, LabUnit::femtosecond).value; }
double to_per_s(double rate) { return from_atomic(rate, LabUnit::per_second).value; }
double to_per_cm3(double n) { return from_atomic(n, LabUnit::per_cm3).value; }

/// Maximizes f on [lo, hi] by Brent's method.
std::pair<double, double> refine_max(const std::function<double(double)>& f, double lo, double hi) {
  const auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, lo, hi, 40);
  return {r.first, -r.second};
}

/// Grid argmax of `y`, refined on the neighbouring cells.
json grid_peak(const std::vector<double>& x, const std::vector<double>& y,
               const std::function<double(double)>& f) {
  const auto i = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  json out;
  out["grid_argmax"] = x[i];
  out["grid_max"] = y[i];
  if (x.size() >= 3 && i > 0 && i + 1 < x.size()) {
    const auto [xm, ym] = refine_max(f, x[i - 1], x[i + 1]);
    out["argmax"] = xm;
    out["max"] = ym;
  } else {
    out["argmax"] = x[i];
    out["max"] = y[i];
  }
  return out;
}

double scaled_gamma(const ScenarioConfig& c) {
  if (c.model.type == "lorentzian") {
    if (c.model.gamma) return *c.model.gamma;
    if (c.model.width) return *c.model.width * c.duration;
  }
  return 10.0;
}

struct RowModel {
  PulsePair pair;
  PolarizabilityModel model;
  double gamma = nan;
};

/// Pulse pair and model for one sweep point of `wt`.
RowModel build_row(const ScenarioConfig& c, double v) {
  const std::string& var = c.sweep.var;
  ScenarioConfig row = c;
  double t0 = c.t0;
  if (var == "t0") t0 = v;
  if (var == "omega") row.carrier = v;
  RowModel out;
  out.pair = row.pulse_pair(t0);
  if (c.model.type == "lorentzian") {
    double width = c.model.width ? *c.model.width : scaled_gamma(c) / c.duration;
    if (var == "gamma") width = v / c.duration;
    out.gamma = width * c.duration;
    out.model = ResonantLorentzian{c.carrier, c.model.dipole_sq, width};
  } else if (c.model.type == "delta") {
    double eb = c.model.binding_energy ? *c.model.binding_energy : c.carrier / *c.model.x;
    if (var == "x") eb = c.carrier / v;
    out.model = DeltaPotential{eb, c.model.branch};
  } else {
    out.model = DiscreteLevels{c.model.levels, c.model.broadening};
  }
  return out;
}

void check_route(const ScenarioConfig& c, const std::string& route) {
  const auto& type = c.model.type;
  const bool ok = route == "frequency" || (route == "time" && type == "discrete") ||
                  ((route == "resonant" || route == "asymptotic") && type == "lorentzian") ||
                  (route == "continuum" && type == "delta");
  if (!ok) throw ConfigError(fmt::format("route '{}' does not apply to the {} model", route, type));
  if ((route == "resonant" || route == "asymptotic") && c.sweep.var == "omega") {
    throw ConfigError("the closed-form resonant routes need the carrier on resonance; sweep t0 or gamma");
  }
  if (c.sweep.var == "gamma" && type != "lorentzian") throw ConfigError("gamma sweeps need the lorentzian model");
  if (c.sweep.var == "x" && type != "delta") throw ConfigError("x sweeps need the delta model");
}

ResonantParams resonant_params(const ScenarioConfig& c, const RowModel& row) {
  ResonantParams p;
  p.t0 = row.pair.probe.delay / row.pair.probe.duration;
  p.gamma = row.gamma;
  p.pump_rabi_tau = c.rabi_tau(c.pump);
  p.probe_rabi_tau = c.rabi_tau(c.probe);
  return p;
}

Probability route_value(const ScenarioConfig& c, const RowModel& row, const std::string& route) {
  if (route == "time") return net_probability(row.pair, row.model, Route::time, c.quadrature);
  if (route == "frequency") return net_probability(row.pair, row.model, Route::frequency, c.quadrature);
  if (route == "resonant") return w_T_resonant(resonant_params(c, row), c.quadrature);
  if (route == "asymptotic") return {w_T_asymptotic(resonant_params(c, row)), 0.0, true};
  return {w_T_continuum(row.pair, std::get<DeltaPotential>(row.model)), 0.0, true};
}

Eigen::Index subsample_size(const ScenarioConfig& c, const EnsembleGeometry& g) {
  return g.atom_count() <= static_cast<double>(c.subsample) ? 0 : static_cast<Eigen::Index>(c.subsample);
}

/// Runs `stage`, prefixing any domain failure with the stage name.
template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw DomainError(fmt::format("{}: {}", name, e.what()));
  }
}

} // namespace

ScanTable cmd_fig2(const ScenarioConfig& c) {
  const double gamma = scaled_gamma(c);
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  ScanTable table({{"t0", "1"}, {"J", "1"}});
  std::vector<double> xs, ys;
  for (double t0 : c.sweep.values()) {
    const auto j = J_resonant(t0, gamma, c.quadrature);
    table.add_row({t0, j.value}, j.converged ? "" : fmt::format("quadrature not converged (error {})", j.error));
    xs.push_back(t0);
    ys.push_back(j.value);
  }
  table.summary()["gamma"] = gamma;
  table.summary()["peak"] = grid_peak(xs, ys, [&](double t) { return J_resonant(t, gamma, c.quadrature).value; });
  return table;
}

ScanTable cmd_fig3(const ScenarioConfig& c) {
  const DeltaPotential model{1.0, c.model.branch};
  ScanTable table({{"x", "1"}, {"weight", "1"}});
  std::vector<double> xs, ys;
  for (double x : c.sweep.values()) {
    const double w = fig3_weight(model, x);
    table.add_row({x, w});
    xs.push_back(x);
    ys.push_back(w);
  }
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    if (ys[i] > ys[i - 1] && ys[i] >= ys[i + 1]) ++maxima;
  }
  table.summary()["branch"] = c.model.branch == DeltaBranch::physical ? "physical" : "alternate_sign";
  table.summary()["peak"] = grid_peak(xs, ys, [&](double x) { return fig3_weight(model, x); });
  table.summary()["interior_local_maxima"] = maxima;
  return table;
}

ScanTable cmd_wt(const ScenarioConfig& c) {
  for (const auto& r : c.routes) check_route(c, r);
  const std::string& var = c.sweep.var;
  std::vector<Column> cols;
  if (var == "t0") {
    cols = {{"t0", "1"}, {"delay", "fs"}};
  } else if (var == "omega") {
    cols = {{"omega", "hartree"}};
  } else {
    cols = {{var, "1"}};
  }
  for (const auto& r : c.routes) cols.push_back({"w_T_" + r, "1"});
  for (std::size_t i = 1; i < c.routes.size(); ++i) cols.push_back({"rel_dev_" + c.routes[i], "1"});

  // First pass collects values so the deviation floor can use the sweep peak.
  const auto values = c.sweep.values();
  std::vector<std::vector<double>> w(values.size());
  std::vector<std::string> notes(values.size());
  bool expansion_ok = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const RowModel row = stage("model", [&] { return build_row(c, values[i]); });
    for (const auto& r : c.routes) {
      const auto p = stage(r.c_str(), [&] { return route_value(c, row, r); });
      w[i].push_back(p.value);
      if (!p.converged) notes[i] += (notes[i].empty() ? "" : "; ") + r + " route not converged";
    }
    if (const auto* d = std::get_if<DeltaPotential>(&row.model)) {
      expansion_ok = expansion_ok && continuum_expansion_valid(row.pair, *d);
    }
  }
  double peak = 0.0;
  for (const auto& r : w) peak = std::max(peak, std::abs(r[0]));

  ScanTable table(cols);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<double> rec;
    if (var == "t0") {
      rec = {values[i], to_fs(values[i] * c.duration)};
    } else {
      rec = {values[i]};
    }
    rec.insert(rec.end(), w[i].begin(), w[i].end());
    for (std::size_t k = 1; k < w[i].size(); ++k) {
      const double scale = std::max({std::abs(w[i][0]), std::abs(w[i][k]), 1e-6 * peak});
      rec.push_back(scale > 0.0 ? std::abs(w[i][k] - w[i][0]) / scale : 0.0);
    }
    table.add_row(rec, notes[i]);
  }
  table.summary()["model"] = c.model.type;
  if (c.model.type == "lorentzian") table.summary()["gamma"] = scaled_gamma(c);
  if (c.model.type == "delta") table.summary()["linear_expansion_valid"] = expansion_ok;
  table.summary()["rel_dev_floor"] = 1e-6 * peak;
  return table;
}

ScanTable cmd_gain(const ScenarioConfig& c) {
  const bool collective = c.model.type == "lorentzian" && !c.model.width && !c.model.gamma;
  std::vector<Column> cols = {{"t0", "1"}, {"delay", "fs"}, {"density", "cm-3"}, {"N_a", "1"}, {"F_over_Na", "1"}};
  if (c.model.type == "lorentzian") {
    if (collective) {
      cols.push_back({"F_sp", "sr"});
      cols.push_back({"F_sp_err", "sr"});
      cols.push_back({"Gamma_shortcut", "s-1"});
    }
    cols.push_back({"Gamma", "s-1"});
    cols.push_back({"gamma", "1"});
  } else if (c.model.type == "delta") {
    cols.push_back({"x", "1"});
  }
  cols.push_back({"w_T", "1"});
  cols.push_back({"G", "1"});
  ScanTable table(cols);

  const auto values = c.sweep.values();
  std::string route;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double t0 = c.sweep.var == "t0" ? values[i] : c.t0;
    EnsembleGeometry g = c.geometry;
    if (c.sweep.var == "density") g.density = values[i];
    const PulsePair pair = c.pulse_pair(t0);
    const double n_a = g.atom_count();
    const auto sub = subsample_size(c, g);

    const double F = stage("phase matching", [&] {
      const auto atoms = sample_positions(g, sub, RngStream(c.seed, 2 * i));
      return F_factor(atoms, wave_vector_mismatch(pair));
    });
    std::vector<double> rec = {t0, to_fs(t0 * c.duration), to_per_cm3(g.density), n_a, F / n_a};

    double w_T = 0.0;
    std::string note;
    if (c.model.type == "lorentzian") {
      double width = 0.0;
      if (collective) {
        const auto est = stage("collective width", [&] {
          return effective_width(g, pair.pump.carrier / constants::speed_of_light_au, c.radiative_width, sub,
                                 c.direction_samples, RngStream(c.seed, i));
        });
        width = est.width;
        rec.insert(rec.end(), {est.f_sp.value, est.f_sp.standard_error, to_per_s(est.shortcut)});
        if (!est.f_sp.converged) note = "F_sp not converged";
      } else {
        width = c.model.width ? *c.model.width : *c.model.gamma / c.duration;
      }
      ResonantParams p{t0, width * c.duration, c.rabi_tau(c.pump), c.rabi_tau(c.probe)};
      const auto w = stage("w_T", [&] { return w_T_resonant(p, c.quadrature); });
      if (!w.converged) note = "w_T quadrature not converged";
      w_T = w.value;
      rec.insert(rec.end(), {to_per_s(width), p.gamma});
      route = "resonant";
    } else if (c.model.type == "delta") {
      const double eb = c.model.binding_energy ? *c.model.binding_energy : c.carrier / *c.model.x;
      const DeltaPotential model{eb, c.model.branch};
      rec.push_back(c.carrier / eb);
      if (continuum_expansion_valid(pair, model)) {
        w_T = stage("w_T", [&] { return w_T_continuum(pair, model); });
        route = "continuum";
      } else {
        const auto w = stage("w_T", [&] { return net_probability(pair, model, Route::frequency, c.quadrature); });
        if (!w.converged) note = "w_T quadrature not converged";
        w_T = w.value;
        route = "frequency";
      }
    } else {
      const auto w = stage("w_T", [&] {
        return net_probability(pair, DiscreteLevels{c.model.levels, c.model.broadening}, Route::frequency,
                               c.quadrature);
      });
      if (!w.converged) note = "w_T quadrature not converged";
      w_T = w.value;
      route = "frequency";
    }
    const double G = stage("gain", [&] { return gain(w_T, g, pair.probe, F / n_a); });
    rec.insert(rec.end(), {w_T, G});
    table.add_row(rec, note);
  }
  table.summary()["model"] = c.model.type;
  table.summary()["w_T_route"] = route;
  table.summary()["pump_rabi_tau"] = c.rabi_tau(c.pump);
  table.summary()["probe_rabi_tau"] = c.rabi_tau(c.probe);
  table.summary()["probe_field_au"] = c.field_amplitude(c.probe);
  table.summary()["coherence_parameter"] =
      coherence_parameter(c.geometry, wave_vector_mismatch(c.pulse_pair()));
  return table;
}

ScanTable cmd_phasematch(const ScenarioConfig& c) {
  ScanTable table({{"beam_angle", "rad"},
                   {"density", "cm-3"},
                   {"N_a", "1"},
                   {"F", "1"},
                   {"F_over_Nsq", "1"},
                   {"coherence_parameter", "1"},
                   {"F_sp", "sr"},
                   {"F_sp_err", "sr"},
                   {"F_sp_ratio", "1"},
                   {"Gamma", "s-1"},
                   {"Gamma_shortcut", "s-1"}});
  const auto values = c.sweep.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    ScenarioConfig row = c;
    if (c.sweep.var == "beam_angle") row.beam_angle = values[i];
    if (c.sweep.var == "density") row.geometry.density = values[i];
    const EnsembleGeometry& g = row.geometry;
    const PulsePair pair = row.pulse_pair();
    const Eigen::Vector3d dk = wave_vector_mismatch(pair);
    const double n_a = g.atom_count();
    const auto sub = subsample_size(c, g);
    const double k = pair.pump.carrier / constants::speed_of_light_au;

    const auto atoms = stage("positions", [&] { return sample_positions(g, sub, RngStream(c.seed, 2 * i)); });
    const double F = F_factor(atoms, dk);
    const auto est = stage("collective width", [&] {
      return effective_width(g, k, c.radiative_width, sub, c.direction_samples, RngStream(c.seed, i));
    });
    const double ratio = g.waist / g.length;
    table.add_row({row.beam_angle, to_per_cm3(g.density), n_a, F, F / (n_a * n_a), coherence_parameter(g, dk),
                   est.f_sp.value, est.f_sp.standard_error, est.f_sp.value / (ratio * ratio * n_a * n_a),
                   to_per_s(est.width), to_per_s(est.shortcut)},
                  est.f_sp.converged ? "" : "F_sp not converged");
  }
  const double n = static_cast<double>(subsample_size(c, c.geometry));
  table.summary()["subsample"] = n > 0 ? n : c.geometry.atom_count();
  table.summary()["direction_samples"] = c.direction_samples;
  return table;
}

ScanTable cmd_oracle(const ScenarioConfig& c) {
  ScanTable table({{"check", "1"},
                   {"t0", "1"},
                   {"gamma", "1"},
                   {"reference", "1"},
                   {"candidate", "1"},
                   {"rel_dev", "1"},
                   {"tolerance", "1"}});

  // One-level atom, omega0 * tau = 50: time-domain vs spectral amplitudes.
  const double tau = 100.0;
  const double w0 = 0.5;
  const double gamma_a = 10.0;
  const DiscreteLevels one_level{{{w0, 1.0}}, 0.5 * gamma_a / tau};
  const double amp = 0.2 / tau;
  for (double t0 : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const PulsePair pair{{amp, w0, tau, 0.0, Eigen::Vector3d::UnitZ()},
                         {amp, w0, tau, t0 * tau, Eigen::Vector3d::UnitZ()}};
    const auto f = amplitudes_frequency_domain(pair, one_level, c.quadrature);
    const auto t = amplitudes_time_domain(pair, one_level);
    const double fe = std::abs(f.emission), te = std::abs(t.emission);
    const double fa = std::abs(f.absorption), ta = std::abs(t.absorption);
    const double de = std::abs(te - fe) / fe;
    const double da = std::abs(ta - fa) / fa;
    table.add_row({0, t0, gamma_a, fe, te, de, 1e-3}, de <= 1e-3 && t.converged ? "" : "FAIL");
    table.add_row({1, t0, gamma_a, fa, ta, da, 1e-3}, da <= 1e-3 && t.converged ? "" : "FAIL");
  }

  // Lorentzian: spectral quadrature vs closed-form w_T.
  const std::pair<double, double> points[] = {{1, 10},  {0.5, 10}, {2, 10},   {1, 30}, {1, 100},
                                              {1, 1},   {1, 0.5},  {0.5, 3},  {2, 3},  {3, 10}};
  for (const auto& [t0, gamma] : points) {
    const ResonantParams p{t0, gamma, 0.1, 0.1};
    const auto setup = resonant_setup(p, tau, w0);
    const auto ref = w_T_resonant(p, c.quadrature);
    const auto cand = net_probability(setup.pair, setup.model, Route::frequency, c.quadrature);
    const double dev = std::abs(cand.value - ref.value) / std::abs(ref.value);
    table.add_row({2, t0, gamma, ref.value, cand.value, dev, 1e-4},
                  dev <= 1e-4 && ref.converged && cand.converged ? "" : "FAIL");
  }
  table.summary()["checks"] = table.rows().size();
  table.summary()["passed"] = !table.has_flagged_rows();
  return table;
}

ScanTable run_command(const ScenarioConfig& c) {
  ScanTable table = [&] {
    if (c.command == "fig2") return cmd_fig2(c);
    if (c.command == "fig3") return cmd_fig3(c);
    if (c.command == "wt") return cmd_wt(c);
    if (c.command == "gain") return cmd_gain(c);
    if (c.command == "phasematch") return cmd_phasematch(c);
    if (c.command == "oracle") return cmd_oracle(c);
    throw ConfigError("unknown command '" + c.command + "'");
  }();
  json meta;
  meta["command"] = c.command;
  meta["config_hash"] = fnv1a_hex(c.resolved.dump());
  meta["config"] = c.resolved;
  table.metadata() = meta;
  return table;
}

} // namespace srs
