// srs: delay-dependent probe gain from stimulated Rayleigh scattering.

#include "srs/commands.hpp"
#include "srs/errors.hpp"
#include "srs/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kConfigError = 2;
constexpr int kNotConverged = 3;

struct Flags {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> var;
  std::optional<double> min;
  std::optional<double> max;
  std::optional<int> steps;
  std::optional<double> gamma;
  std::optional<std::string> branch;
};

nlohmann::ordered_json overrides_from(const Flags& f) {
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  if (f.out) o["output"]["path"] = *f.out;
  if (f.format) o["output"]["format"] = *f.format;
  if (f.seed) o["seed"] = *f.seed;
  if (f.var) o["sweep"]["var"] = *f.var;
  if (f.min) o["sweep"]["min"] = *f.min;
  if (f.max) o["sweep"]["max"] = *f.max;
  if (f.steps) o["sweep"]["steps"] = *f.steps;
  if (f.gamma) o["model"]["gamma"] = *f.gamma;
  if (f.branch) o["model"]["branch"] = *f.branch;
  return o;
}

int run(const std::string& command, const Flags& flags) {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw srs::ConfigError("cannot open config '" + flags.config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    config = srs::parse_config_text(text.str());
  }
  const auto scenario = srs::resolve_config(command, config, overrides_from(flags));
  const auto table = srs::run_command(scenario);
  const std::string body = scenario.format == "json" ? table.to_json() : table.to_csv();
  if (scenario.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(scenario.out_path, std::ios::binary);
    if (!out) throw srs::ConfigError("cannot write '" + scenario.out_path + "'");
    out << body;
  }
  if (table.has_flagged_rows()) {
    std::cerr << "warning: some rows did not converge or failed a check (see the note column)\n";
    return kNotConverged;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probe gain from stimulated Rayleigh scattering"};
  app.require_subcommand(1);
  Flags flags;

  const std::pair<const char*, const char*> commands[] = {
      {"fig2", "resonant gain function J(t0) at fixed gamma"},
      {"fig3", "carrier dependence of the continuum gain"},
      {"wt", "net single-atom probability along one or more routes"},
      {"gain", "end-to-end gain estimate with every intermediate"},
      {"phasematch", "phase-matching factors and collective width"},
      {"oracle", "route-equivalence checks"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config_path, "JSON scenario file")->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "output path (default stdout)");
    sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--var", flags.var, "sweep variable");
    sub->add_option("--min", flags.min, "sweep start");
    sub->add_option("--max", flags.max, "sweep end");
    sub->add_option("--steps", flags.steps, "number of sweep points");
    sub->add_option("--gamma", flags.gamma, "resonance width times pulse duration");
    sub->add_option("--branch", flags.branch, "delta-potential branch: physical or alternate_sign");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, flags);
  } catch (const srs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const srs::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kConfigError;
  } catch (const srs::ConvergenceError& e) {
    std::cerr << "not converged in " << e.stage() << ": " << e.what() << '\n';
    return kNotConverged;
  }
}
