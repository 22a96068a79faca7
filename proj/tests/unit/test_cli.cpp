#include "srs/commands.hpp"
#include "srs/errors.hpp"
#include "srs/polarizability.hpp"
#include "srs/scan_table.hpp"
#include "srs/scenario.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace srs;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run srs_cli(const std::string& args) {
  const std::string cmd = std::string(SRS_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const auto p = fs::temp_directory_path() / ("srs_test_" + name);
  std::ofstream(p) << content;
  return p;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

} // namespace

TEST_CASE("defaults are filled per command") {
  const auto c = resolve_config("gain", json::object());
  CHECK(c.duration == doctest::Approx(4134.137).epsilon(1e-6));
  CHECK(c.carrier == doctest::Approx(0.0455634).epsilon(1e-6));
  CHECK(c.geometry.atom_count() == doctest::Approx(1e8).epsilon(1e-9));
  CHECK(c.rabi_tau(c.pump) == 0.01);
  CHECK(c.field_amplitude(c.probe) == doctest::Approx(4.83777e-6).epsilon(1e-5));
  CHECK_FALSE(c.model.gamma.has_value());
  CHECK(c.sweep.values() == std::vector<double>{1.0});

  const auto f2 = resolve_config("fig2", json::object());
  CHECK(*f2.model.gamma == 10.0);
  CHECK(f2.sweep.steps == 161);
  const auto f3 = resolve_config("fig3", json::object());
  CHECK(f3.model.type == "delta");
  CHECK(f3.model.branch == DeltaBranch::physical);
  CHECK(resolve_config("wt", json{{"model", {{"type", "delta"}}}}).routes ==
        std::vector<std::string>{"frequency", "continuum"});
}

TEST_CASE("lab-unit quantities and overrides") {
  const json cfg = json::parse(R"({
    "pulses": {"carrier": {"value": 1.24, "unit": "eV"}, "duration": 200,
               "pump": {"field": {"value": 1e6, "unit": "V/cm"}}, "probe": {"rabi_tau": 0.02}},
    "sweep": {"var": "t0", "min": -1, "max": 1, "steps": 3}, "seed": 4})");
  const auto c = resolve_config("wt", cfg, json{{"seed", 9}, {"sweep", {{"steps", 5}}}});
  CHECK(c.carrier == doctest::Approx(1.24 / 27.211386245988));
  CHECK(c.duration == 200.0);
  CHECK(c.field_amplitude(c.pump) == doctest::Approx(1e8 / 5.14220674763e11));
  CHECK(c.seed == 9);
  CHECK(c.sweep.steps == 5);
  CHECK(c.sweep.values() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
}

TEST_CASE("invalid configurations are rejected") {
  auto bad = [](const std::string& command, const char* text) {
    CHECK_THROWS_AS(resolve_config(command, json::parse(text)), ConfigError);
  };
  bad("wt", R"({"pulses": {"wavelength": 1, "carrier": 1}})");
  bad("wt", R"({"pulses": {"pump": {"rabi_tau": 0.01, "field": 1}}})");
  bad("wt", R"({"pulses": {"duration": {"value": 1, "unit": "cm"}}})");
  bad("wt", R"({"pulses": {"duration": -1}})");
  bad("wt", R"({"geometry": {"density": 0}})");
  bad("wt", R"({"sweep": {"var": "x"}})");
  bad("wt", R"({"sweep": {"min": 2, "max": 1}})");
  bad("fig2", R"({"sweep": {"steps": 1}})");
  bad("fig3", R"({"sweep": {"min": 1.0}})");
  bad("wt", R"({"colour": "red"})");
  bad("wt", R"({"model": {"type": "harmonic"}})");
  bad("wt", R"({"model": {"type": "discrete", "levels": [[0.05, 1]]}})");
  bad("wt", R"({"routes": ["magic"]})");
  bad("wt", R"({"output": {"format": "xml"}})");
  CHECK_THROWS_AS(parse_config_text("{oops"), ConfigError);
}

TEST_CASE("resolved config round-trips") {
  const json cfg = json::parse(R"({"model": {"type": "delta", "x": 1.5}, "sweep": {"steps": 4}})");
  const auto a = resolve_config("wt", cfg);
  const auto b = resolve_config("wt", a.resolved);
  CHECK(a.resolved == b.resolved);
  CHECK(run_command(a).to_csv() == run_command(b).to_csv());
}

TEST_CASE("scan table rendering") {
  ScanTable t({{"t0", "1"}, {"J", "1"}});
  t.metadata()["command"] = "fig2";
  t.add_row({0.5, 0.1});
  t.add_row({1.0, 0.2}, "not converged");
  t.summary()["peak"] = 1.0;
  CHECK(t.to_csv() == "# command: fig2\nt0[1],J[1],note\n0.5,0.1,\n1,0.2,not converged\n# peak: 1.0\n");
  const auto j = json::parse(t.to_json());
  CHECK(j["records"][1]["note"] == "not converged");
  CHECK(j["columns"][1]["name"] == "J");
  CHECK(t.column("J") == std::vector<double>{0.1, 0.2});
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("fig2 and fig3 tables") {
  const auto two = cmd_fig2(resolve_config("fig2", json{{"sweep", {{"steps", 2}}}}));
  CHECK(two.rows().size() == 2);
  const auto one = cmd_fig3(resolve_config("fig3", json{{"sweep", {{"min", 2}, {"max", 2}, {"steps", 1}}}}));
  REQUIRE(one.rows().size() == 1);
  const auto a = delta_a(2.0, DeltaBranch::physical);
  const auto ap = delta_a_prime(2.0, DeltaBranch::physical);
  CHECK(one.rows()[0][1] == doctest::Approx(a.real() * ap.imag() - a.imag() * ap.real()).epsilon(1e-14));
}

TEST_CASE("wt rejects routes that do not fit the model") {
  CHECK_THROWS_AS(cmd_wt(resolve_config("wt", json{{"routes", {"continuum"}}})), ConfigError);
  CHECK_THROWS_AS(cmd_wt(resolve_config("wt", json{{"routes", {"time"}}})), ConfigError);
}

TEST_CASE("gain with zero delay is zero") {
  const auto t = run_command(resolve_config("gain", json{{"pulses", {{"t0", 0.0}}}, {"model", {{"gamma", 10}}}}));
  CHECK(t.column("G")[0] == 0.0);
}

TEST_CASE("command line: output, determinism and exit codes") {
  const auto a = srs_cli("fig2 --steps 21");
  CHECK(a.code == 0);
  CHECK(data_lines(a.out).size() == 22);
  CHECK(data_lines(a.out)[0] == "t0[1],J[1]");
  CHECK(srs_cli("fig2 --steps 21").out == a.out);

  const auto out = fs::temp_directory_path() / "srs_test_out.json";
  CHECK(srs_cli("phasematch --format json --seed 3 --out " + out.string()).code == 0);
  std::ifstream in(out);
  const auto doc = json::parse(in);
  CHECK(doc["metadata"]["command"] == "phasematch");
  CHECK(doc["metadata"]["config"]["seed"] == 3);
  CHECK(doc["records"].size() == 1);

  // The echoed config reproduces the run.
  const auto cfg = temp_file("roundtrip.json", doc["metadata"]["config"].dump());
  const auto again = fs::temp_directory_path() / "srs_test_again.json";
  CHECK(srs_cli("phasematch --format json --config " + cfg.string() + " --out " + again.string()).code == 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  };
  CHECK(slurp(again) == slurp(out));

  CHECK(srs_cli("fig3 --min 0.5").code == 2);
  CHECK(srs_cli("wt --var nonsense").code == 2);
  CHECK(srs_cli("fig2 --unknown-flag").code == 2);
  CHECK(srs_cli("fig2 --config " + temp_file("bad.json", "{").string()).code == 2);
  CHECK(srs_cli("").code == 2);

  const auto starved = temp_file("starved.json", R"({"quadrature": {"max_subdivisions": 1, "rel_tol": 1e-15, "abs_tol": 1e-300}})");
  const auto r = srs_cli("fig2 --steps 3 --config " + starved.string());
  CHECK(r.code == 3);
  CHECK(r.out.find("not converged") != std::string::npos);
  CHECK(srs_cli("oracle").code == 0);
}
