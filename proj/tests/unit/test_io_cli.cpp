#include "cli.hpp"
#include "qdeform/error.hpp"
#include "qdeform/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qdeform;
using nlohmann::json;

namespace {

const std::string kData = QDEFORM_TEST_DATA;

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured run_cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(const json &j) {
  try {
    parse_config(j);
  } catch (const ConfigError &e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("config parsing") {
  const json ok = json::parse(R"({
    "potential": {"v1": 4, "v2": 3, "alpha": 1.5, "q": 0.3},
    "dirac": {"m": 1, "c": 0.1},
    "solver": {"scan_points": 500, "tol_e": 1e-12, "max_levels": 5},
    "output": {"export_points": 200},
    "q_list": [0.1, 0.01]
  })");
  const RunConfig cfg = parse_config(ok);
  CHECK(cfg.potential.alpha == 1.5);
  CHECK(cfg.potential.q == 0.3);
  CHECK(cfg.dirac.c_spin == 0.1);
  CHECK(cfg.solver.scan_points == 500);
  CHECK(cfg.solver.tol_e == 1e-12);
  CHECK(cfg.solver.max_levels == 5);
  CHECK(cfg.export_points == 200);
  CHECK(cfg.q_list == std::vector<double>{0.1, 0.01});

  const RunConfig defaults = parse_config(json::parse(R"({"potential": {"v1": 4, "v2": 3, "alpha": 1, "q": 2}})"));
  CHECK(defaults.dirac.m == 1.0);
  CHECK(defaults.solver.scan_points == 2000);
  CHECK(defaults.q_list.empty());

  json missing = ok;
  missing["potential"].erase("alpha");
  CHECK(config_error(missing).find("potential.alpha") != std::string::npos);

  json wrong_type = ok;
  wrong_type["potential"]["q"] = "two";
  CHECK(config_error(wrong_type).find("potential.q") != std::string::npos);

  json bad_scan = ok;
  bad_scan["solver"]["scan_points"] = 10;
  CHECK(config_error(bad_scan).find("scan_points") != std::string::npos);

  json negative_q = ok;
  negative_q["potential"]["q"] = -1;
  CHECK_FALSE(config_error(negative_q).empty());

  CHECK_FALSE(config_error(json::parse("{}")).empty());
  CHECK_THROWS_AS(load_config(kData + "/does_not_exist.json"), ConfigError);
  CHECK(load_config(kData + "/q03.json").potential.v1 == 30);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_number(-1e-20) == "-1e-20");
  CHECK(format_number(NAN) == "nan");
}

TEST_CASE("spectrum tables") {
  std::vector<SpectrumRow> rows;
  rows.push_back({0.3, {0, -0.5, -0.9, Method::transcendental_q_lt_1}, -0.5 + 2e-12});
  rows.push_back({0.3, {1, 0.25, -0.7, Method::transcendental_q_lt_1}, std::nullopt});
  const std::string plain = spectrum_csv(rows, false);
  CHECK(plain.rfind("q,n_r,E,E_tilde,method\n", 0) == 0);
  CHECK(plain.find("0.3,0,-0.5,-0.9,transcendental-q<1\n") != std::string::npos);

  const std::string verified = spectrum_csv(rows, true);
  CHECK(verified.rfind("q,n_r,E,E_tilde,method,residual_vs_oracle\n", 0) == 0);
  CHECK(verified.find(",nan\n") != std::string::npos);
  CHECK(rows[0].oracle_delta() == doctest::Approx(2e-12).epsilon(1e-3));
  CHECK(std::isnan(rows[1].oracle_delta()));

  // JSON and back gives byte-identical CSV
  const json j = spectrum_json(rows, true);
  CHECK(spectrum_csv(spectrum_from_json(json::parse(j.dump())), true) == verified);
  CHECK_THROWS_AS(spectrum_from_json(json::parse(R"({"levels": [{"q": 1}]})")), ConfigError);
}

TEST_CASE("Morse limit table") {
  std::vector<MorseLimitRow> rows;
  rows.push_back({0.0, {0, 0.6, -0.6, Method::morse_exact}, std::nullopt});
  rows.push_back({0.1, {0, 0.61, -0.58, Method::transcendental_q_lt_1}, 0.01});
  const std::string csv = morse_limit_csv(rows);
  CHECK(csv.rfind("q,method,n_r,E,E_tilde,deviation\n", 0) == 0);
  CHECK(csv.find("0,morse-exact,0,0.6,-0.6,nan\n") != std::string::npos);
  CHECK(csv.find("0.1,transcendental-q<1,0,0.61,-0.58,0.01\n") != std::string::npos);
  CHECK(morse_limit_json(rows)["rows"].size() == 2);
}

TEST_CASE("cli exit codes in process") {
  const std::string q03 = kData + "/q03.json";
  CHECK(run_cli({}).code == cli::kConfigError);
  CHECK(run_cli({"spectrum"}).code == cli::kConfigError);
  CHECK(run_cli({"spectrum", "--config", kData + "/missing_alpha.json"}).code == cli::kConfigError);
  CHECK(run_cli({"spectrum", "--config", q03, "--format", "xml"}).code == cli::kConfigError);
  CHECK(run_cli({"wavefunction", "--config", kData + "/shallow.json", "--n-r", "99"}).code ==
        cli::kLevelNotFound);
  CHECK(run_cli({"morse-limit", "--config", q03}).code == cli::kConfigError);
  CHECK(run_cli({"morse-limit", "--config", q03, "--q-list", "0.1,1.5"}).code == cli::kConfigError);

  const Captured spec = run_cli({"spectrum", "--config", q03});
  REQUIRE(spec.code == cli::kOk);
  CHECK(spec.out.rfind("q,n_r,E,E_tilde,method\n", 0) == 0);
  CHECK(std::count(spec.out.begin(), spec.out.end(), '\n') == 4);

  const Captured js = run_cli({"spectrum", "--config", q03, "--format", "json", "--verify"});
  REQUIRE(js.code == cli::kOk);
  const json parsed = json::parse(js.out);
  CHECK(parsed["levels"].size() == 3);
  for (const auto &l : parsed["levels"])
    CHECK(std::fabs(l["E"].get<double>() - l["E_oracle"].get<double>()) < 1e-8);

  const Captured morse = run_cli({"morse-limit", "--config", q03, "--q-list", "0.1,0.01,0.001,0.0001"});
  REQUIRE(morse.code == cli::kOk);
  CHECK(morse.out.find("morse-exact") != std::string::npos);

  const Captured ver = run_cli({"verify", "--config", q03, "--q-list", "2,0.3,0"});
  CHECK(ver.code == cli::kOk);
}

TEST_CASE("wavefunction export is normalized") {
  const auto path = std::filesystem::temp_directory_path() / "qdeform_wave_test.csv";
  const Captured c = run_cli({"wavefunction", "--config", kData + "/q03.json", "--n-r", "1",
                              "--out", path.string()});
  REQUIRE(c.code == cli::kOk);
  std::istringstream in(read_file(path));
  std::filesystem::remove(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "r,F,G,potential_value");
  std::vector<double> r, f, g;
  while (std::getline(in, line)) {
    double a, b, c2, d;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &c2, &d) == 4);
    r.push_back(a);
    f.push_back(b);
    g.push_back(c2);
  }
  REQUIRE(r.size() > 1000);
  double integral = 0.0, peak = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i)
    integral += 0.5 * (r[i] - r[i - 1]) * (f[i] * f[i] + g[i] * g[i] + f[i - 1] * f[i - 1] + g[i - 1] * g[i - 1]);
  for (double v : f)
    peak = std::max(peak, std::fabs(v));
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::fabs(f.front()) <= 1e-8 * peak);
}

TEST_CASE("thread cap from the environment") {
  ::setenv("QDEFORM_THREADS", "3", 1);
  CHECK(cli::thread_cap() == 3);
  ::setenv("QDEFORM_THREADS", "0", 1);
  CHECK(cli::thread_cap() >= 1);
  ::setenv("QDEFORM_THREADS", "many", 1);
  CHECK_THROWS_AS(cli::thread_cap(), ConfigError);
  ::unsetenv("QDEFORM_THREADS");
  CHECK(cli::thread_cap() >= 1);
}
