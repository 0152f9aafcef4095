#include "qdeform/io.hpp"
#include "qdeform/error.hpp"
#include "qdeform/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdeform {

using nlohmann::json;

namespace {

double number_field(const json &obj, const std::string &section,
                    const std::string &key, std::optional<double> fallback) {
  const std::string name = section + "." + key;
  if (!obj.contains(key)) {
    if (fallback)
      return *fallback;
    throw ConfigError("missing field '" + name + "'");
  }
  const json &v = obj.at(key);
  if (!v.is_number())
    throw ConfigError("field '" + name + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d))
    throw ConfigError("field '" + name + "' must be finite");
  return d;
}

int int_field(const json &obj, const std::string &section,
              const std::string &key, int fallback) {
  if (!obj.contains(key))
    return fallback;
  const json &v = obj.at(key);
  if (!v.is_number_integer())
    throw ConfigError("field '" + section + "." + key + "' must be an integer");
  return v.get<int>();
}

const json &section(const json &j, const std::string &key, bool required) {
  static const json empty = json::object();
  if (!j.contains(key)) {
    if (required)
      throw ConfigError("missing section '" + key + "'");
    return empty;
  }
  const json &s = j.at(key);
  if (!s.is_object())
    throw ConfigError("section '" + key + "' must be an object");
  return s;
}

} // namespace

RunConfig parse_config(const json &j) {
  if (!j.is_object())
    throw ConfigError("config must be a JSON object");
  RunConfig cfg;

  const json &pot = section(j, "potential", true);
  cfg.potential.v1 = number_field(pot, "potential", "v1", std::nullopt);
  cfg.potential.v2 = number_field(pot, "potential", "v2", std::nullopt);
  cfg.potential.alpha = number_field(pot, "potential", "alpha", std::nullopt);
  cfg.potential.q = number_field(pot, "potential", "q", std::nullopt);
  try {
    cfg.potential.validate();
  } catch (const DomainError &e) {
    throw ConfigError(e.what());
  }

  const json &dirac = section(j, "dirac", false);
  cfg.dirac.m = number_field(dirac, "dirac", "m", 1.0);
  cfg.dirac.c_spin = number_field(dirac, "dirac", "c", 0.0);
  try {
    cfg.dirac.validate();
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }

  const json &solver = section(j, "solver", false);
  cfg.solver.scan_points =
      int_field(solver, "solver", "scan_points", cfg.solver.scan_points);
  cfg.solver.tol_e = number_field(solver, "solver", "tol_e", cfg.solver.tol_e);
  cfg.solver.max_levels =
      int_field(solver, "solver", "max_levels", cfg.solver.max_levels);
  cfg.solver.validate();

  const json &out = section(j, "output", false);
  const int export_points = int_field(out, "output", "export_points", 0);
  if (export_points < 0)
    throw ConfigError("field 'output.export_points' must be non-negative");
  cfg.export_points = static_cast<std::size_t>(export_points);

  if (j.contains("q_list")) {
    const json &ql = j.at("q_list");
    if (!ql.is_array())
      throw ConfigError("field 'q_list' must be an array");
    for (const json &v : ql) {
      if (!v.is_number())
        throw ConfigError("field 'q_list' must contain numbers");
      cfg.q_list.push_back(v.get<double>());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error &e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

std::string format_number(double v) {
  if (std::isnan(v))
    return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

double SpectrumRow::oracle_delta() const {
  return oracle_energy ? std::fabs(level.energy - *oracle_energy) : NAN;
}

std::string spectrum_csv(const std::vector<SpectrumRow> &rows, bool verify) {
  std::ostringstream os;
  os << "q,n_r,E,E_tilde,method";
  if (verify)
    os << ",residual_vs_oracle";
  os << '\n';
  for (const SpectrumRow &r : rows) {
    os << format_number(r.q) << ',' << r.level.n_r << ','
       << format_number(r.level.energy) << ','
       << format_number(r.level.e_tilde) << ',' << to_string(r.level.method);
    if (verify)
      os << ',' << format_number(r.oracle_delta());
    os << '\n';
  }
  return os.str();
}

json spectrum_json(const std::vector<SpectrumRow> &rows, bool verify) {
  json levels = json::array();
  for (const SpectrumRow &r : rows) {
    json row = {{"q", r.q},
                {"n_r", r.level.n_r},
                {"E", r.level.energy},
                {"E_tilde", r.level.e_tilde},
                {"method", to_string(r.level.method)}};
    if (verify) {
      row["E_oracle"] = r.oracle_energy ? json(*r.oracle_energy) : json(nullptr);
    }
    levels.push_back(row);
  }
  return {{"verify", verify}, {"levels", levels}};
}

std::vector<SpectrumRow> spectrum_from_json(const json &j) {
  std::vector<SpectrumRow> rows;
  try {
    for (const json &row : j.at("levels")) {
      SpectrumRow r;
      r.q = row.at("q").get<double>();
      r.level.n_r = row.at("n_r").get<int>();
      r.level.energy = row.at("E").get<double>();
      r.level.e_tilde = row.at("E_tilde").get<double>();
      const auto m = method_from_string(row.at("method").get<std::string>());
      if (!m)
        throw ConfigError("unknown method tag");
      r.level.method = *m;
      if (row.contains("E_oracle") && !row.at("E_oracle").is_null())
        r.oracle_energy = row.at("E_oracle").get<double>();
      rows.push_back(r);
    }
  } catch (const json::exception &e) {
    throw ConfigError(std::string("malformed spectrum JSON: ") + e.what());
  }
  return rows;
}

namespace {

double exported_potential(const WavefunctionGrid &wf, std::size_t i,
                          const PotentialParams &p) {
  return potential_from_boundary(wf.mesh.offset(i), p);
}

// every stride-th point, always ending on the last one
std::vector<std::size_t> export_indices(std::size_t n, std::size_t stride) {
  stride = std::max<std::size_t>(stride, 1);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; i += stride)
    idx.push_back(i);
  if (n > 0 && idx.back() != n - 1)
    idx.push_back(n - 1);
  return idx;
}

} // namespace

std::string wavefunction_csv(const WavefunctionGrid &wf,
                             const PotentialParams &p, std::size_t stride) {
  std::ostringstream os;
  os << "r,F,G,potential_value\n";
  for (std::size_t i : export_indices(wf.radii.size(), stride)) {
    os << format_number(wf.radii[i]) << ',' << format_number(wf.f_values[i])
       << ',' << format_number(wf.g_values[i]) << ','
       << format_number(exported_potential(wf, i, p)) << '\n';
  }
  return os.str();
}

json wavefunction_json(const WavefunctionGrid &wf, const PotentialParams &p,
                       std::size_t stride) {
  json r = json::array(), f = json::array(), g = json::array(),
       v = json::array();
  for (std::size_t i : export_indices(wf.radii.size(), stride)) {
    r.push_back(wf.radii[i]);
    f.push_back(wf.f_values[i]);
    g.push_back(wf.g_values[i]);
    v.push_back(exported_potential(wf, i, p));
  }
  return {{"n_r", wf.n_r},         {"E", wf.energy},
          {"norm_constant", wf.norm_constant},
          {"r", r},                {"F", f},
          {"G", g},                {"potential_value", v}};
}

std::string morse_limit_csv(const std::vector<MorseLimitRow> &rows) {
  std::ostringstream os;
  os << "q,method,n_r,E,E_tilde,deviation\n";
  for (const MorseLimitRow &r : rows) {
    os << format_number(r.q) << ',' << to_string(r.level.method) << ','
       << r.level.n_r << ',' << format_number(r.level.energy) << ','
       << format_number(r.level.e_tilde) << ','
       << format_number(r.deviation ? *r.deviation : NAN) << '\n';
  }
  return os.str();
}

json morse_limit_json(const std::vector<MorseLimitRow> &rows) {
  json out = json::array();
  for (const MorseLimitRow &r : rows) {
    out.push_back({{"q", r.q},
                   {"method", to_string(r.level.method)},
                   {"n_r", r.level.n_r},
                   {"E", r.level.energy},
                   {"E_tilde", r.level.e_tilde},
                   {"deviation", r.deviation ? json(*r.deviation) : json(nullptr)}});
  }
  return {{"rows", out}};
}

} // namespace qdeform
