#include "cli.hpp"

#include "qdeform/error.hpp"
#include "qdeform/io.hpp"
#include "qdeform/oracle.hpp"
#include "qdeform/spectrum.hpp"
#include "qdeform/wavefunction.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <iostream>
#include <sstream>
#include <thread>

namespace qdeform::cli {

unsigned thread_cap() {
  const char *env = std::getenv("QDEFORM_THREADS");
  unsigned n = 0;
  if (env && *env) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0)
      throw ConfigError("QDEFORM_THREADS must be a non-negative integer");
    n = static_cast<unsigned>(v);
  }
  if (n == 0)
    n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  bool verify = false;
  bool show_disputed = false;
  int n_r = 0;
  std::string q_list;
};

// Runs body(i) for i in [0, n) on up to thread_cap() threads. The first
// exception is rethrown on the caller's thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body) {
  const std::size_t workers = std::min<std::size_t>(thread_cap(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread &t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

std::vector<double> parse_q_list(const std::string &text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw ConfigError("--q-list: cannot parse '" + item + "'");
    }
  }
  return out;
}

std::vector<double> q_values(const Options &opt, const RunConfig &cfg,
                             bool fallback_to_config_q) {
  if (!opt.q_list.empty())
    return parse_q_list(opt.q_list);
  if (!cfg.q_list.empty())
    return cfg.q_list;
  if (fallback_to_config_q)
    return {cfg.potential.q};
  return {};
}

PotentialParams with_q(PotentialParams p, double q) {
  p.q = q;
  try {
    p.validate();
  } catch (const DomainError &e) {
    throw ConfigError(std::string("q-list entry: ") + e.what());
  }
  return p;
}

void emit(const Options &opt, const std::string &text, std::ostream &out) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f)
    throw ConfigError("cannot write output '" + opt.out + "'");
  f << text;
}

void check_format(const Options &opt) {
  if (opt.format != "csv" && opt.format != "json")
    throw ConfigError("--format must be csv or json");
}

// Analytic levels for each q, optionally matched against the oracle.
std::vector<SpectrumRow> spectrum_rows(const RunConfig &cfg,
                                       const std::vector<double> &qs,
                                       bool verify, bool disputed) {
  std::vector<std::vector<SpectrumRow>> per_q(qs.size());
  parallel_for(qs.size(), [&](std::size_t i) {
    const PotentialParams p = with_q(cfg.potential, qs[i]);
    const std::vector<EnergyLevel> levels = spectrum(cfg.dirac, p, cfg.solver);
    std::vector<EnergyLevel> oracle;
    if (verify)
      oracle = oracle_spectrum(cfg.dirac, p);
    for (std::size_t k = 0; k < levels.size(); ++k) {
      SpectrumRow row{qs[i], levels[k], std::nullopt};
      if (k < oracle.size())
        row.oracle_energy = oracle[k].energy;
      per_q[i].push_back(row);
    }
    if (disputed && p.regime() == Regime::regular) {
      for (const EnergyLevel &lv : disputed_spectrum(cfg.dirac, p, cfg.solver))
        per_q[i].push_back({qs[i], lv, std::nullopt});
    }
  });
  std::vector<SpectrumRow> rows;
  for (const auto &chunk : per_q)
    rows.insert(rows.end(), chunk.begin(), chunk.end());
  return rows;
}

int cmd_spectrum(const Options &opt, std::ostream &out, std::ostream &err) {
  check_format(opt);
  const RunConfig cfg = load_config(opt.config);
  const std::vector<double> qs = q_values(opt, cfg, true);
  const std::vector<SpectrumRow> rows =
      spectrum_rows(cfg, qs, opt.verify, opt.show_disputed);
  if (rows.empty())
    err << "note: no bound states in the window (C - M, M)\n";
  if (opt.show_disputed)
    err << "note: rows tagged disputed-closed-form apply the q >= 1 formula "
           "at q < 1 and are not valid levels\n";
  emit(opt,
       opt.format == "csv" ? spectrum_csv(rows, opt.verify)
                           : spectrum_json(rows, opt.verify).dump(2) + "\n",
       out);
  return kOk;
}

int cmd_verify(const Options &opt, std::ostream &out, std::ostream &err) {
  check_format(opt);
  const RunConfig cfg = load_config(opt.config);
  const std::vector<double> qs = q_values(opt, cfg, true);
  const std::vector<SpectrumRow> rows = spectrum_rows(cfg, qs, true, false);

  bool ok = true;
  for (double q : qs) {
    const PotentialParams p = with_q(cfg.potential, q);
    const std::size_t analytic = std::count_if(
        rows.begin(), rows.end(), [&](const SpectrumRow &r) { return r.q == q; });
    const std::size_t oracle = oracle_spectrum(cfg.dirac, p).size();
    if (analytic != oracle) {
      err << "q=" << format_number(q) << ": level count " << analytic
          << " (analytic) vs " << oracle << " (oracle)\n";
      ok = false;
    }
  }
  for (const SpectrumRow &r : rows) {
    const double d = r.oracle_delta();
    if (!(d <= 1e-6 * std::fabs(r.level.energy))) {
      err << "q=" << format_number(r.q) << " n_r=" << r.level.n_r
          << ": |E - E_oracle| = " << format_number(d) << "\n";
      ok = false;
    }
  }
  emit(opt,
       opt.format == "csv" ? spectrum_csv(rows, true)
                           : spectrum_json(rows, true).dump(2) + "\n",
       out);
  err << (ok ? "verify: PASS\n" : "verify: FAIL\n");
  return ok ? kOk : kSolverFailure;
}

int cmd_wavefunction(const Options &opt, std::ostream &out, std::ostream &err) {
  check_format(opt);
  const RunConfig cfg = load_config(opt.config);
  if (opt.n_r < 0)
    throw ConfigError("--n-r must be non-negative");
  // polish energies to round-off so F vanishes at the boundary
  SolverConfig solver = cfg.solver;
  solver.tol_e = 1e-15;
  solver.max_levels = std::max(solver.max_levels, opt.n_r + 1);
  const std::vector<EnergyLevel> levels =
      spectrum(cfg.dirac, cfg.potential, solver);
  const auto it = std::find_if(levels.begin(), levels.end(),
                               [&](const EnergyLevel &l) { return l.n_r == opt.n_r; });
  if (it == levels.end()) {
    err << "level n_r=" << opt.n_r << " not found (" << levels.size()
        << " bound states)\n";
    return kLevelNotFound;
  }
  const WavefunctionGrid wf = build_wavefunction(*it, cfg.dirac, cfg.potential);
  const std::size_t stride =
      cfg.export_points == 0 ? 1 : std::max<std::size_t>(1, wf.radii.size() / cfg.export_points);
  emit(opt,
       opt.format == "csv" ? wavefunction_csv(wf, cfg.potential, stride)
                           : wavefunction_json(wf, cfg.potential, stride).dump(2) + "\n",
       out);
  return kOk;
}

int cmd_morse_limit(const Options &opt, std::ostream &out, std::ostream &) {
  check_format(opt);
  const RunConfig cfg = load_config(opt.config);
  const std::vector<double> qs = q_values(opt, cfg, false);
  if (qs.empty())
    throw ConfigError("morse-limit needs a non-empty q list");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!(qs[i] > 0.0 && qs[i] < 1.0))
      throw ConfigError("q list entries must lie in (0, 1)");
    if (i > 0 && !(qs[i] < qs[i - 1]))
      throw ConfigError("q list must be strictly decreasing");
  }

  const PotentialParams morse = with_q(cfg.potential, 0.0);
  const std::vector<EnergyLevel> exact =
      solve_morse_exact(cfg.dirac, morse, cfg.solver);
  auto deviation = [&](const EnergyLevel &lv) -> std::optional<double> {
    for (const EnergyLevel &m : exact)
      if (m.n_r == lv.n_r)
        return std::fabs(lv.energy - m.energy);
    return std::nullopt;
  };

  std::vector<std::vector<EnergyLevel>> per_q(qs.size());
  parallel_for(qs.size(), [&](std::size_t i) {
    per_q[i] = solve_q_lt_1(cfg.dirac, with_q(cfg.potential, qs[i]), cfg.solver);
  });

  std::vector<MorseLimitRow> rows;
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (const EnergyLevel &lv : per_q[i])
      rows.push_back({qs[i], lv, deviation(lv)});
  for (const EnergyLevel &lv : exact)
    rows.push_back({0.0, lv, 0.0});
  for (const EnergyLevel &lv :
       morse_asymptotic_spectrum(cfg.dirac, morse, cfg.solver))
    rows.push_back({0.0, lv, deviation(lv)});

  emit(opt,
       opt.format == "csv" ? morse_limit_csv(rows)
                           : morse_limit_json(rows).dump(2) + "\n",
       out);
  return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Bound states of the Dirac equation with a deformed "
               "generalized Poschl-Teller potential under spin symmetry"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--config", opt.config, "JSON run configuration")
        ->required();
    sub->add_option("--out", opt.out, "output file (default stdout)");
    sub->add_option("--format", opt.format, "csv or json");
    sub->add_option("--q-list", opt.q_list, "comma-separated q values");
  };

  CLI::App *spec = app.add_subcommand("spectrum", "bound-state energies");
  add_common(spec);
  spec->add_flag("--verify", opt.verify, "add |E - E_oracle| per level");
  spec->add_flag("--show-disputed", opt.show_disputed,
                 "append the q >= 1 formula evaluated at q < 1, labeled");

  CLI::App *wave = app.add_subcommand("wavefunction", "normalized F, G on a grid");
  add_common(wave);
  wave->add_option("--n-r", opt.n_r, "radial quantum number");

  CLI::App *morse = app.add_subcommand("morse-limit", "q -> 0 convergence table");
  add_common(morse);

  CLI::App *verify = app.add_subcommand("verify", "analytic vs shooting oracle");
  add_common(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (spec->parsed())
      return cmd_spectrum(opt, out, err);
    if (wave->parsed())
      return cmd_wavefunction(opt, out, err);
    if (morse->parsed())
      return cmd_morse_limit(opt, out, err);
    return cmd_verify(opt, out, err);
  } catch (const ConfigError &e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NoRootError &e) {
    err << "level not found: " << e.what() << "\n";
    return kLevelNotFound;
  } catch (const std::exception &e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }
}

} // namespace qdeform::cli
