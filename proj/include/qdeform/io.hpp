#pragma once
// Run configuration and table output for the command-line front end.
//
// Config is flat JSON with one object per concern:
//
//   {
//     "potential": {"v1": 4, "v2": 3, "alpha": 1, "q": 0.3},
//     "dirac":     {"m": 1, "c": 0},
//     "solver":    {"scan_points": 2000, "tol_e": 1e-10, "max_levels": 64},
//     "output":    {"export_points": 0},
//     "q_list":    [0.1, 0.01, 0.001, 0.0001]
//   }
//
// Only "potential" is required. Energies are in units of M.

#include "qdeform/deformed.hpp"
#include "qdeform/effective.hpp"
#include "qdeform/spectrum.hpp"
#include "qdeform/wavefunction.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qdeform {

struct RunConfig {
  PotentialParams potential;
  DiracConstants dirac;
  SolverConfig solver;
  std::vector<double> q_list;
  std::size_t export_points = 0; //!< 0 exports every mesh point
};

//! Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json &j);
RunConfig load_config(const std::string &path);

//! "%.15g"
std::string format_number(double v);

struct SpectrumRow {
  double q = 0.0;
  EnergyLevel level;
  std::optional<double> oracle_energy;

  //! |E - E_oracle|; NaN when no oracle level was matched.
  double oracle_delta() const;
};

std::string spectrum_csv(const std::vector<SpectrumRow> &rows, bool verify);
nlohmann::json spectrum_json(const std::vector<SpectrumRow> &rows, bool verify);
//! Inverse of spectrum_json; throws ConfigError on malformed input.
std::vector<SpectrumRow> spectrum_from_json(const nlohmann::json &j);

//! Columns r, F, G, potential_value. stride > 1 thins the mesh.
std::string wavefunction_csv(const WavefunctionGrid &wf,
                             const PotentialParams &p, std::size_t stride = 1);
nlohmann::json wavefunction_json(const WavefunctionGrid &wf,
                                 const PotentialParams &p,
                                 std::size_t stride = 1);

struct MorseLimitRow {
  double q = 0.0;  //!< 0 for the Morse rows
  EnergyLevel level;
  std::optional<double> deviation; //!< |E - E_morse_exact| of the same n_r
};

std::string morse_limit_csv(const std::vector<MorseLimitRow> &rows);
nlohmann::json morse_limit_json(const std::vector<MorseLimitRow> &rows);

} // namespace qdeform
