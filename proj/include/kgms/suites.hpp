#pragma once

// Verification suites behind the CLI: each check compares two independently
// computed numbers at a tolerance. Lower bounds (a quantity that must stay
// above a threshold) are encoded as "<name>_shortfall" checks with
// lhs = max(0, threshold - value), rhs = 0, tolerance 0.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kgms/io.hpp"

namespace kgms {

using Rng = std::mt19937_64;

// Gaussian mode coefficients with amplitude 1 / (1 + |n|^2).
Solution random_solution(const LatticePtr& lat, Rng& rng, bool real = true);
CField random_modes(std::size_t count, Rng& rng);

const std::vector<std::string>& suite_names();  // msymp, observables, ...

// Throws ConfigError for an unknown suite name.
Report run_suite(const RunConfig& config, const std::string& suite);

// Row per bracket identity (not aggregated).
Report bracket_table(const RunConfig& config);

struct SimulateOptions {
  double t_final = 10.0;
  int n_out = 101;
  std::optional<double> leapfrog_dt;
};

struct SimulateResult {
  std::string csv;
  Report report;  // conservation checks
};

SimulateResult simulate(const RunConfig& config, const Solution& sol,
                        const SimulateOptions& opts);

struct PrequantResult {
  Report report;              // commutator table
  std::string spectrum_csv;   // multi-index, eigenvalue, energy
  nlohmann::json spectrum;
};

PrequantResult prequant_table(const RunConfig& config, const CField& f,
                              const CField& g, int degree);

}  // namespace kgms
