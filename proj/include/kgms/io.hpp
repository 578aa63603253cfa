#pragma once

// Configuration, solution and Cauchy-data serialization, and the JSON
// report format shared by the CLI subcommands.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgms/kg_solution.hpp"

namespace kgms {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

// Bad configuration or input data (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  LatticeParams lattice;
  double lambda = 1.0;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  // overrides by check name
  std::string output_path;
};

// Unknown keys, wrong types and invalid lattices raise ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& c);

nlohmann::json lattice_to_json(const LatticeParams& p);
LatticeParams lattice_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const Solution& s);
Solution solution_from_json(const nlohmann::json& j);

nlohmann::json complex_list_to_json(std::span<const cplx> v);
CField complex_list_from_json(const nlohmann::json& j);

struct CauchyData {
  RField phi0;
  RField pi0;
};
// Columns: grid index, phi0, pi0; lines starting with '#' and a header row
// are skipped. Every grid index must appear exactly once.
CauchyData read_cauchy_csv(std::istream& in, std::size_t num_points);
void write_cauchy_csv(std::ostream& out, const CauchyData& data);

struct CheckRecord {
  std::string name;
  nlohmann::json lhs;  // number, or [re, im]
  nlohmann::json rhs;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

CheckRecord make_check(std::string name, double lhs, double rhs,
                       double tolerance);
CheckRecord make_check(std::string name, cplx lhs, cplx rhs,
                       double tolerance);

struct Report {
  std::string command;
  std::string suite;
  RunConfig config;
  std::vector<CheckRecord> checks;

  bool all_pass() const;
  // Applies config tolerance overrides, re-evaluates pass and sorts by name.
  // Throws ConfigError for an override naming no check.
  void finalize();
  nlohmann::json to_json() const;
};

// Pretty-printed with a trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace kgms
