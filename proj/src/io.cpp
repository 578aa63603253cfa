#include "kgms/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace kgms {

using nlohmann::json;

namespace {

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const char* where) {
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

}  // namespace

json lattice_to_json(const LatticeParams& p) {
  return json{{"d", p.d}, {"L", p.L}, {"N", p.N},
              {"n_max", p.n_max}, {"m", p.m}, {"hbar", p.hbar}};
}

LatticeParams lattice_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("lattice: expected an object");
  LatticeParams p;
  if (j.contains("d")) p.d = get_as<int>(j, "d");
  if (j.contains("L")) p.L = get_as<double>(j, "L");
  if (j.contains("N")) p.N = get_as<int>(j, "N");
  if (j.contains("n_max")) p.n_max = get_as<int>(j, "n_max");
  if (j.contains("m")) p.m = get_as<double>(j, "m");
  if (j.contains("hbar")) p.hbar = get_as<double>(j, "hbar");
  try {
    ModeLattice check(p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(j,
                 {"d", "L", "N", "n_max", "m", "hbar", "lambda", "seed",
                  "tolerances", "output_path"},
                 "config");
  RunConfig c;
  json lat = json::object();
  for (const char* k : {"d", "L", "N", "n_max", "m", "hbar"}) {
    if (j.contains(k)) lat[k] = j[k];
  }
  c.lattice = lattice_from_json(lat);
  if (j.contains("lambda")) c.lambda = get_as<double>(j, "lambda");
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("output_path")) c.output_path = get_as<std::string>(j, "output_path");
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("config: tolerances must be an object");
    for (const auto& [name, v] : t.items()) {
      if (!v.is_number()) throw ConfigError("config: tolerance '" + name + "' is not a number");
      const double tol = v.get<double>();
      if (!(tol >= 0.0)) throw ConfigError("config: tolerance '" + name + "' is negative");
      c.tolerances[name] = tol;
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
  json j = lattice_to_json(c.lattice);
  j["lambda"] = c.lambda;
  j["seed"] = c.seed;
  j["tolerances"] = json::object();
  for (const auto& [k, v] : c.tolerances) j["tolerances"][k] = v;
  j["output_path"] = c.output_path;
  return j;
}

json complex_list_to_json(std::span<const cplx> v) {
  json arr = json::array();
  for (const auto& c : v) arr.push_back(json::array({c.real(), c.imag()}));
  return arr;
}

CField complex_list_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected a list of [re, im] pairs");
  CField out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_number()) {
      out.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw ConfigError("expected [re, im] pair, got " + e.dump());
    }
  }
  return out;
}

json solution_to_json(const Solution& s) {
  const ModeLattice& lat = s.lattice();
  return json{{"lattice", lattice_to_json(LatticeParams{lat.dim(), lat.box_length(),
                                                        lat.points_per_axis(), lat.n_max(),
                                                        lat.mass(), lat.hbar()})},
              {"u", complex_list_to_json(s.u())},
              {"ustar", complex_list_to_json(s.ustar())},
              {"real_flag", s.is_real()}};
}

Solution solution_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("solution: expected an object");
  reject_unknown(j, {"lattice", "u", "ustar", "real_flag"}, "solution");
  if (!j.contains("lattice") || !j.contains("u") || !j.contains("ustar")) {
    throw ConfigError("solution: requires lattice, u and ustar");
  }
  const LatticePtr lat = build_lattice(lattice_from_json(j["lattice"]));
  const bool real = j.contains("real_flag") ? get_as<bool>(j, "real_flag") : false;
  try {
    return from_modes(lat, complex_list_from_json(j["u"]),
                      complex_list_from_json(j["ustar"]), real);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

CauchyData read_cauchy_csv(std::istream& in, std::size_t num_points) {
  CauchyData d{RField(num_points), RField(num_points)};
  std::vector<bool> seen(num_points, false);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    long long idx = 0;
    double phi = 0.0, pi = 0.0;
    if (!(ss >> idx)) {
      if (lineno == 1 || std::all_of(seen.begin(), seen.end(), [](bool b) { return !b; })) {
        continue;  // header
      }
      throw ConfigError("cauchy csv: malformed line " + std::to_string(lineno));
    }
    if (!(ss >> phi >> pi)) {
      throw ConfigError("cauchy csv: malformed line " + std::to_string(lineno));
    }
    if (idx < 0 || static_cast<std::size_t>(idx) >= num_points) {
      throw ConfigError("cauchy csv: grid index " + std::to_string(idx) + " out of range");
    }
    if (seen[idx]) {
      throw ConfigError("cauchy csv: duplicate grid index " + std::to_string(idx));
    }
    seen[idx] = true;
    d.phi0[idx] = phi;
    d.pi0[idx] = pi;
  }
  const auto missing = std::count(seen.begin(), seen.end(), false);
  if (missing > 0) {
    throw ConfigError("cauchy csv: " + std::to_string(missing) + " grid points missing");
  }
  return d;
}

void write_cauchy_csv(std::ostream& out, const CauchyData& data) {
  out << "index,phi0,pi0\n";
  out.precision(17);
  for (std::size_t j = 0; j < data.phi0.size(); ++j) {
    out << j << ',' << data.phi0[j] << ',' << data.pi0[j] << '\n';
  }
}

CheckRecord make_check(std::string name, double lhs, double rhs,
                       double tolerance) {
  const double diff = std::abs(lhs - rhs);
  return CheckRecord{std::move(name), lhs, rhs, diff, tolerance, diff <= tolerance};
}

CheckRecord make_check(std::string name, cplx lhs, cplx rhs, double tolerance) {
  const double diff = std::abs(lhs - rhs);
  return CheckRecord{std::move(name),
                     json::array({lhs.real(), lhs.imag()}),
                     json::array({rhs.real(), rhs.imag()}),
                     diff,
                     tolerance,
                     diff <= tolerance};
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

void Report::finalize() {
  for (const auto& [name, tol] : config.tolerances) {
    auto it = std::find_if(checks.begin(), checks.end(),
                           [&](const CheckRecord& c) { return c.name == name; });
    if (it == checks.end()) {
      throw ConfigError("tolerance override for unknown check '" + name + "'");
    }
    it->tolerance = tol;
  }
  for (auto& c : checks) c.pass = std::isfinite(c.abs_diff) && c.abs_diff <= c.tolerance;
  std::sort(checks.begin(), checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

json Report::to_json() const {
  json arr = json::array();
  std::size_t passed = 0;
  for (const auto& c : checks) {
    arr.push_back(json{{"name", c.name},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"abs_diff", c.abs_diff},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    if (c.pass) ++passed;
  }
  json j{{"schema_version", kSchemaVersion},
         {"tool", "kgms"},
         {"version", kVersion},
         {"command", command},
         {"config", config_to_json(config)},
         {"checks", arr},
         {"summary", json{{"total", checks.size()},
                          {"passed", passed},
                          {"failed", checks.size() - passed}}},
         {"pass", all_pass()}};
  if (!suite.empty()) j["suite"] = suite;
  return j;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace kgms
