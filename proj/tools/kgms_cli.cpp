// kgms: command-line front end.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kgms/io.hpp"
#include "kgms/suites.hpp"

namespace {

using kgms::ConfigError;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string suite = "all";
  std::optional<double> lambda;
  std::vector<std::string> tols;

  // simulate
  std::string cauchy_path;
  std::string solution_path;
  double t_final = 10.0;
  int n_out = 101;
  std::optional<double> leapfrog_dt;
  std::string report_path;

  // prequant
  std::string fg_path;
  int degree = 2;
  std::string spectrum_path;
};

kgms::RunConfig resolve(const Options& o) {
  kgms::RunConfig c = o.config_path.empty() ? kgms::RunConfig{} : kgms::load_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (o.lambda) c.lambda = *o.lambda;
  if (!o.out.empty()) c.output_path = o.out;
  for (const auto& t : o.tols) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--tol expects NAME=VALUE, got '" + t + "'");
    }
    const std::string name = t.substr(0, eq);
    const std::string value = t.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw ConfigError("--tol " + name + ": '" + value + "' is not a number");
    }
    if (!(v >= 0.0)) throw ConfigError("--tol " + name + ": tolerance must be >= 0");
    c.tolerances[name] = v;
  }
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

int finish(const kgms::Report& r) {
  if (!r.all_pass()) {
    for (const auto& c : r.checks) {
      if (!c.pass) {
        std::cerr << "FAIL " << c.name << ": abs_diff " << c.abs_diff << " > tolerance "
                  << c.tolerance << "\n";
      }
    }
    return 1;
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const kgms::RunConfig c = resolve(o);
  const kgms::Report r = kgms::run_suite(c, o.suite);
  emit(c.output_path, kgms::dump_json(r.to_json()));
  return finish(r);
}

int cmd_brackets(const Options& o) {
  const kgms::RunConfig c = resolve(o);
  const kgms::Report r = kgms::bracket_table(c);
  emit(c.output_path, kgms::dump_json(r.to_json()));
  return finish(r);
}

int cmd_simulate(const Options& o) {
  const kgms::RunConfig c = resolve(o);
  const kgms::LatticePtr lat = kgms::build_lattice(c.lattice);
  std::optional<kgms::Solution> sol;
  if (!o.cauchy_path.empty() && !o.solution_path.empty()) {
    throw ConfigError("simulate: give either --cauchy or --solution, not both");
  }
  if (!o.cauchy_path.empty()) {
    std::ifstream in(o.cauchy_path);
    if (!in) throw ConfigError("cannot open '" + o.cauchy_path + "'");
    const kgms::CauchyData d = kgms::read_cauchy_csv(in, lat->num_points());
    try {
      sol = kgms::from_cauchy(lat, d.phi0, d.pi0);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (!o.solution_path.empty()) {
    sol = kgms::solution_from_json(read_json(o.solution_path));
  } else {
    kgms::Rng rng(c.seed);
    sol = kgms::random_solution(lat, rng);
  }
  const kgms::SimulateResult res =
      kgms::simulate(c, *sol, kgms::SimulateOptions{o.t_final, o.n_out, o.leapfrog_dt});
  emit(c.output_path, res.csv);
  if (!o.report_path.empty()) emit(o.report_path, kgms::dump_json(res.report.to_json()));
  return finish(res.report);
}

int cmd_prequant(const Options& o) {
  const kgms::RunConfig c = resolve(o);
  const std::size_t modes = kgms::build_lattice(c.lattice)->num_modes();
  kgms::CField f, g;
  if (!o.fg_path.empty()) {
    const nlohmann::json j = read_json(o.fg_path);
    if (!j.is_object() || !j.contains("f") || !j.contains("g")) {
      throw ConfigError(o.fg_path + ": expected {\"f\": [...], \"g\": [...]}");
    }
    f = kgms::complex_list_from_json(j["f"]);
    g = kgms::complex_list_from_json(j["g"]);
  } else {
    kgms::Rng rng(c.seed);
    f = kgms::random_modes(modes, rng);
    g = kgms::random_modes(modes, rng);
  }
  const kgms::PrequantResult res = kgms::prequant_table(c, f, g, o.degree);
  nlohmann::json j = res.report.to_json();
  j["degree"] = o.degree;
  j["spectrum"] = res.spectrum;
  emit(c.output_path, kgms::dump_json(j));
  if (!o.spectrum_path.empty()) emit(o.spectrum_path, res.spectrum_csv);
  return finish(res.report);
}

int cmd_spec(const Options& o) {
  const kgms::RunConfig c = resolve(o);
  nlohmann::json j{{"schema_version", kgms::kSchemaVersion},
                   {"version", kgms::kVersion},
                   {"config", kgms::config_to_json(c)},
                   {"suites", kgms::suite_names()}};
  std::cout << kgms::dump_json(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multisymplectic Klein-Gordon verification toolkit"};
  app.set_version_flag("--version", kgms::kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config_path, "JSON run configuration");
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--suite", o.suite, "msymp, observables, phase-space, prequant or all");
  app.add_option("--lambda", o.lambda, "theta_lambda parameter");
  app.add_option("--tol", o.tols, "NAME=V tolerance override (repeatable)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  auto* simulate = app.add_subcommand("simulate", "time series of conserved quantities");
  simulate->add_option("--cauchy", o.cauchy_path, "Cauchy data CSV (index, phi0, pi0)");
  simulate->add_option("--solution", o.solution_path, "solution JSON");
  simulate->add_option("--t-final", o.t_final, "final time");
  simulate->add_option("--n-out", o.n_out, "number of output times");
  simulate->add_option("--leapfrog-dt", o.leapfrog_dt, "also run leapfrog at this step");
  simulate->add_option("--report", o.report_path, "conservation check report (JSON)");
  auto* brackets = app.add_subcommand("brackets", "bracket identity table");
  auto* prequant = app.add_subcommand("prequant", "prequantum operator checks and spectrum");
  prequant->add_option("--fg", o.fg_path, "JSON {f: [[re,im]...], g: [...]}");
  prequant->add_option("--degree", o.degree, "monomial degree for the spectrum");
  prequant->add_option("--spectrum", o.spectrum_path, "spectrum CSV output");
  auto* spec = app.add_subcommand("spec", "print the resolved configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*simulate) return cmd_simulate(o);
    if (*brackets) return cmd_brackets(o);
    if (*prequant) return cmd_prequant(o);
    if (*spec) return cmd_spec(o);
  } catch (const ConfigError& e) {
    std::cerr << "kgms: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "kgms: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "kgms: internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
