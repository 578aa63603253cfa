#include "test_util.hpp"

#include <sstream>

using namespace kgms;
using namespace kgms::test;
using nlohmann::json;

TEST(Io, DefaultConfigRoundTrip) {
  const RunConfig c = config_from_json(json::object());
  EXPECT_EQ(c.lattice.N, 32);
  EXPECT_EQ(c.lattice.n_max, 7);
  EXPECT_EQ(c.seed, 1u);
  const RunConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Io, ConfigErrors) {
  EXPECT_THROW(config_from_json(json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"N", "x"}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"m", 0.0}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"N", 8}, {"n_max", 4}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"tolerances", {{"x", -1.0}}}}), ConfigError);
  const RunConfig ok = config_from_json(json{{"N", 16}, {"n_max", 3}, {"seed", 9}});
  EXPECT_EQ(ok.lattice.N, 16);
  EXPECT_EQ(ok.seed, 9u);
  EXPECT_THROW(config_from_json(json::array()), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Io, SolutionJsonRoundTrip) {
  const auto lat = build_lattice(2, 3.0, 8, 2, 1.2);
  Rng rng(1);
  const Solution sol = random_solution(lat, rng);
  const Solution back = solution_from_json(solution_to_json(sol));
  EXPECT_EQ(back.u(), sol.u());
  EXPECT_EQ(back.ustar(), sol.ustar());
  EXPECT_EQ(back.lattice().params().L, 3.0);
  EXPECT_TRUE(back.is_real());
}

TEST(Io, CauchyCsvRoundTrip) {
  CauchyData d{{0.5, -1.0, 2.25, 0.0}, {1.0, 0.0, -0.125, 3.0}};
  std::stringstream ss;
  write_cauchy_csv(ss, d);
  const CauchyData back = read_cauchy_csv(ss, 4);
  EXPECT_EQ(back.phi0, d.phi0);
  EXPECT_EQ(back.pi0, d.pi0);
  std::stringstream missing("0,1,2\n1,1,2\n");
  EXPECT_THROW(read_cauchy_csv(missing, 4), ConfigError);
}

TEST(Io, ReportOverridesAndOrdering) {
  Report r{"verify", "x", RunConfig{}, {}};
  r.checks.push_back(make_check("b_check", 1.0, 1.0 + 1e-9, 1e-8));
  r.checks.push_back(make_check("a_check", cplx{1.0, 2.0}, cplx{1.0, 2.0}, 1e-12));
  r.finalize();
  EXPECT_EQ(r.checks.front().name, "a_check");
  EXPECT_TRUE(r.all_pass());
  r.config.tolerances["b_check"] = 0.0;
  r.finalize();
  EXPECT_FALSE(r.all_pass());
  r.config.tolerances["nope"] = 1.0;
  EXPECT_THROW(r.finalize(), ConfigError);
  const json j = Report{"verify", "x", RunConfig{}, {}}.to_json();
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
}
