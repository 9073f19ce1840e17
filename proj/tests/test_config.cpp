#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "spinboson/config.hpp"

namespace {

using namespace spinboson;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

}  // namespace

TEST_CASE("empty config falls back to documented defaults", "[config]") {
  const RunConfig cfg = parse_config_text("{}");
  REQUIRE(cfg.chi.kind() == ChiProfile::Kind::annular_bump);
  REQUIRE(cfg.chi.center() == 2.0);
  REQUIRE(cfg.chi.width() == 1.0);
  REQUIRE(cfg.radial_order == 3);
  REQUIRE(cfg.angular_order == 6);
  REQUIRE(cfg.r_max == 0.0);
  REQUIRE(cfg.effective_r_max() == 3.0);
  REQUIRE(cfg.spins.beta == Eigen::Vector3d(0, 0, 1));
  REQUIRE(cfg.spins.positions.size() == 1);
  REQUIRE(cfg.spins.positions[0] == Eigen::Vector3d::Zero());
  REQUIRE(cfg.n_max == 4);
  REQUIRE(cfg.state_budget == 8'000'000);
  REQUIRE(cfg.order_p == 1);
  REQUIRE(cfg.h_list == std::vector<double>{0.2, 0.1, 0.05, 0.025});
  REQUIRE(cfg.eig_tol == 1e-11);
  REQUIRE(cfg.dense_threshold == 2000);
  REQUIRE(cfg.max_restarts == 60);
  REQUIRE(cfg.field_points.size() == 3);
  REQUIRE(cfg.field_h == 0.05);
  REQUIRE(cfg.quad_rel_tol == 1e-10);
  REQUIRE(cfg.quad_max_intervals == 4000);
  REQUIRE(cfg.compare_rows.size() == 12);
  REQUIRE(cfg.out_dir == "out");
  REQUIRE(cfg.seed == 20250821);
}

TEST_CASE("full document survives a serialization round trip", "[config]") {
  const std::string text = R"({
    "chi": {"kind": "polynomial_gaussian", "power": 2, "scale": 1.5,
            "amplitude": 0.7},
    "grid": {"radial_order": 5, "angular_order": 14, "r_max": 2.5},
    "spins": {"beta": [1, 1, 0], "positions": [[0, 0, 0], [0.8, 0, 0.2]]},
    "truncation": {"n_max": 6, "state_budget": 1000000},
    "expansion": {"p": 2},
    "oracle": {"h_list": [0.4, 0.2], "tol": 1e-9, "dense_threshold": 500,
               "max_restarts": 10},
    "fields": {"points": [[0.1, 0.2, 0.3]], "h": 0.1},
    "quadrature": {"rel_tol": 1e-8, "max_intervals": 500},
    "compare": {"rows": [1, 3, 12]},
    "output": {"directory": "artifacts"},
    "seed": 42
  })";

  const RunConfig cfg = parse_config_text(text);
  REQUIRE(cfg.chi.kind() == ChiProfile::Kind::polynomial_gaussian);
  REQUIRE(cfg.chi.power() == 2);
  REQUIRE(cfg.chi.scale() == 1.5);
  REQUIRE(cfg.chi.amplitude() == 0.7);
  REQUIRE_FALSE(cfg.chi.vanishes_near_zero());
  REQUIRE(cfg.radial_order == 5);
  REQUIRE(cfg.r_max == 2.5);
  REQUIRE(cfg.effective_r_max() == 2.5);
  REQUIRE(cfg.spins.positions.size() == 2);
  REQUIRE(cfg.spins.positions[1] == Eigen::Vector3d(0.8, 0, 0.2));
  REQUIRE(cfg.n_max == 6);
  REQUIRE(cfg.state_budget == 1'000'000);
  REQUIRE(cfg.order_p == 2);
  REQUIRE(cfg.h_list == std::vector<double>{0.4, 0.2});
  REQUIRE(cfg.field_points.size() == 1);
  REQUIRE(cfg.compare_rows == std::vector<int>{1, 3, 12});
  REQUIRE(cfg.out_dir == "artifacts");
  REQUIRE(cfg.seed == 42);

  // Serializing and reparsing reproduces the same document exactly.
  const auto serialized = config_to_json(cfg);
  const RunConfig again = parse_config(serialized);
  REQUIRE(config_to_json(again) == serialized);
}

TEST_CASE("unknown keys are rejected with their full path", "[config]") {
  REQUIRE_THROWS_MATCHES(parse_config_text(R"({"grd": {}})"), ConfigError,
                         MessageMatches(ContainsSubstring("'grd'")));
  REQUIRE_THROWS_MATCHES(
      parse_config_text(R"({"grid": {"radial": 3}})"), ConfigError,
      MessageMatches(ContainsSubstring("'grid.radial'")));
  REQUIRE_THROWS_MATCHES(
      parse_config_text(R"({"chi": {"kind": "annular_bump", "sigma": 1}})"),
      ConfigError, MessageMatches(ContainsSubstring("'chi.sigma'")));
}

TEST_CASE("type mismatches are reported per key", "[config]") {
  REQUIRE_THROWS_MATCHES(
      parse_config_text(R"({"grid": {"radial_order": "three"}})"), ConfigError,
      MessageMatches(ContainsSubstring("grid.radial_order")));
  REQUIRE_THROWS_MATCHES(
      parse_config_text(R"({"spins": {"beta": [1, 2]}})"), ConfigError,
      MessageMatches(ContainsSubstring("3-component")));
  REQUIRE_THROWS_MATCHES(
      parse_config_text(R"({"spins": {"positions": [[1, 2]]}})"), ConfigError,
      MessageMatches(ContainsSubstring("3 components")));
  REQUIRE_THROWS_MATCHES(
      parse_config_text(R"({"spins": {"positions": "origin"}})"), ConfigError,
      MessageMatches(ContainsSubstring("array")));
  REQUIRE_THROWS_MATCHES(parse_config_text(R"({"grid": 5})"), ConfigError,
                         MessageMatches(ContainsSubstring("table")));
}

TEST_CASE("chi families reject each other's parameters", "[config]") {
  REQUIRE_THROWS_MATCHES(
      parse_config_text(R"({"chi": {"kind": "annular_bump", "scale": 2}})"),
      ConfigError, MessageMatches(ContainsSubstring("power/scale")));
  REQUIRE_THROWS_MATCHES(
      parse_config_text(
          R"({"chi": {"kind": "polynomial_gaussian", "center": 2}})"),
      ConfigError, MessageMatches(ContainsSubstring("center/width")));
  REQUIRE_THROWS_MATCHES(parse_config_text(R"({"chi": {"kind": "box"}})"),
                         ConfigError,
                         MessageMatches(ContainsSubstring("annular_bump")));
}

TEST_CASE("domain limits are enforced", "[config]") {
  REQUIRE_THROWS_AS(parse_config_text(R"({"grid": {"radial_order": 1}})"),
                    ConfigError);
  REQUIRE_THROWS_AS(parse_config_text(R"({"truncation": {"n_max": -1}})"),
                    ConfigError);
  REQUIRE_THROWS_MATCHES(
      parse_config_text(R"({"truncation": {"state_budget": -5}})"),
      ConfigError, MessageMatches(ContainsSubstring("positive")));
  REQUIRE_THROWS_AS(parse_config_text(R"({"truncation": {"state_budget": 0}})"),
                    ConfigError);
  REQUIRE_THROWS_AS(parse_config_text(R"({"expansion": {"p": -1}})"),
                    ConfigError);
  REQUIRE_THROWS_MATCHES(parse_config_text(R"({"oracle": {"h_list": []}})"),
                         ConfigError,
                         MessageMatches(ContainsSubstring("nonempty")));
  REQUIRE_THROWS_AS(parse_config_text(R"({"oracle": {"h_list": [0.0]}})"),
                    ConfigError);
  REQUIRE_THROWS_AS(parse_config_text(R"({"oracle": {"h_list": [1.5]}})"),
                    ConfigError);
  REQUIRE_THROWS_AS(parse_config_text(R"({"fields": {"h": 0}})"), ConfigError);
  REQUIRE_THROWS_AS(parse_config_text(R"({"spins": {"positions": []}})"),
                    ConfigError);
  REQUIRE_THROWS_AS(parse_config_text(R"({"compare": {"rows": [0]}})"),
                    ConfigError);
  REQUIRE_THROWS_AS(parse_config_text(R"({"compare": {"rows": [13]}})"),
                    ConfigError);
}

TEST_CASE("malformed documents fail with a config error", "[config]") {
  REQUIRE_THROWS_MATCHES(parse_config_text("{"), ConfigError,
                         MessageMatches(ContainsSubstring("not valid JSON")));
  REQUIRE_THROWS_MATCHES(parse_config_text("3"), ConfigError,
                         MessageMatches(ContainsSubstring("JSON object")));
  REQUIRE_THROWS_MATCHES(load_config("/nonexistent/config.json"), ConfigError,
                         MessageMatches(ContainsSubstring("cannot open")));
}

TEST_CASE("expansion requests are checked against the truncation",
          "[config]") {
  RunConfig cfg = parse_config_text("{}");  // bump profile, p = 1, n_max = 4
  REQUIRE_NOTHROW(validate_expansion_request(cfg));

  cfg = parse_config_text(R"({"expansion": {"p": 2}})");
  REQUIRE_THROWS_MATCHES(validate_expansion_request(cfg), PreconditionError,
                         MessageMatches(ContainsSubstring("n_max >= 6")));

  cfg = parse_config_text(R"({"truncation": {"n_max": 2}})");
  REQUIRE_THROWS_AS(validate_expansion_request(cfg), PreconditionError);

  // A profile reaching down to zero frequency caps the order instead.
  cfg = parse_config_text(
      R"({"chi": {"kind": "polynomial_gaussian"},
          "truncation": {"n_max": 2}})");
  REQUIRE_NOTHROW(validate_expansion_request(cfg));

  cfg = parse_config_text(
      R"({"chi": {"kind": "polynomial_gaussian"}, "expansion": {"p": 2}})");
  REQUIRE_THROWS_MATCHES(validate_expansion_request(cfg), PreconditionError,
                         MessageMatches(ContainsSubstring("caps")));

  cfg = parse_config_text(
      R"({"chi": {"kind": "polynomial_gaussian"},
          "truncation": {"n_max": 1}})");
  REQUIRE_THROWS_MATCHES(validate_expansion_request(cfg), PreconditionError,
                         MessageMatches(ContainsSubstring("n_max >= 2")));
}
