#include <doctest.h>

#include "selecta/errors.hpp"
#include "selecta/json_io.hpp"

using namespace selecta;

namespace {

template <class T>
void check_round_trip(const T& value) {
  const Json j = to_json(value);
  const T back = decode<T>(parse_json_text(j.dump()));
  CHECK(back == value);
  CHECK(to_json(back).dump() == j.dump());
}

}  // namespace

TEST_SUITE("json_io") {

TEST_CASE("round trips preserve every field bit for bit") {
  DesignSpec spec;
  spec.prior_b = {26, 40};
  spec.pi_tilde_a = 0.1 + 0.2;  // not exactly 0.3
  spec.rounding = ResponderRounding::Ceiling;
  spec.seed = 18446744073709551615ull;
  check_round_trip(spec);

  DecisionInputs in;
  in.data_a = {40, 22};
  in.data_b = {40, 16};
  in.d = 0.1;
  check_round_trip(in);
  check_round_trip(analyze_trial(in));

  SampleSizeResult r;
  r.n_min = 40;
  r.threshold = 0.8;
  r.n_lo = 10;
  r.n_hi = 1000;
  r.curve = {{39, 0.7999, 0.0}, {40, 0.80123456789, 1e-4}};
  check_round_trip(r);
  SampleSizeResult under;
  under.under_lower_bound = true;
  under.method = SizingMethod::Simulated;
  check_round_trip(under);

  OcScenario sc;
  sc.label = "Scenario \"quoted\"";
  check_round_trip(sc);
  OcResult oc{0.875, 0.125, 0.001, 100000, 87500};
  check_round_trip(oc);
  check_round_trip(OcGridRow{"x", 39, 7, oc});

  FreqDesign f;
  f.method = FreqMethod::NormalApprox;
  check_round_trip(f);
  check_round_trip(FreqEvaluation{40, FreqMethod::Exact, 0.6, 0.3, 0.75});
}

TEST_CASE("under-lower-bound results serialize n_min as null") {
  SampleSizeResult r;
  r.under_lower_bound = true;
  const Json j = to_json(r);
  CHECK(j["n_min"].is_null());
  CHECK(j["under_lower_bound"] == true);
}

TEST_CASE("decoding is strict") {
  CHECK_THROWS_AS(decode<BetaParams>(Json{{"alpha", 1}, {"beta", 1}, {"gamma", 2}}), ConfigError);
  CHECK_THROWS_AS(decode<BetaParams>(Json{{"alpha", "1"}, {"beta", 1}}), ConfigError);
  CHECK_THROWS_AS(decode<BetaParams>(Json{{"alpha", 1}}), ConfigError);
  CHECK_THROWS_AS(decode<DesignSpec>(Json{{"n_lo", 10.5}}), ConfigError);
  CHECK_THROWS_AS(decode<DesignSpec>(Json{{"rounding", "up"}}), ConfigError);
  CHECK_THROWS_AS(decode<DesignSpec>(Json::array()), ConfigError);
  CHECK_THROWS_AS(decode<DecisionInputs>(Json{{"data_a", {{"n", 10}, {"responders", 3}}}}), ConfigError);
  try {
    decode<DesignSpec>(Json{{"prior_a", {{"alpha", 1}, {"beta", 1}, {"extra", 0}}}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "prior_a.extra");
  }
}

TEST_CASE("absent fields keep defaults") {
  const auto s = decode<DesignSpec>(Json::object());
  CHECK(s == DesignSpec{});
  const auto in = decode<DecisionInputs>(
      Json{{"data_a", {{"n", 10}, {"responders", 3}}}, {"data_b", {{"n", 10}, {"responders", 2}}}});
  CHECK(in.prior_a == BetaParams{1, 1});
  CHECK(in.rho == 0.5);
}

TEST_CASE("malformed text is a config error") {
  CHECK_THROWS_AS(parse_json_text("{\"a\": 1,"), ConfigError);
  CHECK_THROWS_AS(parse_json_text(""), ConfigError);
}

TEST_CASE("merge_objects overlays recursively") {
  const Json base = {{"a", 1}, {"prior_a", {{"alpha", 1}, {"beta", 1}}}};
  const Json patch = {{"prior_a", {{"beta", 4}}}, {"b", 2}};
  const Json m = merge_objects(base, patch);
  CHECK(m["prior_a"]["alpha"] == 1);
  CHECK(m["prior_a"]["beta"] == 4);
  CHECK(m["a"] == 1);
  CHECK(m["b"] == 2);
}

TEST_CASE("expand_grid crosses vary keys in document order") {
  const Json doc = parse_json_text(R"({
    "note": "ignored",
    "defaults": {"d": 0.05},
    "rows": [{"pi_tilde_a": 0.3}, {"pi_tilde_a": 0.4}],
    "vary": {"rho": [0, 0.5], "gamma_star": [0.9, 0.8]}
  })");
  const auto rows = expand_grid(doc);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] == Json{{"d", 0.05}, {"pi_tilde_a", 0.3}, {"rho", 0}, {"gamma_star", 0.9}});
  CHECK(rows[1]["rho"] == 0);
  CHECK(rows[1]["gamma_star"] == 0.8);
  CHECK(rows[2]["rho"] == 0.5);
  CHECK(rows[4]["pi_tilde_a"] == 0.4);
  for (const auto& r : rows) CHECK_FALSE(r.contains("note"));
}

TEST_CASE("expand_grid single document and errors") {
  const auto one = expand_grid(Json{{"d", 0.1}, {"command", "sample-size"}});
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Json{{"d", 0.1}});
  CHECK_THROWS_AS(expand_grid(Json{{"rows", 3}}), ConfigError);
  CHECK_THROWS_AS(expand_grid(Json{{"rows", Json::array()}, {"vary", {{"rho", 1}}}}), ConfigError);
}

TEST_CASE("error_json shape") {
  const Json e = error_json("validation_error", "bad", {{"rho", "must be <= 1"}});
  CHECK(e["error"]["type"] == "validation_error");
  CHECK(e["error"]["fields"][0]["field"] == "rho");
}

}  // TEST_SUITE
