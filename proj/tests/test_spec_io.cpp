#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "futurity/reel_machine.hpp"
#include "futurity/spec_io.hpp"

using namespace futurity;

TEST_CASE("machine spec dump round-trips exactly") {
  MachineSpec spec = futurity1936();
  std::string doc = dump_machine_spec(spec);
  MachineSpec back = parse_machine_spec_text(doc);
  REQUIRE(back == spec);
  REQUIRE(back.dist(0).has_exact());
  REQUIRE(back.dist(0).p_exact() == Rational(4, 125));
}

TEST_CASE("reel document round-trips") {
  std::string doc = dump_reel_machine(futurity_reels());
  MachineSpec back = parse_machine_spec_text(doc);
  REQUIRE(back == futurity1936());
}

TEST_CASE("machine spec file loading") {
  std::string path = "spec_io_roundtrip.json";
  {
    std::ofstream f(path);
    f << dump_machine_spec(futurity1936());
  }
  MachineSpec back = load_machine_spec(path);
  REQUIRE(back == futurity1936());
  std::remove(path.c_str());
  REQUIRE_THROWS_AS(load_machine_spec("no_such_file.json"), SpecParseError);
}

TEST_CASE("string probabilities stay exact, numbers do not") {
  std::string exact_doc = R"({
    "J": 2,
    "distributions": [
      {"atoms": [{"payout": 0, "prob": "2/3"}, {"payout": 4, "prob": "1/3"}]},
      {"atoms": [{"payout": 0, "prob": "0.5"}, {"payout": 2, "prob": "0.5"}]}
    ]})";
  MachineSpec m = parse_machine_spec_text(exact_doc);
  REQUIRE(m.I() == 2);
  REQUIRE(m.dist(0).has_exact());
  REQUIRE(m.dist(0).mu_exact() == Rational(4, 3));
  REQUIRE(m.dist(1).p_exact() == Rational(1, 2));

  std::string plain_doc = R"({
    "J": 2,
    "distributions": [
      {"atoms": [{"payout": 0, "prob": 0.75}, {"payout": 4, "prob": "1/4"}]},
      {"atoms": [{"payout": 0, "prob": "1/2"}, {"payout": 2, "prob": "1/2"}]}
    ]})";
  MachineSpec p = parse_machine_spec_text(plain_doc);
  REQUIRE_FALSE(p.dist(0).has_exact());
  REQUIRE(p.dist(0).mu() == Catch::Approx(1.0).margin(1e-14).epsilon(0));
  REQUIRE(p.dist(1).has_exact());
}

TEST_CASE("unknown fields are rejected") {
  REQUIRE_THROWS_AS(parse_machine_spec_text(
                        R"({"J": 2, "distributions": [], "extra": 1})"),
                    SpecParseError);
  REQUIRE_THROWS_AS(parse_machine_spec_text(R"({
    "J": 2,
    "distributions": [
      {"atoms": [{"payout": 0, "prob": "1/2"}, {"payout": 1, "prob": "1/2"}], "name": "x"},
      {"atoms": [{"payout": 0, "prob": "1/2"}, {"payout": 1, "prob": "1/2"}]}
    ]})"),
                    SpecParseError);
  REQUIRE_THROWS_AS(parse_machine_spec_text(R"({
    "J": 2,
    "distributions": [
      {"atoms": [{"payout": 0, "prob": "1/2", "note": "?"}, {"payout": 1, "prob": "1/2"}]},
      {"atoms": [{"payout": 0, "prob": "1/2"}, {"payout": 1, "prob": "1/2"}]}
    ]})"),
                    SpecParseError);
}

TEST_CASE("malformed documents are rejected") {
  REQUIRE_THROWS_AS(parse_machine_spec_text("not json"), SpecParseError);
  REQUIRE_THROWS_AS(parse_machine_spec_text("[1,2]"), SpecParseError);
  REQUIRE_THROWS_AS(parse_machine_spec_text(R"({"distributions": []})"), SpecParseError);
  REQUIRE_THROWS_AS(parse_machine_spec_text(R"({"J": 2})"), SpecParseError);
  REQUIRE_THROWS_AS(parse_machine_spec_text(
                        R"({"J": 2, "distributions": [{"atoms": [{"payout": 0}]}]})"),
                    SpecParseError);
  REQUIRE_THROWS_AS(parse_machine_spec_text(
                        R"({"J": 2.5, "distributions": []})"),
                    SpecParseError);
  REQUIRE_THROWS_AS(parse_machine_spec_text(R"({
    "J": 2,
    "distributions": [
      {"atoms": [{"payout": 0, "prob": "7/8"}, {"payout": 1, "prob": "1/4"}]},
      {"atoms": [{"payout": 0, "prob": "1/2"}, {"payout": 1, "prob": "1/2"}]}
    ]})"),
                    BadDist);
  // Reel documents: wrong strip count / length.
  REQUIRE_THROWS_AS(parse_machine_spec_text(R"({"reels": [[0,0],[0,0]]})"),
                    SpecParseError);
}

TEST_CASE("machine uri resolution") {
  REQUIRE(machine_from_uri("builtin:futurity1936") == futurity1936());
  REQUIRE_THROWS_AS(machine_from_uri("builtin:unknown"), SpecParseError);
  REQUIRE_THROWS_AS(machine_from_uri("missing.json"), SpecParseError);
}
