#include "lacoh/json_io.hpp"

#include <doctest.h>

using namespace lacoh;
using io::json;

namespace {

std::string field_of(const json& j) {
  try {
    io::parse_config(j);
  } catch (const io::ConfigError& e) {
    return e.field();
  }
  return "";
}

json flagship() {
  return json{{"family", "GL"}, {"n", 2}, {"p", 5}, {"s", 1}, {"w", "(2 3)"}, {"N_trunc", 3},
              {"weight", {{"formal", true}, {"directions", {{3, 2, 1, 0}}}}}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config errors name the field") {
    CHECK(field_of({{"n", 0}}) == "n");
    CHECK(field_of({{"n", "two"}}) == "n");
    CHECK(field_of({{"p", 4}}) == "p");
    CHECK(field_of({{"p", 2}}) == "p");
    CHECK(field_of({{"family", "E8"}}) == "family");
    CHECK(field_of({{"n", 2}, {"weight", {{"algebraic", {1, 2, 3}}}}}) == "weight.algebraic");
    CHECK(field_of({{"n", 2}, {"weight", {{"directions", {{1, 0, 0, "x"}}}}}}) == "weight.directions[0][3]");
    CHECK(field_of({{"n", 2}, {"w", "(1 3)"}}) == "w");
    CHECK(field_of({{"bogus", 1}}) == "bogus");
    CHECK(field_of({{"schema_version", "0"}}) == "schema_version");
    CHECK(field_of({{"family", "U"}, {"e", 2}}) == "e");
    CHECK(field_of({{"character", {{"e", 2}, {"values", {{26, 0}}}}}}) == "character.values");
    CHECK(field_of(flagship()) == "");
    io::ConfigError e("n", "must be positive");
    CHECK(std::string(e.what()).find("\"n\"") != std::string::npos);
  }

  TEST_CASE("flagship verify-summand: six passing checks") {
    auto r = io::run("verify-summand", io::parse_config(flagship()));
    CHECK(r.ok);
    CHECK(r.body["checks"].size() == 6);
    CHECK(r.body["schema_version"] == "1");
  }

  TEST_CASE("reports are deterministic and independent of the thread count") {
    for (const std::string sub : {"ce", "verify-summand", "dmod-weights", "compare"}) {
      auto cfg = io::parse_config(flagship());
      if (sub == "compare") cfg.N_trunc = 2;
      auto a = io::run(sub, cfg).body.dump();
      cfg.threads = 4;
      auto b = io::run(sub, cfg).body.dump();
      CHECK(a == b);
    }
  }

  TEST_CASE("the seed drives sampling") {
    auto cfg = io::parse_config({{"family", "GL"}, {"n", 2}, {"m", 3}, {"samples", 3}});
    cfg.seed = 1;
    auto a = io::run("iwahori", cfg).body.dump();
    auto a2 = io::run("iwahori", cfg).body.dump();
    cfg.seed = 2;
    auto b = io::run("iwahori", cfg).body.dump();
    CHECK(a == a2);
    CHECK(a != b);
  }

  TEST_CASE("every subcommand reports checks") {
    auto cfg = io::parse_config(flagship());
    cfg.N_trunc = 2;
    cfg.character = io::CharacterConfig{};
    cfg.character->random_count = 3;
    cfg.samples = 2;
    for (const auto& sub : io::subcommands()) {
      auto r = io::run(sub, cfg);
      INFO(sub);
      CHECK(r.ok);
      CHECK(!r.body["checks"].empty());
      CHECK(r.body["subcommand"] == sub);
    }
  }

  TEST_CASE("number formatting") {
    CHECK(io::to_json(Rational(3)) == json(3));
    CHECK(io::to_json(Rational(1, 2)) == json("1/2"));
  }
}
