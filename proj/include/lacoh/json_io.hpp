#pragma once

#include "lacoh/koszul.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lacoh::io {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

// invalid configuration; field() is a JSON path such as "weight.algebraic"
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& msg)
      : std::invalid_argument("ConfigError: field \"" + field + "\": " + msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct WeightConfig {
  rootdata::Weight algebraic;  // empty: zero weight
  bool formal = false;
  std::vector<rootdata::WeightQ> directions;  // empty with formal: a regular default direction
  int smooth_order = 1;
};

struct CharacterConfig {
  long p = 5;
  int M = 8;
  int e = 2;
  std::vector<long> f;                       // defining polynomial, low to high without the leading 1
  std::vector<std::vector<long long>> values;  // chi(u_j) in the power basis
  int random_count = 0;                      // > 0: sample characters instead
  int radius = 2;                            // v(chi(u_j) - 1) >= radius for samples
};

struct ScenarioConfig {
  rootdata::Family family = rootdata::Family::GL;
  int n = 2;
  long p = 5;
  int e = 1;
  int s = 1;
  WeightConfig weight;
  std::string w = "#0";
  int N_trunc = 3;
  int M = 12;
  int D = 4;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string coefficients = "dmod";  // dmod | trivial | standard | dual | sym2 | wedge2
  std::vector<Rational> specialize;    // nonempty: evaluate the formal variables here
  std::optional<CharacterConfig> character;
  std::vector<std::vector<std::vector<long long>>> matrix;  // iwahori input, entries in the power basis
  int m = 0;                                                // iwahori: matrix size for samples (0: 2n)
  int samples = 0;                                          // iwahori: random elements when no matrix
  std::vector<std::vector<int>> lattice;                    // koszul: unimodular change of generators
  json raw;                                                 // echo
};

ScenarioConfig parse_config(const json& j);
ScenarioConfig load_config(const std::string& path);

struct RunReport {
  json body;
  bool ok = true;
};

const std::vector<std::string>& subcommands();
RunReport run(const std::string& subcommand, const ScenarioConfig& cfg);

// helpers shared with the tests
rootdata::RootDatum datum_of(const ScenarioConfig& cfg);
weightspace::FormalWeight weight_of(const ScenarioConfig& cfg, const rootdata::RootDatum& d);
json to_json(const Rational& q);
json to_json(const FamilyElem& x);
json to_json(const padic::PadicElement& x);

}  // namespace lacoh::io
