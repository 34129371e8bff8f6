#include "lacoh/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

namespace lacoh::io {

using rootdata::Family;
using rootdata::RootDatum;
using rootdata::Weight;
using rootdata::operator+;
using rootdata::operator-;

// ---------------- scalars ----------------

json to_json(const Rational& q) {
  if (denominator(q) == 1) {
    Integer z = numerator(q);
    if (z >= Integer(-(1LL << 53)) && z <= Integer(1LL << 53)) return static_cast<long long>(z);
  }
  return q.str();
}

json to_json(const FamilyElem& x) { return x.str(); }

json to_json(const padic::PadicElement& x) {
  json c = json::array();
  for (auto v : x.coeffs()) c.push_back(v);
  json out{{"coeffs", c}};
  int v = x.valuation();
  out["valuation"] = v == kInfValuation ? json(nullptr) : json(v);
  return out;
}

namespace {

json weights_json(const std::vector<Weight>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(w);
  return a;
}

json check(const std::string& name, bool pass, const std::string& witness = "") {
  return json{{"name", name}, {"pass", pass}, {"witness", witness}};
}

// ---------------- config parsing ----------------

const json* field(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

long long get_int(const json& j, const char* key, const std::string& path, long long def, long long lo,
                  long long hi) {
  const json* v = field(j, key);
  if (!v) return def;
  if (!v->is_number_integer()) throw ConfigError(path, "must be an integer");
  long long x = v->get<long long>();
  if (x < lo || x > hi)
    throw ConfigError(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                std::to_string(x));
  return x;
}

Rational get_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return Rational(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(path, "must be an integer or a string \"a/b\"");
}

std::vector<long long> get_int_list(const json& v, const std::string& path) {
  if (v.is_number_integer()) return {v.get<long long>()};
  if (!v.is_array()) throw ConfigError(path, "must be an integer or a list of integers");
  std::vector<long long> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw ConfigError(path + "[" + std::to_string(i) + "]", "must be an integer");
    out.push_back(v[i].get<long long>());
  }
  return out;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError(prefix + it.key(), "unknown field");
}

CharacterConfig parse_character(const json& c) {
  if (!c.is_object()) throw ConfigError("character", "must be an object");
  reject_unknown(c, {"p", "M", "e", "f", "values", "random"}, "character.");
  CharacterConfig out;
  out.p = get_int(c, "p", "character.p", 5, 2, 1000003);
  if (!padic::is_prime(out.p) || out.p == 2) throw ConfigError("character.p", "must be an odd prime");
  out.M = static_cast<int>(get_int(c, "M", "character.M", 8, 3, 60));
  out.e = static_cast<int>(get_int(c, "e", "character.e", 2, 1, 8));
  if (const json* f = field(c, "f")) {
    auto v = get_int_list(*f, "character.f");
    out.f.assign(v.begin(), v.end());
    if (static_cast<int>(out.f.size()) != out.e) throw ConfigError("character.f", "needs e coefficients");
  }
  if (const json* v = field(c, "values")) {
    if (!v->is_array() || static_cast<int>(v->size()) != out.e)
      throw ConfigError("character.values", "needs one value per basis element u_1..u_e");
    for (size_t j = 0; j < v->size(); ++j) {
      std::string path = "character.values[" + std::to_string(j) + "]";
      auto x = get_int_list((*v)[j], path);
      if (static_cast<int>(x.size()) > out.e) throw ConfigError(path, "has more than e coefficients");
      out.values.push_back(x);
    }
  }
  if (const json* r = field(c, "random")) {
    if (!r->is_object()) throw ConfigError("character.random", "must be an object");
    reject_unknown(*r, {"count", "radius"}, "character.random.");
    out.random_count = static_cast<int>(get_int(*r, "count", "character.random.count", 1, 1, 100000));
    out.radius = static_cast<int>(get_int(*r, "radius", "character.random.radius", 2, 2, out.M - 1));
  }
  if (out.values.empty() && !out.random_count) throw ConfigError("character.values", "give values or random");
  return out;
}

}  // namespace

ScenarioConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("$", "configuration must be a JSON object");
  reject_unknown(j,
                 {"schema_version", "family", "n", "p", "e", "s", "weight", "w", "N_trunc", "M", "D", "seed",
                  "coefficients", "specialize", "character", "matrix", "m", "samples", "lattice", "comment"},
                 "");
  ScenarioConfig c;
  c.raw = j;
  if (const json* v = field(j, "schema_version"))
    if (!v->is_string() || v->get<std::string>() != kSchemaVersion)
      throw ConfigError("schema_version", std::string("must be \"") + kSchemaVersion + "\"");
  if (const json* f = field(j, "family")) {
    if (!f->is_string()) throw ConfigError("family", "must be one of GL, Sp, U");
    try {
      c.family = rootdata::parse_family(f->get<std::string>());
    } catch (const std::exception&) {
      throw ConfigError("family", "must be one of GL, Sp, U");
    }
  }
  c.n = static_cast<int>(get_int(j, "n", "n", 2, 1, 4));
  c.p = get_int(j, "p", "p", 5, 2, 1000003);
  if (!padic::is_prime(c.p) || c.p == 2) throw ConfigError("p", "must be an odd prime");
  c.e = static_cast<int>(get_int(j, "e", "e", 1, 1, 6));
  c.s = static_cast<int>(get_int(j, "s", "s", 1, 1, 6));
  c.N_trunc = static_cast<int>(get_int(j, "N_trunc", "N_trunc", 3, 0, 40));
  c.M = static_cast<int>(get_int(j, "M", "M", 12, 2, 60));
  c.D = static_cast<int>(get_int(j, "D", "D", 4, 1, iwahori::kMaxCertificateDegree));
  if (const json* v = field(j, "seed")) {
    if (!v->is_number_unsigned()) throw ConfigError("seed", "must be a non-negative integer");
    c.seed = v->get<std::uint64_t>();
  }
  if (c.family == Family::U && c.e != 1) throw ConfigError("e", "unitary groups are supported over E = Q_p only");

  RootDatum d = rootdata::build_root_datum({c.family, c.n, c.e});
  if (const json* w = field(j, "weight")) {
    if (!w->is_object()) throw ConfigError("weight", "must be an object");
    reject_unknown(*w, {"algebraic", "formal", "directions", "smooth_order"}, "weight.");
    if (const json* a = field(*w, "algebraic")) {
      auto v = get_int_list(*a, "weight.algebraic");
      if (static_cast<int>(v.size()) != d.rank)
        throw ConfigError("weight.algebraic", "needs " + std::to_string(d.rank) + " entries");
      c.weight.algebraic.assign(v.begin(), v.end());
    }
    if (const json* f = field(*w, "formal")) {
      if (!f->is_boolean()) throw ConfigError("weight.formal", "must be a boolean");
      c.weight.formal = f->get<bool>();
    }
    if (const json* dirs = field(*w, "directions")) {
      if (!dirs->is_array()) throw ConfigError("weight.directions", "must be a list of vectors");
      for (size_t k = 0; k < dirs->size(); ++k) {
        std::string path = "weight.directions[" + std::to_string(k) + "]";
        const json& v = (*dirs)[k];
        if (!v.is_array() || static_cast<int>(v.size()) != d.rank)
          throw ConfigError(path, "needs " + std::to_string(d.rank) + " entries");
        rootdata::WeightQ q;
        for (size_t i = 0; i < v.size(); ++i) q.push_back(get_rational(v[i], path + "[" + std::to_string(i) + "]"));
        c.weight.directions.push_back(q);
      }
      if (!c.weight.directions.empty()) c.weight.formal = true;
    }
    c.weight.smooth_order = static_cast<int>(get_int(*w, "smooth_order", "weight.smooth_order", 1, 1, 1000));
  }
  if (const json* w = field(j, "w")) {
    if (w->is_number_integer())
      c.w = "#" + std::to_string(w->get<long long>());
    else if (w->is_string())
      c.w = w->get<std::string>();
    else
      throw ConfigError("w", "must be a cycle string, a one-line permutation or a W^P index");
  }
  try {
    auto wp = rootdata::relative_weyl_wp(d);
    auto w = rootdata::parse_weyl(d, c.w);
    if (std::find(wp.begin(), wp.end(), w) == wp.end()) throw std::invalid_argument("not in W^P");
  } catch (const std::exception& ex) {
    throw ConfigError("w", ex.what());
  }
  if (const json* v = field(j, "coefficients")) {
    static const std::set<std::string> ok{"dmod", "trivial", "standard", "dual", "sym2", "wedge2"};
    if (!v->is_string() || !ok.count(v->get<std::string>()))
      throw ConfigError("coefficients", "must be one of dmod, trivial, standard, dual, sym2, wedge2");
    c.coefficients = v->get<std::string>();
  }
  if (const json* v = field(j, "specialize")) {
    if (!v->is_array()) throw ConfigError("specialize", "must be a list of rationals");
    for (size_t i = 0; i < v->size(); ++i)
      c.specialize.push_back(get_rational((*v)[i], "specialize[" + std::to_string(i) + "]"));
  }
  if (const json* v = field(j, "character")) c.character = parse_character(*v);
  if (const json* v = field(j, "matrix")) {
    if (!v->is_array() || v->empty()) throw ConfigError("matrix", "must be a square list of rows");
    for (size_t r = 0; r < v->size(); ++r) {
      const json& row = (*v)[r];
      if (!row.is_array() || row.size() != v->size())
        throw ConfigError("matrix[" + std::to_string(r) + "]", "must have as many entries as there are rows");
      std::vector<std::vector<long long>> out;
      for (size_t k = 0; k < row.size(); ++k)
        out.push_back(get_int_list(row[k], "matrix[" + std::to_string(r) + "][" + std::to_string(k) + "]"));
      c.matrix.push_back(out);
    }
  }
  c.m = static_cast<int>(get_int(j, "m", "m", 0, 0, 8));
  c.samples = static_cast<int>(get_int(j, "samples", "samples", 0, 0, 100000));
  if (const json* v = field(j, "lattice")) {
    const int nn = static_cast<int>(d.nilradical.size());
    if (!v->is_array() || static_cast<int>(v->size()) != nn)
      throw ConfigError("lattice", "needs a " + std::to_string(nn) + "x" + std::to_string(nn) + " integer matrix");
    MatQ U(nn, nn);
    for (int r = 0; r < nn; ++r) {
      auto row = get_int_list((*v)[r], "lattice[" + std::to_string(r) + "]");
      if (static_cast<int>(row.size()) != nn) throw ConfigError("lattice[" + std::to_string(r) + "]", "wrong length");
      c.lattice.emplace_back(row.begin(), row.end());
      for (int k = 0; k < nn; ++k) U(r, k) = Rational(row[k]);
    }
    Rational det = determinant(U);
    if (det != 1 && det != -1) throw ConfigError("lattice", "must be unimodular");
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& ex) {
    throw ConfigError("$", std::string("invalid JSON: ") + ex.what());
  }
  return parse_config(j);
}

RootDatum datum_of(const ScenarioConfig& cfg) { return rootdata::build_root_datum({cfg.family, cfg.n, cfg.e}); }

weightspace::FormalWeight weight_of(const ScenarioConfig& cfg, const RootDatum& d) {
  Weight lam = cfg.weight.algebraic.empty() ? Weight(d.rank, 0) : cfg.weight.algebraic;
  weightspace::FormalWeight out;
  if (cfg.weight.formal) {
    auto dirs = cfg.weight.directions;
    if (dirs.empty()) {
      rootdata::WeightQ v;
      for (int i = 0; i < d.rank; ++i) v.push_back(Rational(d.rank - 1 - i));
      dirs.push_back(v);
    }
    out = weightspace::FormalWeight::with_formal(lam, dirs, cfg.e);
  } else {
    out = weightspace::FormalWeight::algebraic_weight(lam, cfg.e);
  }
  out.smooth_order = cfg.weight.smooth_order;
  return out;
}

namespace {

json scenario_echo(const ScenarioConfig& c) {
  json s = c.raw;
  s["seed"] = c.seed;
  return s;
}

json pivots_json(const PivotLog& log) {
  std::map<int, long long> hist;
  for (int v : log.valuations) ++hist[v];
  json a = json::array();
  for (const auto& [v, n] : hist) a.push_back({{"valuation", v == kInfValuation ? json(nullptr) : json(v)}, {"count", n}});
  return a;
}

json cohomology_json(const cecomplex::CohomologyReport& R, bool with_blocks) {
  json out{{"total", R.total}};
  if (with_blocks) {
    json b = json::array();
    for (const auto& br : R.blocks)
      b.push_back({{"nu", br.nu}, {"dim", br.dim}, {"rank", br.rank}, {"cohomology", br.coh}});
    out["blocks"] = b;
  }
  return out;
}

std::string vec_str(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::unique_ptr<dmod::DModule> make_dmodule(const ScenarioConfig& cfg, const RootDatum& d) {
  auto w = rootdata::parse_weyl(d, cfg.w);
  auto D = std::make_unique<dmod::DModule>(d, w, cfg.s, cfg.p, weight_of(cfg, d), cfg.N_trunc);
  if (!cfg.specialize.empty()) {
    if (static_cast<int>(cfg.specialize.size()) != D->nformal())
      throw ConfigError("specialize", "needs one value per formal variable (" + std::to_string(D->nformal()) + ")");
    D = std::make_unique<dmod::DModule>(D->specialize(cfg.specialize));
  }
  return D;
}

cecomplex::AlgebraicModule make_algebraic(const ScenarioConfig& cfg, const RootDatum& d) {
  using cecomplex::AlgebraicModule;
  const auto& k = cfg.coefficients;
  if (k == "trivial") return AlgebraicModule::trivial(d);
  if (k == "standard") return AlgebraicModule::standard(d);
  if (k == "dual") return AlgebraicModule::standard(d).dual();
  if (k == "sym2") return AlgebraicModule::standard(d).sym(2);
  if (k == "wedge2") return AlgebraicModule::standard(d).wedge(2);
  throw ConfigError("coefficients", "not a finite-dimensional module: " + k);
}

// ---------------- subcommands ----------------

RunReport run_roots(const ScenarioConfig& cfg) {
  RootDatum d = datum_of(cfg);
  json r{{"family", rootdata::family_name(cfg.family)},
         {"rank", d.rank},
         {"m", d.m},
         {"positive", weights_json(d.positive)},
         {"simple", weights_json(d.simple)},
         {"levi_positive", weights_json(d.levi_positive)},
         {"nilradical", weights_json(d.nilradical)}};
  json delta = json::array();
  for (const auto& x : d.delta) delta.push_back(to_json(x));
  r["delta"] = delta;
  json checks = json::array();
  bool abel = rootdata::is_abelian_nilradical(d);
  checks.push_back(check("abelian_nilradical", abel));
  bool split = d.positive.size() == d.levi_positive.size() + d.nilradical.size();
  checks.push_back(check("positive_roots_split", split,
                         std::to_string(d.positive.size()) + " = " + std::to_string(d.levi_positive.size()) + " + " +
                             std::to_string(d.nilradical.size())));
  bool simple_ht = true;
  for (const auto& a : d.simple) simple_ht = simple_ht && d.height(a) == 1;
  checks.push_back(check("simple_roots_height_one", simple_ht));
  RunReport out;
  out.ok = abel && split && simple_ht;
  out.body = {{"result", r}, {"checks", checks}};
  return out;
}

std::vector<long long> gaussian_binomial(int n, int k) {
  // coefficients of [n choose k]_q via the q-Pascal rule
  std::vector<std::vector<std::vector<long long>>> C(n + 1, std::vector<std::vector<long long>>(n + 1));
  for (int a = 0; a <= n; ++a) {
    C[a][0] = {1};
    C[a][a] = {1};
    for (int b = 1; b < a; ++b) {
      const auto& x = C[a - 1][b - 1];
      const auto& y = C[a - 1][b];
      std::vector<long long> z(std::max(x.size(), y.size() + b), 0);
      for (size_t i = 0; i < x.size(); ++i) z[i] += x[i];
      for (size_t i = 0; i < y.size(); ++i) z[i + b] += y[i];
      C[a][b] = z;
    }
  }
  return C[n][k];
}

RunReport run_weyl(const ScenarioConfig& cfg) {
  RootDatum d = datum_of(cfg);
  auto wp = rootdata::relative_weyl_wp(d);
  json table = json::array();
  bool shift_ok = true, lines_ok = true;
  for (size_t i = 0; i < wp.size(); ++i) {
    const auto& w = wp[i];
    auto dpw = rootdata::delta_plus_w(d, w);
    Weight sum(d.rank, 0);
    for (const auto& a : dpw) sum = sum - a;
    Weight shift = rootdata::rho_shift(d, w);
    shift_ok = shift_ok && shift == sum;
    auto K = rootdata::kostant_invariant_line(d, w);
    lines_ok = lines_ok && K.line_invariant && K.weight_matches_rho_shift;
    table.push_back({{"index", i},
                     {"w", w.str()},
                     {"length", d.length(w)},
                     {"delta_plus_w", weights_json(dpw)},
                     {"rho_shift", shift},
                     {"kostant_line_invariant", K.line_invariant}});
  }
  bool iff = true;
  std::string bad;
  for (const auto& w : d.weyl_group()) {
    // positive roots made negative by w^{-1}, over all of Delta^+
    auto wi = w.inverse();
    bool inside = true;
    for (const auto& a : d.positive)
      if (!d.is_positive(wi.apply(a)) && d.nil_index(a) < 0) inside = false;
    if (inside != rootdata::in_wp(d, w)) {
      iff = false;
      bad = w.str();
    }
  }
  auto counts = rootdata::wp_length_counts(d);
  json checks = json::array();
  checks.push_back(check("wp_iff_delta_plus_w_in_n", iff, bad));
  checks.push_back(check("rho_shift_is_minus_sum_delta_plus_w", shift_ok));
  checks.push_back(check("kostant_lines_invariant", lines_ok));
  bool ok = iff && shift_ok && lines_ok;
  if (cfg.family == Family::GL && cfg.e == 1) {
    auto g = gaussian_binomial(2 * cfg.n, cfg.n);
    std::vector<long long> c(counts.begin(), counts.end());
    while (c.size() > g.size() && c.back() == 0) c.pop_back();
    bool eq = c == g;
    checks.push_back(check("length_generating_function_is_gaussian_binomial", eq));
    ok = ok && eq;
  }
  RunReport out;
  out.ok = ok;
  out.body = {{"result",
               {{"wp", table},
                {"weyl_order", d.weyl_group().size()},
                {"length_counts", counts},
                {"kostant_degree_counts", rootdata::kostant_degree_counts(d)}}},
              {"checks", checks}};
  return out;
}

RunReport run_factor_char(const ScenarioConfig& cfg) {
  if (!cfg.character) throw ConfigError("character", "required by factor-char");
  const auto& cc = *cfg.character;
  auto E = cc.f.empty() ? padic::UnramifiedExt::standard(cc.p, cc.M, cc.e)
                        : padic::UnramifiedExt::make(cc.p, cc.M, cc.f);
  std::vector<weightspace::ContinuousCharacter> chars;
  if (!cc.values.empty()) {
    weightspace::ContinuousCharacter chi;
    chi.E = E;
    chi.d = 1;
    chi.values.resize(1);
    for (const auto& v : cc.values) chi.values[0].push_back(E->from_coeffs(v));
    chars.push_back(chi);
  }
  std::mt19937_64 rng(cfg.seed);
  for (int k = 0; k < cc.random_count; ++k) {
    weightspace::ContinuousCharacter chi = weightspace::ContinuousCharacter::trivial(E, 1);
    for (auto& v : chi.values[0]) v = E->one() + E->random(rng, cc.radius);
    chars.push_back(chi);
  }
  json items = json::array();
  bool all_ok = true;
  int worst_rec = kInfValuation;
  for (const auto& chi : chars) {
    json item;
    json vals = json::array();
    for (const auto& v : chi.values[0]) vals.push_back(to_json(v));
    item["values"] = vals;
    try {
      auto F = weightspace::factor_character(chi);
      auto rec = weightspace::reconstruct(F);
      bool rec_ok = true;
      json res = json::array();
      for (size_t j = 0; j < rec.size(); ++j) {
        auto diff = rec[j] - chi.values[0][j];
        rec_ok = rec_ok && diff.is_zero();
        worst_rec = std::min(worst_rec, diff.valuation());
        res.push_back(to_json(diff));
      }
      json factors = json::array();
      bool cr_ok = true;
      for (const auto& s : F.factors) {
        std::vector<padic::PadicElement> on_basis;
        for (int j = 0; j < E->degree(); ++j) on_basis.push_back(s.eval(F.embeddings, E->basis(j)));
        auto defect = weightspace::cr_defect_through(F.embeddings, s.sigma, on_basis);
        bool z = weightspace::all_equal(defect);
        cr_ok = cr_ok && z;
        factors.push_back({{"sigma", s.sigma}, {"slope", to_json(s.slope)}, {"cr_defect_zero", z}});
      }
      item["factors"] = factors;
      item["residuals"] = res;
      item["min_valuation"] = F.min_valuation;
      item["reconstructs"] = rec_ok;
      item["factors_analytic"] = cr_ok;
      all_ok = all_ok && rec_ok && cr_ok;
    } catch (const weightspace::OutsideRadius& ex) {
      item["error"] = std::string("OutsideRadius: ") + ex.what();
      all_ok = false;
    }
    items.push_back(item);
  }
  json checks = json::array();
  bool rec_all = true, cr_all = true, err = false;
  for (const auto& it : items) {
    if (it.contains("error")) {
      err = true;
      continue;
    }
    rec_all = rec_all && it["reconstructs"].get<bool>();
    cr_all = cr_all && it["factors_analytic"].get<bool>();
  }
  checks.push_back(check("within_radius", !err));
  checks.push_back(check("product_reproduces_values", rec_all && !err,
                         "min residual valuation " +
                             (worst_rec == kInfValuation ? std::string("inf") : std::to_string(worst_rec))));
  checks.push_back(check("factors_have_zero_cr_defect", cr_all && !err));
  RunReport out;
  out.ok = all_ok;
  out.body = {{"result", {{"p", cc.p}, {"M", cc.M}, {"e", cc.e}, {"f", E->poly()}, {"characters", items}}},
              {"checks", checks}};
  return out;
}

json matrix_json(const Mat<padic::PadicElement>& A) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      json c = json::array();
      for (auto v : A(i, j).coeffs()) c.push_back(v);
      row.push_back(c);
    }
    rows.push_back(row);
  }
  return rows;
}

RunReport run_iwahori(const ScenarioConfig& cfg) {
  const int K_degree = cfg.family == Family::U ? 2 : cfg.e;
  auto K = padic::UnramifiedExt::standard(cfg.p, cfg.M, K_degree);
  std::vector<Mat<padic::PadicElement>> gs;
  int m = cfg.m ? cfg.m : 2 * cfg.n;
  if (!cfg.matrix.empty()) {
    m = static_cast<int>(cfg.matrix.size());
    Mat<padic::PadicElement> g(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(i, j) = K->from_coeffs(cfg.matrix[i][j]);
    gs.push_back(g);
  } else {
    if (cfg.family != Family::GL && m % 2) throw ConfigError("m", "Sp and U need an even matrix size");
    std::mt19937_64 rng(cfg.seed);
    for (int k = 0; k < std::max(1, cfg.samples); ++k) gs.push_back(iwahori::random_iwahori(cfg.family, m, K, rng, cfg.s));
  }
  if (cfg.family != Family::GL && m % 2) throw ConfigError("matrix", "Sp and U need an even matrix size");
  iwahori::Chart ch = iwahori::Chart::make(cfg.family, m, cfg.s, cfg.p);
  json items = json::array();
  int n_member = 0, n_rt = 0, n_cert = 0, n_cert_ok = 0, min_margin = kInfValuation;
  for (const auto& g : gs) {
    json item;
    bool member = iwahori::in_iwahori(g, cfg.family, K);
    item["in_iwahori"] = member;
    n_member += member;
    if (member) {
      auto r = iwahori::iwahori_decompose(g);
      Mat<padic::PadicElement> h = r.nbar * r.t * r.n;
      bool rt = is_zero_matrix(Mat<padic::PadicElement>(h - g));
      n_rt += rt;
      item["roundtrip"] = rt;
      if (!cfg.matrix.empty()) {
        item["nbar"] = matrix_json(r.nbar);
        item["t"] = matrix_json(r.t);
        item["n"] = matrix_json(r.n);
      }
      if (iwahori::in_level(g, cfg.family, K, cfg.s)) {
        auto tr = iwahori::translated_coords(g, ch, K, cfg.D);
        ++n_cert;
        n_cert_ok += tr.cert.integral;
        min_margin = std::min(min_margin, tr.cert.min_margin);
        json byd = json::array();
        for (int v : tr.cert.min_valuation_by_degree) byd.push_back(v == kInfValuation ? json(nullptr) : json(v));
        item["certificate"] = {{"D", tr.cert.D},
                               {"integral", tr.cert.integral},
                               {"min_margin", tr.cert.min_margin == kInfValuation ? json(nullptr) : json(tr.cert.min_margin)},
                               {"min_valuation_by_degree", byd},
                               {"effective_precision", tr.effective_precision}};
      } else {
        item["certificate"] = nullptr;
      }
    }
    items.push_back(item);
  }
  const int total = static_cast<int>(gs.size());
  json checks = json::array();
  checks.push_back(check("in_iwahori", n_member == total, std::to_string(n_member) + "/" + std::to_string(total)));
  checks.push_back(check("nbar_t_n_roundtrip", n_rt == n_member, std::to_string(n_rt) + "/" + std::to_string(n_member)));
  checks.push_back(check("integrality_certificate", n_cert_ok == n_cert,
                         std::to_string(n_cert_ok) + "/" + std::to_string(n_cert) + " certified to degree " +
                             std::to_string(cfg.D)));
  RunReport out;
  out.ok = n_member == total && n_rt == n_member && n_cert_ok == n_cert;
  out.body = {{"result",
               {{"m", m},
                {"chart_dim", ch.dim()},
                {"elements", items},
                {"certified", n_cert},
                {"min_margin", min_margin == kInfValuation ? json(nullptr) : json(min_margin)}}},
              {"checks", checks}};
  return out;
}

RunReport run_dmod_weights(const ScenarioConfig& cfg) {
  RootDatum d = datum_of(cfg);
  auto D = make_dmodule(cfg, d);
  auto ms = D->weight_multiset();
  json table = json::array();
  long long total = 0;
  for (const auto& [mu, mult] : ms) {
    table.push_back({{"weight", mu}, {"depth", to_json(D->depth(mu))}, {"multiplicity", mult}});
    total += mult;
  }
  // independent count: exponents by depth, times cosets
  std::map<Weight, long long> alt;
  for (const auto& [mu_u, exps] : D->exponents_up_to(Rational(cfg.N_trunc)))
    alt[D->twist(mu_u)] += static_cast<long long>(exps.size()) * D->ncosets();
  bool consistent = alt == ms;
  bool depth_ok = true;
  for (const auto& [mu, mult] : ms) depth_ok = depth_ok && D->depth(mu) <= cfg.N_trunc && D->depth(mu) >= 0;
  json wl = json::array();
  for (const auto& c : weightspace::dot_action(d, D->w(), D->lambda()).algebraic) wl.push_back(c);
  json checks = json::array();
  checks.push_back(check("enumeration_consistent", consistent));
  checks.push_back(check("depth_within_truncation", depth_ok));
  RunReport out;
  out.ok = consistent && depth_ok;
  out.body = {{"result",
               {{"w", D->w().str()},
                {"w_dot_lambda", wl},
                {"cosets", D->ncosets()},
                {"variables", D->nvars()},
                {"weights", table},
                {"total", total}}},
              {"checks", checks}};
  return out;
}

RunReport run_ce(const ScenarioConfig& cfg) {
  RootDatum d = datum_of(cfg);
  json checks = json::array();
  json result;
  bool ok = true;
  std::unique_ptr<dmod::DModule> D;
  std::unique_ptr<cecomplex::AlgebraicModule> A;
  const dmod::WeightModule* M = nullptr;
  if (cfg.coefficients == "dmod") {
    D = make_dmodule(cfg, d);
    M = D.get();
  } else {
    A = std::make_unique<cecomplex::AlgebraicModule>(make_algebraic(cfg, d));
    M = A.get();
  }
  auto C = cecomplex::build_ce_complex(*M, d, cfg.threads);
  auto R = cecomplex::cohomology(C, cfg.threads, cfg.p, cfg.M);
  checks.push_back(check("d_squared_zero", C.d_squared_zero));
  ok = ok && C.d_squared_zero;
  bool whole = true;
  std::string wit;
  for (int k = 0; k < C.n; ++k) {
    int bsum = 0;
    for (const auto& b : R.blocks) bsum += b.rank[k];
    int wr = cecomplex::whole_matrix_rank(C, k);
    if (wr != bsum) {
      whole = false;
      wit += "d_" + std::to_string(k) + ": " + std::to_string(bsum) + " vs " + std::to_string(wr) + "; ";
    }
  }
  checks.push_back(check("blockwise_equals_whole_rank", whole, wit));
  ok = ok && whole;
  result["cohomology"] = cohomology_json(R, true);
  if (A) {
    auto counts = cecomplex::levi_highest_counts(C, *A, d);
    auto expect = rootdata::wp_length_counts(d);
    expect.resize(counts.size(), 0);
    bool k_ok = counts == expect;
    result["levi_highest_counts"] = counts;
    checks.push_back(check("kostant_counts", k_ok, vec_str(counts) + " vs " + vec_str(expect)));
    ok = ok && k_ok;
  }
  RunReport out;
  out.ok = ok;
  out.body = {{"result", result}, {"checks", checks}, {"pivots", pivots_json(R.pivots)}};
  return out;
}

RunReport run_koszul(const ScenarioConfig& cfg) {
  RootDatum d = datum_of(cfg);
  json checks = json::array();
  json result;
  bool ok = true;
  if (cfg.coefficients == "dmod") {
    auto D = make_dmodule(cfg, d);
    auto K = koszul::build_graded_koszul(*D, cfg.threads);
    auto R = cecomplex::cohomology(K, cfg.threads, cfg.p, cfg.M);
    checks.push_back(check("d_squared_zero", K.d_squared_zero));
    ok = K.d_squared_zero;
    result["cohomology"] = cohomology_json(R, true);
  } else {
    auto A = make_algebraic(cfg, d);
    std::vector<Rational> c(d.nilradical.size(), Rational(1));
    auto K = koszul::build_koszul(koszul::lattice_operators(A, d, c));
    auto H = koszul::group_cohomology(K, cfg.threads);
    checks.push_back(check("d_squared_zero", K.d_squared_zero));
    ok = K.d_squared_zero;
    result["cohomology"] = {{"total", H}};
    if (!cfg.lattice.empty()) {
      auto K2 = koszul::build_koszul(koszul::lattice_operators(A, d, c, cfg.lattice));
      auto H2 = koszul::group_cohomology(K2, cfg.threads);
      bool same = H2 == H;
      result["cohomology_recombined"] = H2;
      checks.push_back(check("independent_of_lattice_generators", same, vec_str(H) + " vs " + vec_str(H2)));
      ok = ok && same;
    }
  }
  const int n = static_cast<int>(d.nilradical.size());
  auto rs = koszul::regular_sequence_shadow(n, std::max(cfg.D, n), cfg.threads);
  json rsj = json::object();
  for (const auto& [g, h] : rs.coh) rsj[std::to_string(g)] = h;
  result["regular_sequence"] = {{"n", n}, {"D", rs.D}, {"by_grade", rsj}, {"top", rs.top}};
  bool rs_ok = rs.exact_below_top && rs.top == 1;
  checks.push_back(check("regular_sequence_shadow", rs_ok, "H^n total " + std::to_string(rs.top)));
  ok = ok && rs_ok;
  RunReport out;
  out.ok = ok;
  out.body = {{"result", result}, {"checks", checks}};
  return out;
}

RunReport run_compare(const ScenarioConfig& cfg) {
  if (cfg.coefficients != "dmod") throw ConfigError("coefficients", "compare needs dmod coefficients");
  RootDatum d = datum_of(cfg);
  auto D = make_dmodule(cfg, d);
  auto c = koszul::compare_group_vs_lie(*D, cfg.threads);
  json blocks = json::array();
  std::string bad;
  for (const auto& b : c.blocks) {
    blocks.push_back({{"nu", b.nu}, {"group", b.group}, {"lie_raw", b.lie_raw}, {"lie_invariant", b.lie_inv},
                      {"equal", b.equal}});
    if (!b.equal && bad.empty()) bad = rootdata::weight_str(b.nu);
  }
  json checks = json::array();
  checks.push_back(check("group_equals_lie_invariants_blockwise", c.all_equal, bad));
  RunReport out;
  out.ok = c.all_equal;
  out.body = {{"result",
               {{"blocks", blocks},
                {"group_total", c.group_total},
                {"lie_raw_total", c.lie_raw_total},
                {"lie_invariant_total", c.lie_inv_total},
                {"raw_exceeds_invariant", c.lie_raw_total != c.lie_inv_total}}},
              {"checks", checks}};
  return out;
}

RunReport run_verify_summand(const ScenarioConfig& cfg) {
  if (cfg.coefficients != "dmod") throw ConfigError("coefficients", "verify-summand needs dmod coefficients");
  RootDatum d = datum_of(cfg);
  auto D = make_dmodule(cfg, d);
  auto R = cecomplex::verify_direct_summand(*D, cfg.threads);
  json checks = json::array();
  for (const auto& c : R.checks) checks.push_back(check(c.name, c.pass, c.witness));
  RunReport out;
  out.ok = R.all_pass();
  out.body = {{"result", {{"w", D->w().str()}, {"l", R.l}, {"generic", weightspace::is_generic(d, D->lambda())}}},
              {"checks", checks},
              {"ranks", {{"cohomology", R.cohomology.total}, {"levi_total", R.levi_total}}},
              {"pivots", pivots_json(R.cohomology.pivots)}};
  return out;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"roots", "weyl", "factor-char", "iwahori", "dmod-weights",
                                          "ce", "koszul", "compare", "verify-summand"};
  return s;
}

RunReport run(const std::string& sub, const ScenarioConfig& cfg) {
  RunReport r;
  if (sub == "roots") r = run_roots(cfg);
  else if (sub == "weyl") r = run_weyl(cfg);
  else if (sub == "factor-char") r = run_factor_char(cfg);
  else if (sub == "iwahori") r = run_iwahori(cfg);
  else if (sub == "dmod-weights") r = run_dmod_weights(cfg);
  else if (sub == "ce") r = run_ce(cfg);
  else if (sub == "koszul") r = run_koszul(cfg);
  else if (sub == "compare") r = run_compare(cfg);
  else if (sub == "verify-summand") r = run_verify_summand(cfg);
  else throw std::invalid_argument("unknown subcommand " + sub);
  json body{{"schema_version", kSchemaVersion}, {"subcommand", sub}, {"scenario", scenario_echo(cfg)}, {"ok", r.ok}};
  for (auto it = r.body.begin(); it != r.body.end(); ++it) body[it.key()] = it.value();
  r.body = body;
  return r;
}

}  // namespace lacoh::io
