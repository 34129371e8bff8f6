// acceptance criteria; one PASS/FAIL line each
#include "lacoh/cecomplex.hpp"
#include "lacoh/dmod.hpp"
#include "lacoh/iwahori.hpp"
#include "lacoh/koszul.hpp"
#include "lacoh/padic.hpp"
#include "lacoh/rootdata.hpp"
#include "lacoh/weightspace.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using namespace lacoh;
using rootdata::Family;
using rootdata::RootDatum;
using rootdata::Weight;
using rootdata::WeylElement;
using rootdata::operator*;
using weightspace::FormalWeight;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool c, const std::string& what) {
    if (!c) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string vec_str(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

RootDatum datum(Family f, int n, int e = 1) { return rootdata::build_root_datum({f, n, e}); }

FormalWeight formal(const RootDatum& d, Weight base = {}) {
  if (base.empty()) base.assign(d.rank, 0);
  rootdata::WeightQ dir;
  for (int i = 0; i < d.rank; ++i) dir.push_back(Rational(d.rank - 1 - i));
  return FormalWeight::with_formal(base, {dir});
}

bool blockwise_equals_whole(const cecomplex::Complex& C, const cecomplex::CohomologyReport& R) {
  for (int k = 0; k < C.n; ++k) {
    int sum = 0;
    for (const auto& b : R.blocks) sum += b.rank[k];
    if (sum != cecomplex::whole_matrix_rank(C, k)) return false;
  }
  return true;
}

Outcome kostant() {
  Outcome o;
  auto d = datum(Family::GL, 2);
  const std::vector<int> want{1, 1, 2, 1, 1};
  for (const auto& [name, M] : {std::pair{"trivial", cecomplex::AlgebraicModule::trivial(d)},
                                std::pair{"standard", cecomplex::AlgebraicModule::standard(d)}}) {
    auto C = cecomplex::build_ce_complex(M, d);
    auto got = cecomplex::levi_highest_counts(C, M, d);
    o.require(got == want, std::string(name) + " " + vec_str(got));
  }
  if (o.pass) o.detail = "trivial and standard: (1,1,2,1,1)";
  return o;
}

Outcome weight_multiset() {
  Outcome o;
  auto d = datum(Family::GL, 1);
  dmod::DModule D(d, WeylElement::identity(2), 2, 3, formal(d), 4);
  auto ms = D.weight_multiset();
  o.require(ms.size() == 5, "expected 5 distinct weights, got " + std::to_string(ms.size()));
  for (int k = 0; k <= 4; ++k) {
    Weight mu{-k, k};
    auto it = ms.find(mu);
    o.require(it != ms.end() && it->second == 3, "weight -" + std::to_string(k) + "alpha");
  }
  if (o.pass) o.detail = "-k alpha, k=0..4, multiplicity 3 each";
  return o;
}

Outcome direct_summand() {
  Outcome o;
  auto run = [&](const std::string& label, const dmod::DModule& D) {
    auto rep = cecomplex::verify_direct_summand(D);
    std::string failed;
    for (const auto& c : rep.checks)
      if (!c.pass) failed += " " + c.name;
    o.require(rep.checks.size() == 6 && rep.all_pass(),
              label + ": " + std::to_string(rep.checks.size()) + " checks, failed:" + failed);
  };
  auto g = datum(Family::GL, 2);
  dmod::DModule D(g, rootdata::parse_weyl(g, "(2 3)"), 1, 5, formal(g), 3);
  run("GL4 formal", D);
  run("GL4 X=0", D.specialize({Rational(0)}));
  auto sp = datum(Family::Sp, 2);
  std::optional<WeylElement> w1;
  for (const auto& w : rootdata::relative_weyl_wp(sp))
    if (!w1 && sp.abs_length(w) == 1) w1 = w;
  o.require(w1.has_value(), "no length-1 representative for Sp4");
  if (w1) run("Sp4 length 1", dmod::DModule(sp, *w1, 1, 5, formal(sp), 3));
  if (o.pass) o.detail = "6/6 checks for GL4 formal, GL4 X=0, Sp4 length 1";
  return o;
}

Outcome exclusion() {
  Outcome o;
  auto d = datum(Family::GL, 2);
  const int nn = static_cast<int>(d.nilradical.size());
  int count = 0;
  for (const auto& w : rootdata::relative_weyl_wp(d)) {
    dmod::DModule D(d, w, 1, 5, formal(d), 3);
    const int l = d.abs_length(w);
    auto at = cecomplex::weight_exclusion(D, l);
    o.require(at.present, "absent at k=l for " + w.str());
    o.require(at.source == rootdata::subset_of(d, rootdata::delta_plus_w(d, w)), "wrong source for " + w.str());
    for (int k : {l - 1, l + 1})
      if (k >= 0 && k <= nn) o.require(!cecomplex::weight_exclusion(D, k).present, "present off degree for " + w.str());
    ++count;
  }
  if (o.pass) o.detail = std::to_string(count) + " elements of W^P";
  return o;
}

Outcome factorization() {
  Outcome o;
  auto E = padic::UnramifiedExt::standard(5, 8, 2);
  std::mt19937_64 rng(2024);
  int good = 0;
  for (int k = 0; k < 100; ++k) {
    auto chi = weightspace::ContinuousCharacter::trivial(E, 1);
    for (auto& v : chi.values[0]) v = E->one() + E->random(rng, 2);
    try {
      auto F = weightspace::factor_character(chi);
      auto rec = weightspace::reconstruct(F);
      bool ok = rec.size() == chi.values[0].size();
      for (size_t j = 0; ok && j < rec.size(); ++j) ok = rec[j] == chi.values[0][j];
      for (const auto& s : F.factors) {
        std::vector<padic::PadicElement> on_basis;
        for (int j = 0; j < E->degree(); ++j) on_basis.push_back(s.eval(F.embeddings, E->basis(j)));
        ok = ok && weightspace::all_equal(weightspace::cr_defect_through(F.embeddings, s.sigma, on_basis));
      }
      good += ok;
    } catch (const std::exception& ex) {
      o.require(false, std::string("character ") + std::to_string(k) + ": " + ex.what());
    }
  }
  o.require(good == 100, std::to_string(good) + "/100 reproduce with zero CR defect");
  if (o.pass) o.detail = "100/100 characters";
  return o;
}

Outcome iwahori_roundtrip() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::ostringstream det;
  for (auto [f, m, deg] : {std::tuple{Family::GL, 3, 1}, std::tuple{Family::Sp, 4, 1}, std::tuple{Family::U, 4, 2}}) {
    auto K = padic::UnramifiedExt::standard(5, 12, deg);
    auto ch = iwahori::Chart::make(f, m, 1, 5);
    int rt = 0, cert = 0;
    for (int k = 0; k < 100; ++k) {
      auto g = iwahori::random_iwahori(f, m, K, rng, 1);
      if (!iwahori::in_iwahori(g, f, K)) continue;
      auto r = iwahori::iwahori_decompose(g);
      rt += is_zero_matrix(Mat<padic::PadicElement>(r.nbar * r.t * r.n - g));
      if (iwahori::in_level(g, f, K, 1)) cert += iwahori::translated_coords(g, ch, K, 4).cert.integral;
    }
    const std::string name = rootdata::family_name(f) + std::to_string(m);
    o.require(rt == 100, name + " roundtrip " + std::to_string(rt) + "/100");
    o.require(cert == 100, name + " certified " + std::to_string(cert) + "/100");
    det << name << " " << rt << "/" << cert << " ";
  }
  if (o.pass) o.detail = "roundtrip/certified per family: " + det.str();
  return o;
}

Outcome koszul_vs_lie() {
  Outcome o;
  auto d = datum(Family::GL, 2);
  dmod::DModule D(d, rootdata::parse_weyl(d, "(2 3)"), 1, 5, FormalWeight::algebraic_weight(Weight(4, 0)), 2);
  auto cmp = koszul::compare_group_vs_lie(D);
  o.require(cmp.group_total.size() == 5, "expected degrees 0..4");
  o.require(cmp.all_equal, "some block differs");
  o.require(cmp.group_total == cmp.lie_inv_total,
            "group " + vec_str(cmp.group_total) + " vs invariants " + vec_str(cmp.lie_inv_total));
  if (o.pass)
    o.detail = "H^q(Gamma) = H^q(n)^{N_w} blockwise, totals " + vec_str(cmp.group_total) + " over " +
               std::to_string(cmp.blocks.size()) + " blocks";
  return o;
}

Outcome fuzz() {
  Outcome o;
  std::mt19937_64 rng(20261015);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int cases = 0;
  std::map<std::string, int> by_kind;
  auto note = [&](const std::string& kind, bool ok, const std::string& what) {
    ++cases;
    ++by_kind[kind];
    o.require(ok, kind + " case " + std::to_string(by_kind[kind]) + ": " + what);
  };
  const std::vector<std::pair<Family, int>> groups{{Family::GL, 1}, {Family::GL, 2}, {Family::Sp, 1}, {Family::Sp, 2}};

  // finite coefficients
  for (int k = 0; k < 40; ++k) {
    auto [f, n] = groups[pick(0, 3)];
    auto d = datum(f, n);
    auto M = cecomplex::AlgebraicModule::standard(d);
    switch (pick(0, 5)) {
      case 0: M = cecomplex::AlgebraicModule::trivial(d); break;
      case 1: break;
      case 2: M = M.dual(); break;
      case 3: M = M.sym(2); break;
      case 4: M = M.wedge(2); break;
      default: M = M.dual().sym(2); break;
    }
    auto C = cecomplex::build_ce_complex(M, d, pick(1, 3));
    auto R = cecomplex::cohomology(C);
    note("d2_finite", C.d_squared_zero, "d^2 != 0");
    note("ranks_finite", blockwise_equals_whole(C, R), "blockwise ranks differ from whole");
  }

  // D-module coefficients
  for (int k = 0; k < 30; ++k) {
    auto [f, n] = groups[pick(0, 3)];
    auto d = datum(f, n);
    auto W = rootdata::relative_weyl_wp(d);
    auto w = W[pick(0, static_cast<int>(W.size()) - 1)];
    Weight base(d.rank);
    for (auto& x : base) x = pick(-2, 2);
    dmod::DModule D(d, w, 1, 5, formal(d, base), pick(1, 3));
    auto C = cecomplex::build_ce_complex(D, d);
    auto R = cecomplex::cohomology(C);
    note("d2_dmod", C.d_squared_zero, "d^2 != 0 for " + w.str());
    note("ranks_dmod", blockwise_equals_whole(C, R), "blockwise ranks differ for " + w.str());
  }

  // p~ i~ = id and the remaining summand checks
  for (int k = 0; k < 20; ++k) {
    auto [f, n] = groups[pick(0, 3)];
    auto d = datum(f, n);
    auto W = rootdata::relative_weyl_wp(d);
    auto w = W[pick(0, static_cast<int>(W.size()) - 1)];
    Weight base(d.rank);
    for (auto& x : base) x = pick(-2, 2);
    dmod::DModule D(d, w, 1, 5, formal(d, base), pick(1, 2));
    auto rep = cecomplex::verify_direct_summand(D);
    std::string failed;
    for (const auto& c : rep.checks)
      if (!c.pass) failed += " " + c.name;
    note("summand", rep.all_pass(), w.str() + " failed:" + failed);
  }

  // dot action cocycle
  for (int k = 0; k < 50; ++k) {
    auto [f, n] = groups[pick(0, 3)];
    auto d = datum(f, n);
    auto G = d.weyl_group();
    const auto& a = G[pick(0, static_cast<int>(G.size()) - 1)];
    const auto& b = G[pick(0, static_cast<int>(G.size()) - 1)];
    Weight base(d.rank);
    for (auto& x : base) x = pick(-5, 5);
    rootdata::WeightQ dir(d.rank);
    for (auto& x : dir) x = Rational(pick(-6, 6), pick(1, 4));
    auto lam = FormalWeight::with_formal(base, {dir});
    note("cocycle", weightspace::dot_action(d, a * b, lam) == weightspace::dot_action(d, a, weightspace::dot_action(d, b, lam)),
         a.str() + " " + b.str());
  }

  // exp/log round trips
  for (int k = 0; k < 60; ++k) {
    const long p = std::vector<long>{3, 5, 7}[pick(0, 2)];
    auto E = padic::UnramifiedExt::standard(p, pick(4, 12), pick(1, 3));
    auto x = E->one() + E->random(rng, 1);
    auto y = E->random(rng, 1);
    note("explog", padic::padic_exp(padic::padic_log(x)) == x && padic::padic_log(padic::padic_exp(y)) == y,
         "p=" + std::to_string(p));
  }

  o.require(cases >= 200, "only " + std::to_string(cases) + " cases");
  if (o.pass) {
    o.detail = std::to_string(cases) + " seeded cases:";
    for (const auto& [kind, n] : by_kind) o.detail += " " + kind + "=" + std::to_string(n);
  }
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double limit;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run one criterion (1-8); default all")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "kostant", 10, kostant},
      {2, "weight-multiset", 5, weight_multiset},
      {3, "direct-summand", 300, direct_summand},
      {4, "weight-exclusion", 30, exclusion},
      {5, "character-factorization", 10, factorization},
      {6, "iwahori", 60, iwahori_roundtrip},
      {7, "koszul-vs-lie", 300, koszul_vs_lie},
      {8, "structural-invariants", 120, fuzz},
  };
  bool ok = true;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit) o.require(false, "over time limit");
    std::ostringstream line;
    line.precision(3);
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.name << " (" << std::fixed << secs
         << " s / " << c.limit << " s): " << o.detail;
    std::cout << line.str() << std::endl;
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
