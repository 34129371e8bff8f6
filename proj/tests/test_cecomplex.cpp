#include "lacoh/cecomplex.hpp"

#include <doctest.h>

#include <numeric>

using namespace lacoh;
using namespace lacoh::cecomplex;
using rootdata::Family;

namespace {

RootDatum datum(Family f) { return rootdata::build_root_datum({f, 2, 1}); }

FormalWeight formal(const RootDatum& d) {
  rootdata::WeightQ v;
  for (int i = 0; i < d.rank; ++i) v.push_back(Rational(d.rank - 1 - i));
  return FormalWeight::with_formal(Weight(d.rank, 0), {v});
}

}  // namespace

TEST_SUITE("cecomplex") {
  TEST_CASE("Kostant counts for finite coefficients") {
    auto d = datum(Family::GL);
    std::vector<int> expect{1, 1, 2, 1, 1};
    for (const auto& M : {AlgebraicModule::trivial(d), AlgebraicModule::standard(d), AlgebraicModule::standard(d).dual()}) {
      auto C = build_ce_complex(M, d);
      CHECK(C.d_squared_zero);
      CHECK(levi_highest_counts(C, M, d) == expect);
    }
    auto s = datum(Family::Sp);
    auto T = AlgebraicModule::trivial(s);
    CHECK(levi_highest_counts(build_ce_complex(T, s), T, s) == std::vector<int>{1, 1, 1, 1});
  }

  TEST_CASE("trivial coefficients: cohomology is the exterior algebra") {
    auto d = datum(Family::GL);
    auto R = cohomology(build_ce_complex(AlgebraicModule::trivial(d), d));
    CHECK(R.total == std::vector<int>{1, 4, 6, 4, 1});
  }

  TEST_CASE("cohomology does not depend on the root order") {
    auto d = datum(Family::GL);
    auto M = AlgebraicModule::standard(d).sym(2);
    std::vector<int> order(d.nilradical.size());
    std::iota(order.rbegin(), order.rend(), 0);
    auto a = cohomology(build_ce_complex(M, d)), b = cohomology(build_ce_complex_ordered(M, d, order));
    REQUIRE(a.blocks.size() == b.blocks.size());
    for (size_t i = 0; i < a.blocks.size(); ++i) CHECK(a.blocks[i].coh == b.blocks[i].coh);
    dmod::DModule D(d, rootdata::parse_weyl(d, "(2 3)"), 1, 5, formal(d), 2);
    std::vector<int> swap{1, 0, 3, 2};
    CHECK(cohomology(build_ce_complex(D, d)).total == cohomology(build_ce_complex_ordered(D, d, swap)).total);
  }

  TEST_CASE("blockwise ranks equal whole-matrix ranks") {
    auto d = datum(Family::GL);
    dmod::DModule D(d, rootdata::parse_weyl(d, "(2 3)"), 1, 5, formal(d), 2);
    auto C = build_ce_complex(D, d);
    auto R = cohomology(C, 2);
    for (int k = 0; k < C.n; ++k) {
      int s = 0;
      for (const auto& b : R.blocks) s += b.rank[k];
      CHECK(s == whole_matrix_rank(C, k));
    }
  }

  TEST_CASE("direct summand checks for every W^P element") {
    for (auto f : {Family::GL, Family::Sp}) {
      auto d = datum(f);
      auto lam = formal(d);
      for (const auto& w : rootdata::relative_weyl_wp(d))
        for (const auto& l : {lam, lam.specialize({Rational(0)})}) {
          dmod::DModule D(d, w, 1, 5, l, 2);
          auto R = verify_direct_summand(D, 2);
          CHECK(R.checks.size() == 6);
          for (const auto& c : R.checks) {
            INFO(rootdata::family_name(f), " ", w.str(), " ", c.name, ": ", c.witness);
            CHECK(c.pass);
          }
          CHECK(R.l == d.abs_length(w));
        }
    }
  }

  TEST_CASE("weight exclusion") {
    auto d = datum(Family::GL);
    for (const auto& w : rootdata::relative_weyl_wp(d)) {
      dmod::DModule D(d, w, 1, 5, formal(d), 3);
      const int l = d.abs_length(w);
      auto at = weight_exclusion(D, l);
      CHECK(at.present);
      CHECK(at.source == rootdata::subset_of(d, rootdata::delta_plus_w(d, w)));
      for (int k : {l - 1, l + 1})
        if (k >= 0 && k <= static_cast<int>(d.nilradical.size())) CHECK(!weight_exclusion(D, k).present);
    }
  }

  TEST_CASE("non-commuting operators are caught by the d^2 check") {
    OperatorFamily ops;
    ops.n = 2;
    ops.shifts.assign(2, Weight{0});
    ops.block_dim = [](const Weight&) { return 2; };
    ops.op = [](int i, const Weight&) {
      MatF A = zero_matrix<FamilyElem>(2, 2);
      if (i == 0) A(0, 1) = 1;
      else A(1, 0) = 1;
      return A;
    };
    CHECK(!build_exterior_complex(ops, {Weight{0}}).d_squared_zero);
  }

  TEST_CASE("N_w-invariant classes never exceed raw classes") {
    auto d = datum(Family::GL);
    auto w = rootdata::parse_weyl(d, "(2 3)");
    dmod::DModule D(d, w, 1, 5, formal(d), 2);
    auto C = build_ce_complex(D, d);
    auto R = cohomology(C);
    std::vector<MatQ> gens;
    for (const auto& a : d.nilradical) gens.push_back(nilpotent_generator(d, w, a, 5));
    for (const auto& b : R.blocks)
      for (int k = 0; k <= C.n; ++k) CHECK(invariant_classes(D, C, gens, b.nu, k) <= b.coh[k]);
  }
}
