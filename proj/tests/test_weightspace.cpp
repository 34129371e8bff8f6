#include "lacoh/weightspace.hpp"

#include <doctest.h>

#include <random>

using namespace lacoh;
using namespace lacoh::weightspace;
using padic::UnramifiedExt;

TEST_SUITE("weightspace") {
  TEST_CASE("factoring a product of sigma-analytic characters recovers the slopes") {
    auto E = UnramifiedExt::standard(5, 8, 2);
    auto emb = padic::embeddings(E);
    std::mt19937_64 rng(17);
    for (int it = 0; it < 20; ++it) {
      std::vector<PadicElement> slopes{E->random(rng, 2), E->random(rng, 2)};
      ContinuousCharacter chi = ContinuousCharacter::trivial(E);
      for (int j = 0; j < 2; ++j) {
        PadicElement acc = E->zero();
        for (int i = 0; i < 2; ++i) acc += slopes[i] * emb.apply(i, E->basis(j));
        chi.values[0][j] = padic::padic_exp(acc);
      }
      auto F = factor_character(chi);
      REQUIRE(F.factors.size() == 2);
      for (int i = 0; i < 2; ++i) CHECK(F.factors[i].slope == slopes[i]);
    }
  }

  TEST_CASE("analytic characters are sigma_0-analytic") {
    auto E = UnramifiedExt::standard(5, 8, 2);
    PadicElement c = E->from_coeffs({25, 50});
    auto chi = ContinuousCharacter::analytic(E, {c});
    CHECK(is_locally_analytic(chi));
    auto F = factor_character(chi);
    CHECK(F.factors[0].slope == c);
    CHECK(F.factors[1].slope.is_zero());
  }

  TEST_CASE("every character of Z_p is locally analytic, but not every character of O_E") {
    auto Q = UnramifiedExt::qp(5, 8);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 10; ++k) {
      ContinuousCharacter chi = ContinuousCharacter::trivial(Q);
      chi.values[0][0] = Q->one() + Q->random(rng, 1);
      CHECK(is_locally_analytic(chi));
    }
    auto E = UnramifiedExt::standard(5, 8, 2);
    ContinuousCharacter chi = ContinuousCharacter::trivial(E);
    chi.values[0][0] = E->from_int(26);
    CHECK(!is_locally_analytic(chi));
  }

  TEST_CASE("product of factors reproduces the generator values and each factor has zero defect") {
    auto E = UnramifiedExt::standard(5, 8, 2);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; ++k) {
      ContinuousCharacter chi = ContinuousCharacter::trivial(E);
      for (auto& v : chi.values[0]) v = E->one() + E->random(rng, 2);
      auto F = factor_character(chi);
      CHECK(reconstruct(F) == chi.values[0]);
      for (const auto& s : F.factors) {
        std::vector<PadicElement> vals;
        for (int j = 0; j < 2; ++j) vals.push_back(s.eval(F.embeddings, E->basis(j)));
        CHECK(all_equal(cr_defect_through(F.embeddings, s.sigma, vals)));
      }
    }
  }

  TEST_CASE("radius and validation errors") {
    auto E = UnramifiedExt::standard(5, 8, 2);
    ContinuousCharacter chi = ContinuousCharacter::trivial(E);
    chi.values[0][0] = E->from_int(6);
    CHECK_THROWS_AS(factor_character(chi), OutsideRadius);
    chi.values[0][0] = E->from_int(2);
    CHECK_THROWS_AS(chi.validate(), padic::NotPrincipalUnit);
    chi.values[0].pop_back();
    CHECK_THROWS(chi.validate());
  }

  TEST_CASE("eval_character is a homomorphism") {
    auto E = UnramifiedExt::standard(5, 8, 2);
    std::mt19937_64 rng(8);
    ContinuousCharacter chi = ContinuousCharacter::trivial(E);
    for (auto& v : chi.values[0]) v = E->one() + E->random(rng, 1);
    PadicElement a = E->random(rng), b = E->random(rng);
    CHECK(eval_character(chi, {a + b}) == eval_character(chi, {a}) * eval_character(chi, {b}));
    CHECK(eval_character(chi, {E->basis(1)}) == chi.values[0][1]);
  }

  TEST_CASE("genericity") {
    auto d = rootdata::build_root_datum({rootdata::Family::GL, 1, 1});
    CHECK(is_generic(d, FormalWeight::with_formal({0, 0}, {{1, 0}})));
    CHECK(!is_generic(d, FormalWeight::with_formal({0, 0}, {{1, 1}})));
    CHECK(!is_generic(d, FormalWeight::algebraic_weight({3, 0})));
  }

  TEST_CASE("dot action is a cocycle and moves the formal part linearly") {
    for (auto f : {rootdata::Family::GL, rootdata::Family::Sp}) {
      auto d = rootdata::build_root_datum({f, 2, 1});
      auto lam = FormalWeight::with_formal(rootdata::Weight(d.rank, 1), {rootdata::WeightQ(d.rank, Rational(1, 2))});
      auto W = d.weyl_group();
      for (const auto& a : W)
        for (const auto& b : W) CHECK(dot_action(d, a * b, lam) == dot_action(d, a, dot_action(d, b, lam)));
    }
  }

  TEST_CASE("specialization") {
    auto lam = FormalWeight::with_formal({1, 0}, {{2, 0}});
    auto s = lam.specialize({Rational(3)});
    CHECK(s.base() == rootdata::Weight{7, 0});
    CHECK(s.nformal() == 0);
    CHECK_THROWS(lam.specialize({Rational(1, 3)}));
    CHECK(lam.coordinate(0).linear(0) == 2);
  }
}
