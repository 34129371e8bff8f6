#include "lacoh/rootdata.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lacoh;
using namespace lacoh::rootdata;

namespace {

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_SUITE("rootdata") {
  TEST_CASE("sizes of W^P") {
    for (int n = 1; n <= 3; ++n) {
      CHECK(relative_weyl_wp(build_root_datum({Family::GL, n, 1})).size() == static_cast<size_t>(binom(2 * n, n)));
      CHECK(relative_weyl_wp(build_root_datum({Family::Sp, n, 1})).size() == static_cast<size_t>(1 << n));
    }
  }

  TEST_CASE("Siegel nilradicals are abelian and roots split") {
    for (auto f : {Family::GL, Family::Sp, Family::U})
      for (int n = 1; n <= 3; ++n) {
        auto d = build_root_datum({f, n, 1});
        CHECK(is_abelian_nilradical(d));
        CHECK(d.positive.size() == d.levi_positive.size() + d.nilradical.size());
        for (const auto& a : d.positive) CHECK(d.in_lie_algebra(d.root_vector(a)));
        for (const auto& a : d.simple) CHECK(d.height(a) == 1);
      }
  }

  TEST_CASE("length generating function of W^P is a Gaussian binomial") {
    std::vector<std::vector<int>> expect{{1, 1}, {1, 1, 2, 1, 1}, {1, 1, 2, 3, 3, 3, 3, 2, 1, 1}};
    for (int n = 1; n <= 3; ++n) {
      auto c = wp_length_counts(build_root_datum({Family::GL, n, 1}));
      while (!c.empty() && c.back() == 0) c.pop_back();
      CHECK(c == expect[n - 1]);
    }
  }

  TEST_CASE("Kostant: invariants of wedge n^* are the lines of the W^P elements") {
    for (auto f : {Family::GL, Family::Sp})
      for (int n = 1; n <= 2; ++n) {
        auto d = build_root_datum({f, n, 1});
        CHECK(kostant_degree_counts(d) == wp_length_counts(d));
        for (const auto& w : relative_weyl_wp(d)) {
          auto r = kostant_invariant_line(d, w);
          CHECK(r.line_invariant);
          CHECK(r.weight_multiplicity == 1);
          CHECK(r.weight_matches_rho_shift);
        }
      }
  }

  TEST_CASE("W^P membership iff Delta^{+,w} inside n, and the rho shift identity") {
    for (auto f : {Family::GL, Family::Sp}) {
      auto d = build_root_datum({f, 2, 1});
      for (const auto& w : d.weyl_group()) {
        auto wi = w.inverse();
        bool inside = true;
        for (const auto& a : d.positive)
          if (!d.is_positive(wi.apply(a)) && d.nil_index(a) < 0) inside = false;
        CHECK(inside == in_wp(d, w));
        if (!in_wp(d, w)) {
          CHECK_THROWS_AS(delta_plus_w(d, w), NotInWP);
          continue;
        }
        Weight s(d.rank, 0);
        for (const auto& a : delta_plus_w(d, w)) s = s - a;
        CHECK(rho_shift(d, w) == s);
        CHECK(static_cast<int>(delta_plus_w(d, w).size()) == d.abs_length(w));
      }
    }
  }

  TEST_CASE("GL_4 transposition (2 3)") {
    auto d = build_root_datum({Family::GL, 2, 1});
    auto w = parse_weyl(d, "(2 3)");
    CHECK(d.abs_length(w) == 1);
    CHECK(rho_shift(d, w) == Weight{0, -1, 1, 0});
    CHECK(delta_plus_w(d, w) == std::vector<Weight>{{0, 1, -1, 0}});
    CHECK(parse_weyl(d, "[1,3,2,4]") == w);
    CHECK(parse_weyl(d, "#1") == w);
    CHECK_THROWS(parse_weyl(d, "#99"));
  }

  TEST_CASE("Sp Weyl matrices preserve the form") {
    auto d = build_root_datum({Family::Sp, 2, 1});
    for (const auto& w : d.weyl_group()) {
      MatQ W = d.weyl_matrix(w);
      CHECK(is_zero_matrix(MatQ(W.transpose() * d.J * W - d.J)));
    }
  }

  TEST_CASE("group laws") {
    auto d = build_root_datum({Family::Sp, 2, 1});
    auto W = d.weyl_group();
    CHECK(W.size() == 8);
    for (const auto& a : W) {
      CHECK((a * a.inverse()).is_identity());
      for (const auto& b : W)
        for (const auto& x : d.positive) CHECK((a * b).apply(x) == a.apply(b.apply(x)));
    }
  }

  TEST_CASE("unsupported families") {
    CHECK_THROWS(parse_family("SO"));
    CHECK_THROWS(build_root_datum({Family::GL, 0, 1}));
  }
}
