#include "lacoh/iwahori.hpp"

#include <doctest.h>

#include <random>

using namespace lacoh;
using namespace lacoh::iwahori;
using padic::UnramifiedExt;

namespace {

struct Case {
  Family f;
  int m;
  int K_degree;
};

}  // namespace

TEST_SUITE("iwahori") {
  TEST_CASE("nbar t n roundtrip and certificates") {
    std::mt19937_64 rng(1);
    for (Case c : {Case{Family::GL, 3, 1}, Case{Family::Sp, 4, 1}, Case{Family::U, 4, 2}}) {
      auto K = UnramifiedExt::standard(5, 12, c.K_degree);
      Chart ch = Chart::make(c.f, c.m, 1, 5);
      for (int it = 0; it < 10; ++it) {
        auto g = random_iwahori(c.f, c.m, K, rng, 1);
        REQUIRE(in_iwahori(g, c.f, K));
        REQUIRE(in_level(g, c.f, K, 1));
        auto r = iwahori_decompose(g);
        CHECK(is_zero_matrix(Mat<PadicElement>(r.nbar * r.t * r.n - g)));
        for (int i = 0; i < c.m; ++i) {
          CHECK(r.nbar(i, i) == K->one());
          CHECK(r.n(i, i) == K->one());
          for (int j = 0; j < i; ++j) CHECK(r.nbar(i, j).valuation() >= 1);
        }
        auto tr = translated_coords(g, ch, K, 4);
        CHECK(tr.cert.integral);
        CHECK(tr.cert.min_margin >= 0);
      }
    }
  }

  TEST_CASE("non-members are rejected") {
    auto K = UnramifiedExt::qp(5, 10);
    Mat<PadicElement> g(2, 2);
    g << K->one(), K->zero(), K->one(), K->one();
    CHECK(!in_iwahori(g, Family::GL, K));
    CHECK_THROWS_AS(iwahori_decompose(g), NotIwahori);
    Chart ch = Chart::make(Family::GL, 2, 1, 5);
    Mat<PadicElement> h(2, 2);
    h << K->one(), K->one(), K->from_int(5), K->from_int(6);
    CHECK(in_iwahori(h, Family::GL, K));
    CHECK(!in_level(h, Family::GL, K, 1));
    CHECK_THROWS_AS(translated_coords(h, ch, K, 4), NotIwahori);
  }

  TEST_CASE("translated coordinates compose") {
    std::mt19937_64 rng(7);
    auto Q = UnramifiedExt::qp(5, 12);
    Chart ch = Chart::make(Family::GL, 3, 1, 5);
    for (int it = 0; it < 20; ++it) {
      auto g = random_iwahori(Family::GL, 3, Q, rng, 1), h = random_iwahori(Family::GL, 3, Q, rng, 1);
      Mat<PadicElement> gh = g * h;
      auto a = translated_coords(gh, ch, Q, 4), b = translated_coords(g, ch, Q, 4), c = translated_coords(h, ch, Q, 4);
      auto comp = compose(b.gn, c.gn);
      // compose divides degree-k coefficients by p^k (k <= D) and the chart carries one more factor p^s
      const int prec = std::min({a.effective_precision, b.effective_precision, c.effective_precision}) - 4 - 1;
      for (size_t k = 0; k < comp.u.size(); ++k) {
        auto diff = comp.u[k] - a.gn.u[k];
        for (const auto& [e, co] : diff.terms()) CHECK(co.valuation() >= prec);
      }
    }
  }

  TEST_CASE("psi and its inverse") {
    for (auto f : {Family::GL, Family::Sp}) {
      Chart ch = Chart::make(f, 4, 1, 5);
      auto ops = polyq_ops(ch);
      std::vector<PolyQ> x;
      for (int j = 0; j < ch.dim(); ++j) x.push_back(PolyQ::variable(ch.dim(), 3, j));
      auto y = psi_inverse(ch, psi(ch, x, ops), ops);
      for (int j = 0; j < ch.dim(); ++j) CHECK(is_zero(PolyQ(y[j] - x[j])));
    }
  }

  TEST_CASE("Sp and U charts factor through GL_2n") {
    CHECK(embed_project_gl(Family::Sp, 2, 1, UnramifiedExt::qp(5, 12)).p_after_i_is_identity);
    CHECK(embed_project_gl(Family::U, 2, 1, UnramifiedExt::standard(5, 12, 2)).p_after_i_is_identity);
  }

  TEST_CASE("w-conjugated factorization of the opposite unipotent") {
    for (auto f : {Family::GL, Family::Sp}) {
      auto d = rootdata::build_root_datum({f, 2, 1});
      for (const auto& w : rootdata::relative_weyl_wp(d)) {
        auto dec = decompose_wNw(d, w, 1, 5);
        CHECK(dec.roundtrip);
        CHECK(dec.section);
        CHECK(static_cast<int>(dec.x_plus.size()) == d.abs_length(w));
        CHECK(static_cast<int>(dec.x_plus.size() + dec.x_levi.size() + dec.x_minus.size()) == chart_for(d, 1, 5).dim());
      }
    }
  }

  TEST_CASE("certificate reports the per-degree valuations") {
    auto Q = UnramifiedExt::qp(5, 12);
    Chart ch = Chart::make(Family::GL, 2, 1, 5);
    Mat<PadicElement> g(2, 2);
    g << Q->from_int(6), Q->from_int(5), Q->from_int(10), Q->from_int(1);
    auto tr = translated_coords(g, ch, Q, 4);
    CHECK(tr.cert.integral);
    CHECK(static_cast<int>(tr.cert.min_valuation_by_degree.size()) >= 2);
  }
}
