#include "lacoh/linalg.hpp"
#include "lacoh/padic.hpp"

#include <doctest.h>

#include <random>

using namespace lacoh;
using namespace lacoh::padic;

TEST_SUITE("padic") {
  TEST_CASE("log and exp are inverse on principal units") {
    std::mt19937_64 rng(5);
    for (auto E : {UnramifiedExt::qp(5, 10), UnramifiedExt::standard(5, 10, 2), UnramifiedExt::standard(7, 8, 3)}) {
      for (int k = 0; k < 20; ++k) {
        PadicElement x = E->one() + E->random(rng, 1);
        CHECK(padic_exp(padic_log(x)) == x);
        PadicElement y = E->random(rng, 1);
        CHECK(padic_log(padic_exp(y)) == y);
      }
    }
  }

  TEST_CASE("log is a homomorphism") {
    auto K = UnramifiedExt::make(5, 8, {-2, 0});
    PadicElement a = K->from_coeffs({16, 10}), b = K->from_coeffs({26, 5});
    CHECK(padic_log(a * b) == padic_log(a) + padic_log(b));
  }

  TEST_CASE("exp of p is the classical series") {
    auto E = UnramifiedExt::qp(5, 6);
    // sum 5^k/k! mod 5^6
    Rational s = 0, term = 1;
    for (int k = 0; k < 30; ++k) {
      s += term;
      term = term * 5 / (k + 1);
    }
    CHECK(padic_exp(E->from_int(5)) == E->from_rational(s));
  }

  TEST_CASE("domain errors") {
    auto E = UnramifiedExt::qp(5, 6);
    CHECK_THROWS_AS(padic_log(E->from_int(2)), NotPrincipalUnit);
    CHECK_THROWS_AS(padic_exp(E->from_int(1)), ConvergenceDomain);
    CHECK_THROWS_AS(E->from_int(10).inverse(), NotAUnit);
    CHECK_THROWS_AS(UnramifiedExt::make(5, 8, {-1, 0}), InvalidExtension);  // x^2 - 1
    CHECK_THROWS_AS(UnramifiedExt::make(6, 8, {}), InvalidExtension);
    CHECK_THROWS_AS(UnramifiedExt::qp(5, 40), InvalidExtension);
  }

  TEST_CASE("valuations and inverses") {
    auto E = UnramifiedExt::standard(5, 8, 2);
    CHECK(E->from_int(50).valuation() == 2);
    CHECK(E->zero().is_zero());
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
      PadicElement u = E->random_unit(rng);
      CHECK(u * u.inverse() == E->one());
    }
    CHECK(E->from_int(250).div_p_pow(2) == E->from_int(10));
  }

  TEST_CASE("embeddings are distinct mod p and permuted by Frobenius") {
    for (int e : {2, 3}) {
      auto E = UnramifiedExt::standard(5, 8, e);
      auto emb = embeddings(E);
      REQUIRE(emb.size() == e);
      for (int i = 0; i < e; ++i)
        for (int j = i + 1; j < e; ++j) CHECK((emb.images[i] - emb.images[j]).valuation() == 0);
      // Frobenius acts as x -> sigma_1(x); applying it e times returns x and sigma_i(theta) runs through the images
      PadicElement x = E->basis(1), y = x;
      for (int k = 0; k < e; ++k) {
        CHECK(emb.apply(k, x) == y);
        y = frobenius(emb, y);
      }
      CHECK(y == x);
      std::mt19937_64 rng(9);
      PadicElement a = E->random_unit(rng), b = E->random_unit(rng);
      CHECK(norm(emb, a * b) == norm(emb, a) * norm(emb, b));
      CHECK(frobenius(emb, a * b) == frobenius(emb, a) * frobenius(emb, b));
    }
  }

  TEST_CASE("exact linear algebra") {
    MatQ A(3, 3);
    A << 1, 2, 3, 4, 5, 6, 7, 8, 10;
    CHECK(determinant(A) == -3);
    CHECK(rank(A) == 3);
    MatQ B(2, 3);
    B << 1, 2, 3, 2, 4, 6;
    CHECK(rank(B) == 1);
    MatQ K = kernel_basis(B);
    CHECK(K.cols() == 2);
    CHECK(is_zero_matrix(MatQ(B * K)));
    PivotLog log{5, 8, {}};
    MatQ C(2, 2);
    C << 5, 1, 0, 25;
    CHECK(rank(C, &log) == 2);
    CHECK(!log.valuations.empty());
  }
}
