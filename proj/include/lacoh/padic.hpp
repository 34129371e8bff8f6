#pragma once

#include "lacoh/scalar.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace lacoh::padic {

struct NotPrincipalUnit : std::domain_error {
  using std::domain_error::domain_error;
};
struct ConvergenceDomain : std::domain_error {
  using std::domain_error::domain_error;
};
struct InvalidExtension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotAUnit : std::domain_error {
  using std::domain_error::domain_error;
};

struct Precision {
  long p;
  int M;
};

class PadicElement;
class UnramifiedExt;
using ExtPtr = std::shared_ptr<const UnramifiedExt>;

// O_E = Z_p[x]/(f), f monic and irreducible mod p, worked modulo p^M
class UnramifiedExt : public std::enable_shared_from_this<UnramifiedExt> {
 public:
  // f = x^e + f[e-1] x^{e-1} + ... + f[0]
  static ExtPtr make(long p, int M, std::vector<long> f);
  static ExtPtr qp(long p, int M) { return make(p, M, {}); }
  // smallest-lexicographic monic irreducible of degree e
  static ExtPtr standard(long p, int M, int e);

  long p() const { return p_; }
  int M() const { return M_; }
  int degree() const { return e_; }
  int64_t modulus() const { return mod_; }
  const std::vector<long>& poly() const { return f_; }
  Precision precision() const { return {p_, M_}; }
  bool same_field(const UnramifiedExt& o) const { return p_ == o.p_ && f_ == o.f_; }
  ExtPtr with_precision(int M) const;

  PadicElement zero() const;
  PadicElement one() const;
  PadicElement from_int(long long k) const;
  PadicElement from_integer(const Integer& k) const;
  PadicElement from_rational(const Rational& q) const;
  PadicElement from_coeffs(std::vector<long long> c) const;
  // u_{j+1} = theta^j
  PadicElement basis(int j) const;
  PadicElement random(std::mt19937_64& rng, int min_valuation = 0) const;
  PadicElement random_unit(std::mt19937_64& rng) const;

 private:
  UnramifiedExt(long p, int M, std::vector<long> f);
  long p_;
  int M_;
  int e_;
  int64_t mod_;
  std::vector<long> f_;
};

class PadicElement {
 public:
  PadicElement() = default;
  PadicElement(int k) : k_(k) {}
  PadicElement(long k) : k_(k) {}
  PadicElement(long long k) : k_(k) {}
  PadicElement(ExtPtr par, std::vector<int64_t> c);

  const ExtPtr& parent() const { return par_; }
  bool has_parent() const { return par_ != nullptr; }
  const std::vector<int64_t>& coeffs() const { return c_; }
  int64_t coeff(int j) const;
  long long literal() const { return k_; }

  int valuation() const;
  bool is_zero() const { return valuation() == kInfValuation; }
  bool is_unit() const { return valuation() == 0; }

  PadicElement& operator+=(const PadicElement& o);
  PadicElement& operator-=(const PadicElement& o);
  PadicElement& operator*=(const PadicElement& o);
  PadicElement& operator/=(const PadicElement& o);
  PadicElement operator-() const;
  friend PadicElement operator+(PadicElement a, const PadicElement& b) { return a += b; }
  friend PadicElement operator-(PadicElement a, const PadicElement& b) { return a -= b; }
  friend PadicElement operator*(PadicElement a, const PadicElement& b) { return a *= b; }
  friend PadicElement operator/(PadicElement a, const PadicElement& b) { return a /= b; }
  friend bool operator==(const PadicElement& a, const PadicElement& b);
  friend bool operator!=(const PadicElement& a, const PadicElement& b) { return !(a == b); }

  PadicElement inverse() const;
  // exact division by p^k; the top k digits become unknown and are set to zero
  PadicElement div_p_pow(int k) const;
  PadicElement pow(long long n) const;
  // reduce or lift (by zero-padding digits) to another precision of the same field
  PadicElement change_precision(const ExtPtr& target) const;

  std::string str() const;

 private:
  friend class UnramifiedExt;
  PadicElement promoted(const ExtPtr& par) const;
  void adopt(const PadicElement& o);
  ExtPtr par_;
  std::vector<int64_t> c_;
  long long k_ = 0;
};

std::ostream& operator<<(std::ostream& os, const PadicElement& x);

inline bool is_zero(const PadicElement& x) { return x.is_zero(); }
inline bool is_unit(const PadicElement& x) { return x.is_unit(); }

PadicElement padic_log(const PadicElement& x);
PadicElement padic_exp(const PadicElement& x);
// x^a for a in Z_p given by an element of the prime field (coefficient 0), via exp(a log x)
PadicElement zp_power(const PadicElement& x, const PadicElement& a);

struct EmbeddingSet {
  ExtPtr source;
  ExtPtr target;
  std::vector<PadicElement> images;  // images of the generator
  int size() const { return static_cast<int>(images.size()); }
  PadicElement apply(int i, const PadicElement& x) const;
};

EmbeddingSet embeddings(const ExtPtr& E);
// Frobenius automorphism of an unramified extension (the embedding sending theta to its p-th power lift)
PadicElement frobenius(const EmbeddingSet& emb, const PadicElement& x);
// Galois norm down to Z_p, as an element of E
PadicElement norm(const EmbeddingSet& emb, const PadicElement& x);

bool is_prime(long p);

}  // namespace lacoh::padic

namespace lacoh {
using padic::is_unit;
using padic::is_zero;
}  // namespace lacoh

namespace Eigen {
template <>
struct NumTraits<lacoh::padic::PadicElement> : GenericNumTraits<lacoh::padic::PadicElement> {
  typedef lacoh::padic::PadicElement Real;
  typedef lacoh::padic::PadicElement NonInteger;
  typedef lacoh::padic::PadicElement Nested;
  typedef lacoh::padic::PadicElement Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
