#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <climits>
#include <string>
#include <vector>

namespace lacoh {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

constexpr int kInfValuation = INT_MAX;

int padic_valuation(const Integer& x, long p);
int padic_valuation(const Rational& x, long p);

std::string to_string(const Rational& x);

// Q[X_1..X_r] / (X_i X_j): first-order neighbourhood of a point weight.
class FamilyElem {
 public:
  FamilyElem() = default;
  FamilyElem(long c) : c0_(c) {}
  FamilyElem(int c) : c0_(c) {}
  FamilyElem(const Rational& c) : c0_(c) {}
  FamilyElem(const Rational& c, std::vector<Rational> lin);

  static FamilyElem variable(int r, int j);

  const Rational& constant() const { return c0_; }
  Rational linear(int j) const;
  int nvars() const { return static_cast<int>(lin_.size()); }
  bool is_zero() const;
  bool is_unit() const { return c0_ != 0; }
  // X_j -> point_j
  Rational evaluate(const std::vector<Rational>& point) const;

  FamilyElem& operator+=(const FamilyElem& o);
  FamilyElem& operator-=(const FamilyElem& o);
  FamilyElem& operator*=(const FamilyElem& o);
  FamilyElem& operator/=(const FamilyElem& o);
  FamilyElem operator-() const;

  friend FamilyElem operator+(FamilyElem a, const FamilyElem& b) { return a += b; }
  friend FamilyElem operator-(FamilyElem a, const FamilyElem& b) { return a -= b; }
  friend FamilyElem operator*(FamilyElem a, const FamilyElem& b) { return a *= b; }
  friend FamilyElem operator/(FamilyElem a, const FamilyElem& b) { return a /= b; }
  friend bool operator==(const FamilyElem& a, const FamilyElem& b);
  friend bool operator!=(const FamilyElem& a, const FamilyElem& b) { return !(a == b); }

  std::string str() const;

 private:
  void widen(int r);
  Rational c0_{0};
  std::vector<Rational> lin_;
};

std::ostream& operator<<(std::ostream& os, const FamilyElem& x);

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const FamilyElem& x) { return x.is_zero(); }
inline bool is_unit(const Rational& x) { return x != 0; }
inline bool is_unit(const FamilyElem& x) { return x.is_unit(); }

// number of Q-coordinates of a scalar (1 for Q, 1+r for the family ring)
inline int q_width(const Rational&) { return 1; }
inline int q_width(const FamilyElem& x) { return 1 + x.nvars(); }

}  // namespace lacoh

namespace Eigen {
template <>
struct NumTraits<lacoh::FamilyElem> : GenericNumTraits<lacoh::FamilyElem> {
  typedef lacoh::FamilyElem Real;
  typedef lacoh::FamilyElem NonInteger;
  typedef lacoh::FamilyElem Nested;
  typedef lacoh::FamilyElem Literal;
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
