#pragma once

#include "lacoh/scalar.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lacoh {

struct TruncationOverflow : std::domain_error {
  using std::domain_error::domain_error;
};

using Exponent = std::vector<int>;

namespace detail {
template <class S>
bool scalar_is_zero(const S& c) {
  return is_zero(c);
}
template <class S>
bool scalar_is_unit(const S& c) {
  return is_unit(c);
}
}  // namespace detail

inline int total_degree(const Exponent& a) { return std::accumulate(a.begin(), a.end(), 0); }

// Multivariate series over S, truncated at total degree D (D = -1: exact polynomial).
// A default / integer-constructed value is a "literal" constant with no variables; it
// adopts the shape of whatever it is combined with.
template <class S>
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(int c) { set_const(S(c)); }
  TruncSeries(long c) { set_const(S(c)); }
  TruncSeries(const S& c) { set_const(c); }
  TruncSeries(int nvars, int trunc) : n_(nvars), D_(trunc) {}

  static TruncSeries constant(int nvars, int trunc, const S& c) {
    TruncSeries r(nvars, trunc);
    r.add_term(Exponent(nvars, 0), c);
    return r;
  }
  static TruncSeries variable(int nvars, int trunc, int j, const S& one = S(1)) {
    TruncSeries r(nvars, trunc);
    Exponent a(nvars, 0);
    a[j] = 1;
    r.add_term(a, one);
    return r;
  }
  static TruncSeries monomial(int trunc, const Exponent& a, const S& c) {
    TruncSeries r(static_cast<int>(a.size()), trunc);
    r.add_term(a, c);
    return r;
  }

  int nvars() const { return n_; }
  int trunc() const { return D_; }
  bool exact() const { return D_ < 0; }
  const std::map<Exponent, S>& terms() const { return t_; }

  S coeff(const Exponent& a) const {
    auto it = t_.find(pad(a));
    return it == t_.end() ? S(0) : it->second;
  }
  S constant_term() const { return coeff(Exponent(n_, 0)); }
  bool is_constant() const {
    for (const auto& [a, c] : t_)
      if (total_degree(a) > 0) return false;
    return true;
  }
  int degree() const {
    int d = -1;
    for (const auto& [a, c] : t_) d = std::max(d, total_degree(a));
    return d;
  }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Exponent& a0, const S& c) {
    Exponent a = pad(a0);
    if (D_ >= 0 && total_degree(a) > D_) return;
    if (lacoh_is_zero(c)) return;
    auto it = t_.find(a);
    if (it == t_.end()) {
      t_.emplace(a, c);
      return;
    }
    it->second += c;
    if (lacoh_is_zero(it->second)) t_.erase(it);
  }

  TruncSeries& operator+=(const TruncSeries& o) {
    align(o);
    for (const auto& [a, c] : o.t_) add_term(a, c);
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    align(o);
    for (const auto& [a, c] : o.t_) add_term(a, -c);
    return *this;
  }
  TruncSeries& operator*=(const TruncSeries& o) {
    align(o);
    TruncSeries r(n_, D_);
    for (const auto& [a, c] : t_)
      for (const auto& [b, d] : o.t_) {
        Exponent ab = a;
        for (size_t i = 0; i < b.size() && i < ab.size(); ++i) ab[i] += b[i];
        if (D_ >= 0 && total_degree(ab) > D_) continue;
        r.add_term(ab, c * d);
      }
    *this = std::move(r);
    return *this;
  }
  TruncSeries& operator/=(const TruncSeries& o) { return *this *= o.inverse(); }
  TruncSeries operator-() const {
    TruncSeries r = *this;
    for (auto& [a, c] : r.t_) c = -c;
    return r;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const TruncSeries& b) { return a *= b; }
  friend TruncSeries operator/(TruncSeries a, const TruncSeries& b) { return a /= b; }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return (a - b).is_zero(); }
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  TruncSeries scaled(const S& c) const {
    TruncSeries r(n_, D_);
    for (const auto& [a, x] : t_) r.add_term(a, x * c);
    return r;
  }

  // geometric-series inverse; exact polynomials must be constant
  TruncSeries inverse() const {
    S c0 = constant_term();
    if (!lacoh_is_unit(c0)) throw std::domain_error("TruncSeries: constant term is not a unit");
    S c0inv = S(1) / c0;
    if (is_constant()) {
      TruncSeries r = *this;
      r.t_.clear();
      r.add_term(Exponent(n_, 0), c0inv);
      return r;
    }
    if (D_ < 0) throw std::domain_error("TruncSeries: inverse of a non-constant polynomial");
    TruncSeries u = TruncSeries::constant(n_, D_, S(1)) - scaled(c0inv);  // nilpotent at truncation
    TruncSeries acc = TruncSeries::constant(n_, D_, S(1)), pw = acc;
    for (int k = 1; k <= D_; ++k) {
      pw *= u;
      acc += pw;
    }
    return acc.scaled(c0inv);
  }

  TruncSeries pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    TruncSeries r = TruncSeries::constant(n_, D_, S(1)), b = *this;
    while (k > 0) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }

  // f(v_1, ..., v_n); all v_j share one shape
  TruncSeries substitute(const std::vector<TruncSeries>& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("substitute: arity mismatch");
    int m = 0, D = -1;
    for (const auto& x : v) {
      m = std::max(m, x.n_);
      if (x.D_ >= 0) D = (D < 0) ? x.D_ : std::min(D, x.D_);
    }
    TruncSeries r(m, D);
    std::vector<std::vector<TruncSeries>> powers(n_);
    for (const auto& [a, c] : t_) {
      TruncSeries term = TruncSeries::constant(m, D, c);
      for (int j = 0; j < n_; ++j) {
        if (a[j] == 0) continue;
        auto& pj = powers[j];
        if (pj.empty()) pj.push_back(TruncSeries::constant(m, D, S(1)));
        while (static_cast<int>(pj.size()) <= a[j]) pj.push_back(pj.back() * v[j]);
        term *= pj[a[j]];
      }
      r += term;
    }
    return r;
  }

  // change truncation (lowering drops high terms)
  TruncSeries with_trunc(int D) const {
    TruncSeries r(n_, D);
    for (const auto& [a, c] : t_) r.add_term(a, c);
    return r;
  }
  TruncSeries with_nvars(int n) const {
    if (n < n_) throw std::invalid_argument("with_nvars: cannot shrink");
    TruncSeries r(n, D_);
    for (const auto& [a, c] : t_) r.add_term(a, c);
    return r;
  }

  template <class F>
  auto map_coeffs(F&& f) const {
    using T = decltype(f(std::declval<const S&>()));
    TruncSeries<T> r(n_, D_);
    for (const auto& [a, c] : t_) r.add_term(a, f(c));
    return r;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : t_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      for (int j = 0; j < n_; ++j)
        if (a[j] > 0) os << "*x" << (j + 1) << (a[j] > 1 ? "^" + std::to_string(a[j]) : "");
    }
    return os.str();
  }

 private:
  template <class>
  friend class TruncSeries;

  static bool lacoh_is_zero(const S& c) { return detail::scalar_is_zero(c); }
  static bool lacoh_is_unit(const S& c) { return detail::scalar_is_unit(c); }

  void set_const(const S& c) {
    if (!lacoh_is_zero(c)) t_.emplace(Exponent{}, c);
  }
  Exponent pad(const Exponent& a) const {
    if (static_cast<int>(a.size()) == n_) return a;
    Exponent b(n_, 0);
    for (size_t i = 0; i < a.size() && static_cast<int>(i) < n_; ++i) b[i] = a[i];
    return b;
  }
  void align(const TruncSeries& o) {
    int D = D_;
    if (o.D_ >= 0) D = (D_ < 0) ? o.D_ : std::min(D_, o.D_);
    if (o.n_ > n_ || D != D_) {
      std::map<Exponent, S> old;
      old.swap(t_);
      n_ = std::max(n_, o.n_);
      D_ = D;
      for (const auto& [a, c] : old) add_term(a, c);
    }
  }

  int n_ = 0;
  int D_ = -1;
  std::map<Exponent, S> t_;
};

template <class S>
bool is_zero(const TruncSeries<S>& x) {
  return x.is_zero();
}
template <class S>
bool is_unit(const TruncSeries<S>& x) {
  return is_unit(x.constant_term()) && (x.trunc() >= 0 || x.is_constant());
}
template <class S>
std::ostream& operator<<(std::ostream& os, const TruncSeries<S>& x) {
  return os << x.str();
}

// log of a series with constant term 1
template <class S>
TruncSeries<S> series_log(const TruncSeries<S>& f) {
  if (f.constant_term() != S(1)) throw std::domain_error("series_log: constant term must be 1");
  TruncSeries<S> u = f - TruncSeries<S>::constant(f.nvars(), f.trunc(), S(1));
  if (u.is_zero()) return TruncSeries<S>(f.nvars(), f.trunc());
  if (f.exact()) throw std::domain_error("series_log: needs a truncation degree");
  TruncSeries<S> acc(f.nvars(), f.trunc()), pw = TruncSeries<S>::constant(f.nvars(), f.trunc(), S(1));
  for (int k = 1; k <= f.trunc(); ++k) {
    pw *= u;
    S c = S(k % 2 == 1 ? 1 : -1) / S(k);
    acc += pw.scaled(c);
  }
  return acc;
}

// a + b eps with eps^2 = 0
template <class T>
struct Dual {
  T a{0};
  T b{0};
  Dual() = default;
  Dual(int k) : a(k), b(0) {}
  Dual(long k) : a(k), b(0) {}
  Dual(const T& x) : a(x), b(0) {}
  Dual(const T& x, const T& y) : a(x), b(y) {}

  Dual& operator+=(const Dual& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    b = a * o.b + b * o.a;
    a *= o.a;
    return *this;
  }
  Dual inverse() const {
    T ai = T(1) / a;
    return Dual(ai, -(ai * b * ai));
  }
  Dual& operator/=(const Dual& o) { return *this *= o.inverse(); }
  Dual operator-() const { return Dual(-a, -b); }
  friend Dual operator+(Dual x, const Dual& y) { return x += y; }
  friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
  friend Dual operator*(Dual x, const Dual& y) { return x *= y; }
  friend Dual operator/(Dual x, const Dual& y) { return x /= y; }
  friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }
};

template <class T>
bool is_zero(const Dual<T>& x) {
  return is_zero(x.a) && is_zero(x.b);
}
template <class T>
bool is_unit(const Dual<T>& x) {
  return is_unit(x.a);
}
template <class T>
std::ostream& operator<<(std::ostream& os, const Dual<T>& x) {
  return os << "(" << x.a << ") + (" << x.b << ")eps";
}

using PolyQ = TruncSeries<Rational>;

}  // namespace lacoh

namespace Eigen {
template <class S>
struct NumTraits<lacoh::TruncSeries<S>> : GenericNumTraits<lacoh::TruncSeries<S>> {
  typedef lacoh::TruncSeries<S> Real;
  typedef lacoh::TruncSeries<S> NonInteger;
  typedef lacoh::TruncSeries<S> Nested;
  typedef lacoh::TruncSeries<S> Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
template <class T>
struct NumTraits<lacoh::Dual<T>> : GenericNumTraits<lacoh::Dual<T>> {
  typedef lacoh::Dual<T> Real;
  typedef lacoh::Dual<T> NonInteger;
  typedef lacoh::Dual<T> Nested;
  typedef lacoh::Dual<T> Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
