#include "lacoh/padic.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace lacoh::padic {

namespace {

using i128 = __int128;

int64_t mod_norm(i128 a, int64_t m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<int64_t>(r);
}

// ---- polynomials over F_p, lowest degree first ----
using PolyP = std::vector<long>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  return ((t % p) + p) % p;
}

PolyP poly_mod(PolyP a, const PolyP& f, long p) {
  trim(a);
  const int df = static_cast<int>(f.size()) - 1;
  long lead_inv = inv_mod(f.back(), p);
  while (static_cast<int>(a.size()) - 1 >= df && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    long c = a.back() * lead_inv % p;
    for (int i = 0; i <= df; ++i) a[da - df + i] = ((a[da - df + i] - c * f[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& f, long p) {
  if (a.empty() || b.empty()) return {};
  PolyP c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_mod(c, f, p);
}

PolyP poly_powmod(PolyP a, long long n, const PolyP& f, long p) {
  PolyP r{1};
  a = poly_mod(a, f, p);
  while (n > 0) {
    if (n & 1) r = poly_mulmod(r, a, f, p);
    a = poly_mulmod(a, a, f, p);
    n >>= 1;
  }
  return r;
}

PolyP poly_gcd(PolyP a, PolyP b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = poly_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

bool irreducible_mod_p(const PolyP& f_monic, long p) {
  const int e = static_cast<int>(f_monic.size()) - 1;
  if (e <= 1) return true;
  PolyP h{0, 1};
  for (int i = 1; i <= e / 2; ++i) {
    h = poly_powmod(h, p, f_monic, p);
    PolyP g = h;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = ((g[1] - 1) % p + p) % p;
    trim(g);
    PolyP d = poly_gcd(f_monic, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

int64_t ipow_checked(long p, int M) {
  i128 m = 1;
  for (int i = 0; i < M; ++i) {
    m *= p;
    if (m > (static_cast<i128>(1) << 62)) throw InvalidExtension("p^M exceeds the 2^62 working bound");
  }
  return static_cast<int64_t>(m);
}

}  // namespace

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// ---------------- UnramifiedExt ----------------

UnramifiedExt::UnramifiedExt(long p, int M, std::vector<long> f)
    : p_(p), M_(M), e_(static_cast<int>(f.size())), mod_(ipow_checked(p, M)), f_(std::move(f)) {}

ExtPtr UnramifiedExt::make(long p, int M, std::vector<long> f) {
  if (!is_prime(p)) throw InvalidExtension("p must be prime");
  if (p == 2) throw InvalidExtension("p = 2 is not supported");
  if (M < 1) throw InvalidExtension("precision M must be at least 1");
  if (f.empty()) f = {0};
  PolyP fm(f.begin(), f.end());
  for (auto& c : fm) c = ((c % p) + p) % p;
  fm.push_back(1);
  if (!irreducible_mod_p(fm, p)) throw InvalidExtension("defining polynomial is reducible mod p");
  return ExtPtr(new UnramifiedExt(p, M, std::move(f)));
}

ExtPtr UnramifiedExt::standard(long p, int M, int e) {
  if (e <= 1) return qp(p, M);
  std::vector<long> f(e, 0);
  // enumerate coefficient vectors in lexicographic order of (f[0], f[1], ...)
  long total = 1;
  for (int i = 0; i < e; ++i) total *= p;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < e; ++i) {
      f[i] = c % p;
      c /= p;
    }
    PolyP fm(f.begin(), f.end());
    fm.push_back(1);
    if (irreducible_mod_p(fm, p)) return make(p, M, f);
  }
  throw InvalidExtension("no irreducible polynomial found");
}

ExtPtr UnramifiedExt::with_precision(int M) const {
  return ExtPtr(new UnramifiedExt(p_, M, f_));
}

PadicElement UnramifiedExt::zero() const { return PadicElement(shared_from_this(), std::vector<int64_t>(e_, 0)); }
PadicElement UnramifiedExt::one() const { return from_int(1); }

PadicElement UnramifiedExt::from_int(long long k) const {
  std::vector<int64_t> c(e_, 0);
  c[0] = mod_norm(k, mod_);
  return PadicElement(shared_from_this(), std::move(c));
}

PadicElement UnramifiedExt::from_integer(const Integer& k) const {
  Integer r = k % Integer(mod_);
  if (r < 0) r += mod_;
  return from_int(static_cast<long long>(r));
}

PadicElement UnramifiedExt::from_rational(const Rational& q) const {
  Integer num = numerator(q), den = denominator(q);
  int v = padic_valuation(den, p_);
  if (v > 0) throw NotAUnit("from_rational: denominator divisible by p");
  return from_integer(num) / from_integer(den);
}

PadicElement UnramifiedExt::from_coeffs(std::vector<long long> c) const {
  std::vector<int64_t> r(e_, 0);
  for (int i = 0; i < e_ && i < static_cast<int>(c.size()); ++i) r[i] = mod_norm(c[i], mod_);
  return PadicElement(shared_from_this(), std::move(r));
}

PadicElement UnramifiedExt::basis(int j) const {
  if (e_ == 1) return one();
  std::vector<int64_t> c(e_, 0);
  c[j] = 1;
  return PadicElement(shared_from_this(), std::move(c));
}

PadicElement UnramifiedExt::random(std::mt19937_64& rng, int min_valuation) const {
  std::uniform_int_distribution<int64_t> dist(0, mod_ - 1);
  std::vector<int64_t> c(e_);
  int64_t scale = 1;
  for (int i = 0; i < min_valuation && i < M_; ++i) scale *= p_;
  for (auto& x : c) x = mod_norm(static_cast<i128>(dist(rng)) * scale, mod_);
  if (min_valuation >= M_) std::fill(c.begin(), c.end(), 0);
  return PadicElement(shared_from_this(), std::move(c));
}

PadicElement UnramifiedExt::random_unit(std::mt19937_64& rng) const {
  for (;;) {
    PadicElement x = random(rng, 0);
    if (x.is_unit()) return x;
  }
}

// ---------------- PadicElement ----------------

PadicElement::PadicElement(ExtPtr par, std::vector<int64_t> c) : par_(std::move(par)), c_(std::move(c)) {
  for (auto& x : c_) x = mod_norm(x, par_->modulus());
}

int64_t PadicElement::coeff(int j) const {
  if (!par_) return j == 0 ? k_ : 0;
  return c_[j];
}

PadicElement PadicElement::promoted(const ExtPtr& par) const {
  if (par_) return *this;
  return par->from_int(k_);
}

void PadicElement::adopt(const PadicElement& o) {
  if (!par_ && o.par_) *this = promoted(o.par_);
}

int PadicElement::valuation() const {
  if (!par_) {
    if (k_ == 0) return kInfValuation;
    return 0;  // literals are only ever 0 or small units in practice
  }
  int best = kInfValuation;
  for (int64_t x : c_) {
    if (x == 0) continue;
    int v = 0;
    int64_t y = x;
    while (y % par_->p() == 0) {
      y /= par_->p();
      ++v;
    }
    best = std::min(best, v);
  }
  return best;
}

PadicElement& PadicElement::operator+=(const PadicElement& o) {
  if (!par_ && !o.par_) {
    k_ += o.k_;
    return *this;
  }
  adopt(o);
  PadicElement b = o.promoted(par_);
  const int64_t m = par_->modulus();
  for (size_t i = 0; i < c_.size(); ++i) c_[i] = mod_norm(static_cast<i128>(c_[i]) + b.c_[i], m);
  return *this;
}

PadicElement& PadicElement::operator-=(const PadicElement& o) {
  if (!par_ && !o.par_) {
    k_ -= o.k_;
    return *this;
  }
  adopt(o);
  PadicElement b = o.promoted(par_);
  const int64_t m = par_->modulus();
  for (size_t i = 0; i < c_.size(); ++i) c_[i] = mod_norm(static_cast<i128>(c_[i]) - b.c_[i], m);
  return *this;
}

PadicElement& PadicElement::operator*=(const PadicElement& o) {
  if (!par_ && !o.par_) {
    k_ *= o.k_;
    return *this;
  }
  adopt(o);
  PadicElement b = o.promoted(par_);
  const int e = par_->degree();
  const int64_t m = par_->modulus();
  std::vector<i128> prod(2 * e - 1, 0);
  for (int i = 0; i < e; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < e; ++j) prod[i + j] = mod_norm(prod[i + j] + static_cast<i128>(c_[i]) * b.c_[j], m);
  }
  const auto& f = par_->poly();
  for (int d = 2 * e - 2; d >= e; --d) {
    i128 c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < e; ++i) prod[d - e + i] = mod_norm(prod[d - e + i] - c * f[i], m);
  }
  for (int i = 0; i < e; ++i) c_[i] = static_cast<int64_t>(prod[i]);
  return *this;
}

PadicElement PadicElement::inverse() const {
  if (!par_) {
    if (k_ == 1 || k_ == -1) return PadicElement(k_);
    throw NotAUnit("inverse of an unparented literal");
  }
  if (!is_unit()) throw NotAUnit("inverse of a non-unit");
  const long p = par_->p();
  const int e = par_->degree();
  // inverse mod p by solving the multiplication matrix over F_p
  std::vector<std::vector<long>> A(e, std::vector<long>(e + 1, 0));
  for (int j = 0; j < e; ++j) {
    PadicElement col = *this * par_->basis(j);
    for (int i = 0; i < e; ++i) A[i][j] = col.c_[i] % p;
  }
  A[0][e] = 1;
  for (int c = 0, r = 0; c < e; ++c) {
    int piv = -1;
    for (int i = r; i < e; ++i)
      if (A[i][c] % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw NotAUnit("singular multiplication matrix");
    std::swap(A[piv], A[r]);
    long iv = inv_mod(A[r][c], p);
    for (auto& x : A[r]) x = x * iv % p;
    for (int i = 0; i < e; ++i) {
      if (i == r || A[i][c] == 0) continue;
      long f = A[i][c];
      for (int j = 0; j <= e; ++j) A[i][j] = ((A[i][j] - f * A[r][j]) % p + p) % p;
    }
    ++r;
  }
  std::vector<int64_t> y0(e);
  for (int i = 0; i < e; ++i) y0[i] = A[i][e];
  PadicElement y(par_, y0);
  PadicElement two = par_->from_int(2);
  for (int prec = 1; prec < par_->M(); prec *= 2) y = y * (two - *this * y);
  return y;
}

PadicElement& PadicElement::operator/=(const PadicElement& o) {
  PadicElement inv = o.promoted(par_ ? par_ : o.par_).inverse();
  return *this *= inv;
}

PadicElement PadicElement::operator-() const {
  if (!par_) return PadicElement(-k_);
  PadicElement r = *this;
  for (auto& x : r.c_) x = mod_norm(-static_cast<i128>(x), par_->modulus());
  return r;
}

bool operator==(const PadicElement& a, const PadicElement& b) { return (a - b).is_zero(); }

PadicElement PadicElement::div_p_pow(int k) const {
  if (k == 0) return *this;
  if (!par_) throw NotAUnit("div_p_pow on an unparented literal");
  int64_t pk = 1;
  for (int i = 0; i < k; ++i) pk *= par_->p();
  PadicElement r = *this;
  for (auto& x : r.c_) {
    if (x % pk != 0) throw NotAUnit("div_p_pow: valuation too small");
    x /= pk;
  }
  return r;
}

PadicElement PadicElement::pow(long long n) const {
  if (n < 0) return inverse().pow(-n);
  PadicElement base = *this, r = par_ ? par_->one() : PadicElement(1);
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

PadicElement PadicElement::change_precision(const ExtPtr& target) const {
  if (!par_) return target->from_int(k_);
  std::vector<int64_t> c(c_.begin(), c_.end());
  return PadicElement(target, std::move(c));
}

std::string PadicElement::str() const {
  std::ostringstream os;
  if (!par_) {
    os << k_;
    return os.str();
  }
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << "] mod " << par_->p() << "^" << par_->M();
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PadicElement& x) { return os << x.str(); }

// ---------------- log / exp ----------------

namespace {

int vp_int(long long k, long p) {
  int v = 0;
  while (k % p == 0) {
    k /= p;
    ++v;
  }
  return v;
}

int guard_digits(long p, int M) { return M / static_cast<int>(p - 1) + 1; }

}  // namespace

PadicElement padic_log(const PadicElement& x) {
  if (!x.has_parent()) {
    if (x.literal() == 1) return PadicElement(0);
    throw NotPrincipalUnit("log of an unparented literal");
  }
  const ExtPtr& E = x.parent();
  PadicElement u = x - E->one();
  int vu = u.valuation();
  if (vu == 0) throw NotPrincipalUnit("log requires valuation(x-1) >= 1");
  if (vu == kInfValuation) return E->zero();
  const long p = E->p();
  const int M = E->M();
  // last k with k*vu - v_p(k) < M
  int K = 1;
  while (true) {
    bool any = false;
    for (int k = K + 1; k <= K + 64; ++k)
      if (static_cast<long long>(k) * vu - vp_int(k, p) < M) {
        any = true;
        K = k;
      }
    if (!any) break;
  }
  int guard = 0;
  for (int k = 1; k <= K; ++k) guard = std::max(guard, vp_int(k, p));
  guard = std::max(guard, guard_digits(p, M));
  ExtPtr W = E->with_precision(M + guard);
  PadicElement uw = u.change_precision(W);
  PadicElement pw = uw, acc = W->zero();
  for (int k = 1; k <= K; ++k) {
    int v = vp_int(k, p);
    long long unit = k;
    for (int i = 0; i < v; ++i) unit /= p;
    PadicElement term = pw.div_p_pow(v) / W->from_int(unit);
    if (k % 2 == 1)
      acc += term;
    else
      acc -= term;
    pw *= uw;
  }
  return acc.change_precision(E);
}

PadicElement padic_exp(const PadicElement& x) {
  if (!x.has_parent()) {
    if (x.literal() == 0) return PadicElement(1);
    throw ConvergenceDomain("exp of an unparented nonzero literal");
  }
  const ExtPtr& E = x.parent();
  int vx = x.valuation();
  if (vx == kInfValuation) return E->one();
  if (vx < 1) throw ConvergenceDomain("exp requires valuation(x) >= 1");
  const long p = E->p();
  const int M = E->M();
  // v_p(k!) via Legendre
  auto vfact = [p](long long k) {
    long long s = 0;
    for (long long q = p; q <= k; q *= p) s += k / q;
    return s;
  };
  long long K = 0;
  for (long long k = 1; k < 100000; ++k) {
    if (k * vx - vfact(k) < M) K = k;
    if (k * vx - (k - 1) / (p - 1) >= M && k > K + 1) break;
  }
  int guard = static_cast<int>(std::max<long long>(vfact(K), guard_digits(p, M)));
  ExtPtr W = E->with_precision(M + guard);
  PadicElement xw = x.change_precision(W);
  PadicElement pw = W->one(), acc = W->one();
  for (long long k = 1; k <= K; ++k) {
    pw *= xw;
    long long vf = vfact(k);
    // unit part of k!
    PadicElement unit = W->one();
    for (long long j = 2; j <= k; ++j) {
      long long u = j;
      while (u % p == 0) u /= p;
      unit *= W->from_int(u);
    }
    acc += pw.div_p_pow(static_cast<int>(vf)) / unit;
  }
  return acc.change_precision(E);
}

PadicElement zp_power(const PadicElement& x, const PadicElement& a) { return padic_exp(a * padic_log(x)); }

// ---------------- embeddings ----------------

namespace {

PadicElement eval_poly_monic(const std::vector<long>& f, const PadicElement& r) {
  PadicElement acc = r.parent()->one();
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) acc = acc * r + r.parent()->from_int(f[i]);
  return acc;
}

PadicElement eval_dpoly_monic(const std::vector<long>& f, const PadicElement& r) {
  const int e = static_cast<int>(f.size());
  PadicElement acc = r.parent()->from_int(e);
  for (int i = e - 1; i >= 1; --i) acc = acc * r + r.parent()->from_int(static_cast<long long>(i) * f[i]);
  return acc;
}

}  // namespace

EmbeddingSet embeddings(const ExtPtr& E) {
  EmbeddingSet S;
  S.source = E;
  S.target = E;
  const int e = E->degree();
  if (e == 1) {
    S.images.push_back(E->from_int(-E->poly()[0]));
    return S;
  }
  PadicElement r = E->basis(1);
  for (int i = 0; i < e; ++i) {
    S.images.push_back(r);
    PadicElement next = r.pow(E->p());
    for (int it = 0; it < 2 * E->M() + 4; ++it) {
      PadicElement fx = eval_poly_monic(E->poly(), next);
      if (fx.is_zero()) break;
      next = next - fx / eval_dpoly_monic(E->poly(), next);
    }
    r = next;
  }
  return S;
}

PadicElement EmbeddingSet::apply(int i, const PadicElement& x) const {
  if (!x.has_parent()) return x;
  const int e = source->degree();
  PadicElement acc = target->zero();
  PadicElement pw = target->one();
  for (int j = 0; j < e; ++j) {
    acc += target->from_int(x.coeff(j)) * pw;
    pw *= images[i];
  }
  return acc;
}

PadicElement frobenius(const EmbeddingSet& emb, const PadicElement& x) {
  return emb.apply(emb.size() > 1 ? 1 : 0, x);
}

PadicElement norm(const EmbeddingSet& emb, const PadicElement& x) {
  PadicElement acc = emb.target->one();
  for (int i = 0; i < emb.size(); ++i) acc *= emb.apply(i, x);
  return acc;
}

}  // namespace lacoh::padic
