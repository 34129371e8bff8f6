#include "lacoh/scalar.hpp"

#include <ostream>
#include <sstream>

namespace lacoh {

int padic_valuation(const Integer& x, long p) {
  if (x == 0) return kInfValuation;
  Integer y = abs(x);
  int v = 0;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

int padic_valuation(const Rational& x, long p) {
  if (x == 0) return kInfValuation;
  return padic_valuation(Integer(numerator(x)), p) - padic_valuation(Integer(denominator(x)), p);
}

std::string to_string(const Rational& x) { return x.str(); }

FamilyElem::FamilyElem(const Rational& c, std::vector<Rational> lin) : c0_(c), lin_(std::move(lin)) {}

FamilyElem FamilyElem::variable(int r, int j) {
  std::vector<Rational> lin(r, Rational(0));
  lin[j] = 1;
  return FamilyElem(Rational(0), std::move(lin));
}

Rational FamilyElem::linear(int j) const {
  return j < nvars() ? lin_[j] : Rational(0);
}

bool FamilyElem::is_zero() const {
  if (c0_ != 0) return false;
  for (const auto& a : lin_)
    if (a != 0) return false;
  return true;
}

Rational FamilyElem::evaluate(const std::vector<Rational>& point) const {
  Rational v = c0_;
  for (int j = 0; j < nvars(); ++j) v += lin_[j] * (j < static_cast<int>(point.size()) ? point[j] : Rational(0));
  return v;
}

void FamilyElem::widen(int r) {
  if (nvars() < r) lin_.resize(r, Rational(0));
}

FamilyElem& FamilyElem::operator+=(const FamilyElem& o) {
  widen(o.nvars());
  c0_ += o.c0_;
  for (int j = 0; j < o.nvars(); ++j) lin_[j] += o.lin_[j];
  return *this;
}

FamilyElem& FamilyElem::operator-=(const FamilyElem& o) {
  widen(o.nvars());
  c0_ -= o.c0_;
  for (int j = 0; j < o.nvars(); ++j) lin_[j] -= o.lin_[j];
  return *this;
}

FamilyElem& FamilyElem::operator*=(const FamilyElem& o) {
  int r = std::max(nvars(), o.nvars());
  std::vector<Rational> lin(r, Rational(0));
  for (int j = 0; j < r; ++j) lin[j] = c0_ * o.linear(j) + o.c0_ * linear(j);
  c0_ *= o.c0_;
  lin_ = std::move(lin);
  return *this;
}

FamilyElem& FamilyElem::operator/=(const FamilyElem& o) {
  if (o.c0_ == 0) throw std::domain_error("FamilyElem: division by a non-unit");
  int r = std::max(nvars(), o.nvars());
  std::vector<Rational> lin(r, Rational(0));
  Rational c2 = o.c0_ * o.c0_;
  for (int j = 0; j < r; ++j) lin[j] = (linear(j) * o.c0_ - c0_ * o.linear(j)) / c2;
  c0_ /= o.c0_;
  lin_ = std::move(lin);
  return *this;
}

FamilyElem FamilyElem::operator-() const {
  FamilyElem r = *this;
  r.c0_ = -r.c0_;
  for (auto& a : r.lin_) a = -a;
  return r;
}

bool operator==(const FamilyElem& a, const FamilyElem& b) {
  if (a.c0_ != b.c0_) return false;
  int r = std::max(a.nvars(), b.nvars());
  for (int j = 0; j < r; ++j)
    if (a.linear(j) != b.linear(j)) return false;
  return true;
}

std::string FamilyElem::str() const {
  std::ostringstream os;
  os << c0_;
  for (int j = 0; j < nvars(); ++j)
    if (lin_[j] != 0) os << (lin_[j] > 0 ? "+" : "") << lin_[j] << "*X" << (j + 1);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FamilyElem& x) { return os << x.str(); }

}  // namespace lacoh
