#include "lacoh/weightspace.hpp"

#include <algorithm>

namespace lacoh::weightspace {

using rootdata::operator+;
using rootdata::operator-;

ContinuousCharacter ContinuousCharacter::trivial(const ExtPtr& E, int d) {
  ContinuousCharacter c;
  c.E = E;
  c.d = d;
  c.values.assign(d, std::vector<PadicElement>(E->degree(), E->one()));
  return c;
}

ContinuousCharacter ContinuousCharacter::analytic(const ExtPtr& E, const std::vector<PadicElement>& c) {
  ContinuousCharacter chi;
  chi.E = E;
  chi.d = static_cast<int>(c.size());
  chi.values.resize(chi.d);
  for (int i = 0; i < chi.d; ++i)
    for (int j = 0; j < E->degree(); ++j) chi.values[i].push_back(padic::padic_exp(c[i] * E->basis(j)));
  return chi;
}

void ContinuousCharacter::validate() const {
  if (static_cast<int>(values.size()) != d) throw std::invalid_argument("character: wrong number of factors");
  for (const auto& row : values) {
    if (static_cast<int>(row.size()) != E->degree()) throw std::invalid_argument("character: wrong number of values");
    for (const auto& v : row)
      if ((v - E->one()).valuation() < 1) throw padic::NotPrincipalUnit("character value is not a principal unit");
  }
}

PadicElement eval_character(const ContinuousCharacter& chi, const std::vector<PadicElement>& z) {
  chi.validate();
  if (static_cast<int>(z.size()) != chi.d) throw BasisDecompositionFailure("argument has the wrong length");
  const ExtPtr& E = chi.E;
  PadicElement acc = E->zero();
  for (int i = 0; i < chi.d; ++i) {
    PadicElement zi = z[i].has_parent() ? z[i] : E->from_int(z[i].literal());
    if (!zi.parent()->same_field(*E)) throw BasisDecompositionFailure("argument lies in another field");
    for (int j = 0; j < E->degree(); ++j) {
      PadicElement a = E->from_int(zi.coeff(j));
      acc += a * padic::padic_log(chi.values[i][j]);
    }
  }
  return padic::padic_exp(acc);
}

std::vector<PadicElement> cr_defect(const ContinuousCharacter& chi, int factor) {
  chi.validate();
  std::vector<PadicElement> out;
  for (int j = 0; j < chi.E->degree(); ++j)
    out.push_back(padic::padic_log(chi.values[factor][j]) / chi.E->basis(j));
  return out;
}

bool all_equal(const std::vector<PadicElement>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] != v[0]) return false;
  return true;
}

bool is_locally_analytic(const ContinuousCharacter& chi, int factor) { return all_equal(cr_defect(chi, factor)); }

PadicElement SigmaAnalyticCharacter::eval(const padic::EmbeddingSet& emb, const PadicElement& z) const {
  return padic::padic_exp(slope * emb.apply(sigma, z));
}

namespace {

// inverse of a square matrix whose pivots can be chosen as units
std::vector<std::vector<PadicElement>> invert(std::vector<std::vector<PadicElement>> A, const ExtPtr& E) {
  const int n = static_cast<int>(A.size());
  std::vector<std::vector<PadicElement>> B(n, std::vector<PadicElement>(n, E->zero()));
  for (int i = 0; i < n; ++i) B[i][i] = E->one();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (A[r][c].is_unit()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("embedding matrix is not invertible over the integers");
    std::swap(A[piv], A[c]);
    std::swap(B[piv], B[c]);
    PadicElement inv = A[c][c].inverse();
    for (int j = 0; j < n; ++j) {
      A[c][j] *= inv;
      B[c][j] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || A[r][c].is_zero()) continue;
      PadicElement f = A[r][c];
      for (int j = 0; j < n; ++j) {
        A[r][j] -= f * A[c][j];
        B[r][j] -= f * B[c][j];
      }
    }
  }
  return B;
}

}  // namespace

Factorization factor_character(const ContinuousCharacter& chi, int factor) {
  chi.validate();
  const ExtPtr& E = chi.E;
  const int e = E->degree();
  Factorization F;
  F.embeddings = padic::embeddings(E);
  F.min_valuation = kInfValuation;
  for (int j = 0; j < e; ++j) F.min_valuation = std::min(F.min_valuation, (chi.values[factor][j] - E->one()).valuation());
  // |chi - 1| < |det M| / p with det M a unit
  if (F.min_valuation < 2) throw OutsideRadius("character values must satisfy v(chi(u_j) - 1) >= 2");
  std::vector<std::vector<PadicElement>> M(e, std::vector<PadicElement>(e));
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) M[i][j] = F.embeddings.apply(i, E->basis(j));
  auto Minv = invert(M, E);
  std::vector<PadicElement> L;
  for (int j = 0; j < e; ++j) L.push_back(padic::padic_log(chi.values[factor][j]));
  for (int i = 0; i < e; ++i) {
    PadicElement s = E->zero();
    for (int j = 0; j < e; ++j) s += L[j] * Minv[j][i];
    F.factors.push_back({i, s});
  }
  return F;
}

std::vector<PadicElement> reconstruct(const Factorization& f) {
  const ExtPtr& E = f.embeddings.source;
  std::vector<PadicElement> out;
  for (int j = 0; j < E->degree(); ++j) {
    PadicElement acc = E->one();
    for (const auto& s : f.factors) acc *= s.eval(f.embeddings, E->basis(j));
    out.push_back(acc);
  }
  return out;
}

std::vector<PadicElement> cr_defect_through(const padic::EmbeddingSet& emb, int sigma,
                                            const std::vector<PadicElement>& values_on_basis) {
  std::vector<PadicElement> out;
  for (size_t j = 0; j < values_on_basis.size(); ++j)
    out.push_back(padic::padic_log(values_on_basis[j]) / emb.apply(sigma, emb.source->basis(static_cast<int>(j))));
  return out;
}

// ---------------- formal weights ----------------

FormalWeight FormalWeight::algebraic_weight(const rootdata::Weight& lambda, int e) {
  FormalWeight w;
  w.algebraic.assign(e, lambda);
  w.smooth.assign(lambda.size(), 0);
  w.point = true;
  return w;
}

FormalWeight FormalWeight::with_formal(const rootdata::Weight& lambda, std::vector<rootdata::WeightQ> dirs, int e) {
  FormalWeight w = algebraic_weight(lambda, e);
  w.formal = std::move(dirs);
  w.point = w.formal.empty();
  return w;
}

FamilyElem FormalWeight::coordinate(int i) const {
  std::vector<Rational> lin;
  for (const auto& v : formal) lin.push_back(v[i]);
  return FamilyElem(Rational(base()[i]), std::move(lin));
}

FormalWeight FormalWeight::specialize(const std::vector<Rational>& point) const {
  FormalWeight out = *this;
  out.formal.clear();
  out.point = true;
  for (auto& copy : out.algebraic)
    for (int i = 0; i < rank(); ++i) {
      Rational x = copy[i];
      for (int k = 0; k < nformal(); ++k) x += formal[k][i] * (k < static_cast<int>(point.size()) ? point[k] : 0);
      if (denominator(x) != 1) throw std::domain_error("specialization is not integral");
      copy[i] = static_cast<int>(numerator(x));
    }
  return out;
}

FormalWeight dot_action(const rootdata::RootDatum& d, const rootdata::WeylElement& w, const FormalWeight& lambda) {
  FormalWeight out = lambda;
  rootdata::Weight shift = rootdata::rho_shift(d, w);
  for (auto& copy : out.algebraic) copy = w.apply(copy) + shift;
  for (auto& v : out.formal) v = w.apply(v);
  if (!out.smooth.empty()) {
    std::vector<int> s(out.smooth.size(), 0);
    for (int i = 0; i < w.rank(); ++i) s[w.perm()[i]] = (w.sign()[i] * lambda.smooth[i]) % std::max(1, lambda.smooth_order);
    for (auto& x : s)
      if (x < 0) x += lambda.smooth_order;
    out.smooth = s;
  }
  return out;
}

bool is_generic(const rootdata::RootDatum& d, const FormalWeight& lambda) {
  if (lambda.formal.empty()) return false;
  for (const auto& w : d.weyl_group()) {
    if (w.is_identity()) continue;
    bool moved = false;
    for (const auto& v : lambda.formal)
      if (w.apply(v) != v) moved = true;
    if (!moved) return false;
  }
  return true;
}

}  // namespace lacoh::weightspace
