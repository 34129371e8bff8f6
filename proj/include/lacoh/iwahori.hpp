#pragma once

#include "lacoh/linalg.hpp"
#include "lacoh/padic.hpp"
#include "lacoh/rootdata.hpp"
#include "lacoh/series.hpp"

#include <functional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lacoh::iwahori {

using padic::ExtPtr;
using padic::PadicElement;
using rootdata::Family;

struct NotIwahori : std::domain_error {
  using std::domain_error::domain_error;
};

enum class CoordKind { Entry, LeviA, Sym };

// a chart coordinate: GL entry (i,j), Sp/U lower block entry A(i,j) or symmetric/Hermitian entry S(i,j);
// comp selects the u_1 / u_2 part of a K-valued unitary coordinate
struct Coord {
  CoordKind kind;
  int i;
  int j;
  int comp = 0;
};

// standard coordinates on the lower unipotent part of the Iwahori at level s
struct Chart {
  Family family = Family::GL;
  int m = 2;
  int s = 1;
  long p = 5;
  std::vector<Coord> coords;

  static Chart make(Family f, int m, int s, long p);
  int dim() const { return static_cast<int>(coords.size()); }
  int half() const { return m / 2; }
  // negative root of a coordinate (GL, Sp); U reports the absolute root of its entry
  rootdata::Weight root(int k) const;
};

// arithmetic hooks the charts need from a coefficient type
template <class S>
struct RingOps {
  S pis;                                            // the scalar p^s
  S theta = S(0);                                   // generator of K (unitary charts)
  std::function<S(const S&)> conj = [](const S& x) { return x; };
  std::function<S(const S&)> div_pis;               // exact division by p^s
  std::function<std::pair<S, S>(const S&)> split;  // K-value -> (u_1 part, u_2 part), embedded in K
};

RingOps<PadicElement> padic_ops(const Chart& ch, const ExtPtr& K);
RingOps<TruncSeries<PadicElement>> series_ops(const Chart& ch, const ExtPtr& K);
RingOps<PolyQ> polyq_ops(const Chart& ch);
RingOps<TruncSeries<Rational>> seriesq_ops(const Chart& ch);
RingOps<Dual<PolyQ>> dual_ops(const Chart& ch);

template <class S>
Mat<S> unipotent_inverse(const Mat<S>& A) {
  const Eigen::Index n = A.rows();
  Mat<S> I = identity_matrix<S>(n);
  Mat<S> N = A - I;
  Mat<S> acc = I, pw = I;
  for (Eigen::Index k = 1; k < n; ++k) {
    pw = -(pw * N);
    acc += pw;
  }
  return acc;
}

template <class S>
Mat<S> reversal(Eigen::Index n) {
  Mat<S> P = zero_matrix<S>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) P(i, n - 1 - i) = S(1);
  return P;
}

template <class S>
Mat<S> conj_transpose(const Mat<S>& A, const RingOps<S>& ops) {
  Mat<S> B(A.cols(), A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) B(j, i) = ops.conj(A(i, j));
  return B;
}

template <class S>
Mat<S> psi(const Chart& ch, const std::vector<S>& x, const RingOps<S>& ops) {
  if (static_cast<int>(x.size()) != ch.dim()) throw std::invalid_argument("psi: wrong number of coordinates");
  const int m = ch.m;
  if (ch.family == Family::GL) {
    Mat<S> g = identity_matrix<S>(m);
    for (int k = 0; k < ch.dim(); ++k) g(ch.coords[k].i, ch.coords[k].j) = ops.pis * x[k];
    return g;
  }
  const int n = ch.half();
  Mat<S> A = identity_matrix<S>(n), Sm = zero_matrix<S>(n, n);
  for (int k = 0; k < ch.dim(); ++k) {
    const Coord& c = ch.coords[k];
    S v = ops.pis * x[k];
    if (c.comp == 1) v = v * ops.theta;
    if (c.kind == CoordKind::LeviA) {
      A(c.i, c.j) += v;
    } else {
      Sm(c.i, c.j) += v;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) Sm(j, i) = ops.conj(Sm(i, j));
  Mat<S> Psi = reversal<S>(n);
  Mat<S> AstarInv = unipotent_inverse<S>(conj_transpose<S>(A, ops));
  Mat<S> C = Psi * AstarInv * Sm;
  Mat<S> D = Psi * AstarInv * Psi;
  Mat<S> g = zero_matrix<S>(m, m);
  g.topLeftCorner(n, n) = A;
  g.bottomLeftCorner(n, n) = C;
  g.bottomRightCorner(n, n) = D;
  return g;
}

template <class S>
std::vector<S> psi_inverse(const Chart& ch, const Mat<S>& g, const RingOps<S>& ops) {
  std::vector<S> x(ch.dim());
  if (ch.family == Family::GL) {
    for (int k = 0; k < ch.dim(); ++k) x[k] = ops.div_pis(g(ch.coords[k].i, ch.coords[k].j));
    return x;
  }
  const int n = ch.half();
  Mat<S> A = g.topLeftCorner(n, n);
  Mat<S> C = g.bottomLeftCorner(n, n);
  Mat<S> Sm = conj_transpose<S>(A, ops) * reversal<S>(n) * C;
  for (int k = 0; k < ch.dim(); ++k) {
    const Coord& c = ch.coords[k];
    S v = ops.div_pis(c.kind == CoordKind::LeviA ? A(c.i, c.j) : Sm(c.i, c.j));
    if (ch.family == Family::U) {
      auto pr = ops.split(v);
      v = c.comp == 0 ? pr.first : pr.second;
    }
    x[k] = v;
  }
  return x;
}

// g = nbar * t * n with nbar lower unipotent, t diagonal, n upper unipotent
template <class S>
struct LDU {
  Mat<S> nbar;
  Mat<S> t;
  Mat<S> n;
};

template <class S>
LDU<S> ldu(const Mat<S>& g) {
  const Eigen::Index m = g.rows();
  Mat<S> U = g;
  Mat<S> L = identity_matrix<S>(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (!detail::scalar_is_unit(U(k, k))) throw NotIwahori("pivot " + std::to_string(k) + " is not a unit");
    S inv = S(1) / U(k, k);
    for (Eigen::Index i = k + 1; i < m; ++i) {
      if (detail::scalar_is_zero(U(i, k))) continue;
      S f = U(i, k) * inv;
      L(i, k) = f;
      for (Eigen::Index j = k; j < m; ++j) U(i, j) -= f * U(k, j);
      U(i, k) = S(0);
    }
  }
  LDU<S> r;
  r.nbar = L;
  r.t = zero_matrix<S>(m, m);
  r.n = identity_matrix<S>(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    r.t(k, k) = U(k, k);
    S inv = S(1) / U(k, k);
    for (Eigen::Index j = k + 1; j < m; ++j) r.n(k, j) = U(k, j) * inv;
  }
  return r;
}

// ---- numeric Iwahori elements ----

LDU<PadicElement> iwahori_decompose(const Mat<PadicElement>& g);
bool in_iwahori(const Mat<PadicElement>& g, Family f, const ExtPtr& K);
// Iwahori with strictly upper entries divisible by p^s
bool in_level(const Mat<PadicElement>& g, Family f, const ExtPtr& K, int s);
// random element of the Iwahori; upper_level = s puts it in the level-s subgroup
Mat<PadicElement> random_iwahori(Family f, int m, const ExtPtr& K, std::mt19937_64& rng, int upper_level = 0);
Mat<PadicElement> form_matrix(Family f, int m, const ExtPtr& K);

// ---- translated coordinates ----

// components u_k; the map itself is u_k / p^scale
struct TruncPolyMap {
  std::vector<TruncSeries<PadicElement>> u;
  int scale = 1;
  int D = 4;
};

struct Certificate {
  int D = 0;
  bool integral = true;
  int min_margin = kInfValuation;  // min over coefficients of v(coef of map) - (deg - 1)
  std::vector<int> min_valuation_by_degree;  // of the map itself, kInfValuation when absent
};

Certificate certify(const TruncPolyMap& f);
// (f o g), both with scale 1
TruncPolyMap compose(const TruncPolyMap& f, const TruncPolyMap& g);

struct Translated {
  TruncPolyMap gn;
  std::vector<TruncSeries<PadicElement>> gt;  // t_{g0}^{-1} t'(x) - 1, diagonal entries
  Certificate cert;
  int effective_precision = 0;
};

constexpr int kMaxCertificateDegree = 12;

Translated translated_coords(const Mat<PadicElement>& g, const Chart& ch, const ExtPtr& K, int D = 4);

// ---- Sp/U inside GL_{2n} ----

struct EmbedProject {
  Chart chart;     // the Sp or U chart
  Chart gl_chart;  // GL_{2n}
  // i: chart coordinates -> GL coordinates (for U: two components per GL coordinate, u_1 then u_2)
  std::vector<TruncSeries<PadicElement>> i_gl;
  // p: GL coordinates (same layout as i's output) -> chart coordinates
  std::vector<TruncSeries<PadicElement>> p_gl;
  bool p_after_i_is_identity = false;
};

EmbedProject embed_project_gl(Family f, int n, int s, const ExtPtr& K);

// ---- w-conjugated factorization of the opposite unipotent ----

struct WNwDecomposition {
  std::vector<int> plus, levi, minus;  // chart coordinates by the class of w(beta_j)
  std::vector<rootdata::Weight> plus_roots, levi_roots, minus_roots;  // factor coordinate roots
  std::vector<PolyQ> x_plus, x_levi, x_minus;  // factor coordinates as polynomials in chart coordinates
  std::vector<PolyQ> p_L;                       // = x_levi
  std::vector<PolyQ> i_L;                       // chart coordinates as polynomials in Levi coordinates
  bool roundtrip = false;
  bool section = false;
};

// Levi-lower positions (primary entries) in chart order
std::vector<std::pair<int, int>> levi_positions(const rootdata::RootDatum& d);
template <class S>
Mat<S> psi_levi(const rootdata::RootDatum& d, const std::vector<S>& y, const RingOps<S>& ops);

WNwDecomposition decompose_wNw(const rootdata::RootDatum& d, const rootdata::WeylElement& w, int s, long p);

Chart chart_for(const rootdata::RootDatum& d, int s, long p);

template <class S>
Mat<S> cast_matrix(const MatQ& A) {
  Mat<S> B(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) B(i, j) = S(A(i, j));
  return B;
}

template <class S>
Mat<S> psi_levi(const rootdata::RootDatum& d, const std::vector<S>& y, const RingOps<S>& ops) {
  auto pos = levi_positions(d);
  const int m = d.m;
  if (d.spec.family == Family::Sp) {
    const int n = d.spec.n;
    Mat<S> A = identity_matrix<S>(n);
    for (size_t k = 0; k < pos.size(); ++k) A(pos[k].first, pos[k].second) = ops.pis * y[k];
    Mat<S> Psi = reversal<S>(n);
    Mat<S> g = zero_matrix<S>(m, m);
    g.topLeftCorner(n, n) = A;
    g.bottomRightCorner(n, n) = Psi * unipotent_inverse<S>(Mat<S>(A.transpose())) * Psi;
    return g;
  }
  Mat<S> g = identity_matrix<S>(m);
  for (size_t k = 0; k < pos.size(); ++k) g(pos[k].first, pos[k].second) = ops.pis * y[k];
  return g;
}

}  // namespace lacoh::iwahori
