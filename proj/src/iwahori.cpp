#include "lacoh/iwahori.hpp"

#include <algorithm>

namespace lacoh::iwahori {

namespace {

long long ipow(long p, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

}  // namespace

Chart Chart::make(Family f, int m, int s, long p) {
  if (m < 1) throw std::invalid_argument("chart size must be positive");
  if (s < 0) throw std::invalid_argument("level s must be nonnegative");
  Chart ch;
  ch.family = f;
  ch.m = m;
  ch.s = s;
  ch.p = p;
  if (f == Family::GL) {
    for (int r = 1; r < m; ++r)
      for (int c = 0; c < r; ++c) ch.coords.push_back({CoordKind::Entry, r, c, 0});
    return ch;
  }
  if (m % 2 != 0) throw std::invalid_argument("Sp and U charts need even size");
  const int n = m / 2;
  const int comps = (f == Family::U) ? 2 : 1;
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < comps; ++k) ch.coords.push_back({CoordKind::LeviA, i, j, k});
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int kk = (i == j) ? 1 : comps;
      for (int k = 0; k < kk; ++k) ch.coords.push_back({CoordKind::Sym, i, j, k});
    }
  return ch;
}

rootdata::Weight Chart::root(int k) const {
  const Coord& c = coords[k];
  if (family == Family::Sp) {
    rootdata::Weight w(half(), 0);
    if (c.kind == CoordKind::LeviA) {
      w[c.i] += 1;
      w[c.j] -= 1;
    } else {
      w[c.i] -= 1;
      w[c.j] -= 1;
    }
    return w;
  }
  rootdata::Weight w(m, 0);
  if (family == Family::GL || c.kind == CoordKind::LeviA) {
    w[c.i] += 1;
    w[c.j] -= 1;
  } else {
    w[m - 1 - c.i] += 1;
    w[c.j] -= 1;
  }
  return w;
}

// ---------------- ring hooks ----------------

RingOps<PadicElement> padic_ops(const Chart& ch, const ExtPtr& K) {
  RingOps<PadicElement> ops;
  ops.pis = K->from_int(ipow(ch.p, ch.s));
  const int s = ch.s;
  ops.div_pis = [s](const PadicElement& x) { return x.div_p_pow(s); };
  if (ch.family == Family::U) {
    if (K->degree() != 2) throw std::invalid_argument("unitary charts need a quadratic coefficient field");
    ops.theta = K->basis(1);
    auto emb = std::make_shared<padic::EmbeddingSet>(padic::embeddings(K));
    ops.conj = [emb](const PadicElement& x) { return padic::frobenius(*emb, x); };
    ops.split = [K](const PadicElement& x) {
      return std::make_pair(K->from_int(x.coeff(0)), K->from_int(x.coeff(1)));
    };
  }
  return ops;
}

RingOps<TruncSeries<PadicElement>> series_ops(const Chart& ch, const ExtPtr& K) {
  using TS = TruncSeries<PadicElement>;
  RingOps<TS> ops;
  ops.pis = TS(K->from_int(ipow(ch.p, ch.s)));
  const int s = ch.s;
  ops.div_pis = [s](const TS& x) { return x.map_coeffs([s](const PadicElement& c) { return c.div_p_pow(s); }); };
  if (ch.family == Family::U) {
    if (K->degree() != 2) throw std::invalid_argument("unitary charts need a quadratic coefficient field");
    ops.theta = TS(K->basis(1));
    auto emb = std::make_shared<padic::EmbeddingSet>(padic::embeddings(K));
    ops.conj = [emb](const TS& x) {
      return x.map_coeffs([emb](const PadicElement& c) { return padic::frobenius(*emb, c); });
    };
    ops.split = [K](const TS& x) {
      return std::make_pair(x.map_coeffs([K](const PadicElement& c) { return K->from_int(c.coeff(0)); }),
                            x.map_coeffs([K](const PadicElement& c) { return K->from_int(c.coeff(1)); }));
    };
  }
  return ops;
}

RingOps<PolyQ> polyq_ops(const Chart& ch) {
  if (ch.family == Family::U) throw std::invalid_argument("rational polynomial charts cover GL and Sp only");
  RingOps<PolyQ> ops;
  Rational ps = Rational(ipow(ch.p, ch.s));
  ops.pis = PolyQ(ps);
  ops.div_pis = [ps](const PolyQ& x) { return x.scaled(1 / ps); };
  return ops;
}

RingOps<TruncSeries<Rational>> seriesq_ops(const Chart& ch) { return polyq_ops(ch); }

RingOps<Dual<PolyQ>> dual_ops(const Chart& ch) {
  if (ch.family == Family::U) throw std::invalid_argument("rational polynomial charts cover GL and Sp only");
  RingOps<Dual<PolyQ>> ops;
  Rational ps = Rational(ipow(ch.p, ch.s));
  ops.pis = Dual<PolyQ>(PolyQ(ps));
  ops.div_pis = [ps](const Dual<PolyQ>& x) { return Dual<PolyQ>(x.a.scaled(1 / ps), x.b.scaled(1 / ps)); };
  return ops;
}

// ---------------- numeric elements ----------------

LDU<PadicElement> iwahori_decompose(const Mat<PadicElement>& g) {
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (g(i, j).valuation() < 1) throw NotIwahori("lower entry is not divisible by p");
  return ldu<PadicElement>(g);
}

Mat<PadicElement> form_matrix(Family f, int m, const ExtPtr& K) {
  Mat<PadicElement> J = zero_matrix<PadicElement>(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) J(i, j) = K->zero();
  if (f == Family::GL) return J;
  const int n = m / 2;
  for (int a = 0; a < n; ++a) {
    J(a, m - 1 - a) = K->one();
    J(m - 1 - a, a) = -K->one();
  }
  return J;
}

bool in_iwahori(const Mat<PadicElement>& g, Family f, const ExtPtr& K) {
  const Eigen::Index m = g.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!g(i, i).is_unit()) return false;
    for (Eigen::Index j = 0; j < i; ++j)
      if (g(i, j).valuation() < 1) return false;
  }
  if (f == Family::GL) return true;
  Mat<PadicElement> J = form_matrix(f, static_cast<int>(m), K);
  Mat<PadicElement> gs = g.transpose();
  if (f == Family::U) {
    Chart ch = Chart::make(f, static_cast<int>(m), 1, K->p());
    gs = conj_transpose<PadicElement>(g, padic_ops(ch, K));
  }
  Mat<PadicElement> R = gs * J * g - J;
  return is_zero_matrix(R);
}

bool in_level(const Mat<PadicElement>& g, Family f, const ExtPtr& K, int s) {
  if (!in_iwahori(g, f, K)) return false;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      if (i != j && g(i, j).valuation() < s) return false;
  return true;
}

Mat<PadicElement> random_iwahori(Family f, int m, const ExtPtr& K, std::mt19937_64& rng, int upper_level) {
  Chart low = Chart::make(f, m, 1, K->p());
  Chart up = Chart::make(f, m, upper_level, K->p());
  auto ops_low = padic_ops(low, K);
  auto ops_up = padic_ops(up, K);
  auto coord = [&](const Chart& ch) {
    std::vector<PadicElement> x;
    for (int k = 0; k < ch.dim(); ++k) {
      PadicElement r = K->random(rng);
      x.push_back(f == Family::U ? K->from_int(r.coeff(0)) : r);
    }
    return x;
  };
  Mat<PadicElement> nbar = psi(low, coord(low), ops_low);
  Mat<PadicElement> nup = psi(up, coord(up), ops_up);
  Mat<PadicElement> n = (f == Family::U) ? conj_transpose<PadicElement>(nup, ops_up) : Mat<PadicElement>(nup.transpose());
  Mat<PadicElement> t = zero_matrix<PadicElement>(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t(i, j) = K->zero();
  if (f == Family::GL) {
    for (int i = 0; i < m; ++i) t(i, i) = K->random_unit(rng);
  } else {
    const int h = m / 2;
    for (int i = 0; i < h; ++i) {
      PadicElement u = K->random_unit(rng);
      if (f == Family::Sp && K->degree() > 1) u = K->from_int(u.coeff(0) == 0 ? 1 : u.coeff(0));
      t(i, i) = u;
      PadicElement uc = (f == Family::U) ? ops_low.conj(u) : u;
      t(m - 1 - i, m - 1 - i) = uc.inverse();
    }
  }
  return nbar * t * n;
}

// ---------------- translated coordinates ----------------

Certificate certify(const TruncPolyMap& f) {
  Certificate c;
  c.D = f.D;
  c.min_valuation_by_degree.assign(f.D + 1, kInfValuation);
  for (const auto& s : f.u)
    for (const auto& [a, coef] : s.terms()) {
      int deg = total_degree(a);
      if (deg > f.D) continue;
      int v = coef.valuation();
      if (v == kInfValuation) continue;
      int vm = v - f.scale;
      c.min_valuation_by_degree[deg] = std::min(c.min_valuation_by_degree[deg], vm);
      int margin = vm - (deg - 1);
      c.min_margin = std::min(c.min_margin, margin);
      if (margin < 0) c.integral = false;
    }
  return c;
}

TruncPolyMap compose(const TruncPolyMap& f, const TruncPolyMap& g) {
  if (f.scale != 1 || g.scale != 1) throw std::invalid_argument("compose: scale must be 1");
  TruncPolyMap r;
  r.scale = 1;
  r.D = std::min(f.D, g.D);
  for (const auto& fk : f.u) {
    TruncSeries<PadicElement> h(fk.nvars(), fk.trunc());
    for (const auto& [a, c] : fk.terms()) h.add_term(a, c.div_p_pow(total_degree(a)));
    r.u.push_back(h.substitute(g.u));
  }
  return r;
}

Translated translated_coords(const Mat<PadicElement>& g, const Chart& ch, const ExtPtr& K, int D) {
  if (D > kMaxCertificateDegree)
    throw TruncationOverflow("requested degree " + std::to_string(D) + " exceeds the bound " +
                             std::to_string(kMaxCertificateDegree));
  if (!in_level(g, ch.family, K, ch.s)) throw NotIwahori("element is not in the level-s Iwahori subgroup");
  using TS = TruncSeries<PadicElement>;
  RingOps<TS> ops = series_ops(ch, K);
  const int d = ch.dim();
  std::vector<TS> x;
  for (int k = 0; k < d; ++k) x.push_back(TS::variable(d, D, k, K->one()));
  Mat<TS> G(g.rows(), g.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) G(i, j) = TS::constant(d, D, g(i, j));
  Mat<TS> P = G * psi(ch, x, ops);
  LDU<TS> r = ldu<TS>(P);
  RingOps<TS> uops = ops;
  const int sm1 = ch.s - 1;
  uops.div_pis = [sm1](const TS& y) { return y.map_coeffs([sm1](const PadicElement& c) { return c.div_p_pow(sm1); }); };
  Translated out;
  out.gn.u = psi_inverse(ch, r.nbar, uops);
  out.gn.scale = 1;
  out.gn.D = D;
  out.effective_precision = K->M() - std::max(0, sm1);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    TS ti = r.t(i, i);
    PadicElement t0 = ti.constant_term();
    out.gt.push_back(ti.scaled(t0.inverse()) - TS::constant(d, D, K->one()));
  }
  out.cert = certify(out.gn);
  return out;
}

// ---------------- Sp / U inside GL ----------------

EmbedProject embed_project_gl(Family f, int n, int s, const ExtPtr& K0) {
  if (f == Family::GL) throw std::invalid_argument("embed_project_gl: family must be Sp or U");
  using TS = TruncSeries<PadicElement>;
  EmbedProject ep;
  ep.chart = Chart::make(f, 2 * n, s, K0->p());
  ep.gl_chart = Chart::make(Family::GL, 2 * n, s, K0->p());
  ExtPtr K = K0->with_precision(K0->M() + 4 * s + 4);
  auto ops = series_ops(ep.chart, K);
  const int d = ep.chart.dim();
  std::vector<TS> x;
  for (int k = 0; k < d; ++k) x.push_back(TS::variable(d, -1, k, K->one()));
  Mat<TS> g = psi(ep.chart, x, ops);
  std::vector<TS> iout;
  for (const auto& c : ep.gl_chart.coords) {
    TS y = ops.div_pis(g(c.i, c.j));
    if (f == Family::U) {
      auto pr = ops.split(y);
      iout.push_back(pr.first);
      iout.push_back(pr.second);
    } else {
      iout.push_back(y);
    }
  }
  const int dg = static_cast<int>(iout.size());
  std::vector<TS> y;
  for (int k = 0; k < dg; ++k) y.push_back(TS::variable(dg, -1, k, K->one()));
  Mat<TS> G = identity_matrix<TS>(2 * n);
  for (size_t k = 0; k < ep.gl_chart.coords.size(); ++k) {
    const auto& c = ep.gl_chart.coords[k];
    TS v = (f == Family::U) ? y[2 * k] + y[2 * k + 1] * ops.theta : y[k];
    G(c.i, c.j) = ops.pis * v;
  }
  std::vector<TS> pout = psi_inverse(ep.chart, G, ops);
  auto reduce = [&](const TS& t) { return t.map_coeffs([&](const PadicElement& c) { return c.change_precision(K0); }); };
  bool ok = true;
  for (int k = 0; k < d; ++k) {
    TS comp = reduce(pout[k].substitute(iout));
    if (comp != TS::variable(d, -1, k, K0->one())) ok = false;
  }
  for (auto& t : iout) ep.i_gl.push_back(reduce(t));
  for (auto& t : pout) ep.p_gl.push_back(reduce(t));
  ep.p_after_i_is_identity = ok;
  return ep;
}

// ---------------- w-conjugated factorization ----------------

Chart chart_for(const rootdata::RootDatum& d, int s, long p) {
  return Chart::make(d.spec.family == Family::Sp ? Family::Sp : Family::GL, d.m, s, p);
}

std::vector<std::pair<int, int>> levi_positions(const rootdata::RootDatum& d) {
  std::vector<std::pair<int, int>> out;
  for (int r = 1; r < d.m; ++r)
    for (int c = 0; c < r; ++c) {
      rootdata::Weight wt = d.position_weight(r, c);
      if (std::find(d.levi_negative.begin(), d.levi_negative.end(), wt) == d.levi_negative.end()) continue;
      if (d.primary_position(wt) != std::make_pair(r, c)) continue;
      out.emplace_back(r, c);
    }
  return out;
}

WNwDecomposition decompose_wNw(const rootdata::RootDatum& d, const rootdata::WeylElement& w, int s, long p) {
  if (!rootdata::in_wp(d, w)) throw rootdata::NotInWP("element " + w.str() + " is not in W^P");
  WNwDecomposition out;
  Chart ch = chart_for(d, s, p);
  auto ops = polyq_ops(ch);
  const int dim = ch.dim();
  const int m = d.m, n = m / 2;
  std::vector<PolyQ> x;
  for (int k = 0; k < dim; ++k) x.push_back(PolyQ::variable(dim, -1, k));
  Mat<PolyQ> W = cast_matrix<PolyQ>(d.weyl_matrix(w));
  Mat<PolyQ> Winv = W.transpose();
  Mat<PolyQ> nb = psi(ch, x, ops);
  Mat<PolyQ> N = W * nb * Winv;
  Mat<PolyQ> a = N.topLeftCorner(n, n), b = N.topRightCorner(n, n), c = N.bottomLeftCorner(n, n),
             dd = N.bottomRightCorner(n, n);
  Mat<PolyQ> Dinv = unipotent_inverse<PolyQ>(dd);
  Mat<PolyQ> Y = Dinv * c, X = b * Dinv, A = a - b * Dinv * c;
  Mat<PolyQ> nplus = identity_matrix<PolyQ>(m), nL = zero_matrix<PolyQ>(m, m), nminus = identity_matrix<PolyQ>(m);
  nplus.topRightCorner(n, n) = X;
  nL.topLeftCorner(n, n) = A;
  nL.bottomRightCorner(n, n) = dd;
  nminus.bottomLeftCorner(n, n) = Y;
  Mat<PolyQ> prod = nplus * nL * nminus;
  Mat<PolyQ> diff = prod - N;
  Mat<PolyQ> chk = dd * Dinv - identity_matrix<PolyQ>(n);
  out.roundtrip = is_zero_matrix(diff) && is_zero_matrix(chk);

  for (int k = 0; k < dim; ++k) {
    rootdata::Weight g = w.apply(ch.root(k));
    if (d.nil_index(g) >= 0) {
      out.plus.push_back(k);
      out.plus_roots.push_back(g);
    } else if (d.is_levi(g)) {
      out.levi.push_back(k);
    } else {
      out.minus.push_back(k);
      out.minus_roots.push_back(g);
    }
  }
  for (const auto& g : out.plus_roots) {
    auto pp = d.primary_position(g);
    out.x_plus.push_back(ops.div_pis(nplus(pp.first, pp.second)));
  }
  for (const auto& g : out.minus_roots) {
    auto pp = d.primary_position(g);
    out.x_minus.push_back(ops.div_pis(nminus(pp.first, pp.second)));
  }
  auto lp = levi_positions(d);
  for (const auto& pp : lp) {
    out.levi_roots.push_back(d.position_weight(pp.first, pp.second));
    out.x_levi.push_back(ops.div_pis(nL(pp.first, pp.second)));
  }
  out.p_L = out.x_levi;

  const int L = static_cast<int>(lp.size());
  std::vector<PolyQ> y;
  for (int k = 0; k < L; ++k) y.push_back(PolyQ::variable(L, -1, k));
  Mat<PolyQ> back = Winv * psi_levi(d, y, ops) * W;
  bool lower = true;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      if (back(i, j) != PolyQ(i == j ? 1 : 0)) lower = false;
  out.i_L = psi_inverse(ch, back, ops);
  bool sec = lower;
  for (int k = 0; k < L; ++k)
    if (out.p_L[k].substitute(out.i_L) != PolyQ::variable(L, -1, k)) sec = false;
  out.section = sec;
  return out;
}

}  // namespace lacoh::iwahori
