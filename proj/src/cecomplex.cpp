#include "lacoh/cecomplex.hpp"

#include "lacoh/parallel.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

namespace lacoh::cecomplex {

using rootdata::operator+;
using rootdata::operator-;
using rootdata::operator*;

namespace {

// A * B == 0, skipping zero entries (differentials are very sparse)
bool sparse_product_is_zero(const MatF& A, const MatF& B) {
  std::vector<std::vector<std::pair<Eigen::Index, const FamilyElem*>>> cols(A.cols());
  for (Eigen::Index c = 0; c < A.cols(); ++c)
    for (Eigen::Index r = 0; r < A.rows(); ++r)
      if (!A(r, c).is_zero()) cols[c].push_back({r, &A(r, c)});
  std::vector<FamilyElem> acc(A.rows());
  std::vector<Eigen::Index> touched;
  for (Eigen::Index j = 0; j < B.cols(); ++j) {
    touched.clear();
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
      if (B(i, j).is_zero()) continue;
      for (const auto& [r, a] : cols[i]) {
        acc[r] += *a * B(i, j);
        touched.push_back(r);
      }
    }
    bool zero = true;
    for (auto r : touched) {
      if (!acc[r].is_zero()) zero = false;
      acc[r] = FamilyElem();
    }
    if (!zero) return false;
  }
  return true;
}

Subset bit(int i) { return Subset(1) << i; }

std::string subset_str(const RootDatum& d, Subset T) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < static_cast<int>(d.nilradical.size()); ++i)
    if (T & bit(i)) {
      if (!first) s += ",";
      first = false;
      s += rootdata::weight_str(d.nilradical[i]);
    }
  return s + "}";
}

MatQ kron(const MatQ& A, const MatQ& B) {
  MatQ K = zero_matrix<Rational>(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      for (Eigen::Index k = 0; k < B.rows(); ++k)
        for (Eigen::Index l = 0; l < B.cols(); ++l) K(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
    }
  return K;
}

// sorted tuples of indices; strict for wedges
void tuples(int n, int k, bool strict, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    tuples(n, k, strict, strict ? i + 1 : i, cur, out);
    cur.pop_back();
  }
}

int sort_sign(std::vector<int>& t) {
  int sign = 1;
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j + 1 < t.size() - i; ++j)
      if (t[j] > t[j + 1]) {
        std::swap(t[j], t[j + 1]);
        sign = -sign;
      }
  return sign;
}

VecQ expand_vec(const VecF& v, int r) {
  const Eigen::Index n = v.size();
  VecQ q = VecQ::Zero((1 + r) * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    q(i) = v(i).constant();
    for (int k = 0; k < r; ++k) q((k + 1) * n + i) = v(i).linear(k);
  }
  return q;
}

VecF collapse_vec(const VecQ& q, int r) {
  const Eigen::Index n = q.size() / (1 + r);
  VecF v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Rational> lin;
    for (int k = 0; k < r; ++k) lin.push_back(q((k + 1) * n + i));
    v(i) = FamilyElem(q(i), lin);
  }
  return v;
}

bool in_span(const MatQ& B, const VecQ& v) {
  if (v.isZero()) return true;
  if (B.cols() == 0) return false;
  MatQ V(v.size(), 1);
  V.col(0) = v;
  return in_column_space(B, V);
}

}  // namespace

// ---------------- algebraic modules ----------------

AlgebraicModule::AlgebraicModule(const RootDatum& d, std::vector<Weight> weights, Rep rep)
    : d_(std::make_shared<RootDatum>(d)), weights_(std::move(weights)), rep_(std::move(rep)) {}

AlgebraicModule AlgebraicModule::trivial(const RootDatum& d) {
  return AlgebraicModule(d, {Weight(d.rank, 0)}, [](const MatQ&) { return zero_matrix<Rational>(1, 1); });
}

AlgebraicModule AlgebraicModule::standard(const RootDatum& d) {
  return AlgebraicModule(d, d.index_weight, [](const MatQ& X) { return X; });
}

AlgebraicModule AlgebraicModule::dual() const {
  std::vector<Weight> w;
  for (const auto& x : weights_) w.push_back(-x);
  Rep r = rep_;
  return AlgebraicModule(*d_, w, [r](const MatQ& X) { return MatQ(-r(X).transpose()); });
}

AlgebraicModule AlgebraicModule::tensor(const AlgebraicModule& o) const {
  std::vector<Weight> w;
  for (const auto& a : weights_)
    for (const auto& b : o.weights_) w.push_back(a + b);
  Rep r1 = rep_, r2 = o.rep_;
  int n1 = dim(), n2 = o.dim();
  return AlgebraicModule(*d_, w, [r1, r2, n1, n2](const MatQ& X) {
    return MatQ(kron(r1(X), identity_matrix<Rational>(n2)) + kron(identity_matrix<Rational>(n1), r2(X)));
  });
}

namespace {
AlgebraicModule power(const AlgebraicModule& V, const RootDatum& d, int k, bool strict) {
  std::vector<std::vector<int>> basis;
  std::vector<int> cur;
  tuples(V.dim(), k, strict, 0, cur, basis);
  std::vector<Weight> w;
  for (const auto& t : basis) {
    Weight x(d.rank, 0);
    for (int i : t) x = x + V.weights()[i];
    w.push_back(x);
  }
  std::map<std::vector<int>, int> idx;
  for (size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
  return AlgebraicModule(d, w, [V, basis, idx, strict](const MatQ& X) {
    MatQ R = V.rep(X);
    const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
    MatQ out = zero_matrix<Rational>(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& t = basis[c];
      for (size_t pos = 0; pos < t.size(); ++pos)
        for (Eigen::Index j = 0; j < R.rows(); ++j) {
          if (R(j, t[pos]) == 0) continue;
          std::vector<int> u = t;
          u[pos] = static_cast<int>(j);
          int sign = 1;
          if (strict) {
            std::set<int> s(u.begin(), u.end());
            if (s.size() != u.size()) continue;
            sign = sort_sign(u);
          } else {
            std::sort(u.begin(), u.end());
          }
          // symmetric powers in the monomial basis: multiplicity of the replaced factor
          out(idx.at(u), c) += sign * R(j, t[pos]);
        }
    }
    return out;
  });
}
}  // namespace

AlgebraicModule AlgebraicModule::sym(int k) const { return power(*this, *d_, k, false); }
AlgebraicModule AlgebraicModule::wedge(int k) const { return power(*this, *d_, k, true); }

std::map<Weight, int> AlgebraicModule::character() const {
  std::map<Weight, int> c;
  for (const auto& w : weights_) ++c[w];
  return c;
}

std::vector<int> AlgebraicModule::block_indices(const Weight& mu) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (weights_[i] == mu) out.push_back(i);
  return out;
}

int AlgebraicModule::block_dim(const Weight& mu) const { return static_cast<int>(block_indices(mu).size()); }

MatF AlgebraicModule::root_action(const Weight& alpha, const Weight& mu) const {
  auto src = block_indices(mu), tgt = block_indices(mu + alpha);
  MatF M = zero_matrix<FamilyElem>(static_cast<Eigen::Index>(tgt.size()), static_cast<Eigen::Index>(src.size()));
  if (src.empty() || tgt.empty()) return M;
  MatQ R = rep_(d_->root_vector(alpha));
  for (size_t i = 0; i < tgt.size(); ++i)
    for (size_t j = 0; j < src.size(); ++j) M(i, j) = FamilyElem(R(tgt[i], src[j]));
  return M;
}

std::vector<Weight> AlgebraicModule::ce_weights(const RootDatum& d) const {
  const int nn = static_cast<int>(d.nilradical.size());
  std::set<Weight> out;
  for (Subset T = 0; T < bit(nn); ++T) {
    Weight s = rootdata::subset_weight(d, T);
    for (const auto& mu : weights_) out.insert(mu + s);
  }
  return {out.begin(), out.end()};
}

// ---------------- complexes ----------------

const Part* ComplexBlock::find(int k, Subset T) const {
  if (k < 0 || k >= static_cast<int>(parts.size())) return nullptr;
  for (const auto& p : parts[k])
    if (p.T == T) return &p;
  return nullptr;
}

MatQ expanded(const MatF& M, int nformal) { return expand(M, nformal); }

Complex build_exterior_complex(const OperatorFamily& ops, const std::vector<Weight>& totals, int threads) {
  Complex C;
  C.n = ops.n;
  C.nformal = ops.nformal;
  C.shifts = ops.shifts;
  std::vector<ComplexBlock> built(totals.size());
  std::vector<char> keep(totals.size(), 0), d2(totals.size(), 1);
  parallel_for(totals.size(), threads, [&](size_t idx) {
    ComplexBlock B;
    B.nu = totals[idx];
    B.parts.resize(ops.n + 1);
    B.dims.assign(ops.n + 1, 0);
    bool any = false;
    for (int k = 0; k <= ops.n; ++k) {
      for (Subset T : rootdata::subsets_of_size(ops.n, k)) {
        Weight mu = B.nu;
        for (int i = 0; i < ops.n; ++i)
          if (T & bit(i)) mu = mu + ops.shifts[i];
        int dim = ops.block_dim(mu);
        if (dim == 0) continue;
        B.parts[k].push_back({T, mu, dim, B.dims[k]});
        B.dims[k] += dim;
        any = true;
      }
    }
    if (!any) return;
    for (int k = 0; k < ops.n; ++k) {
      MatF D = zero_matrix<FamilyElem>(B.dims[k + 1], B.dims[k]);
      for (const auto& P : B.parts[k])
        for (int i = 0; i < ops.n; ++i) {
          if (P.T & bit(i)) continue;
          const Part* Q = B.find(k + 1, P.T | bit(i));
          if (!Q) continue;
          int sign = (std::popcount(P.T & (bit(i) - 1)) % 2) ? -1 : 1;
          MatF A = ops.op(i, P.mu);
          if (A.rows() != Q->dim || A.cols() != P.dim) throw std::logic_error("operator block has the wrong shape");
          for (Eigen::Index r = 0; r < A.rows(); ++r)
            for (Eigen::Index c = 0; c < A.cols(); ++c)
              if (!A(r, c).is_zero()) D(Q->offset + r, P.offset + c) += A(r, c) * FamilyElem(sign);
        }
      B.d.push_back(std::move(D));
    }
    for (int k = 0; k + 1 < ops.n; ++k)
      if (B.dims[k] && B.dims[k + 2] && !sparse_product_is_zero(B.d[k + 1], B.d[k])) d2[idx] = 0;
    built[idx] = std::move(B);
    keep[idx] = 1;
  });
  for (size_t i = 0; i < totals.size(); ++i) {
    if (!d2[i]) C.d_squared_zero = false;
    if (keep[i]) C.blocks.emplace(totals[i], std::move(built[i]));
  }
  return C;
}

Complex build_ce_complex_ordered(const WeightModule& M, const RootDatum& d, const std::vector<int>& order,
                                 int threads) {
  OperatorFamily ops;
  ops.n = static_cast<int>(order.size());
  ops.nformal = M.nformal();
  for (int i : order) ops.shifts.push_back(d.nilradical[i]);
  ops.block_dim = [&M](const Weight& mu) { return M.block_dim(mu); };
  auto shifts = ops.shifts;
  ops.op = [&M, shifts](int i, const Weight& mu) { return M.root_action(shifts[i], mu); };
  return build_exterior_complex(ops, M.ce_weights(d), threads);
}

Complex build_ce_complex(const WeightModule& M, const RootDatum& d, int threads) {
  std::vector<int> order(d.nilradical.size());
  std::iota(order.begin(), order.end(), 0);
  return build_ce_complex_ordered(M, d, order, threads);
}

CohomologyReport cohomology(const Complex& C, int threads, long audit_p, int audit_M) {
  CohomologyReport R;
  R.total.assign(C.n + 1, 0);
  R.pivots.p = audit_p;
  R.pivots.M = audit_M;
  std::vector<const ComplexBlock*> blocks;
  for (const auto& [nu, B] : C.blocks) blocks.push_back(&B);
  std::vector<BlockRanks> out(blocks.size());
  std::vector<PivotLog> logs(blocks.size(), R.pivots);
  parallel_for(blocks.size(), threads, [&](size_t i) {
    const ComplexBlock& B = *blocks[i];
    BlockRanks br;
    br.nu = B.nu;
    const int f = 1 + C.nformal;
    for (int k = 0; k <= C.n; ++k) br.dim.push_back(B.dims[k] * f);
    for (int k = 0; k < C.n; ++k)
      br.rank.push_back(B.dims[k] && B.dims[k + 1] ? rank(expanded(B.d[k], C.nformal), audit_p ? &logs[i] : nullptr)
                                                   : 0);
    for (int k = 0; k <= C.n; ++k) {
      int r_out = k < C.n ? br.rank[k] : 0;
      int r_in = k > 0 ? br.rank[k - 1] : 0;
      br.coh.push_back(br.dim[k] - r_out - r_in);
    }
    out[i] = std::move(br);
  });
  for (size_t i = 0; i < out.size(); ++i) {
    for (int k = 0; k <= C.n; ++k) R.total[k] += out[i].coh[k];
    R.pivots.valuations.insert(R.pivots.valuations.end(), logs[i].valuations.begin(), logs[i].valuations.end());
    R.blocks.push_back(std::move(out[i]));
  }
  return R;
}

int whole_matrix_rank(const Complex& C, int k) {
  // global order: by subset first, then weight, then label
  struct Key {
    Subset T;
    Weight nu;
    bool operator<(const Key& o) const { return std::tie(T, nu) < std::tie(o.T, o.nu); }
  };
  std::map<Key, int> row_off, col_off;
  std::map<Key, int> row_dim, col_dim;
  for (const auto& [nu, B] : C.blocks) {
    for (const auto& P : B.parts[k]) col_dim[{P.T, nu}] = P.dim;
    if (k + 1 <= C.n)
      for (const auto& P : B.parts[k + 1]) row_dim[{P.T, nu}] = P.dim;
  }
  int nr = 0, nc = 0;
  for (auto& [key, dm] : row_dim) {
    row_off[key] = nr;
    nr += dm;
  }
  for (auto& [key, dm] : col_dim) {
    col_off[key] = nc;
    nc += dm;
  }
  if (nr == 0 || nc == 0) return 0;
  MatF G = zero_matrix<FamilyElem>(nr, nc);
  for (const auto& [nu, B] : C.blocks) {
    if (k >= C.n || !B.dims[k] || !B.dims[k + 1]) continue;
    for (const auto& Pc : B.parts[k])
      for (const auto& Pr : B.parts[k + 1]) {
        int r0 = row_off.at({Pr.T, nu}), c0 = col_off.at({Pc.T, nu});
        for (int r = 0; r < Pr.dim; ++r)
          for (int c = 0; c < Pc.dim; ++c) G(r0 + r, c0 + c) = B.d[k](Pr.offset + r, Pc.offset + c);
      }
  }
  return rank(expanded(G, C.nformal));
}

namespace {

// Levi root action on the degree-k cochains of block nu -> nu + beta (default root order only)
MatF levi_cochain_action(const Complex& C, const WeightModule& M, const RootDatum& d, const Weight& beta,
                         const ComplexBlock& src, const ComplexBlock* tgt, int k) {
  int rows = tgt ? tgt->dims[k] : 0;
  MatF L = zero_matrix<FamilyElem>(rows, src.dims[k]);
  if (!tgt || rows == 0) return L;
  MatQ R = rootdata::coadjoint_wedge_action(d, beta, k);
  auto basis = rootdata::subsets_of_size(C.n, k);
  std::map<Subset, int> idx;
  for (size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
  for (const auto& P : src.parts[k]) {
    for (const auto& Q : tgt->parts[k]) {
      Rational c = R(idx.at(Q.T), idx.at(P.T));
      if (c != 0) {
        if (Q.mu != P.mu || Q.dim != P.dim) throw std::logic_error("coadjoint action changed the module weight");
        for (int i = 0; i < P.dim; ++i) L(Q.offset + i, P.offset + i) += FamilyElem(c);
      }
      if (Q.T == P.T) {
        MatF A = M.root_action(beta, P.mu);
        for (Eigen::Index r = 0; r < A.rows(); ++r)
          for (Eigen::Index c2 = 0; c2 < A.cols(); ++c2) L(Q.offset + r, P.offset + c2) += A(r, c2);
      }
    }
  }
  return L;
}

int projected_rank(const MatQ& K, Eigen::Index first) {
  if (K.cols() == 0 || first == 0) return 0;
  return rank(MatQ(K.topRows(first)));
}

}  // namespace

std::map<Weight, int> levi_highest_classes(const Complex& C, const WeightModule& M, const RootDatum& d, int k) {
  std::vector<Weight> simple;
  for (const auto& b : d.simple)
    if (d.is_levi(b)) simple.push_back(b);
  std::map<Weight, int> out;
  const int r = C.nformal;
  for (const auto& [nu, B] : C.blocks) {
    if (!B.dims[k]) continue;
    MatQ Z = (k < C.n && B.dims[k + 1]) ? kernel_basis(expanded(B.d[k], r))
                                        : identity_matrix<Rational>(B.dims[k] * (1 + r));
    if (Z.cols() == 0) continue;
    MatQ Bin = (k > 0 && B.dims[k - 1]) ? expanded(B.d[k - 1], r) : MatQ(Z.rows(), 0);
    int rin = Bin.cols() ? rank(Bin) : 0;
    if (Z.cols() == rin) continue;
    // stacked system [L_b Z | -B_b]
    std::vector<MatQ> LZ, Bt;
    Eigen::Index rows = 0, extra = 0;
    for (const auto& b : simple) {
      auto it = C.blocks.find(nu + b);
      const ComplexBlock* tgt = it == C.blocks.end() ? nullptr : &it->second;
      MatQ L = expanded(levi_cochain_action(C, M, d, b, B, tgt, k), r);
      if (L.rows() == 0) continue;
      LZ.push_back(L * Z);
      Bt.push_back((k > 0 && tgt && tgt->dims[k - 1]) ? expanded(tgt->d[k - 1], r) : MatQ(L.rows(), 0));
      rows += L.rows();
      extra += Bt.back().cols();
    }
    int count;
    if (rows == 0) {
      count = static_cast<int>(Z.cols()) - rin;
    } else {
      MatQ S = zero_matrix<Rational>(rows, Z.cols() + extra);
      Eigen::Index r0 = 0, c0 = Z.cols();
      for (size_t i = 0; i < LZ.size(); ++i) {
        S.block(r0, 0, LZ[i].rows(), Z.cols()) = LZ[i];
        if (Bt[i].cols()) S.block(r0, c0, Bt[i].rows(), Bt[i].cols()) = -Bt[i];
        r0 += LZ[i].rows();
        c0 += Bt[i].cols();
      }
      MatQ K = kernel_basis(S);
      count = projected_rank(K, Z.cols()) - rin;
    }
    if (count > 0) out[nu] = count;
  }
  return out;
}

std::vector<int> levi_highest_counts(const Complex& C, const WeightModule& M, const RootDatum& d) {
  std::vector<int> out;
  for (int k = 0; k <= C.n; ++k) {
    int s = 0;
    for (const auto& [nu, c] : levi_highest_classes(C, M, d, k)) s += c;
    out.push_back(s);
  }
  return out;
}

// ---------------- i~ and p~ ----------------

namespace {

PolyQ det_poly(const std::vector<std::vector<PolyQ>>& A) {
  const int n = static_cast<int>(A.size());
  if (n == 0) return PolyQ(1);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  PolyQ acc(0);
  do {
    std::vector<int> t = perm;
    int sign = sort_sign(t);
    PolyQ term(sign);
    bool zero = false;
    for (int i = 0; i < n && !zero; ++i) {
      if (A[i][perm[i]].is_zero()) zero = true;
      else term *= A[i][perm[i]];
    }
    if (!zero) acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

class PowerCache {
 public:
  explicit PowerCache(std::vector<PolyQ> base) : base_(std::move(base)), pw_(base_.size()) {}
  const PolyQ& get(int j, int k) {
    auto& v = pw_[j];
    if (v.empty()) v.push_back(PolyQ(1));
    while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * base_[j]);
    return v[k];
  }
  PolyQ monomial(const Exponent& a) {
    PolyQ r(1);
    for (size_t j = 0; j < a.size(); ++j)
      if (a[j]) r *= get(static_cast<int>(j), a[j]);
    return r;
  }

 private:
  std::vector<PolyQ> base_;
  std::vector<std::vector<PolyQ>> pw_;
};

Rational coef_at(const PolyQ& f, const Exponent& a, int nvars) {
  Exponent e = a;
  e.resize(nvars, 0);
  return f.coeff(e);
}

}  // namespace

SummandData build_summand_maps(const dmod::DModule& D, const Complex& C, int threads) {
  (void)threads;
  if (D.s() != 1 || D.datum().spec.e != 1) throw dmod::UnsupportedAction("the maps i~ and p~ are built for s = 1, e = 1");
  const RootDatum& d = D.datum();
  const WeylElement& w = D.w();
  SummandData S;
  S.Sw = rootdata::subset_of(d, rootdata::delta_plus_w(d, w));
  S.l = std::popcount(S.Sw);
  S.base = rootdata::subset_weight(d, S.Sw);
  S.dec = iwahori::decompose_wNw(d, w, D.s(), D.p());
  dmod::LeviModule Lm(d, w, D.s(), D.p(), D.nformal());
  S.levi_roots = Lm.var_roots();
  const int L = Lm.nvars();
  const int dim = D.chart().dim();
  const int nn = static_cast<int>(d.nilradical.size());

  // c_T(y) for |T| = l
  auto ch = D.chart();
  auto ops = iwahori::polyq_ops(ch);
  std::vector<PolyQ> y;
  for (int k = 0; k < L; ++k) y.push_back(PolyQ::variable(L, -1, k));
  Mat<PolyQ> PL = iwahori::psi_levi(d, y, ops);
  Mat<PolyQ> PLinv = iwahori::unipotent_inverse<PolyQ>(PL);
  std::vector<int> sw_idx;
  for (int i = 0; i < nn; ++i)
    if (S.Sw & bit(i)) sw_idx.push_back(i);
  std::vector<std::vector<PolyQ>> adj(nn);  // adj[a][g]: coefficient of e_g in Ad(psi_L^{-1}) e_a, g in S_w
  for (int a = 0; a < nn; ++a) {
    MatQ Ea = d.root_vector(d.nilradical[a]);
    Mat<PolyQ> X = PLinv * iwahori::cast_matrix<PolyQ>(Ea) * PL;
    for (int g : sw_idx) {
      auto pp = d.primary_position(d.nilradical[g]);
      MatQ Eg = d.root_vector(d.nilradical[g]);
      adj[a].push_back(X(pp.first, pp.second).scaled(1 / Eg(pp.first, pp.second)));
    }
  }
  std::map<Subset, PolyQ> cT;
  for (Subset T : rootdata::subsets_of_size(nn, S.l)) {
    std::vector<int> ti;
    for (int i = 0; i < nn; ++i)
      if (T & bit(i)) ti.push_back(i);
    std::vector<std::vector<PolyQ>> A(S.l, std::vector<PolyQ>(S.l));
    for (int r = 0; r < S.l; ++r)
      for (int c = 0; c < S.l; ++c) A[r][c] = adj[ti[c]][r];
    PolyQ det = det_poly(A);
    if (!det.is_zero()) cT.emplace(T, det);
  }

  PowerCache xpow(S.dec.i_L);
  PowerCache ppow(S.dec.p_L);
  for (const auto& [nu, B] : C.blocks) {
    if (D.depth(nu - S.base) > D.N()) continue;
    const auto& exps = Lm.exponents(nu - S.base);
    if (exps.empty()) continue;
    const Eigen::Index nl = static_cast<Eigen::Index>(exps.size());
    S.levi_dim[nu] = static_cast<int>(nl) * (1 + D.nformal());
    MatF I = zero_matrix<FamilyElem>(B.dims[S.l], nl);
    MatF P = zero_matrix<FamilyElem>(nl, B.dims[S.l]);
    for (const auto& part : B.parts[S.l]) {
      auto labels = D.block(part.mu);
      auto it = cT.find(part.T);
      for (size_t bi = 0; bi < labels.size(); ++bi) {
        const Exponent& b = labels[bi].a;
        if (it != cT.end()) {
          PolyQ q = it->second * xpow.monomial(b);
          for (Eigen::Index ci = 0; ci < nl; ++ci) {
            Rational v = coef_at(q, exps[ci], L);
            if (v != 0) I(part.offset + bi, ci) = FamilyElem(v);
          }
        }
        if (part.T == S.Sw) {
          for (Eigen::Index ci = 0; ci < nl; ++ci) {
            Rational v = coef_at(ppow.monomial(exps[ci]), b, dim);
            if (v != 0) P(ci, part.offset + bi) = FamilyElem(v);
          }
        }
      }
    }
    S.imap.emplace(nu, std::move(I));
    S.pmap.emplace(nu, std::move(P));
  }
  return S;
}

bool SummandReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

MatQ nilpotent_generator(const RootDatum& d, const WeylElement& w, const Weight& alpha, long p) {
  auto dpw = rootdata::delta_plus_w(d, w);
  Rational c = std::find(dpw.begin(), dpw.end(), alpha) != dpw.end() ? Rational(p) : Rational(1);
  MatQ X = d.root_vector(alpha) * c;
  MatQ g = identity_matrix<Rational>(d.m), term = identity_matrix<Rational>(d.m);
  for (int k = 1; k <= d.m; ++k) {
    term = MatQ(term * X) / Rational(k);
    if (is_zero_matrix(term)) break;
    g += term;
  }
  return g;
}

std::map<Weight, VecF> act_on_cochain(const dmod::DModule& D, const Complex& C, const MatQ& g, const Weight& nu,
                                      int k, const VecF& z) {
  const RootDatum& d = D.datum();
  const ComplexBlock& B = C.blocks.at(nu);
  Weight base = rootdata::subset_weight(d, rootdata::subset_of(d, rootdata::delta_plus_w(d, D.w())));
  std::map<Weight, VecF> out;
  for (const auto& P : B.parts[k]) {
    auto labels = D.block(P.mu);
    Element v;
    for (int i = 0; i < P.dim; ++i)
      if (!z(P.offset + i).is_zero()) v[labels[i]] = z(P.offset + i);
    if (v.empty()) continue;
    Weight sT = rootdata::subset_weight(d, P.T);
    Rational h = d.height(D.untwist(sT - base));
    Element gv = D.group_action(g, v, Rational(D.N()) + h);
    for (const auto& [lab, c] : gv) {
      Weight nu2 = D.weight_of(lab.a) + sT;
      if (D.depth(nu2 - base) > D.N()) continue;
      auto it = C.blocks.find(nu2);
      if (it == C.blocks.end()) throw std::logic_error("group action left the computed blocks");
      const Part* Q = it->second.find(k, P.T);
      if (!Q) throw std::logic_error("missing cochain part");
      auto lab2 = D.block(Q->mu);
      auto pos = std::lower_bound(lab2.begin(), lab2.end(), lab);
      if (pos == lab2.end() || *pos != lab) throw std::logic_error("label outside its block");
      auto& vec = out[nu2];
      if (vec.size() == 0) vec = VecF::Constant(it->second.dims[k], FamilyElem(0));
      vec(Q->offset + (pos - lab2.begin())) += c;
    }
  }
  return out;
}

int invariant_classes(const dmod::DModule& D, const Complex& C, const std::vector<MatQ>& gens, const Weight& nu,
                      int k) {
  const int r = C.nformal;
  const ComplexBlock& B = C.blocks.at(nu);
  if (!B.dims[k]) return 0;
  MatQ Z = (k < C.n && B.dims[k + 1]) ? kernel_basis(expanded(B.d[k], r))
                                      : identity_matrix<Rational>(B.dims[k] * (1 + r));
  MatQ Bin = (k > 0 && B.dims[k - 1]) ? expanded(B.d[k - 1], r) : MatQ(Z.rows(), 0);
  int rin = Bin.cols() ? rank(Bin) : 0;
  if (Z.cols() == rin) return 0;
  // per (generator, weight) block of conditions
  std::map<std::pair<int, Weight>, MatQ> G;
  for (Eigen::Index j = 0; j < Z.cols(); ++j) {
    VecF z = collapse_vec(Z.col(j), r);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      auto comps = act_on_cochain(D, C, gens[gi], nu, k, z);
      for (auto& [nu2, v] : comps) {
        VecQ q = expand_vec(v, r);
        if (nu2 == nu) q -= Z.col(j);
        auto key = std::make_pair(static_cast<int>(gi), nu2);
        auto it = G.find(key);
        if (it == G.end()) it = G.emplace(key, zero_matrix<Rational>(q.size(), Z.cols())).first;
        it->second.col(j) = q;
      }
    }
  }
  Eigen::Index rows = 0, extra = 0;
  std::vector<MatQ> Bs;
  for (auto& [key, M] : G) {
    const ComplexBlock& B2 = C.blocks.at(key.second);
    Bs.push_back((k > 0 && B2.dims[k - 1]) ? expanded(B2.d[k - 1], r) : MatQ(M.rows(), 0));
    rows += M.rows();
    extra += Bs.back().cols();
  }
  if (rows == 0) return static_cast<int>(Z.cols()) - rin;
  MatQ S = zero_matrix<Rational>(rows, Z.cols() + extra);
  Eigen::Index r0 = 0, c0 = Z.cols();
  size_t i = 0;
  for (auto& [key, M] : G) {
    S.block(r0, 0, M.rows(), Z.cols()) = M;
    if (Bs[i].cols()) S.block(r0, c0, Bs[i].rows(), Bs[i].cols()) = -Bs[i];
    r0 += M.rows();
    c0 += Bs[i].cols();
    ++i;
  }
  return projected_rank(kernel_basis(S), Z.cols()) - rin;
}

Exclusion weight_exclusion(const dmod::DModule& D, int k) {
  const RootDatum& d = D.datum();
  const int nn = static_cast<int>(d.nilradical.size());
  Subset Sw = rootdata::subset_of(d, rootdata::delta_plus_w(d, D.w()));
  Weight base = rootdata::subset_weight(d, Sw);
  Exclusion ex;
  ex.k = k;
  for (Subset T : rootdata::subsets_of_size(nn, k)) {
    Weight mu = base - rootdata::subset_weight(d, T);
    Weight mu_u = D.untwist(mu);
    Rational h = d.height(mu_u);
    const auto& sol = D.exponents(mu_u);
    std::ostringstream os;
    os << "T=" << subset_str(d, T) << ": ";
    if (!sol.empty()) {
      ex.present = true;
      ex.source = T;
      os << "present with a=" << rootdata::weight_str(sol.front());
    } else if (h > 0) {
      os << "excluded: w^-1(sum S_w - sum T) has height " << h << " > 0, outside the negative cone";
    } else {
      os << "excluded: no nonnegative combination of chart roots";
    }
    ex.certificate.push_back(os.str());
  }
  return ex;
}

SummandReport verify_direct_summand(const dmod::DModule& D, int threads) {
  const RootDatum& d = D.datum();
  SummandReport rep;
  Complex C = build_ce_complex(D, d, threads);
  rep.cohomology = cohomology(C, threads);
  SummandData S = build_summand_maps(D, C, threads);
  rep.l = S.l;
  const int r = C.nformal;
  const int l = S.l;
  for (auto& [nu, n] : S.levi_dim) rep.levi_total += n;

  auto fmt = [](const Weight& nu) { return rootdata::weight_str(nu); };

  {
    Check c{"d_after_i_zero", true, ""};
    int blocks = 0;
    for (const auto& [nu, I] : S.imap) {
      const ComplexBlock& B = C.blocks.at(nu);
      ++blocks;
      if (l < C.n && B.dims[l + 1] && !is_zero_matrix(MatF(B.d[l] * I))) {
        c.pass = false;
        c.witness = "nonzero at weight " + fmt(nu);
        break;
      }
    }
    if (c.pass) c.witness = std::to_string(blocks) + " blocks, d_l o i = 0 exactly";
    rep.checks.push_back(c);
  }
  Check cb{"image_meets_coboundaries_trivially", true, ""}, cc{"class_map_injective", true, ""};
  int total_rank = 0;
  for (const auto& [nu, I] : S.imap) {
    const ComplexBlock& B = C.blocks.at(nu);
    MatQ Iq = expanded(I, r);
    MatQ Bq = (l > 0 && B.dims[l - 1]) ? expanded(B.d[l - 1], r) : MatQ(Iq.rows(), 0);
    int rb = Bq.cols() ? rank(Bq) : 0;
    int ri = rank(Iq);
    int rbi = rank(hcat(Bq, Iq));
    total_rank += rbi - rb;
    if (cb.pass && rbi != rb + ri) {
      cb.pass = false;
      cb.witness = "rank[B|I] = " + std::to_string(rbi) + " != " + std::to_string(rb) + " + " + std::to_string(ri) +
                   " at " + fmt(nu);
    }
    if (cc.pass && rbi - rb != S.levi_dim.at(nu)) {
      cc.pass = false;
      cc.witness = "class rank " + std::to_string(rbi - rb) + " < Levi block " + std::to_string(S.levi_dim.at(nu)) +
                   " at " + fmt(nu);
    }
  }
  if (S.imap.empty()) {
    cb.pass = cc.pass = false;
    cb.witness = cc.witness = "no Levi block within the truncation";
  }
  if (cb.pass) cb.witness = "rank[B|I] = rank B + rank I on " + std::to_string(S.imap.size()) + " blocks";
  if (cc.pass) cc.witness = "injective: " + std::to_string(total_rank) + " independent classes";
  rep.checks.push_back(cb);
  rep.checks.push_back(cc);

  {
    Check c{"n_w_invariance", true, ""};
    std::vector<MatQ> gens;
    for (const auto& a : d.nilradical) gens.push_back(nilpotent_generator(d, D.w(), a, D.p()));
    int tested = 0;
    for (const auto& [nu, I] : S.imap) {
      for (Eigen::Index j = 0; j < I.cols() && c.pass; ++j) {
        VecF z = I.col(j);
        for (size_t gi = 0; gi < gens.size() && c.pass; ++gi) {
          auto comps = act_on_cochain(D, C, gens[gi], nu, l, z);
          for (auto& [nu2, v] : comps) {
            VecF diff = v;
            if (nu2 == nu) diff -= z;
            const ComplexBlock& B2 = C.blocks.at(nu2);
            MatQ Bq = (l > 0 && B2.dims[l - 1]) ? expanded(B2.d[l - 1], r) : MatQ(diff.size() * (1 + r), 0);
            ++tested;
            if (!in_span(Bq, expand_vec(diff, r))) {
              c.pass = false;
              c.witness = "generator " + rootdata::weight_str(d.nilradical[gi]) + " moves a class at " + fmt(nu2);
              break;
            }
          }
        }
      }
    }
    if (c.pass) c.witness = std::to_string(tested) + " translated components lie in Im d";
    rep.checks.push_back(c);
  }
  {
    Check c{"p_i_identity_and_p_d_zero", true, ""};
    for (const auto& [nu, I] : S.imap) {
      const MatF& P = S.pmap.at(nu);
      MatF PI = P * I;
      if (!is_zero_matrix(MatF(PI - identity_matrix<FamilyElem>(PI.rows())))) {
        c.pass = false;
        c.witness = "p o i != id at " + fmt(nu);
        break;
      }
      const ComplexBlock& B = C.blocks.at(nu);
      if (l > 0 && B.dims[l - 1] && !is_zero_matrix(MatF(P * B.d[l - 1]))) {
        c.pass = false;
        c.witness = "p o d != 0 at " + fmt(nu);
        break;
      }
    }
    if (c.pass) c.witness = "p o i = id and p o d = 0 on " + std::to_string(S.imap.size()) + " blocks";
    rep.checks.push_back(c);
  }
  {
    Check c{"weight_exclusion", true, ""};
    std::string w;
    for (int k : {l - 1, l + 1}) {
      if (k < 0 || k > C.n) continue;
      Exclusion e = weight_exclusion(D, k);
      if (e.present) {
        c.pass = false;
        w += "present in degree " + std::to_string(k) + "; ";
      }
    }
    Exclusion e = weight_exclusion(D, l);
    if (!e.present || e.source != S.Sw) {
      c.pass = false;
      w += "degree l source mismatch; ";
    }
    c.witness = c.pass ? "absent in degrees l-1, l+1; present in degree l from S_w with a = 0" : w;
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace lacoh::cecomplex
