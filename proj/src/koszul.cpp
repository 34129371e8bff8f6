#include "lacoh/koszul.hpp"

#include "lacoh/parallel.hpp"

#include <algorithm>
#include <functional>

namespace lacoh::koszul {

GroupRingElement GroupRingElement::generator(int n, int i) {
  GroupRingElement g;
  g.n = n;
  std::vector<int> e(n, 0);
  e[i] = 1;
  g.terms[e] = 1;
  return g;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  GroupRingElement r;
  r.n = std::max(n, o.n);
  for (const auto& [a, x] : terms)
    for (const auto& [b, y] : o.terms) {
      std::vector<int> c(r.n, 0);
      for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
      for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
      r.terms[c] += x * y;
    }
  for (auto it = r.terms.begin(); it != r.terms.end();) it = it->second == 0 ? r.terms.erase(it) : std::next(it);
  return r;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  r.n = std::max(n, o.n);
  for (const auto& [b, y] : o.terms) {
    std::vector<int> c = b;
    c.resize(r.n, 0);
    r.terms[c] += y;
  }
  for (auto it = r.terms.begin(); it != r.terms.end();) it = it->second == 0 ? r.terms.erase(it) : std::next(it);
  return r;
}

PolyQ GroupRingElement::to_T(int D) const {
  PolyQ acc(n, D);
  for (const auto& [a, c] : terms) {
    PolyQ m = PolyQ::constant(n, D, c);
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      PolyQ g = PolyQ::constant(n, D, 1) + PolyQ::variable(n, D, i);
      m *= a[i] > 0 ? g.pow(a[i]) : g.inverse().pow(-a[i]);
    }
    acc += m;
  }
  return acc;
}

Complex build_koszul(const std::vector<MatF>& T, int nformal) {
  const int n = static_cast<int>(T.size());
  const Eigen::Index dim = n ? T[0].rows() : 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!is_zero_matrix(MatF(T[i] * T[j] - T[j] * T[i])))
        throw NonCommutingActions("operators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                  " do not commute");
  cecomplex::OperatorFamily ops;
  ops.n = n;
  ops.nformal = nformal;
  ops.shifts.assign(n, Weight{0});
  ops.block_dim = [dim](const Weight&) { return static_cast<int>(dim); };
  ops.op = [&T](int i, const Weight&) { return T[i]; };
  return cecomplex::build_exterior_complex(ops, {Weight{0}});
}

std::vector<int> group_cohomology(const Complex& K, int threads) { return cecomplex::cohomology(K, threads).total; }

std::vector<MatF> lattice_operators(const cecomplex::AlgebraicModule& M, const RootDatum& d,
                                    const std::vector<Rational>& c, const std::vector<std::vector<int>>& U) {
  const int n = static_cast<int>(d.nilradical.size());
  std::vector<MatQ> X;
  for (int j = 0; j < n; ++j) X.push_back(MatQ(M.rep(d.root_vector(d.nilradical[j])) * c[j]));
  std::vector<MatF> out;
  for (int i = 0; i < n; ++i) {
    MatQ Y = zero_matrix<Rational>(M.dim(), M.dim());
    for (int j = 0; j < n; ++j) {
      int u = U.empty() ? (i == j ? 1 : 0) : U[i][j];
      if (u) Y += X[j] * Rational(u);
    }
    MatQ g = zero_matrix<Rational>(M.dim(), M.dim()), term = identity_matrix<Rational>(M.dim());
    for (int k = 1; k <= M.dim() + 1; ++k) {
      term = MatQ(term * Y) / Rational(k);
      if (is_zero_matrix(term)) break;
      g += term;
    }
    out.push_back(lift(g));
  }
  return out;
}

Complex build_graded_koszul(const dmod::DModule& D, int threads) {
  const RootDatum& d = D.datum();
  auto dpw = rootdata::delta_plus_w(d, D.w());
  cecomplex::OperatorFamily ops;
  ops.n = static_cast<int>(d.nilradical.size());
  ops.nformal = D.nformal();
  ops.shifts = d.nilradical;
  std::vector<FamilyElem> c;
  for (const auto& a : d.nilradical)
    c.push_back(std::find(dpw.begin(), dpw.end(), a) != dpw.end() ? FamilyElem(D.p()) : FamilyElem(1));
  ops.block_dim = [&D](const Weight& mu) { return D.block_dim(mu); };
  auto shifts = ops.shifts;
  ops.op = [&D, shifts, c](int i, const Weight& mu) { return MatF(D.root_action(shifts[i], mu) * c[i]); };
  return cecomplex::build_exterior_complex(ops, D.ce_weights(d), threads);
}

Comparison compare_group_vs_lie(const dmod::DModule& D, int threads) {
  const RootDatum& d = D.datum();
  Complex K = build_graded_koszul(D, threads);
  Complex C = cecomplex::build_ce_complex(D, d, threads);
  auto RK = cecomplex::cohomology(K, threads);
  auto RC = cecomplex::cohomology(C, threads);
  std::vector<MatQ> gens;
  for (const auto& a : d.nilradical) gens.push_back(cecomplex::nilpotent_generator(d, D.w(), a, D.p()));
  std::map<Weight, const cecomplex::BlockRanks*> kb;
  for (const auto& b : RK.blocks) kb[b.nu] = &b;
  Comparison out;
  const int n = C.n;
  out.group_total.assign(n + 1, 0);
  out.lie_raw_total.assign(n + 1, 0);
  out.lie_inv_total.assign(n + 1, 0);
  std::vector<BlockComparison> res(RC.blocks.size());
  parallel_for(RC.blocks.size(), threads, [&](size_t i) {
    const auto& b = RC.blocks[i];
    BlockComparison bc;
    bc.nu = b.nu;
    bc.lie_raw = b.coh;
    bc.group = kb.count(b.nu) ? kb.at(b.nu)->coh : std::vector<int>(n + 1, 0);
    for (int q = 0; q <= n; ++q) bc.lie_inv.push_back(b.coh[q] ? cecomplex::invariant_classes(D, C, gens, b.nu, q) : 0);
    bc.equal = bc.group == bc.lie_inv;
    res[i] = std::move(bc);
  });
  for (auto& bc : res) {
    for (int q = 0; q <= n; ++q) {
      out.group_total[q] += bc.group[q];
      out.lie_raw_total[q] += bc.lie_raw[q];
      out.lie_inv_total[q] += bc.lie_inv[q];
    }
    if (!bc.equal) out.all_equal = false;
    out.blocks.push_back(std::move(bc));
  }
  return out;
}

}  // namespace lacoh::koszul

namespace lacoh::koszul {

namespace {

std::vector<std::vector<int>> monomials(int n, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      a[i] = left;
      out.push_back(a);
      return;
    }
    for (int k = left; k >= 0; --k) {
      a[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (n > 0) rec(0, j);
  return out;
}

}  // namespace

RegularSequenceShadow regular_sequence_shadow(int n, int D, int threads) {
  std::vector<std::vector<std::vector<int>>> mono(D + 1);
  for (int j = 0; j <= D; ++j) mono[j] = monomials(n, j);
  cecomplex::OperatorFamily ops;
  ops.n = n;
  ops.shifts.assign(n, Weight{1});
  ops.block_dim = [&](const Weight& mu) {
    return mu[0] < 0 || mu[0] > D ? 0 : static_cast<int>(mono[mu[0]].size());
  };
  ops.op = [&](int i, const Weight& mu) {
    const int j = mu[0];
    const int rows = j + 1 > D ? 0 : static_cast<int>(mono[j + 1].size());
    MatF T = zero_matrix<FamilyElem>(rows, static_cast<Eigen::Index>(mono[j].size()));
    if (!rows) return T;
    for (size_t c = 0; c < mono[j].size(); ++c) {
      auto b = mono[j][c];
      ++b[i];
      auto it = std::find(mono[j + 1].begin(), mono[j + 1].end(), b);
      T(it - mono[j + 1].begin(), static_cast<Eigen::Index>(c)) = 1;
    }
    return T;
  };
  std::vector<Weight> totals;
  for (int g = -n; g <= D; ++g) totals.push_back({g});
  Complex K = cecomplex::build_exterior_complex(ops, totals, threads);
  auto R = cecomplex::cohomology(K, threads);
  RegularSequenceShadow out;
  out.n = n;
  out.D = D;
  for (const auto& b : R.blocks) {
    out.coh[b.nu[0]] = b.coh;
    if (b.nu[0] > D - n) continue;
    for (int q = 0; q < n; ++q)
      if (b.coh[q]) out.exact_below_top = false;
    out.top += b.coh[n];
  }
  return out;
}

}  // namespace lacoh::koszul
