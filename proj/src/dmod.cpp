#include "lacoh/dmod.hpp"

#include <algorithm>
#include <set>

namespace lacoh::dmod {

using rootdata::operator+;
using rootdata::operator-;
using rootdata::operator*;

namespace {

Weight zero_weight(int r) { return Weight(r, 0); }

Weight combo(const std::vector<Weight>& roots, const Exponent& a, int r) {
  Weight w = zero_weight(r);
  for (size_t j = 0; j < roots.size(); ++j)
    if (a[j]) w = w + a[j] * roots[j];
  return w;
}

int to_int(const Rational& q) {
  if (denominator(q) != 1) throw std::logic_error("non-integral depth");
  return static_cast<int>(numerator(q));
}

void dfs_bounded(const std::vector<int>& dep, int j, int rem, Exponent& a, std::vector<Exponent>& out) {
  if (j == static_cast<int>(dep.size())) {
    out.push_back(a);
    return;
  }
  for (int k = 0; k * dep[j] <= rem; ++k) {
    a[j] = k;
    dfs_bounded(dep, j + 1, rem - k * dep[j], a, out);
  }
  a[j] = 0;
}

std::vector<std::string> matrix_key(const MatQ& Y) {
  std::vector<std::string> k;
  for (Eigen::Index i = 0; i < Y.rows(); ++i)
    for (Eigen::Index j = 0; j < Y.cols(); ++j) k.push_back(Y(i, j).str());
  return k;
}

}  // namespace

std::vector<Exponent> solve_exponents(const RootDatum& d, const std::vector<Weight>& roots, const Weight& target) {
  const int n = static_cast<int>(roots.size());
  std::vector<int> dep(n);
  for (int j = 0; j < n; ++j) {
    dep[j] = to_int(-d.height(roots[j]));
    if (dep[j] < 1) throw std::invalid_argument("solve_exponents: roots must be negative");
  }
  int total = to_int(-d.height(target));
  std::vector<Exponent> out;
  if (total < 0) return out;
  std::vector<Exponent> cand;
  Exponent a(n, 0);
  // weights pin the solution down; enumerate by depth and filter
  std::function<void(int, int, Weight)> rec = [&](int j, int rem, Weight r) {
    if (j == n) {
      if (rem == 0 && std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) out.push_back(a);
      return;
    }
    if (j == n - 1) {
      if (rem % dep[j] != 0) return;
      int k = rem / dep[j];
      Weight r2 = r - k * roots[j];
      if (std::all_of(r2.begin(), r2.end(), [](int x) { return x == 0; })) {
        a[j] = k;
        out.push_back(a);
        a[j] = 0;
      }
      return;
    }
    for (int k = 0; k * dep[j] <= rem; ++k) {
      a[j] = k;
      rec(j + 1, rem - k * dep[j], r - k * roots[j]);
    }
    a[j] = 0;
  };
  if (n == 0) {
    if (std::all_of(target.begin(), target.end(), [](int x) { return x == 0; })) out.push_back(a);
    return out;
  }
  rec(0, total, target);
  std::sort(out.begin(), out.end());
  return out;
}

long long coset_count(const iwahori::Chart& ch, int e) {
  long long c = 1;
  for (int k = 0; k < (ch.s - 1) * ch.dim() * e; ++k) {
    c *= ch.p;
    if (c > (1LL << 40)) throw std::overflow_error("too many cosets");
  }
  return c;
}

// ---------------- DModule ----------------

DModule::DModule(const RootDatum& d, const WeylElement& w, int s, long p, FormalWeight lambda, int N)
    : d_(d), w_(w), winv_(w.inverse()), s_(s), p_(p), lambda_(std::move(lambda)), N_(N),
      chart_(iwahori::chart_for(d, s, p)) {
  if (s < 1) throw std::invalid_argument("level s must be at least 1");
  if (N < 0) throw std::invalid_argument("truncation depth must be nonnegative");
  if (!rootdata::in_wp(d, w)) throw rootdata::NotInWP("element " + w.str() + " is not in W^P");
  const int e = d.spec.e;
  for (int k = 0; k < e; ++k)
    for (int j = 0; j < chart_.dim(); ++j) {
      Weight r = (d.spec.family == rootdata::Family::Sp) ? chart_.root(j)
                                                          : d.position_weight(chart_.coords[j].i, chart_.coords[j].j);
      var_roots_.push_back(r);
      var_depth_.push_back(-d.height(r));
    }
  ncosets_ = coset_count(chart_, e);
  W_ = d.weyl_matrix(w);
  Winv_ = W_.transpose();
}

Weight DModule::weight_of(const Exponent& a) const { return twist(combo(var_roots_, a, d_.rank)); }

Rational DModule::depth_of(const Exponent& a) const {
  Rational r = 0;
  for (size_t j = 0; j < a.size(); ++j) r += a[j] * var_depth_[j];
  return r;
}

Rational DModule::depth(const Weight& mu) const { return -d_.height(untwist(mu)); }

const std::vector<Exponent>& DModule::exponents(const Weight& mu) const {
  std::lock_guard<std::mutex> lk(*mu_);
  auto it = exp_cache_.find(mu);
  if (it != exp_cache_.end()) return it->second;
  return exp_cache_.emplace(mu, solve_exponents(d_, var_roots_, mu)).first->second;
}

std::map<Weight, std::vector<Exponent>> DModule::exponents_up_to(const Rational& bound) const {
  std::map<Weight, std::vector<Exponent>> out;
  if (bound < 0) return out;
  std::vector<int> dep;
  for (const auto& q : var_depth_) dep.push_back(to_int(q));
  std::vector<Exponent> all;
  Exponent a(nvars(), 0);
  int b = static_cast<int>(numerator(bound) / denominator(bound));
  dfs_bounded(dep, 0, b, a, all);
  for (auto& x : all) out[combo(var_roots_, x, d_.rank)].push_back(x);
  for (auto& [k, v] : out) std::sort(v.begin(), v.end());
  return out;
}

std::vector<Label> DModule::block(const Weight& mu) const {
  std::vector<Label> out;
  const auto& ex = exponents(untwist(mu));
  if (ex.empty()) return out;
  if (ncosets_ > 100000) throw std::length_error("block too large to materialize");
  for (long long c = 0; c < ncosets_; ++c)
    for (const auto& a : ex) out.push_back({static_cast<int>(c), a});
  return out;
}

std::map<Weight, long long> DModule::weight_multiset() const {
  std::map<Weight, long long> out;
  for (const auto& [mu, ex] : exponents_up_to(N_)) out[twist(mu)] += static_cast<long long>(ex.size()) * ncosets_;
  return out;
}

int DModule::block_dim(const Weight& mu) const {
  return static_cast<int>(exponents(untwist(mu)).size() * static_cast<size_t>(ncosets_));
}

MatQ DModule::untwist_matrix(const MatQ& Y) const { return Winv_ * Y * W_; }

MatQ DModule::coset_rep(int coset) const {
  iwahori::Chart c1 = iwahori::Chart::make(chart_.family, chart_.m, 1, p_);
  auto ops = iwahori::polyq_ops(c1);
  long long base = 1;
  for (int k = 0; k < s_ - 1; ++k) base *= p_;
  std::vector<PolyQ> x;
  long long rem = coset;
  for (int j = 0; j < c1.dim(); ++j) {
    x.push_back(PolyQ(Rational(rem % base)));
    rem /= base;
  }
  Mat<PolyQ> g = iwahori::psi(c1, x, ops);
  MatQ r(g.rows(), g.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) r(i, j) = g(i, j).constant_term();
  return r;
}

int DModule::char_index(int i) const {
  Weight ei = zero_weight(d_.rank);
  ei[i] = 1;
  for (int k = 0; k < static_cast<int>(d_.index_weight.size()); ++k)
    if (d_.index_weight[k] == ei) return k;
  throw std::logic_error("no diagonal entry for character coordinate");
}

const DModule::LieData& DModule::lie_data(const MatQ& Yu, int coset) const {
  auto key = std::make_pair(coset, matrix_key(Yu));
  {
    std::lock_guard<std::mutex> lk(*mu_);
    auto it = lie_cache_.find(key);
    if (it != lie_cache_.end()) return *it->second;
  }
  if (d_.spec.e != 1) throw UnsupportedAction("Lie action needs e = 1");
  MatQ Y = Yu;
  if (s_ > 1) {
    MatQ g = coset_rep(coset);
    Y = iwahori::unipotent_inverse<Rational>(g) * Yu * g;
  }
  using DP = Dual<PolyQ>;
  auto ops = iwahori::dual_ops(chart_);
  const int dim = chart_.dim(), m = chart_.m;
  std::vector<DP> x;
  for (int j = 0; j < dim; ++j) x.push_back(DP(PolyQ::variable(dim, -1, j)));
  Mat<DP> P = iwahori::psi(chart_, x, ops);
  Mat<DP> E(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) E(i, j) = DP(PolyQ(i == j ? 1 : 0), PolyQ(Y(i, j)));
  Mat<DP> EP = E * P;
  auto r = iwahori::ldu<DP>(EP);
  auto xp = iwahori::psi_inverse(chart_, r.nbar, ops);
  auto L = std::make_shared<LieData>();
  for (int j = 0; j < dim; ++j) L->dx.push_back(xp[j].b);
  for (int k = 0; k < m; ++k) L->tau.push_back(r.t(k, k).b);
  for (int i = 0; i < d_.rank; ++i) {
    FamilyElem li = lambda_.coordinate(i);
    if (li.is_zero()) continue;
    for (const auto& [e, c] : L->tau[char_index(i)].terms()) {
      Exponent ee = e;
      ee.resize(dim, 0);
      L->chi[ee] += li * FamilyElem(c);
    }
  }
  std::lock_guard<std::mutex> lk(*mu_);
  return *lie_cache_.emplace(key, L).first->second;
}

MatF DModule::action_matrix(const MatQ& Y, const Weight& ywt, const Weight& mu) const {
  MatQ Yu = untwist_matrix(Y);
  Weight mu_u = untwist(mu);
  Weight tgt_u = mu_u + untwist(ywt);
  const auto& src = exponents(mu_u);
  const auto& tgt = exponents(tgt_u);
  const Eigen::Index ns = static_cast<Eigen::Index>(src.size()), nt = static_cast<Eigen::Index>(tgt.size());
  MatF M = zero_matrix<FamilyElem>(nt * ncosets_, ns * ncosets_);
  if (ns == 0 || nt == 0) return M;
  std::map<Exponent, Eigen::Index> sidx;
  for (Eigen::Index i = 0; i < ns; ++i) sidx[src[i]] = i;
  const int dim = chart_.dim();
  for (long long c = 0; c < ncosets_; ++c) {
    const LieData& L = lie_data(Yu, static_cast<int>(c));
    for (Eigen::Index bi = 0; bi < nt; ++bi) {
      const Exponent& b = tgt[bi];
      auto add = [&](const Exponent& a, const FamilyElem& v) {
        auto it = sidx.find(a);
        if (it == sidx.end()) return;
        M(c * nt + bi, c * ns + it->second) += v;
      };
      for (int j = 0; j < dim; ++j) {
        if (b[j] == 0) continue;
        for (const auto& [e, coef] : L.dx[j].terms()) {
          Exponent a = b;
          a[j] -= 1;
          for (int k = 0; k < dim && k < static_cast<int>(e.size()); ++k) a[k] += e[k];
          add(a, FamilyElem(coef * b[j]));
        }
      }
      for (const auto& [e, coef] : L.chi) {
        Exponent a = b;
        for (int k = 0; k < dim; ++k) a[k] += e[k];
        add(a, coef);
      }
    }
  }
  return M;
}

MatF DModule::root_action(const Weight& alpha, const Weight& mu) const {
  return action_matrix(d_.root_vector(alpha), alpha, mu);
}

std::vector<Weight> DModule::ce_weights(const RootDatum& d) const {
  const int nn = static_cast<int>(d.nilradical.size());
  Weight sw = zero_weight(d.rank);
  for (const auto& a : rootdata::delta_plus_w(d, w_)) sw = sw + a;
  std::vector<std::pair<Weight, Rational>> shifts;  // (sum T, h_T)
  Rational hmax = 0;
  for (rootdata::Subset T = 0; T < (rootdata::Subset(1) << nn); ++T) {
    Weight st = -rootdata::subset_weight(d, T);
    Rational h = d.height(untwist(sw - st));
    shifts.emplace_back(st, h);
    hmax = std::max(hmax, h);
  }
  auto table = exponents_up_to(Rational(N_) + hmax);
  std::set<Weight> out;
  for (const auto& [mu_u, ex] : table) {
    Rational dd = depth_of(ex.front());
    for (const auto& [st, h] : shifts) {
      if (dd > N_ + h) continue;
      out.insert(twist(mu_u) - st);
    }
  }
  return {out.begin(), out.end()};
}

Element DModule::lie_action(const MatQ& Y, const Weight& ywt, const Element& v, bool* loss) const {
  std::map<Weight, std::vector<std::pair<const Label*, FamilyElem>>> by_block;
  for (const auto& [lab, c] : v) by_block[weight_of(lab.a)].push_back({&lab, c});
  Element out;
  for (const auto& [mu, items] : by_block) {
    MatF M = action_matrix(Y, ywt, mu);
    auto src = block(mu);
    auto tgt = block(mu + ywt);
    std::map<Label, Eigen::Index> sidx;
    for (size_t i = 0; i < src.size(); ++i) sidx[src[i]] = static_cast<Eigen::Index>(i);
    for (const auto& [lab, c] : items) {
      Eigen::Index col = sidx.at(*lab);
      for (Eigen::Index r = 0; r < M.rows(); ++r) {
        if (M(r, col).is_zero()) continue;
        if (loss && depth_of(tgt[r].a) > N_) *loss = true;
        out[tgt[r]] += M(r, col) * c;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

Element DModule::group_action(const MatQ& g, const Element& v, const Rational& bound) const {
  if (s_ != 1 || d_.spec.e != 1) throw UnsupportedAction("group action is implemented for s = 1 and e = 1");
  if (v.empty()) return {};
  MatQ h = untwist_matrix(g);
  const int dim = chart_.dim(), m = chart_.m;
  int Dmax = 0;
  for (const auto& [lab, c] : v) Dmax = std::max(Dmax, total_degree(lab.a));
  auto ops = iwahori::polyq_ops(chart_);
  std::vector<PolyQ> x;
  for (int j = 0; j < dim; ++j) x.push_back(PolyQ::variable(dim, Dmax, j));
  Mat<PolyQ> H(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) H(i, j) = PolyQ::constant(dim, Dmax, h(i, j));
  Mat<PolyQ> P = H * iwahori::psi(chart_, x, ops);
  iwahori::LDU<PolyQ> r = iwahori::ldu<PolyQ>(P);
  auto xp = iwahori::psi_inverse(chart_, r.nbar, ops);
  PolyQ one = PolyQ::constant(dim, Dmax, Rational(1));
  PolyQ A = one;
  std::vector<PolyQ> B(lambda_.nformal(), PolyQ(dim, Dmax));
  const auto& lam0 = lambda_.base();
  for (int i = 0; i < d_.rank; ++i) {
    PolyQ t = r.t(char_index(i), char_index(i));
    if (lam0[i] != 0) A *= (lam0[i] > 0) ? t.pow(lam0[i]) : t.inverse().pow(-lam0[i]);
  }
  if (lambda_.nformal() > 0) {
    for (int i = 0; i < d_.rank; ++i) {
      PolyQ t = r.t(char_index(i), char_index(i));
      bool needed = false;
      for (const auto& dir : lambda_.formal)
        if (dir[i] != 0) needed = true;
      if (!needed) continue;
      if (t.constant_term() != 1) throw UnsupportedAction("torus elements need an algebraic weight");
      PolyQ lt = series_log(t);
      for (int k = 0; k < lambda_.nformal(); ++k)
        if (lambda_.formal[k][i] != 0) B[k] += lt.scaled(lambda_.formal[k][i]);
    }
    for (auto& b : B) b = b * A;
  }
  // powers of x'
  std::vector<std::vector<PolyQ>> pw(dim);
  auto xpow = [&](int j, int k) -> const PolyQ& {
    auto& v = pw[j];
    if (v.empty()) v.push_back(one);
    while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * xp[j]);
    return v[k];
  };
  Element out;
  for (const auto& [mu_u, exs] : exponents_up_to(bound)) {
    for (const auto& a : exs) {
      PolyQ f = A;
      for (int j = 0; j < dim; ++j)
        if (a[j]) f *= xpow(j, a[j]);
      std::vector<PolyQ> fb;
      for (const auto& b : B) {
        PolyQ q = b;
        for (int j = 0; j < dim; ++j)
          if (a[j]) q *= xpow(j, a[j]);
        fb.push_back(q);
      }
      FamilyElem acc = 0;
      for (const auto& [lab, c] : v) {
        Rational c0 = f.coeff(lab.a);
        std::vector<Rational> lin;
        bool nz = c0 != 0;
        for (auto& q : fb) {
          lin.push_back(q.coeff(lab.a));
          if (lin.back() != 0) nz = true;
        }
        if (!nz) continue;
        acc += FamilyElem(c0, lin) * c;
      }
      if (!acc.is_zero()) out[{0, a}] = acc;
    }
  }
  return out;
}

DModule DModule::specialize(const std::vector<Rational>& point) const {
  return DModule(d_, w_, s_, p_, lambda_.specialize(point), N_);
}

// ---------------- Levi model ----------------

LeviModule::LeviModule(const RootDatum& d, const WeylElement&, int, long, int nformal) : nformal_(nformal) {
  for (const auto& pp : iwahori::levi_positions(d)) roots_.push_back(d.position_weight(pp.first, pp.second));
  d_ = std::make_shared<RootDatum>(d);
}

const std::vector<Exponent>& LeviModule::exponents(const Weight& mu) const {
  std::lock_guard<std::mutex> lk(*mu_);
  auto it = cache_.find(mu);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(mu, solve_exponents(*d_, roots_, mu)).first->second;
}

}  // namespace lacoh::dmod
