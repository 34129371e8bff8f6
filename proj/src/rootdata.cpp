#include "lacoh/rootdata.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace lacoh::rootdata {

Family parse_family(const std::string& s) {
  std::string t;
  for (char c : s) t += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (t == "GL") return Family::GL;
  if (t == "SP") return Family::Sp;
  if (t == "U") return Family::U;
  throw UnsupportedFamily("unsupported family '" + s + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::GL:
      return "GL";
    case Family::Sp:
      return "Sp";
    case Family::U:
      return "U";
  }
  return "?";
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}
Weight operator-(const Weight& a, const Weight& b) {
  Weight c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}
Weight operator-(const Weight& a) {
  Weight c(a);
  for (auto& x : c) x = -x;
  return c;
}
Weight operator*(int k, const Weight& a) {
  Weight c(a);
  for (auto& x : c) x *= k;
  return c;
}
WeightQ to_q(const Weight& a) { return WeightQ(a.begin(), a.end()); }

std::string weight_str(const Weight& a) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

// ---------------- WeylElement ----------------

WeylElement::WeylElement(std::vector<int> perm, std::vector<int> sign) : perm_(std::move(perm)), sign_(std::move(sign)) {
  if (sign_.empty()) sign_.assign(perm_.size(), 1);
  if (sign_.size() != perm_.size()) throw std::invalid_argument("WeylElement: sign/perm size mismatch");
  std::vector<int> seen(perm_.size(), 0);
  for (int p : perm_) {
    if (p < 0 || p >= rank() || seen[p]++) throw std::invalid_argument("WeylElement: not a permutation");
  }
}

WeylElement WeylElement::identity(int r) {
  std::vector<int> p(r);
  std::iota(p.begin(), p.end(), 0);
  return WeylElement(p);
}

bool WeylElement::is_identity() const {
  for (int i = 0; i < rank(); ++i)
    if (perm_[i] != i || sign_[i] != 1) return false;
  return true;
}

Weight WeylElement::apply(const Weight& x) const {
  Weight y(x.size(), 0);
  for (int i = 0; i < rank(); ++i) y[perm_[i]] += sign_[i] * x[i];
  return y;
}

WeightQ WeylElement::apply(const WeightQ& x) const {
  WeightQ y(x.size(), Rational(0));
  for (int i = 0; i < rank(); ++i) y[perm_[i]] += sign_[i] * x[i];
  return y;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
  std::vector<int> p(rank()), s(rank());
  for (int i = 0; i < rank(); ++i) {
    p[i] = perm_[o.perm_[i]];
    s[i] = o.sign_[i] * sign_[o.perm_[i]];
  }
  return WeylElement(p, s);
}

WeylElement WeylElement::inverse() const {
  std::vector<int> p(rank()), s(rank());
  for (int i = 0; i < rank(); ++i) {
    p[perm_[i]] = i;
    s[perm_[i]] = sign_[i];
  }
  return WeylElement(p, s);
}

std::string WeylElement::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rank(); ++i) os << (i ? "," : "") << sign_[i] * (perm_[i] + 1);
  os << "]";
  return os.str();
}

WeylElement transposition(int r, int i, int j) {
  std::vector<int> p(r);
  std::iota(p.begin(), p.end(), 0);
  std::swap(p[i], p[j]);
  return WeylElement(p);
}

// ---------------- RootDatum ----------------

namespace {

bool lex_greater(const Weight& a, const Weight& b) { return a > b; }

}  // namespace

bool RootDatum::is_root(const Weight& a) const {
  return std::find(positive.begin(), positive.end(), a) != positive.end() ||
         std::find(negative.begin(), negative.end(), a) != negative.end();
}

bool RootDatum::is_positive(const Weight& a) const {
  return std::find(positive.begin(), positive.end(), a) != positive.end();
}

bool RootDatum::is_levi(const Weight& a) const {
  return std::find(levi_positive.begin(), levi_positive.end(), a) != levi_positive.end() ||
         std::find(levi_negative.begin(), levi_negative.end(), a) != levi_negative.end();
}

int RootDatum::nil_index(const Weight& a) const {
  auto it = std::find(nilradical.begin(), nilradical.end(), a);
  return it == nilradical.end() ? -1 : static_cast<int>(it - nilradical.begin());
}

Rational RootDatum::height(const Weight& a) const {
  Rational h = 0;
  for (int i = 0; i < rank; ++i) h += height_form[i] * a[i];
  return h;
}

Rational RootDatum::height(const WeightQ& a) const {
  Rational h = 0;
  for (int i = 0; i < rank; ++i) h += height_form[i] * a[i];
  return h;
}

Weight RootDatum::position_weight(int i, int j) const { return index_weight[i] - index_weight[j]; }

std::vector<std::pair<int, int>> RootDatum::positions(const Weight& a) const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && position_weight(i, j) == a) out.emplace_back(i, j);
  return out;
}

std::pair<int, int> RootDatum::primary_position(const Weight& a) const {
  auto ps = positions(a);
  if (ps.empty()) throw std::invalid_argument("primary_position: not a root " + weight_str(a));
  return ps.front();
}

bool RootDatum::in_lie_algebra(const MatQ& X) const {
  if (spec.family != Family::Sp) return true;
  MatQ R = X.transpose() * J + J * X;
  return is_zero_matrix(R);
}

MatQ RootDatum::root_vector(const Weight& a) const {
  auto ps = positions(a);
  if (ps.empty()) throw std::invalid_argument("root_vector: not a root " + weight_str(a));
  MatQ X = zero_matrix<Rational>(m, m);
  X(ps[0].first, ps[0].second) = 1;
  if (ps.size() == 1) return X;
  for (int c : {1, -1}) {
    MatQ Y = X;
    Y(ps[1].first, ps[1].second) = c;
    if (in_lie_algebra(Y)) return Y;
  }
  throw std::logic_error("root_vector: no sign makes the vector symplectic");
}

Rational RootDatum::root_coefficient(const MatQ& X, const Weight& a) const {
  auto pp = primary_position(a);
  return X(pp.first, pp.second);
}

MatQ RootDatum::torus_generator(int i) const {
  MatQ H = zero_matrix<Rational>(m, m);
  for (int k = 0; k < m; ++k) H(k, k) = index_weight[k][i];
  return H;
}

std::vector<int> RootDatum::torus_exponents(int i) const {
  std::vector<int> out(m);
  for (int k = 0; k < m; ++k) out[k] = index_weight[k][i];
  return out;
}

MatQ RootDatum::weyl_matrix(const WeylElement& w) const {
  MatQ W = zero_matrix<Rational>(m, m);
  if (spec.family != Family::Sp) {
    for (int j = 0; j < m; ++j) W(w.perm()[j], j) = 1;
    return W;
  }
  const int n = spec.n;
  for (int a = 0; a < n; ++a) {
    int t = w.sign()[a] > 0 ? w.perm()[a] : m - 1 - w.perm()[a];
    W(t, a) = 1;
    W(m - 1 - t, m - 1 - a) = w.sign()[a] > 0 ? 1 : -1;
  }
  return W;
}

bool RootDatum::is_weyl(const WeylElement& w) const {
  if (w.rank() != rank) return false;
  if (spec.family == Family::GL) {
    for (int s : w.sign())
      if (s != 1) return false;
    return true;
  }
  if (spec.family == Family::Sp) return true;
  for (int s : w.sign())
    if (s != 1) return false;
  for (int i = 0; i < rank; ++i)
    if (w.perm()[rank - 1 - i] != rank - 1 - w.perm()[i]) return false;
  return true;
}

std::vector<WeylElement> RootDatum::weyl_group() const {
  std::vector<WeylElement> out;
  std::vector<int> p(rank);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (spec.family == Family::Sp) {
      for (int mask = 0; mask < (1 << rank); ++mask) {
        std::vector<int> s(rank, 1);
        for (int i = 0; i < rank; ++i)
          if (mask & (1 << i)) s[i] = -1;
        out.emplace_back(p, s);
      }
    } else {
      WeylElement w(p);
      if (is_weyl(w)) out.push_back(w);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int RootDatum::abs_length(const WeylElement& w) const {
  int l = 0;
  for (const auto& a : positive)
    if (!is_positive(w.apply(a))) ++l;
  return l;
}

RootDatum build_root_datum(const GroupSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("n must be at least 1");
  if (spec.e < 1) throw std::invalid_argument("e must be at least 1");
  RootDatum d;
  d.spec = spec;
  const int n = spec.n;
  d.m = 2 * n;
  if (spec.family == Family::Sp) {
    d.rank = n;
    for (int i = 0; i < n; ++i) {
      Weight w(n, 0);
      w[i] = 1;
      d.index_weight.push_back(w);
    }
    for (int i = n - 1; i >= 0; --i) {
      Weight w(n, 0);
      w[i] = -1;
      d.index_weight.push_back(w);
    }
    d.J = zero_matrix<Rational>(d.m, d.m);
    for (int a = 0; a < n; ++a) {
      d.J(a, d.m - 1 - a) = 1;
      d.J(d.m - 1 - a, a) = -1;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Weight a(n, 0), b(n, 0);
        a[i] = 1;
        a[j] = -1;
        b[i] = 1;
        b[j] = 1;
        d.positive.push_back(a);
        d.positive.push_back(b);
        d.levi_positive.push_back(a);
      }
    for (int i = 0; i < n; ++i) {
      Weight a(n, 0);
      a[i] = 2;
      d.positive.push_back(a);
    }
    for (int i = 0; i + 1 < n; ++i) {
      Weight a(n, 0);
      a[i] = 1;
      a[i + 1] = -1;
      d.simple.push_back(a);
    }
    Weight last(n, 0);
    last[n - 1] = 2;
    d.simple.push_back(last);
    d.height_form.resize(n);
    for (int i = 0; i < n; ++i) d.height_form[i] = Rational(2 * (n - i) - 1, 2);
  } else {
    const int r = 2 * n;
    d.rank = r;
    for (int i = 0; i < r; ++i) {
      Weight w(r, 0);
      w[i] = 1;
      d.index_weight.push_back(w);
    }
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        Weight a(r, 0);
        a[i] = 1;
        a[j] = -1;
        d.positive.push_back(a);
        if ((i < n) == (j < n)) d.levi_positive.push_back(a);
      }
    for (int i = 0; i + 1 < r; ++i) {
      Weight a(r, 0);
      a[i] = 1;
      a[i + 1] = -1;
      d.simple.push_back(a);
    }
    d.height_form.resize(r);
    for (int i = 0; i < r; ++i) d.height_form[i] = -i;
    if (spec.family == Family::U) {
      d.J = zero_matrix<Rational>(d.m, d.m);
      for (int a = 0; a < n; ++a) {
        d.J(a, d.m - 1 - a) = 1;
        d.J(d.m - 1 - a, a) = -1;
      }
    }
  }
  for (const auto& a : d.positive) d.negative.push_back(-a);
  for (const auto& a : d.levi_positive) d.levi_negative.push_back(-a);
  for (const auto& a : d.positive)
    if (std::find(d.levi_positive.begin(), d.levi_positive.end(), a) == d.levi_positive.end())
      d.nilradical.push_back(a);
  std::sort(d.nilradical.begin(), d.nilradical.end(), lex_greater);
  d.delta.assign(d.rank, Rational(0));
  for (const auto& a : d.positive)
    for (int i = 0; i < d.rank; ++i) d.delta[i] += Rational(a[i], 2);
  return d;
}

bool is_abelian_nilradical(const RootDatum& d) {
  for (const auto& a : d.nilradical)
    for (const auto& b : d.nilradical)
      if (d.is_root(a + b)) return false;
  return true;
}

bool in_wp(const RootDatum& d, const WeylElement& w) {
  if (!d.is_weyl(w)) return false;
  WeylElement wi = w.inverse();
  for (const auto& a : d.levi_positive)
    if (!d.is_positive(wi.apply(a))) return false;
  return true;
}

std::vector<WeylElement> relative_weyl_wp(const RootDatum& d) {
  std::vector<WeylElement> out;
  for (const auto& w : d.weyl_group())
    if (in_wp(d, w)) out.push_back(w);
  std::stable_sort(out.begin(), out.end(), [&](const WeylElement& a, const WeylElement& b) {
    int la = d.abs_length(a), lb = d.abs_length(b);
    if (la != lb) return la < lb;
    return a < b;
  });
  return out;
}

std::vector<Weight> delta_plus_w(const RootDatum& d, const WeylElement& w) {
  if (!in_wp(d, w)) throw NotInWP("element " + w.str() + " is not in W^P");
  WeylElement wi = w.inverse();
  std::vector<Weight> out;
  for (const auto& a : d.nilradical)
    if (!d.is_positive(wi.apply(a))) out.push_back(a);
  return out;
}

Weight rho_shift(const RootDatum& d, const WeylElement& w) {
  WeightQ wd = w.apply(d.delta);
  Weight out(d.rank);
  for (int i = 0; i < d.rank; ++i) {
    Rational x = wd[i] - d.delta[i];
    if (denominator(x) != 1) throw std::logic_error("rho_shift: non-integral");
    out[i] = static_cast<int>(numerator(x));
  }
  return out;
}

Weight dot(const RootDatum& d, const WeylElement& w, const Weight& lambda) {
  return w.apply(lambda) + rho_shift(d, w);
}

WeylElement parse_weyl(const RootDatum& d, const std::string& s0) {
  const std::string& s = s0;
  if (!s.empty() && s[0] == '#') {
    auto wp = relative_weyl_wp(d);
    int k = std::stoi(s.substr(1));
    if (k < 0 || k >= static_cast<int>(wp.size())) throw std::invalid_argument("W^P index out of range");
    return wp[k];
  }
  std::regex num(R"(-?\d+)");
  if (s.find('(') != std::string::npos) {
    std::vector<int> p(d.rank);
    std::iota(p.begin(), p.end(), 0);
    WeylElement w(p);
    std::regex cyc(R"(\(([^)]*)\))");
    for (auto it = std::sregex_iterator(s.begin(), s.end(), cyc); it != std::sregex_iterator(); ++it) {
      std::string body = (*it)[1];
      std::vector<int> c;
      for (auto jt = std::sregex_iterator(body.begin(), body.end(), num); jt != std::sregex_iterator(); ++jt)
        c.push_back(std::stoi(jt->str()) - 1);
      std::vector<int> q(d.rank);
      std::iota(q.begin(), q.end(), 0);
      for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] < 0 || c[k] >= d.rank) throw std::invalid_argument("cycle entry out of range");
        q[c[k]] = c[(k + 1) % c.size()];
      }
      w = WeylElement(q) * w;
    }
    if (!d.is_weyl(w)) throw std::invalid_argument("not a Weyl group element: " + s0);
    return w;
  }
  std::vector<int> p, sg;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), num); it != std::sregex_iterator(); ++it) {
    int v = std::stoi(it->str());
    p.push_back(std::abs(v) - 1);
    sg.push_back(v < 0 ? -1 : 1);
  }
  if (static_cast<int>(p.size()) != d.rank) throw std::invalid_argument("one-line Weyl element has the wrong rank");
  WeylElement w(p, sg);
  if (!d.is_weyl(w)) throw std::invalid_argument("not a Weyl group element: " + s0);
  return w;
}

// ---------------- wedge powers of n^* ----------------

std::vector<Subset> subsets_of_size(int n, int k) {
  std::vector<Subset> out;
  for (Subset S = 0; S < (Subset(1) << n); ++S)
    if (std::popcount(S) == k) out.push_back(S);
  return out;
}

Weight subset_weight(const RootDatum& d, Subset S) {
  Weight w(d.rank, 0);
  for (int i = 0; i < static_cast<int>(d.nilradical.size()); ++i)
    if (S & (Subset(1) << i)) w = w - d.nilradical[i];
  return w;
}

Subset subset_of(const RootDatum& d, const std::vector<Weight>& roots) {
  Subset S = 0;
  for (const auto& a : roots) {
    int i = d.nil_index(a);
    if (i < 0) throw std::invalid_argument("subset_of: root outside the nilradical");
    S |= Subset(1) << i;
  }
  return S;
}

MatQ coadjoint_wedge_action(const RootDatum& d, const Weight& beta, int k) {
  const int N = static_cast<int>(d.nilradical.size());
  // dual action on n^*: e_beta . e*_g = - sum_a coef_g([e_beta, e_a]) e*_a
  MatQ A = zero_matrix<Rational>(N, N);  // A(a, g): coefficient of e*_a in e_beta . e*_g
  MatQ Eb = d.root_vector(beta);
  for (int a = 0; a < N; ++a) {
    MatQ Ea = d.root_vector(d.nilradical[a]);
    MatQ br = Eb * Ea - Ea * Eb;
    for (int g = 0; g < N; ++g) A(a, g) = -d.root_coefficient(br, d.nilradical[g]);
  }
  auto basis = subsets_of_size(N, k);
  std::map<Subset, int> idx;
  for (size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
  MatQ R = zero_matrix<Rational>(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) {
    Subset S = basis[c];
    std::vector<int> elems;
    for (int i = 0; i < N; ++i)
      if (S & (Subset(1) << i)) elems.push_back(i);
    for (size_t pos = 0; pos < elems.size(); ++pos) {
      int g = elems[pos];
      for (int a = 0; a < N; ++a) {
        if (A(a, g) == 0) continue;
        if (a != g && (S & (Subset(1) << a))) continue;
        std::vector<int> t = elems;
        t[pos] = a;
        // sort with sign
        int sign = 1;
        for (size_t i = 0; i < t.size(); ++i)
          for (size_t j = i + 1; j < t.size(); ++j)
            if (t[i] > t[j]) sign = -sign;
        Subset T = 0;
        for (int x : t) T |= Subset(1) << x;
        R(idx[T], c) += sign * A(a, g);
      }
    }
  }
  return R;
}

KostantReport kostant_invariant_line(const RootDatum& d, const WeylElement& w) {
  KostantReport rep;
  auto dpw = delta_plus_w(d, w);
  const int N = static_cast<int>(d.nilradical.size());
  const int l = static_cast<int>(dpw.size());
  Subset S = subset_of(d, dpw);
  rep.weight = subset_weight(d, S);
  rep.weight_matches_rho_shift = (rep.weight == rho_shift(d, w));
  auto basis = subsets_of_size(N, l);
  for (Subset T : basis)
    if (subset_weight(d, T) == rep.weight) ++rep.weight_multiplicity;
  MatQ stacked(0, static_cast<Eigen::Index>(basis.size()));
  for (const auto& b : d.levi_positive) stacked = vcat(stacked, coadjoint_wedge_action(d, b, l));
  if (basis.empty()) return rep;
  MatQ K = stacked.rows() == 0 ? identity_matrix<Rational>(static_cast<Eigen::Index>(basis.size()))
                               : kernel_basis(stacked);
  rep.invariant_dim = static_cast<int>(K.cols());
  VecQ line = VecQ::Zero(static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) line(i) = (basis[i] == S) ? 1 : 0;
  rep.line_invariant = stacked.rows() == 0 || is_zero_matrix<Rational>(stacked * line);
  // invariants split over weight spaces
  std::map<Weight, std::vector<int>> by_weight;
  for (size_t i = 0; i < basis.size(); ++i) by_weight[subset_weight(d, basis[i])].push_back(static_cast<int>(i));
  for (const auto& [wt, ids] : by_weight) {
    MatQ sub(stacked.rows(), static_cast<Eigen::Index>(ids.size()));
    for (size_t j = 0; j < ids.size(); ++j) sub.col(j) = stacked.col(ids[j]);
    int dim = static_cast<int>(ids.size()) - (stacked.rows() ? rank(sub) : 0);
    for (int t = 0; t < dim; ++t) rep.invariant_weights.push_back(wt);
  }
  return rep;
}

std::vector<int> kostant_degree_counts(const RootDatum& d) {
  const int N = static_cast<int>(d.nilradical.size());
  std::vector<int> out;
  for (int k = 0; k <= N; ++k) {
    auto basis = subsets_of_size(N, k);
    MatQ stacked(0, static_cast<Eigen::Index>(basis.size()));
    for (const auto& b : d.levi_positive) stacked = vcat(stacked, coadjoint_wedge_action(d, b, k));
    out.push_back(static_cast<int>(basis.size()) - (stacked.rows() ? rank(stacked) : 0));
  }
  return out;
}

std::vector<int> wp_length_counts(const RootDatum& d) {
  std::vector<int> out(d.nilradical.size() + 1, 0);
  for (const auto& w : relative_weyl_wp(d)) ++out[d.abs_length(w)];
  return out;
}

}  // namespace lacoh::rootdata
