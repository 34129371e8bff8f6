#pragma once

#include "lacoh/iwahori.hpp"
#include "lacoh/linalg.hpp"
#include "lacoh/rootdata.hpp"
#include "lacoh/series.hpp"
#include "lacoh/weightspace.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace lacoh::dmod {

using rootdata::RootDatum;
using rootdata::Weight;
using rootdata::WeylElement;
using weightspace::FormalWeight;
using MatF = Mat<FamilyElem>;
using VecF = Vec<FamilyElem>;

struct TruncationLoss : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedAction : std::domain_error {
  using std::domain_error::domain_error;
};

// weight-graded module with finite blocks; weights are relative (an overall character is factored out)
class WeightModule {
 public:
  virtual ~WeightModule() = default;
  virtual int weight_rank() const = 0;
  // ring of coefficients: number of formal variables
  virtual int nformal() const { return 0; }
  virtual int block_dim(const Weight& mu) const = 0;
  // e_alpha (or any root vector of the ambient datum): block mu -> block mu + alpha
  virtual MatF root_action(const Weight& alpha, const Weight& mu) const = 0;
  // total weights of the Chevalley-Eilenberg complex worth computing
  virtual std::vector<Weight> ce_weights(const RootDatum& d) const = 0;
};

struct Label {
  int coset = 0;
  Exponent a;
  friend auto operator<=>(const Label&, const Label&) = default;
};

using Element = std::map<Label, FamilyElem>;

// truncated dual model of the twisted locally analytic induction at level s
class DModule : public WeightModule {
 public:
  DModule(const RootDatum& d, const WeylElement& w, int s, long p, FormalWeight lambda, int N);

  const RootDatum& datum() const { return d_; }
  const WeylElement& w() const { return w_; }
  int s() const { return s_; }
  long p() const { return p_; }
  int N() const { return N_; }
  const FormalWeight& lambda() const { return lambda_; }
  const iwahori::Chart& chart() const { return chart_; }
  // exponent variables (dim of the chart times e)
  int nvars() const { return static_cast<int>(var_roots_.size()); }
  const std::vector<Weight>& var_roots() const { return var_roots_; }
  long long ncosets() const { return ncosets_; }

  int weight_rank() const override { return d_.rank; }
  int nformal() const override { return lambda_.nformal(); }
  // relative weights are w(sum a_j beta_j); the full weight adds w(lambda)
  Weight untwist(const Weight& mu) const { return winv_.apply(mu); }
  Weight twist(const Weight& mu) const { return w_.apply(mu); }
  Weight weight_of(const Exponent& a) const;  // relative, twisted
  Rational depth_of(const Exponent& a) const;  // -ht(sum a_j beta_j)
  // -ht(w^{-1} nu) of a relative twisted weight
  Rational depth(const Weight& mu) const;
  // exponents of the untwisted relative weight, lexicographic order
  const std::vector<Exponent>& exponents(const Weight& mu_untwisted) const;
  // all exponents with depth_of <= bound, grouped by untwisted weight
  std::map<Weight, std::vector<Exponent>> exponents_up_to(const Rational& bound) const;
  std::vector<Label> block(const Weight& mu) const;
  // weight multiset: relative twisted weight -> multiplicity, depth <= N
  std::map<Weight, long long> weight_multiset() const;

  int block_dim(const Weight& mu) const override;
  MatF root_action(const Weight& alpha, const Weight& mu) const override;
  std::vector<Weight> ce_weights(const RootDatum& d) const override;

  // action of a matrix Y of g in the twisted frame with torus weight ywt; block mu -> mu + ywt
  MatF action_matrix(const MatQ& Y, const Weight& ywt, const Weight& mu) const;
  // element-level Lie action; sets *loss when part of the image has depth > N
  Element lie_action(const MatQ& Y, const Weight& ywt, const Element& v, bool* loss = nullptr) const;
  // group element of the twisted Iwahori (rational entries), projected to depth <= bound
  Element group_action(const MatQ& g, const Element& v, const Rational& bound) const;

  DModule specialize(const std::vector<Rational>& point) const;

  // the untwisted matrix W^{-1} Y W
  MatQ untwist_matrix(const MatQ& Y) const;

 private:
  struct LieData {
    std::vector<PolyQ> dx;   // infinitesimal change of chart coordinates
    std::vector<PolyQ> tau;  // infinitesimal torus part, diagonal entries
    std::map<Exponent, FamilyElem> chi;  // derivative of the character along tau
  };
  const LieData& lie_data(const MatQ& Yu, int coset) const;
  MatQ coset_rep(int coset) const;
  // diagonal index carrying the i-th character coordinate
  int char_index(int i) const;

  RootDatum d_;
  WeylElement w_, winv_;
  int s_;
  long p_;
  FormalWeight lambda_;
  int N_;
  iwahori::Chart chart_;
  std::vector<Weight> var_roots_;
  std::vector<Rational> var_depth_;
  long long ncosets_ = 1;
  MatQ W_, Winv_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  mutable std::map<Weight, std::vector<Exponent>> exp_cache_;
  mutable std::map<std::pair<int, std::vector<std::string>>, std::shared_ptr<LieData>> lie_cache_;
};

// Levi model D_L at the weight w.lambda: functions on the Levi opposite unipotent
class LeviModule {
 public:
  LeviModule(const RootDatum& d, const WeylElement& w, int s, long p, int nformal);
  const std::vector<Weight>& var_roots() const { return roots_; }
  int nvars() const { return static_cast<int>(roots_.size()); }
  // exponents c with sum c_k gamma_k = mu (relative to w.lambda)
  const std::vector<Exponent>& exponents(const Weight& mu) const;
  int nformal() const { return nformal_; }

 private:
  std::shared_ptr<const RootDatum> d_;
  std::vector<Weight> roots_;
  int nformal_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  mutable std::map<Weight, std::vector<Exponent>> cache_;
};

// exponents a >= 0 with sum a_j roots_j = target; roots must all have depth >= 1 under the height form
std::vector<Exponent> solve_exponents(const RootDatum& d, const std::vector<Weight>& roots, const Weight& target);

// cosets of N_I / N_I^s for a level s >= 1 chart
long long coset_count(const iwahori::Chart& ch, int e);

}  // namespace lacoh::dmod
