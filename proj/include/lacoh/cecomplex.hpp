#pragma once

#include "lacoh/dmod.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lacoh::cecomplex {

using dmod::Element;
using dmod::MatF;
using dmod::VecF;
using dmod::WeightModule;
using rootdata::RootDatum;
using rootdata::Subset;
using rootdata::Weight;
using rootdata::WeylElement;
using weightspace::FormalWeight;

struct DSquaredNonzero : std::logic_error {
  using std::logic_error::logic_error;
};

// ---- finite-dimensional algebraic modules ----

class AlgebraicModule : public WeightModule {
 public:
  using Rep = std::function<MatQ(const MatQ&)>;
  AlgebraicModule(const RootDatum& d, std::vector<Weight> weights, Rep rep);

  static AlgebraicModule trivial(const RootDatum& d);
  static AlgebraicModule standard(const RootDatum& d);
  AlgebraicModule dual() const;
  AlgebraicModule tensor(const AlgebraicModule& o) const;
  AlgebraicModule sym(int k) const;
  AlgebraicModule wedge(int k) const;

  int dim() const { return static_cast<int>(weights_.size()); }
  const std::vector<Weight>& weights() const { return weights_; }
  MatQ rep(const MatQ& X) const { return rep_(X); }
  // highest-weight component check helper: weights with multiplicity
  std::map<Weight, int> character() const;

  int weight_rank() const override { return d_->rank; }
  int block_dim(const Weight& mu) const override;
  MatF root_action(const Weight& alpha, const Weight& mu) const override;
  std::vector<Weight> ce_weights(const RootDatum& d) const override;
  std::vector<int> block_indices(const Weight& mu) const;

 private:
  std::shared_ptr<const RootDatum> d_;
  std::vector<Weight> weights_;
  Rep rep_;
};

// ---- complexes of exterior type ----

// operators O_i : block mu -> block mu + shift_i; cochain e*_T (x) v has weight mu - sum_{i in T} shift_i
struct OperatorFamily {
  int n = 0;
  int nformal = 0;
  std::vector<Weight> shifts;
  std::function<int(const Weight&)> block_dim;
  std::function<MatF(int, const Weight&)> op;
};

struct Part {
  Subset T = 0;
  Weight mu;  // module weight
  int dim = 0;
  int offset = 0;
};

struct ComplexBlock {
  Weight nu;
  std::vector<std::vector<Part>> parts;  // per degree, nonempty parts only
  std::vector<int> dims;                 // per degree, over the coefficient ring
  std::vector<MatF> d;                   // d[k]: degree k -> k + 1
  const Part* find(int k, Subset T) const;
};

struct Complex {
  int n = 0;
  int nformal = 0;
  std::vector<Weight> shifts;
  std::map<Weight, ComplexBlock> blocks;
  bool d_squared_zero = true;
};

Complex build_exterior_complex(const OperatorFamily& ops, const std::vector<Weight>& totals, int threads = 1);

// Chevalley-Eilenberg complex of the nilradical with coefficients in M; sign (-1)^(position) from the root order
Complex build_ce_complex(const WeightModule& M, const RootDatum& d, int threads = 1);
// the same complex with the nilradical roots listed in another order (for order-independence checks)
Complex build_ce_complex_ordered(const WeightModule& M, const RootDatum& d, const std::vector<int>& order,
                                 int threads = 1);

struct BlockRanks {
  Weight nu;
  std::vector<int> dim;    // Q-dimension of cochains per degree
  std::vector<int> rank;   // Q-rank of d_k
  std::vector<int> coh;    // Q-dimension of H^k
};

struct CohomologyReport {
  std::vector<BlockRanks> blocks;
  std::vector<int> total;  // per degree
  PivotLog pivots;
};

CohomologyReport cohomology(const Complex& C, int threads = 1, long audit_p = 0, int audit_M = 0);
MatQ expanded(const MatF& M, int nformal);

// whole-matrix rank of d_k assembled over all blocks in a global (T, label) order
int whole_matrix_rank(const Complex& C, int k);

// number of Levi-highest-weight classes of H^k, per total weight
std::map<Weight, int> levi_highest_classes(const Complex& C, const WeightModule& M, const RootDatum& d, int k);
std::vector<int> levi_highest_counts(const Complex& C, const WeightModule& M, const RootDatum& d);

// ---- the maps i~ and p~ ----

struct SummandData {
  int l = 0;
  Subset Sw = 0;
  Weight base;  // relative weight of w.lambda
  std::vector<Weight> levi_roots;
  iwahori::WNwDecomposition dec;
  std::map<Weight, MatF> imap;  // per total weight: Levi block -> degree-l cochains
  std::map<Weight, MatF> pmap;  // per total weight: degree-l cochains -> Levi block
  std::map<Weight, int> levi_dim;
};

SummandData build_summand_maps(const dmod::DModule& D, const Complex& C, int threads = 1);

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct SummandReport {
  std::vector<Check> checks;
  CohomologyReport cohomology;
  int l = 0;
  int levi_total = 0;
  bool all_pass() const;
};

// c = p for roots of Delta^{+,w}, 1 otherwise
MatQ nilpotent_generator(const RootDatum& d, const WeylElement& w, const Weight& alpha, long p);

SummandReport verify_direct_summand(const dmod::DModule& D, int threads = 1);

// group element acting on a cochain vector of block nu, degree k; result per total weight (depth <= N)
std::map<Weight, VecF> act_on_cochain(const dmod::DModule& D, const Complex& C, const MatQ& g, const Weight& nu,
                                      int k, const VecF& z);

// dimension of H^k classes of block nu fixed by the generators, modulo coboundaries
int invariant_classes(const dmod::DModule& D, const Complex& C, const std::vector<MatQ>& gens, const Weight& nu,
                      int k);

struct Exclusion {
  int k = 0;
  bool present = false;
  std::vector<std::string> certificate;
  Subset source = 0;
};

// is w.lambda a weight of degree k cochains with D-coefficients (enumeration plus cone certificate)
Exclusion weight_exclusion(const dmod::DModule& D, int k);

}  // namespace lacoh::cecomplex
