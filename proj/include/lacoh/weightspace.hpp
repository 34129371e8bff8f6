#pragma once

#include "lacoh/padic.hpp"
#include "lacoh/rootdata.hpp"

#include <stdexcept>
#include <vector>

namespace lacoh::weightspace {

using padic::ExtPtr;
using padic::PadicElement;

struct OutsideRadius : std::domain_error {
  using std::domain_error::domain_error;
};
struct BasisDecompositionFailure : std::domain_error {
  using std::domain_error::domain_error;
};

// character of O_E^d stored by the values chi(u_j e_i)
struct ContinuousCharacter {
  ExtPtr E;
  int d = 1;
  std::vector<std::vector<PadicElement>> values;  // values[i][j]
  int smooth_order = 1;
  std::vector<std::vector<int>> smooth;  // root-of-unity exponents, kept apart from log/exp

  static ContinuousCharacter trivial(const ExtPtr& E, int d = 1);
  // z -> exp(sum_i c_i z_i)
  static ContinuousCharacter analytic(const ExtPtr& E, const std::vector<PadicElement>& c);
  void validate() const;
};

PadicElement eval_character(const ContinuousCharacter& chi, const std::vector<PadicElement>& z);
// (log chi(u_j)/u_j)_j on the i-th factor
std::vector<PadicElement> cr_defect(const ContinuousCharacter& chi, int factor = 0);
bool is_locally_analytic(const ContinuousCharacter& chi, int factor = 0);

struct SigmaAnalyticCharacter {
  int sigma = 0;
  PadicElement slope;
  PadicElement eval(const padic::EmbeddingSet& emb, const PadicElement& z) const;
};

struct Factorization {
  std::vector<SigmaAnalyticCharacter> factors;
  padic::EmbeddingSet embeddings;
  int min_valuation = 0;  // min_j v(chi(u_j) - 1)
};

Factorization factor_character(const ContinuousCharacter& chi, int factor = 0);
// product of the factors on u_j, j = 1..e
std::vector<PadicElement> reconstruct(const Factorization& f);
// (log chi(u_j) / sigma(u_j))_j for a K-valued character given by its values on u_j
std::vector<PadicElement> cr_defect_through(const padic::EmbeddingSet& emb, int sigma,
                                            const std::vector<PadicElement>& values_on_basis);
bool all_equal(const std::vector<PadicElement>& v);

// lambda_alg + sum_k X_k v_k, plus smooth data
struct FormalWeight {
  std::vector<rootdata::Weight> algebraic;  // one copy per embedding
  std::vector<rootdata::WeightQ> formal;
  int smooth_order = 1;
  std::vector<int> smooth;
  bool point = false;

  static FormalWeight algebraic_weight(const rootdata::Weight& lambda, int e = 1);
  static FormalWeight with_formal(const rootdata::Weight& lambda, std::vector<rootdata::WeightQ> dirs, int e = 1);
  int rank() const { return algebraic.empty() ? 0 : static_cast<int>(algebraic[0].size()); }
  int nformal() const { return static_cast<int>(formal.size()); }
  const rootdata::Weight& base() const { return algebraic.at(0); }
  // i-th coordinate as an element of the family ring
  FamilyElem coordinate(int i) const;
  // X_k -> point_k; requires integral results
  FormalWeight specialize(const std::vector<Rational>& point) const;
  friend bool operator==(const FormalWeight& a, const FormalWeight& b) {
    return a.algebraic == b.algebraic && a.formal == b.formal && a.smooth_order == b.smooth_order &&
           a.smooth == b.smooth;
  }
};

FormalWeight dot_action(const rootdata::RootDatum& d, const rootdata::WeylElement& w, const FormalWeight& lambda);
bool is_generic(const rootdata::RootDatum& d, const FormalWeight& lambda);

}  // namespace lacoh::weightspace
