#pragma once

#include "lacoh/linalg.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lacoh::rootdata {

struct UnsupportedFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotInWP : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Family { GL, Sp, U };
Family parse_family(const std::string& s);
std::string family_name(Family f);

// GL(2n), Sp(2n) or U(n,n) over an unramified E of degree e
struct GroupSpec {
  Family family = Family::GL;
  int n = 1;
  int e = 1;
};

using Weight = std::vector<int>;
using WeightQ = std::vector<Rational>;

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator-(const Weight& a);
Weight operator*(int k, const Weight& a);
WeightQ to_q(const Weight& a);
std::string weight_str(const Weight& a);

// signed permutation: w(e_i) = sign_i * e_{perm_i}
class WeylElement {
 public:
  WeylElement() = default;
  explicit WeylElement(std::vector<int> perm, std::vector<int> sign = {});
  static WeylElement identity(int r);

  int rank() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<int>& sign() const { return sign_; }
  bool is_identity() const;

  Weight apply(const Weight& x) const;
  WeightQ apply(const WeightQ& x) const;
  WeylElement operator*(const WeylElement& o) const;
  WeylElement inverse() const;
  // one-line notation, 1-based, a minus sign marks a sign flip
  std::string str() const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.perm_ == b.perm_ && a.sign_ == b.sign_;
  }
  friend bool operator<(const WeylElement& a, const WeylElement& b) {
    return std::tie(a.perm_, a.sign_) < std::tie(b.perm_, b.sign_);
  }

 private:
  std::vector<int> perm_;
  std::vector<int> sign_;
};

struct RootDatum {
  GroupSpec spec;
  int rank = 0;  // character lattice rank
  int m = 0;     // size of the standard matrix realization
  std::vector<Weight> positive;
  std::vector<Weight> negative;
  std::vector<Weight> simple;
  std::vector<Weight> levi_positive;
  std::vector<Weight> levi_negative;
  std::vector<Weight> nilradical;  // lexicographically descending
  WeightQ delta;
  WeightQ height_form;              // linear form taking the value 1 on simple roots
  std::vector<Weight> index_weight;  // torus weight of the i-th standard basis vector
  MatQ J;                            // invariant form (empty for GL)

  bool is_root(const Weight& a) const;
  bool is_positive(const Weight& a) const;
  bool is_levi(const Weight& a) const;
  int nil_index(const Weight& a) const;
  Rational height(const Weight& a) const;
  Rational height(const WeightQ& a) const;
  Weight position_weight(int i, int j) const;

  // matrix realizations inside gl_m
  std::vector<std::pair<int, int>> positions(const Weight& a) const;
  std::pair<int, int> primary_position(const Weight& a) const;
  MatQ root_vector(const Weight& a) const;
  Rational root_coefficient(const MatQ& X, const Weight& a) const;
  // H with [H, e_a] = a_i e_a
  MatQ torus_generator(int i) const;
  // diagonal matrix realizing a lattice point t = (t_1..t_rank) as exponents of a scalar
  std::vector<int> torus_exponents(int i) const;
  bool in_lie_algebra(const MatQ& X) const;

  MatQ weyl_matrix(const WeylElement& w) const;
  std::vector<WeylElement> weyl_group() const;
  int abs_length(const WeylElement& w) const;
  int length(const WeylElement& w) const { return spec.e * abs_length(w); }
  bool is_weyl(const WeylElement& w) const;
};

RootDatum build_root_datum(const GroupSpec& spec);
bool is_abelian_nilradical(const RootDatum& d);

bool in_wp(const RootDatum& d, const WeylElement& w);
std::vector<WeylElement> relative_weyl_wp(const RootDatum& d);
std::vector<Weight> delta_plus_w(const RootDatum& d, const WeylElement& w);
// w(delta) - delta, integral
Weight rho_shift(const RootDatum& d, const WeylElement& w);
Weight dot(const RootDatum& d, const WeylElement& w, const Weight& lambda);

// parse "1 3 2 4" / "(2 3)" / "[1,-2]" / index into W^P
WeylElement parse_weyl(const RootDatum& d, const std::string& s);
WeylElement transposition(int r, int i, int j);

// subsets of the nilradical as bitmasks over the nilradical order
using Subset = std::uint32_t;
std::vector<Subset> subsets_of_size(int n, int k);
Weight subset_weight(const RootDatum& d, Subset S);  // -sum of roots (weight of the wedge of duals)
Subset subset_of(const RootDatum& d, const std::vector<Weight>& roots);

// action of e_beta on wedge^k n^* in the basis of k-subsets; column S -> image
MatQ coadjoint_wedge_action(const RootDatum& d, const Weight& beta, int k);

struct KostantReport {
  Weight weight;                 // weight of the wedge line
  bool line_invariant = false;   // killed by all Levi raising operators
  int weight_multiplicity = 0;   // multiplicity of the weight in wedge^{l} n^*
  bool weight_matches_rho_shift = false;
  int invariant_dim = 0;         // dim (wedge^l n^*)^{N_L}
  std::vector<Weight> invariant_weights;
};
KostantReport kostant_invariant_line(const RootDatum& d, const WeylElement& w);
// dim (wedge^k n^*)^{N_L}, k = 0..dim n
std::vector<int> kostant_degree_counts(const RootDatum& d);
std::vector<int> wp_length_counts(const RootDatum& d);

}  // namespace lacoh::rootdata
