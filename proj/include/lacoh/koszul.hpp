#pragma once

#include "lacoh/cecomplex.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace lacoh::koszul {

using cecomplex::Complex;
using dmod::MatF;
using rootdata::RootDatum;
using rootdata::Weight;

struct NonCommutingActions : std::domain_error {
  using std::domain_error::domain_error;
};

// finitely supported element of Q[Z^n]
struct GroupRingElement {
  int n = 0;
  std::map<std::vector<int>, Rational> terms;

  static GroupRingElement generator(int n, int i);
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement operator+(const GroupRingElement& o) const;
  // e_i -> 1 + T_i; inverses expand as geometric series truncated at total degree D
  PolyQ to_T(int D) const;
};

// Koszul complex of pairwise commuting operators T_1..T_n on one free module
Complex build_koszul(const std::vector<MatF>& T, int nformal = 0);
std::vector<int> group_cohomology(const Complex& K, int threads = 1);

// T_i = exp(sum_j U_ij c_j rho(e_{alpha_j})) - 1 for the lattice generated by exp(c_j e_{alpha_j})
std::vector<MatF> lattice_operators(const cecomplex::AlgebraicModule& M, const RootDatum& d,
                                    const std::vector<Rational>& c, const std::vector<std::vector<int>>& U = {});

// weight-graded Koszul complex of D: gr T_i = c_i e_{alpha_i}
Complex build_graded_koszul(const dmod::DModule& D, int threads = 1);

struct BlockComparison {
  Weight nu;
  std::vector<int> group;      // H^q(Gamma) per degree
  std::vector<int> lie_raw;    // H^q(n)
  std::vector<int> lie_inv;    // N_w-invariant classes
  bool equal = true;
};

struct Comparison {
  std::vector<BlockComparison> blocks;
  std::vector<int> group_total, lie_raw_total, lie_inv_total;
  bool all_equal = true;
};

Comparison compare_group_vs_lie(const dmod::DModule& D, int threads = 1);

}  // namespace lacoh::koszul

namespace lacoh::koszul {

// A = Q[T_1..T_n]/(deg > D) with e_i acting by 1 + T_i; blocks graded by g = deg - q
struct RegularSequenceShadow {
  int n = 0, D = 0;
  std::map<int, std::vector<int>> coh;  // g -> H^q
  bool exact_below_top = true;          // H^q = 0, q < n, for every complete grade g <= D - n
  int top = 0;                          // sum of H^n over complete grades, expected dim A/(T) = 1
};

RegularSequenceShadow regular_sequence_shadow(int n, int D, int threads = 1);

}  // namespace lacoh::koszul
