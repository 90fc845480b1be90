#pragma once

#include <vector>

#include "btab/rational.hpp"

namespace btab {

// Closed forms for the uniform measure on size-n type-B tableaux. All exact.

Rational expected_rows(int n);          // (n+1)/4, n >= 1
Rational expected_unrestricted(int n);  // H_n, n >= 1
Rational expected_diag_ones(int n);     // n/2, n >= 0
Rational expected_ss(int n);            // (2n-1)/24, n >= 2
Rational expected_ww(int n);            // (14n-25)/24 + 1/(2n), n >= 2

// Per-position probabilities; k is 1-based.
Rational p_south(int n, int k);  // (1/2)(1 - (k-1)/n)
Rational p_ss(int n, int k);     // (n-k+1)^2 / (4n(n-1)), k >= 2
Rational p_ww(int n, int k);     // k/n - 3/(2n) + (n-k+1)^2/(4n(n-1)), k >= 2
Rational p_g1(int n, int k);     // 1/2

// A rejected variant of the south-step formula, kept so the verify report
// can show it disagrees with enumeration.
Rational p_south_proof_variant(int n, int k);  // (1/2)(1 - (k+1)/n)

// E_m[a^{U_m}] as the rising-factorial product a(a+1)...(a+m-1)/m!.
Rational u_moment(int m, const Rational& a);

// The gamma-ratio display of the same quantity, Gamma(m+a-1)/(m! Gamma(a-1)),
// evaluated for a > 1. Off by one from the product; kept only to be flagged.
Rational u_moment_gamma_form(int m, const Rational& a);

struct BinomialIdentityResult {
  Rational lhs;  // E[I_{G=1} a^{G+Bin(m-G)}] by summation over 2^m outcomes
  Rational rhs;  // (a/(a+1)) ((a+1)/2)^m
  bool pass = false;
};

// Exact check of the first-success identity behind the diagonal-ones result.
BinomialIdentityResult binomial_identity_check(int m, const Rational& a);

// All closed forms at one n, with per-position vectors indexed by k-1.
struct FormulaTable {
  int n = 0;
  Rational rows, unrestricted, diag_ones;
  Rational ss, ww;  // defined for n >= 2
  std::vector<Rational> p_south, p_ss, p_ww, p_g1;  // p_ss/p_ww start at k = 2

  static FormulaTable build(int n);
  bool internal_sums_ok() const;  // per-position vectors sum to the aggregates
};

}  // namespace btab
