#include "btab/expect.hpp"

#include <string>

#include "btab/errors.hpp"

namespace btab {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) fail(Errc::domain_error, msg);
}

void require_k(int n, int k, int kmin) {
  if (k < kmin || k > n)
    fail(Errc::index_out_of_range, "k = " + std::to_string(k) + " outside [" +
                                       std::to_string(kmin) + ", " + std::to_string(n) + "]");
}

}  // namespace

Rational expected_rows(int n) {
  require(n >= 1, "expected_rows needs n >= 1");
  return Rational(n + 1, 4);
}

Rational expected_unrestricted(int n) {
  require(n >= 1, "expected_unrestricted needs n >= 1");
  Rational h = 0;
  for (int i = 1; i <= n; ++i) h += Rational(1, i);
  return h;
}

Rational expected_diag_ones(int n) {
  require(n >= 0, "expected_diag_ones needs n >= 0");
  return Rational(n, 2);
}

Rational expected_ss(int n) {
  require(n >= 2, "expected_ss needs n >= 2");
  return Rational(2 * n - 1, 24);
}

Rational expected_ww(int n) {
  require(n >= 2, "expected_ww needs n >= 2");
  return Rational(14 * n - 25, 24) + Rational(1, 2 * n);
}

Rational p_south(int n, int k) {
  require(n >= 1, "p_south needs n >= 1");
  require_k(n, k, 1);
  return Rational(1, 2) * (1 - Rational(k - 1, n));
}

Rational p_south_proof_variant(int n, int k) {
  require(n >= 1, "p_south_proof_variant needs n >= 1");
  require_k(n, k, 1);
  return Rational(1, 2) * (1 - Rational(k + 1, n));
}

Rational p_ss(int n, int k) {
  require(n >= 2, "p_ss needs n >= 2");
  require_k(n, k, 2);
  BigInt d = n - k + 1;
  return Rational(d * d, BigInt(4) * n * (n - 1));
}

Rational p_ww(int n, int k) {
  require(n >= 2, "p_ww needs n >= 2");
  require_k(n, k, 2);
  return Rational(k, n) - Rational(3, 2 * n) + p_ss(n, k);
}

Rational p_g1(int n, int k) {
  require(n >= 1, "p_g1 needs n >= 1");
  require_k(n, k, 1);
  return Rational(1, 2);
}

Rational u_moment(int m, const Rational& a) {
  require(m >= 1 && a > 0, "u_moment needs m >= 1 and a > 0");
  Rational prod = 1;
  for (int i = 0; i < m; ++i) prod *= a + i;
  return prod / Rational(factorial(m));
}

Rational u_moment_gamma_form(int m, const Rational& a) {
  require(m >= 1 && a > 1, "u_moment_gamma_form needs m >= 1 and a > 1");
  Rational prod = 1;
  for (int i = 0; i < m; ++i) prod *= a - 1 + i;
  return prod / Rational(factorial(m));
}

BinomialIdentityResult binomial_identity_check(int m, const Rational& a) {
  require(m >= 1 && a > 0, "binomial identity needs m >= 1 and a > 0");
  if (m > 20) fail(Errc::resource_cap, "binomial identity summation capped at m = 20");

  // G = position of the first success among m fair flips; outcomes without a
  // first-flip success contribute 0 to the indicator.
  Rational lhs_total = 0;
  for (std::uint64_t outcome = 0; outcome < (std::uint64_t{1} << m); ++outcome) {
    if (!(outcome & (std::uint64_t{1} << (m - 1)))) continue;  // G != 1
    int later = 0;  // Bin(m-G) successes among flips after G = 1
    for (int i = 0; i < m - 1; ++i) later += (outcome >> i) & 1;
    lhs_total += rational_pow(a, 1 + later);
  }
  BinomialIdentityResult r;
  r.lhs = lhs_total / rational_pow(Rational(2), m);
  r.rhs = a / (a + 1) * rational_pow((a + 1) / 2, m);
  r.pass = r.lhs == r.rhs;
  return r;
}

FormulaTable FormulaTable::build(int n) {
  require(n >= 1, "FormulaTable needs n >= 1");
  FormulaTable t;
  t.n = n;
  t.rows = expected_rows(n);
  t.unrestricted = expected_unrestricted(n);
  t.diag_ones = expected_diag_ones(n);
  if (n >= 2) {
    t.ss = expected_ss(n);
    t.ww = expected_ww(n);
  }
  for (int k = 1; k <= n; ++k) {
    t.p_south.push_back(btab::p_south(n, k));
    t.p_g1.push_back(btab::p_g1(n, k));
  }
  for (int k = 2; k <= n; ++k) {
    t.p_ss.push_back(btab::p_ss(n, k));
    t.p_ww.push_back(btab::p_ww(n, k));
  }
  return t;
}

bool FormulaTable::internal_sums_ok() const {
  Rational s = 0;
  for (const Rational& v : p_south) s += v;
  if (s != rows) return false;
  s = 0;
  for (const Rational& v : p_g1) s += v;
  if (s != diag_ones) return false;
  if (n >= 2) {
    s = 0;
    for (const Rational& v : p_ss) s += v;
    if (s != ss) return false;
    s = 0;
    for (const Rational& v : p_ww) s += v;
    if (s != ww) return false;
  }
  return true;
}

}  // namespace btab
