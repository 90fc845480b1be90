#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace btab {

// Exact arithmetic used by everything that promises BigRational equality.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// 2^n * n!, the cardinality of the size-n tableau family.
inline BigInt tableau_count(int n) {
  BigInt r = factorial(n);
  return r << n;
}

// a^e for rational a, integer e >= 0.
inline Rational rational_pow(const Rational& a, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= a;
  return r;
}

inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace btab
