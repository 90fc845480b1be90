#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "btab/core.hpp"
#include "btab/enumerate.hpp"
#include "btab/rational.hpp"

namespace btab {

inline constexpr int kDefaultUChainCap = 300;

// Seedable, reproducible 64-bit RNG; all draws go through explicit rejection
// sampling so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Derived seed for an independent stream (seed, stream index).
  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t bits64() { return eng_(); }
  bool bit();
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
  BigInt below(const BigInt& bound);
  double exponential(double rate);
  double uniform01();

 private:
  std::mt19937_64 eng_;
  std::uint64_t bit_buffer_ = 0;
  int bits_left_ = 0;
};

// Big-integer completion counts of the unrestricted-row chain:
// counts[k][u] = number of ways to finish a size-n tableau from U_k = u.
struct UChainTable {
  int n = 0;
  std::vector<std::vector<BigInt>> counts;  // counts[k] has k+1 entries

  const BigInt& total() const { return counts[0][0]; }  // = 2^n n!
};

UChainTable build_uchain(int n, int cap = kDefaultUChainCap);

// Exactly uniform over the 2^n n! tableaux of size n.
GrowthHistory sample_uniform_history(const UChainTable& table, Rng& rng);
Tableau sample_uniform(const UChainTable& table, Rng& rng);

struct WeightedSample {
  GrowthHistory history;
  std::vector<int> u_trace;
  double log_weight = 0;
  double weight = 0;
};

// Sequential importance sampler: each step picks uniformly among the
// 2^(U+1) children; weight = prod_k 2^(U_{k-1}+1)/(2k), expectation 1.
WeightedSample sample_weighted(int n, Rng& rng);

// Mergeable self-normalized importance-sampling sums, one slot per field.
// Internally scaled by exp(-shift) so long products stay representable.
struct IsAccumulator {
  std::size_t num_samples = 0;
  double shift = 0;  // largest log-weight seen
  double sw = 0, sw2 = 0;
  std::vector<double> swx, sw2x, sw2x2;

  explicit IsAccumulator(std::size_t fields = 0)
      : swx(fields, 0), sw2x(fields, 0), sw2x2(fields, 0) {}
  void add(double log_weight, const std::vector<int>& values);
  void merge(const IsAccumulator& other);
};

struct EstimateReport {
  std::string statistic;
  int n = 0;
  std::size_t num_samples = 0;
  std::uint64_t seed = 0;
  double weighted_mean = 0;
  double std_error = 0;  // delta-method SE of the self-normalized mean
  double ess = 0;        // (sum w)^2 / sum w^2
  double mean_weight = 0;
  double mean_weight_se = 0;
};

IsAccumulator run_weighted_stream(int n, const std::vector<StatField>& fields,
                                  std::size_t num_samples, std::uint64_t seed);

std::vector<EstimateReport> make_reports(int n, const std::vector<StatField>& fields,
                                         const IsAccumulator& acc, std::uint64_t seed);

std::vector<EstimateReport> estimate_many(int n, const std::vector<StatField>& fields,
                                          std::size_t num_samples, std::uint64_t seed);

EstimateReport estimate(int n, StatField field, std::size_t num_samples, std::uint64_t seed);

}  // namespace btab
