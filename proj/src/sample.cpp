#include "btab/sample.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace btab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x1234567887654321ull));
}

bool Rng::bit() {
  if (bits_left_ == 0) {
    bit_buffer_ = bits64();
    bits_left_ = 64;
  }
  bool b = bit_buffer_ & 1;
  bit_buffer_ >>= 1;
  --bits_left_;
  return b;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  int nbits = 64 - std::countl_zero(bound - 1);
  std::uint64_t mask = nbits == 64 ? ~0ull : (std::uint64_t{1} << nbits) - 1;
  for (;;) {
    std::uint64_t v = bits64() & mask;
    if (v < bound) return v;
  }
}

BigInt Rng::below(const BigInt& bound) {
  if (bound <= 1) return 0;
  unsigned nbits = boost::multiprecision::msb(BigInt(bound - 1)) + 1;
  unsigned words = (nbits + 63) / 64;
  for (;;) {
    BigInt v = 0;
    for (unsigned i = 0; i < words; ++i) {
      v <<= 64;
      v |= bits64();
    }
    v >>= words * 64 - nbits;
    if (v < bound) return v;
  }
}

double Rng::uniform01() {
  // 53 random bits into (0, 1]
  return (static_cast<double>(bits64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::exponential(double rate) { return -std::log(uniform01()) / rate; }

UChainTable build_uchain(int n, int cap) {
  if (n < 0) fail(Errc::domain_error, "n must be >= 0");
  if (n > cap)
    fail(Errc::resource_cap,
         "uchain table for n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));

  std::vector<std::vector<BigInt>> binom(n + 1);
  for (int u = 0; u <= n; ++u) {
    binom[u].resize(u + 1);
    binom[u][0] = 1;
    for (int j = 1; j <= u; ++j)
      binom[u][j] = binom[u - 1][j - 1] + (j < u ? binom[u - 1][j] : BigInt(0));
  }

  UChainTable table;
  table.n = n;
  table.counts.resize(n + 1);
  table.counts[n].assign(n + 1, BigInt(1));
  for (int k = n - 1; k >= 0; --k) {
    table.counts[k].resize(k + 1);
    for (int u = 0; u <= k; ++u) {
      BigInt c = table.counts[k + 1][u + 1];  // south child
      for (int j = 0; j <= u; ++j) {
        BigInt ways = 2 * binom[u][j] - (j == u ? 1 : 0);
        c += ways * table.counts[k + 1][1 + j];
      }
      table.counts[k][u] = std::move(c);
    }
  }
  return table;
}

namespace {

// Uniform j-subset of {0, ..., u-1} via partial Fisher-Yates.
std::vector<int> random_subset(int u, int j, Rng& rng) {
  std::vector<int> idx(u);
  for (int i = 0; i < u; ++i) idx[i] = i;
  for (int i = 0; i < j; ++i)
    std::swap(idx[i], idx[i + static_cast<int>(rng.below(std::uint64_t(u - i)))]);
  idx.resize(j);
  return idx;
}

// Uniform fill with result value 1+j among the 2C(u,j)-[j=u] candidates.
ColumnFill sample_fill_with_result(int u, int j, Rng& rng) {
  BigInt top = binomial(u, j);                       // fills with a 1 on the diagonal
  BigInt rest = binomial(u, j) - (j == u ? 1 : 0);   // diagonal 0, topmost 1 lower down
  ColumnFill fill(u + 1, 0);
  if (rng.below(BigInt(top + rest)) < top) {
    fill[0] = 1;
    for (int p : random_subset(u, j, rng)) fill[1 + p] = 1;
  } else {
    // pick the topmost-1 position g by its candidate count, then the ones below
    BigInt r = rng.below(rest);
    int g = 2;
    for (;; ++g) {
      BigInt w = binomial(u + 1 - g, j - g + 2);
      if (r < w) break;
      r -= w;
    }
    fill[g - 1] = 1;
    for (int p : random_subset(u + 1 - g, j - g + 2, rng)) fill[g + p] = 1;
  }
  return fill;
}

}  // namespace

GrowthHistory sample_uniform_history(const UChainTable& table, Rng& rng) {
  GrowthHistory h;
  int u = 0;
  for (int k = 0; k < table.n; ++k) {
    BigInt r = rng.below(table.counts[k][u]);
    if (r < table.counts[k + 1][u + 1]) {
      h.steps.push_back(Step::south);
      ++u;
      continue;
    }
    r -= table.counts[k + 1][u + 1];
    int j = 0;
    for (;; ++j) {
      BigInt ways = 2 * binomial(u, j) - (j == u ? 1 : 0);
      BigInt w = ways * table.counts[k + 1][1 + j];
      if (r < w) break;
      r -= w;
    }
    ColumnFill fill = sample_fill_with_result(u, j, rng);
    h.steps.push_back(Step::west);
    h.fills.push_back(std::move(fill));
    u = 1 + j;
  }
  return h;
}

Tableau sample_uniform(const UChainTable& table, Rng& rng) {
  return realize(sample_uniform_history(table, rng));
}

WeightedSample sample_weighted(int n, Rng& rng) {
  if (n < 1) fail(Errc::domain_error, "sample_weighted needs n >= 1");
  WeightedSample s;
  int u = 0;
  for (int k = 1; k <= n; ++k) {
    s.log_weight += (u + 1) * std::numbers::ln2 - std::log(2.0 * k);
    ColumnFill fill(u + 1);
    bool any = false;
    for (int i = 0; i <= u; ++i) {
      fill[i] = rng.bit();
      any |= fill[i];
    }
    if (!any) {
      s.history.steps.push_back(Step::south);
      ++u;
    } else {
      u = fill_result_u(fill);
      s.history.steps.push_back(Step::west);
      s.history.fills.push_back(std::move(fill));
    }
    s.u_trace.push_back(u);
  }
  s.weight = std::exp(s.log_weight);
  return s;
}

void IsAccumulator::add(double log_weight, const std::vector<int>& values) {
  if (log_weight > shift) {
    double scale = std::exp(shift - log_weight);
    sw *= scale;
    sw2 *= scale * scale;
    for (std::size_t i = 0; i < swx.size(); ++i) {
      swx[i] *= scale;
      sw2x[i] *= scale * scale;
      sw2x2[i] *= scale * scale;
    }
    shift = log_weight;
  }
  double w = std::exp(log_weight - shift);
  ++num_samples;
  sw += w;
  sw2 += w * w;
  for (std::size_t i = 0; i < swx.size(); ++i) {
    swx[i] += w * values[i];
    sw2x[i] += w * w * values[i];
    sw2x2[i] += w * w * values[i] * static_cast<double>(values[i]);
  }
}

void IsAccumulator::merge(const IsAccumulator& other) {
  if (other.num_samples == 0) return;
  double target = std::max(shift, other.shift);
  auto rescale = [&](const IsAccumulator& a, double& w1, double& w2) {
    double s = std::exp(a.shift - target);
    w1 *= s;
    w2 *= s * s;
  };
  IsAccumulator o = other;
  rescale(*this, sw, sw2);
  rescale(o, o.sw, o.sw2);
  for (std::size_t i = 0; i < swx.size(); ++i) {
    double s1 = std::exp(shift - target), s2 = std::exp(other.shift - target);
    swx[i] = swx[i] * s1 + o.swx[i] * s2;
    sw2x[i] = sw2x[i] * s1 * s1 + o.sw2x[i] * s2 * s2;
    sw2x2[i] = sw2x2[i] * s1 * s1 + o.sw2x2[i] * s2 * s2;
  }
  sw += o.sw;
  sw2 += o.sw2;
  num_samples += o.num_samples;
  shift = target;
}

IsAccumulator run_weighted_stream(int n, const std::vector<StatField>& fields,
                                  std::size_t num_samples, std::uint64_t seed) {
  Rng rng(seed);
  IsAccumulator acc(fields.size());
  std::vector<int> values(fields.size());
  for (std::size_t i = 0; i < num_samples; ++i) {
    WeightedSample s = sample_weighted(n, rng);
    StatRecord r = TableauView{s.history.steps, s.history.fills, s.u_trace}.stat_record();
    for (std::size_t f = 0; f < fields.size(); ++f) values[f] = stat_field_value(r, fields[f]);
    acc.add(s.log_weight, values);
  }
  return acc;
}

std::vector<EstimateReport> make_reports(int n, const std::vector<StatField>& fields,
                                         const IsAccumulator& acc, std::uint64_t seed) {
  std::vector<EstimateReport> reports;
  double nn = static_cast<double>(acc.num_samples);
  for (std::size_t f = 0; f < fields.size(); ++f) {
    EstimateReport r;
    r.statistic = stat_field_name(fields[f]);
    r.n = n;
    r.num_samples = acc.num_samples;
    r.seed = seed;
    double m = acc.swx[f] / acc.sw;
    r.weighted_mean = m;
    double var_num = acc.sw2x2[f] - 2 * m * acc.sw2x[f] + m * m * acc.sw2;
    r.std_error = std::sqrt(std::max(0.0, var_num)) / acc.sw;
    r.ess = acc.sw * acc.sw / acc.sw2;
    r.mean_weight = std::exp(acc.shift + std::log(acc.sw) - std::log(nn));
    double mw_scaled = acc.sw / nn;
    double var_w = std::max(0.0, acc.sw2 / nn - mw_scaled * mw_scaled) * nn / (nn - 1);
    r.mean_weight_se = std::exp(acc.shift) * std::sqrt(var_w / nn);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<EstimateReport> estimate_many(int n, const std::vector<StatField>& fields,
                                          std::size_t num_samples, std::uint64_t seed) {
  if (num_samples < 2) fail(Errc::domain_error, "estimate needs at least 2 samples");
  return make_reports(n, fields, run_weighted_stream(n, fields, num_samples, seed), seed);
}

EstimateReport estimate(int n, StatField field, std::size_t num_samples, std::uint64_t seed) {
  return estimate_many(n, {field}, num_samples, seed).front();
}

}  // namespace btab
