#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "btab/expect.hpp"
#include "btab/sample.hpp"

using namespace btab;

TEST_CASE("rng reproducibility") {
  Rng a(12345), b(12345), c(54321);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    std::uint64_t va = a.bits64();
    all_equal &= va == b.bits64();
    any_diff |= va != c.bits64();
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CHECK(Rng::stream_seed(7, 0) != Rng::stream_seed(7, 1));
  CHECK(Rng::stream_seed(7, 0) != Rng::stream_seed(8, 0));
}

TEST_CASE("rng bounded draws stay in range") {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    CHECK(rng.below(std::uint64_t{7}) < 7);
    BigInt big = BigInt(1) << 80;
    BigInt v = rng.below(big);
    CHECK(v >= 0);
    CHECK(v < big);
    double u = rng.uniform01();
    CHECK(u > 0);
    CHECK(u <= 1);
  }
}

TEST_CASE("uchain counts") {
  CHECK(build_uchain(1).total() == 2);
  UChainTable t2 = build_uchain(2);
  CHECK(t2.total() == 8);
  CHECK(t2.counts[1][1] == 4);
  CHECK(build_uchain(7).total() == 645120);
  for (int n = 0; n <= 50; ++n) CHECK(build_uchain(n).total() == tableau_count(n));
  CHECK_THROWS_AS(build_uchain(301), Error);
  try {
    build_uchain(301);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::resource_cap);
  }
}

TEST_CASE("uniform sampler is deterministic given the seed") {
  UChainTable table = build_uchain(6);
  Rng a(42), b(42);
  for (int i = 0; i < 25; ++i)
    CHECK(serialize(sample_uniform(table, a)) == serialize(sample_uniform(table, b)));
}

TEST_CASE("uniform sampler produces valid tableaux") {
  UChainTable table = build_uchain(12);
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Tableau t = sample_uniform(table, rng);
    CHECK(t.size() == 12);
    CHECK(validate(t.grid).ok());
  }
}

TEST_CASE("uniform sampler chi-square at n = 3") {
  const int n = 3;
  const std::size_t draws = 48000;
  UChainTable table = build_uchain(n);
  Rng rng(2026);
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < draws; ++i) ++counts[serialize(sample_uniform_history(table, rng))];

  const double categories = 48;
  REQUIRE(counts.size() == 48);  // every tableau seen
  double expected = draws / categories;
  double chi2 = 0;
  for (const auto& [key, c] : counts) {
    double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  // 0.999 quantile of chi-square with 47 degrees of freedom
  CHECK(chi2 < 82.72042251912399);
}

TEST_CASE("importance sampler weights at tiny n") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    CHECK(sample_weighted(1, rng).weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sample_weighted(2, rng).weight == doctest::Approx(1.0).epsilon(1e-12));
    double w3 = sample_weighted(3, rng).weight;
    bool known = std::abs(w3 - 2.0 / 3.0) < 1e-12 || std::abs(w3 - 4.0 / 3.0) < 1e-12;
    CHECK(known);
  }
  CHECK_THROWS_AS(sample_weighted(0, rng), Error);
}

TEST_CASE("importance sampler samples are consistent") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    WeightedSample s = sample_weighted(8, rng);
    Tableau t = realize(s.history);
    CHECK(t.u_trace == s.u_trace);
    CHECK(validate(t.grid).ok());
  }
}

TEST_CASE("estimate at n = 2 is exact in the weights") {
  EstimateReport r = estimate(2, StatField::rows, 20000, 31);
  CHECK(r.mean_weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.ess == doctest::Approx(20000.0).epsilon(1e-9));
  CHECK(std::abs(r.weighted_mean - 0.75) < 4 * r.std_error + 1e-12);
}

TEST_CASE("estimate matches brute values at small n") {
  for (int n : {3, 5}) {
    auto reports = estimate_many(
        n, {StatField::rows, StatField::unrestricted, StatField::diagonal_ones}, 60000, 97);
    double targets[] = {static_cast<double>(expected_rows(n)),
                        static_cast<double>(expected_unrestricted(n)),
                        static_cast<double>(expected_diag_ones(n))};
    for (int i = 0; i < 3; ++i) {
      CHECK(reports[i].std_error > 0);
      CHECK(reports[i].ess <= reports[i].num_samples);
      CHECK(std::abs(reports[i].weighted_mean - targets[i]) < 4 * reports[i].std_error);
    }
  }
}

TEST_CASE("estimate is deterministic and mergeable") {
  EstimateReport a = estimate(4, StatField::ww_pairs, 5000, 123);
  EstimateReport b = estimate(4, StatField::ww_pairs, 5000, 123);
  CHECK(a.weighted_mean == b.weighted_mean);
  CHECK(a.std_error == b.std_error);

  std::vector<StatField> fields{StatField::ww_pairs};
  IsAccumulator left = run_weighted_stream(4, fields, 2000, Rng::stream_seed(9, 0));
  IsAccumulator right = run_weighted_stream(4, fields, 3000, Rng::stream_seed(9, 1));
  left.merge(right);
  EstimateReport merged = make_reports(4, fields, left, 9)[0];
  CHECK(merged.num_samples == 5000);
  CHECK(std::abs(merged.weighted_mean - static_cast<double>(expected_ww(4))) <
        4 * merged.std_error);

  CHECK_THROWS_AS(estimate(4, StatField::rows, 1, 5), Error);
}
