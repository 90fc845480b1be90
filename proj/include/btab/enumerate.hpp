#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "btab/core.hpp"
#include "btab/rational.hpp"

namespace btab {

inline constexpr int kDefaultEnumCap = 8;

// Lightweight leaf view handed to enumeration visitors; no grid is built.
struct TableauView {
  const std::vector<Step>& steps;
  const std::vector<ColumnFill>& fills;
  const std::vector<int>& u_trace;

  std::size_t size() const { return steps.size(); }
  StatRecord stat_record() const;
  Tableau to_tableau() const;
};

enum class StatField {
  rows,
  columns,
  unrestricted,
  diagonal_ones,
  ss_pairs,
  ww_pairs,
  sw_pairs,
  ws_pairs,
};

const char* stat_field_name(StatField f);
StatField stat_field_from_name(const std::string& name);
int stat_field_value(const StatRecord& r, StatField f);

namespace detail {

template <class Visitor>
void enumerate_rec(int n, std::vector<Step>& steps, std::vector<ColumnFill>& fills,
                   std::vector<int>& u_trace, std::uint64_t& count, Visitor& visit) {
  if (static_cast<int>(steps.size()) == n) {
    ++count;
    visit(TableauView{steps, fills, u_trace});
    return;
  }
  int u = u_trace.empty() ? 0 : u_trace.back();
  steps.push_back(Step::south);
  u_trace.push_back(u + 1);
  enumerate_rec(n, steps, fills, u_trace, count, visit);
  steps.pop_back();
  u_trace.pop_back();

  // west fills in ascending binary value, diagonal bit most significant
  steps.push_back(Step::west);
  for (std::uint64_t val = 1; val < (std::uint64_t{1} << (u + 1)); ++val) {
    ColumnFill fill(u + 1);
    for (int i = 0; i <= u; ++i) fill[i] = (val >> (u - i)) & 1;
    u_trace.push_back(fill_result_u(fill));
    fills.push_back(std::move(fill));
    enumerate_rec(n, steps, fills, u_trace, count, visit);
    fills.pop_back();
    u_trace.pop_back();
  }
  steps.pop_back();
}

}  // namespace detail

// Streaming depth-first enumeration of all size-n tableaux, south child first.
// Returns the exact leaf count. Throws Errc::resource_cap past the cap.
template <class Visitor>
std::uint64_t enumerate_all(int n, Visitor&& visit, int cap = kDefaultEnumCap) {
  if (n < 0) fail(Errc::domain_error, "n must be >= 0");
  if (n > cap)
    fail(Errc::resource_cap, "enumeration of size " + std::to_string(n) +
                                 " exceeds cap " + std::to_string(cap));
  std::vector<Step> steps;
  std::vector<ColumnFill> fills;
  std::vector<int> u_trace;
  std::uint64_t count = 0;
  detail::enumerate_rec(n, steps, fills, u_trace, count, visit);
  return count;
}

inline std::uint64_t enumerate_count(int n, int cap = kDefaultEnumCap) {
  return enumerate_all(n, [](const TableauView&) {}, cap);
}

struct ParentGroup {
  Tableau parent;
  std::vector<Tableau> children;  // south child first, then fills ascending
};

ParentGroup children(const Tableau& parent);

// Histogram of U_n over all 2^(U+1) children; value 1+j appears 2*C(U,j) times.
std::map<int, std::uint64_t> child_histogram(const Tableau& parent);

struct BruteReport {
  int n = 0;
  std::string statistic;
  BigInt total;
  BigInt count;
  Rational mean;
};

BruteReport brute_expectation(int n, StatField field, int cap = kDefaultEnumCap);

enum class PositionEvent { south_at_k, ss_pair_at_k, ww_pair_at_k, g_equals_one };

// Exact fraction of size-n tableaux satisfying the event at position k.
Rational per_position_probability(int n, PositionEvent event, int k, int cap = kDefaultEnumCap);

enum class MeasureStatistic { one, rows_prefix, u_prev };

struct MeasureIdentityResult {
  Rational lhs;  // E_m[X a^{U_m}]
  Rational rhs;  // (a/m) E_{m-1}[X (a+1)^{U_{m-1}}]
  bool pass = false;
};

// Exact check of E_m[X a^{U_m}] = (a/m) E_{m-1}[X (a+1)^{U_{m-1}}] where X is
// a function of the first m-1 steps.
MeasureIdentityResult measure_identity_check(int m, int a, MeasureStatistic x,
                                             int cap = kDefaultEnumCap);

// Brute E_m[a^{U_m}] by enumeration; oracle for the closed product form.
Rational brute_u_moment(int m, const Rational& a, int cap = kDefaultEnumCap);

}  // namespace btab
