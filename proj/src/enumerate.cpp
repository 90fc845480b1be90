#include "btab/enumerate.hpp"

#include <algorithm>

namespace btab {

StatRecord TableauView::stat_record() const {
  StatRecord r;
  r.g_trace.assign(steps.size(), 0);
  std::size_t fi = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k] == Step::south) {
      ++r.rows;
    } else {
      const ColumnFill& fill = fills[fi++];
      r.g_trace[k] = fill_topmost_one(fill);
      r.diagonal_ones += fill[0];
    }
    if (k > 0) {
      bool ps = steps[k - 1] == Step::south;
      bool cs = steps[k] == Step::south;
      if (ps && cs)
        ++r.ss_pairs;
      else if (!ps && !cs)
        ++r.ww_pairs;
      else if (ps)
        ++r.sw_pairs;
      else
        ++r.ws_pairs;
    }
  }
  r.columns = static_cast<int>(steps.size()) - r.rows;
  r.unrestricted = u_trace.empty() ? 0 : u_trace.back();
  return r;
}

Tableau TableauView::to_tableau() const { return realize(GrowthHistory{steps, fills}); }

const char* stat_field_name(StatField f) {
  switch (f) {
    case StatField::rows: return "rows";
    case StatField::columns: return "columns";
    case StatField::unrestricted: return "unrestricted";
    case StatField::diagonal_ones: return "diagonal_ones";
    case StatField::ss_pairs: return "ss_pairs";
    case StatField::ww_pairs: return "ww_pairs";
    case StatField::sw_pairs: return "sw_pairs";
    case StatField::ws_pairs: return "ws_pairs";
  }
  return "?";
}

StatField stat_field_from_name(const std::string& name) {
  for (StatField f : {StatField::rows, StatField::columns, StatField::unrestricted,
                      StatField::diagonal_ones, StatField::ss_pairs, StatField::ww_pairs,
                      StatField::sw_pairs, StatField::ws_pairs})
    if (name == stat_field_name(f)) return f;
  fail(Errc::domain_error, "unknown statistic '" + name + "'");
}

int stat_field_value(const StatRecord& r, StatField f) {
  switch (f) {
    case StatField::rows: return r.rows;
    case StatField::columns: return r.columns;
    case StatField::unrestricted: return r.unrestricted;
    case StatField::diagonal_ones: return r.diagonal_ones;
    case StatField::ss_pairs: return r.ss_pairs;
    case StatField::ww_pairs: return r.ww_pairs;
    case StatField::sw_pairs: return r.sw_pairs;
    case StatField::ws_pairs: return r.ws_pairs;
  }
  return 0;
}

ParentGroup children(const Tableau& parent) {
  ParentGroup group;
  group.parent = parent;
  int u = parent.u_trace.empty() ? 0 : parent.u_trace.back();

  GrowthHistory h = parent.history;
  h.steps.push_back(Step::south);
  group.children.push_back(realize(h));
  h.steps.back() = Step::west;
  for (std::uint64_t val = 1; val < (std::uint64_t{1} << (u + 1)); ++val) {
    ColumnFill fill(u + 1);
    for (int i = 0; i <= u; ++i) fill[i] = (val >> (u - i)) & 1;
    h.fills.push_back(std::move(fill));
    group.children.push_back(realize(h));
    h.fills.pop_back();
  }
  return group;
}

std::map<int, std::uint64_t> child_histogram(const Tableau& parent) {
  int u = parent.u_trace.empty() ? 0 : parent.u_trace.back();
  std::map<int, std::uint64_t> hist;
  ++hist[u + 1];  // south child
  for (std::uint64_t val = 1; val < (std::uint64_t{1} << (u + 1)); ++val) {
    ColumnFill fill(u + 1);
    for (int i = 0; i <= u; ++i) fill[i] = (val >> (u - i)) & 1;
    ++hist[fill_result_u(fill)];
  }
  return hist;
}

BruteReport brute_expectation(int n, StatField field, int cap) {
  long long total = 0;
  std::uint64_t count = enumerate_all(
      n, [&](const TableauView& t) { total += stat_field_value(t.stat_record(), field); }, cap);
  BruteReport report;
  report.n = n;
  report.statistic = stat_field_name(field);
  report.total = total;
  report.count = count;
  report.mean = count ? Rational(report.total, report.count) : Rational(0);
  return report;
}

Rational per_position_probability(int n, PositionEvent event, int k, int cap) {
  int kmin = (event == PositionEvent::ss_pair_at_k || event == PositionEvent::ww_pair_at_k) ? 2 : 1;
  if (k < kmin || k > n)
    fail(Errc::index_out_of_range,
         "k = " + std::to_string(k) + " outside [" + std::to_string(kmin) + ", " +
             std::to_string(n) + "]");
  std::uint64_t hits = 0;
  std::uint64_t count = enumerate_all(
      n,
      [&](const TableauView& t) {
        switch (event) {
          case PositionEvent::south_at_k:
            hits += t.steps[k - 1] == Step::south;
            break;
          case PositionEvent::ss_pair_at_k:
            hits += t.steps[k - 2] == Step::south && t.steps[k - 1] == Step::south;
            break;
          case PositionEvent::ww_pair_at_k:
            hits += t.steps[k - 2] == Step::west && t.steps[k - 1] == Step::west;
            break;
          case PositionEvent::g_equals_one: {
            if (t.steps[k - 1] != Step::west) break;
            std::size_t fi = 0;
            for (int i = 0; i < k - 1; ++i)
              if (t.steps[i] == Step::west) ++fi;
            hits += t.fills[fi][0] == 1;
            break;
          }
        }
      },
      cap);
  return Rational(BigInt(hits), BigInt(count));
}

namespace {

long long measure_x_value(const TableauView& t, int prefix_len, MeasureStatistic x) {
  switch (x) {
    case MeasureStatistic::one:
      return 1;
    case MeasureStatistic::rows_prefix: {
      long long rows = 0;
      for (int i = 0; i < prefix_len; ++i) rows += t.steps[i] == Step::south;
      return rows;
    }
    case MeasureStatistic::u_prev:
      return prefix_len == 0 ? 0 : t.u_trace[prefix_len - 1];
  }
  return 0;
}

BigInt int_pow(long long base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

MeasureIdentityResult measure_identity_check(int m, int a, MeasureStatistic x, int cap) {
  if (m < 1 || a < 1) fail(Errc::domain_error, "measure identity needs m >= 1 and a >= 1");
  BigInt lhs_total = 0;
  std::uint64_t m_count = enumerate_all(
      m,
      [&](const TableauView& t) {
        lhs_total += measure_x_value(t, m - 1, x) * int_pow(a, t.u_trace.back());
      },
      cap);
  BigInt rhs_total = 0;
  std::uint64_t p_count = enumerate_all(
      m - 1,
      [&](const TableauView& t) {
        int u = t.u_trace.empty() ? 0 : t.u_trace.back();
        rhs_total += measure_x_value(t, m - 1, x) * int_pow(a + 1, u);
      },
      cap);
  MeasureIdentityResult r;
  r.lhs = Rational(lhs_total, BigInt(m_count));
  r.rhs = Rational(a, m) * Rational(rhs_total, BigInt(p_count));
  r.pass = r.lhs == r.rhs;
  return r;
}

Rational brute_u_moment(int m, const Rational& a, int cap) {
  Rational total = 0;
  std::uint64_t count = enumerate_all(
      m,
      [&](const TableauView& t) {
        total += rational_pow(a, t.u_trace.empty() ? 0 : t.u_trace.back());
      },
      cap);
  return total / Rational(count);
}

}  // namespace btab
