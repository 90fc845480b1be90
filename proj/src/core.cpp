#include "btab/core.hpp"

#include <algorithm>
#include <cstddef>

namespace btab {

namespace {

// Shape preconditions shared by validate and grid_to_history. Returns the
// number of columns (= diagonal rows) or throws malformed_shape.
std::size_t check_shape(const Grid& grid) {
  std::size_t k = 0;
  while (k < grid.rows.size() && grid.rows[k].is_diagonal) ++k;
  for (std::size_t i = k; i < grid.rows.size(); ++i)
    if (grid.rows[i].is_diagonal)
      fail(Errc::malformed_shape, "diagonal rows must form a prefix of the grid");
  for (std::size_t i = 0; i < k; ++i)
    if (grid.rows[i].cells.size() != i + 1)
      fail(Errc::malformed_shape, "diagonal row " + std::to_string(i + 1) +
                                      " must have length " + std::to_string(i + 1));
  std::size_t prev = k;
  for (std::size_t i = k; i < grid.rows.size(); ++i) {
    std::size_t len = grid.rows[i].cells.size();
    if (len > prev)
      fail(Errc::malformed_shape, "original row lengths must weakly decrease");
    prev = len;
  }
  return k;
}

// Row indices of column c (1-based), top to bottom.
template <class F>
void for_column(const Grid& grid, std::size_t k, std::size_t c, F&& f) {
  for (std::size_t i = c - 1; i < k; ++i) f(i);
  for (std::size_t i = k; i < grid.rows.size(); ++i) {
    if (grid.rows[i].cells.size() < c) break;
    f(i);
  }
}

}  // namespace

std::size_t Grid::column_count() const {
  std::size_t k = 0;
  while (k < rows.size() && rows[k].is_diagonal) ++k;
  return k;
}

int fill_topmost_one(const ColumnFill& fill) {
  for (std::size_t i = 0; i < fill.size(); ++i)
    if (fill[i]) return static_cast<int>(i) + 1;
  fail(Errc::all_zero_fill, "column fill has no 1");
}

int fill_result_u(const ColumnFill& fill) {
  int g = fill_topmost_one(fill);
  int below = 0;
  for (std::size_t i = g; i < fill.size(); ++i) below += fill[i];
  return (g >= 2 ? g - 2 : 0) + 1 + below;
}

Tableau realize(const GrowthHistory& history) {
  std::size_t west = 0;
  for (Step s : history.steps)
    if (s == Step::west) ++west;
  if (history.fills.size() != west)
    fail(Errc::fill_length_mismatch, "history has " + std::to_string(west) +
                                         " west steps but " +
                                         std::to_string(history.fills.size()) + " fills");

  Tableau t;
  t.history = history;
  std::vector<char> unres;  // per grid row, top to bottom
  int u = 0;
  std::size_t fi = 0;
  for (std::size_t k = 0; k < history.steps.size(); ++k) {
    if (history.steps[k] == Step::south) {
      t.grid.rows.push_back(GridRow{});
      unres.push_back(1);
      ++u;
    } else {
      const ColumnFill& fill = history.fills[fi++];
      if (static_cast<int>(fill.size()) != u + 1)
        fail(Errc::fill_length_mismatch,
             "step " + std::to_string(k + 1) + ": fill length " +
                 std::to_string(fill.size()) + ", expected " + std::to_string(u + 1));
      int g = fill_topmost_one(fill);  // throws on all-zero fills
      std::size_t rank = 0;
      for (std::size_t i = 0; i < t.grid.rows.size(); ++i) {
        std::uint8_t v = 0;
        if (unres[i]) {
          v = fill[rank + 1];
          // rows strictly above the topmost 1 keep an unforced 0 and stay
          // unrestricted; at or below it only a 1 keeps the row unrestricted
          unres[i] = static_cast<int>(rank) + 2 < g || v == 1;
          ++rank;
        }
        auto& cells = t.grid.rows[i].cells;
        cells.insert(cells.begin(), v);
      }
      t.grid.rows.insert(t.grid.rows.begin(), GridRow{{fill[0]}, true});
      unres.insert(unres.begin(), fill[0] == 1);
      u = fill_result_u(fill);
    }
    t.u_trace.push_back(u);
  }
  return t;
}

std::vector<bool> row_unrestricted(const Grid& grid) {
  std::size_t k = grid.column_count();
  std::vector<bool> restricted(grid.rows.size(), false);
  for (std::size_t i = 0; i < k; ++i)
    if (grid.rows[i].cells.back() == 0) restricted[i] = true;  // diagonal 0
  for (std::size_t c = 1; c <= k; ++c) {
    bool seen_one = false;
    for_column(grid, k, c, [&](std::size_t i) {
      std::uint8_t v = grid.rows[i].cells[c - 1];
      if (v == 0 && seen_one) restricted[i] = true;
      if (v == 1) seen_one = true;
    });
  }
  std::vector<bool> out(grid.rows.size());
  for (std::size_t i = 0; i < grid.rows.size(); ++i) out[i] = !restricted[i];
  return out;
}

ValidationReport validate(const Grid& grid) {
  std::size_t k = check_shape(grid);
  ValidationReport report;
  auto add = [&](std::size_t r, std::size_t c, int rule, std::string msg) {
    report.violations.push_back({r, c, rule, std::move(msg)});
  };

  for (std::size_t c = 1; c <= k; ++c) {
    bool any_one = false;
    for_column(grid, k, c, [&](std::size_t i) { any_one |= grid.rows[i].cells[c - 1] != 0; });
    if (!any_one)
      add(c - 1, c - 1, 1, "column " + std::to_string(c) + " contains no 1");
  }

  // 1 above in the same column, per cell
  std::vector<std::vector<bool>> one_above(grid.rows.size());
  for (std::size_t i = 0; i < grid.rows.size(); ++i)
    one_above[i].assign(grid.rows[i].cells.size(), false);
  for (std::size_t c = 1; c <= k; ++c) {
    bool seen_one = false;
    for_column(grid, k, c, [&](std::size_t i) {
      one_above[i][c - 1] = seen_one;
      if (grid.rows[i].cells[c - 1]) seen_one = true;
    });
  }
  for (std::size_t i = 0; i < grid.rows.size(); ++i) {
    const auto& cells = grid.rows[i].cells;
    bool one_left = false;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c] == 0 && one_left && one_above[i][c])
        add(i, c, 2,
            "0 at row " + std::to_string(i + 1) + ", column " + std::to_string(c + 1) +
                " has a 1 above and a 1 to its left");
      if (cells[c]) one_left = true;
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    const auto& cells = grid.rows[i].cells;
    if (cells.back() != 0) continue;
    for (std::size_t c = 0; c + 1 < cells.size(); ++c)
      if (cells[c])
        add(i, c, 3,
            "row " + std::to_string(i + 1) + " has a 0 diagonal cell but a 1 at column " +
                std::to_string(c + 1));
  }
  return report;
}

std::vector<int> unrestricted_trace(const Tableau& tableau) {
  std::vector<int> trace;
  GrowthHistory prefix;
  std::size_t fi = 0;
  for (std::size_t k = 0; k < tableau.size(); ++k) {
    prefix.steps.push_back(tableau.history.steps[k]);
    if (tableau.history.steps[k] == Step::west)
      prefix.fills.push_back(tableau.history.fills[fi++]);
    auto flags = row_unrestricted(realize(prefix).grid);
    trace.push_back(static_cast<int>(std::count(flags.begin(), flags.end(), true)));
  }
  return trace;
}

StatRecord stats(const Tableau& tableau) {
  const auto& steps = tableau.history.steps;
  StatRecord r;
  r.g_trace.assign(steps.size(), 0);
  std::size_t fi = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k] == Step::south) {
      ++r.rows;
    } else {
      const ColumnFill& fill = tableau.history.fills[fi++];
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
  r.unrestricted = tableau.u_trace.empty() ? 0 : tableau.u_trace.back();
  return r;
}

GrowthHistory grid_to_history(const Grid& grid) {
  try {
    ValidationReport report = validate(grid);
    if (!report.ok())
      fail(Errc::invalid_grid, "grid is not a valid type-B tableau: " +
                                   report.violations.front().what);
  } catch (const Error& e) {
    if (e.code() == Errc::malformed_shape)
      fail(Errc::invalid_grid, std::string("grid shape is not a shifted diagram: ") + e.what());
    throw;
  }

  Grid work = grid;
  std::vector<Step> steps;
  std::vector<ColumnFill> fills;
  while (!work.rows.empty()) {
    GridRow& last = work.rows.back();
    if (!last.is_diagonal && last.cells.empty()) {
      steps.push_back(Step::south);
      work.rows.pop_back();
      continue;
    }
    steps.push_back(Step::west);
    ColumnFill fill{work.rows.front().cells[0]};
    std::vector<std::uint8_t> removed;
    removed.reserve(work.rows.size() - 1);
    for (std::size_t i = 1; i < work.rows.size(); ++i) {
      auto& cells = work.rows[i].cells;
      removed.push_back(cells.front());
      cells.erase(cells.begin());
    }
    work.rows.erase(work.rows.begin());
    auto unres = row_unrestricted(work);
    for (std::size_t i = 0; i < work.rows.size(); ++i) {
      if (unres[i])
        fill.push_back(removed[i]);
      else if (removed[i] != 0)
        fail(Errc::invalid_grid, "1 placed in a restricted row");
    }
    fills.push_back(std::move(fill));
  }
  std::reverse(steps.begin(), steps.end());
  std::reverse(fills.begin(), fills.end());
  return GrowthHistory{std::move(steps), std::move(fills)};
}

std::string serialize(const GrowthHistory& history) {
  std::string out;
  out.reserve(history.size() + 8 * history.fills.size());
  for (Step s : history.steps) out.push_back(s == Step::south ? 'S' : 'W');
  for (const ColumnFill& fill : history.fills) {
    out.push_back(';');
    for (std::uint8_t b : fill) out.push_back(b ? '1' : '0');
  }
  return out;
}

std::string serialize(const Tableau& tableau) { return serialize(tableau.history); }

Tableau parse(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  GrowthHistory h;
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] != ';') {
    char c = text[pos];
    if (c == 'S')
      h.steps.push_back(Step::south);
    else if (c == 'W')
      h.steps.push_back(Step::west);
    else
      fail(Errc::parse_error, "position " + std::to_string(pos) + ": expected 'S' or 'W', got '" +
                                  std::string(1, c) + "'");
    ++pos;
  }
  while (pos < text.size()) {
    ++pos;  // skip ';'
    ColumnFill fill;
    while (pos < text.size() && text[pos] != ';') {
      char c = text[pos];
      if (c != '0' && c != '1')
        fail(Errc::parse_error,
             "position " + std::to_string(pos) + ": expected fill bit, got '" +
                 std::string(1, c) + "'");
      fill.push_back(c == '1');
      ++pos;
    }
    if (fill.empty())
      fail(Errc::parse_error, "position " + std::to_string(pos) + ": empty fill");
    h.fills.push_back(std::move(fill));
  }
  std::size_t west = 0;
  for (Step s : h.steps)
    if (s == Step::west) ++west;
  if (h.fills.size() != west)
    fail(Errc::parse_error, "record has " + std::to_string(west) + " west steps but " +
                                std::to_string(h.fills.size()) + " fills");
  return realize(h);
}

}  // namespace btab
