#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "btab/errors.hpp"

namespace btab {

enum class Step : std::uint8_t { south, west };

// Bits chosen on one west step, over the step's free cells.
// Position 1 (index 0) is the new diagonal cell; positions 2..U+1 are the
// then-unrestricted rows in top-to-bottom grid order. Never all zero.
using ColumnFill = std::vector<std::uint8_t>;

// Canonical tableau encoding: one entry per border step, with the fill
// recorded for each west step. Distinct histories are distinct tableaux.
struct GrowthHistory {
  std::vector<Step> steps;
  std::vector<ColumnFill> fills;  // one per west step, in step order

  std::size_t size() const { return steps.size(); }
  bool operator==(const GrowthHistory&) const = default;
};

struct GridRow {
  std::vector<std::uint8_t> cells;  // left-aligned
  bool is_diagonal = false;         // diagonal cell is the rightmost cell

  bool operator==(const GridRow&) const = default;
};

// Realized shifted diagram, rows top to bottom. Diagonal rows come first with
// lengths 1..k; original rows follow with weakly decreasing lengths <= k.
// Length-0 bottom rows are kept so trailing south steps stay recoverable.
struct Grid {
  std::vector<GridRow> rows;

  std::size_t column_count() const;
  bool operator==(const Grid&) const = default;
};

struct StatRecord {
  int rows = 0;
  int columns = 0;
  int unrestricted = 0;   // U_n
  int diagonal_ones = 0;  // D_n
  int ss_pairs = 0;       // adjacent step pairs (k-1,k), k = 2..n
  int ww_pairs = 0;
  int sw_pairs = 0;  // corners
  int ws_pairs = 0;  // inner corners
  std::vector<int> g_trace;  // per step; 0 marks south steps (G undefined)

  bool operator==(const StatRecord&) const = default;
};

struct Tableau {
  GrowthHistory history;
  Grid grid;                 // derived
  std::vector<int> u_trace;  // derived, U_1..U_n

  std::size_t size() const { return history.size(); }
  const std::vector<Step>& border() const { return history.steps; }
  bool operator==(const Tableau&) const = default;
};

struct Violation {
  std::size_t row = 0;  // 0-based grid coordinates
  std::size_t col = 0;
  int rule = 0;  // 1: column without a 1, 2: zero squeezed by ones, 3: diagonal-0 row
  std::string what;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// 1-based position of the topmost 1 in a fill (the diagonal cell is 1).
int fill_topmost_one(const ColumnFill& fill);

// Unrestricted-row count right after a west step with this fill, given that
// the count before the step was fill.size() - 1.
int fill_result_u(const ColumnFill& fill);

// Build the tableau step by step. South appends an empty bottom row; west
// prepends a leftmost column (forced 0 in restricted rows, fill bits in the
// diagonal cell and the unrestricted rows) plus a length-1 top diagonal row.
Tableau realize(const GrowthHistory& history);

// Structural restriction flags, one per grid row: true when the row contains
// no restricted 0 (a 0 under a 1 in its column, or a 0 in a diagonal cell).
std::vector<bool> row_unrestricted(const Grid& grid);

// Checks the three filling conditions; throws Errc::malformed_shape when the
// row lengths are not realizable by any border path.
ValidationReport validate(const Grid& grid);

// U_1..U_n recomputed structurally from grid prefixes; the independent route
// against Tableau::u_trace.
std::vector<int> unrestricted_trace(const Tableau& tableau);

StatRecord stats(const Tableau& tableau);

// Inverse of realize. Throws Errc::invalid_grid for grids that are not valid
// type-B tableaux (including non-shifted shapes).
GrowthHistory grid_to_history(const Grid& grid);

// Canonical line format: "<steps>;<fill_1>;<fill_2>;..." with S/W step chars
// and 0/1 fill bitstrings in west-step order.
std::string serialize(const GrowthHistory& history);
std::string serialize(const Tableau& tableau);
Tableau parse(std::string_view text);

}  // namespace btab
