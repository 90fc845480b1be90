#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "btab/core.hpp"

namespace btab {

inline constexpr int kPasepDenseCap = 12;

// Occupied = 1, empty = 0, site 1 first.
using PasepState = std::vector<std::uint8_t>;

struct PasepParams {
  double alpha = 1;  // entry rate at site 1
  double beta = 1;   // exit rate at the last site
  double q = 0;      // left-hop rate; right hops at rate 1
};

// Doubled symmetric state of a border: sites n+1..2n carry steps 1..n
// (south = filled), sites 1..n mirror them, so the result is a palindrome.
PasepState border_to_state(const std::vector<Step>& path);

struct OccupancySummary {
  int filled = 0;
  int filled_pairs = 0;  // adjacent (1,1) pairs
  int empty_pairs = 0;   // adjacent (0,0) pairs
};

OccupancySummary occupancy_summary(const PasepState& state);

std::string state_to_glyphs(const PasepState& state);  // UTF-8 bullets/circles
std::string state_to_bits(const PasepState& state);

// States are indexed 0..2^m-1 with site 1 as the most significant bit.
PasepState index_to_state(std::uint64_t index, int m);

// Dense generator over the 2^m states; rows sum to zero.
Eigen::MatrixXd build_generator(int m, const PasepParams& params);

// Stationary distribution: pi Q = 0, sum pi = 1, residual below 1e-10.
// Direct linear solve with a power-iteration fallback on the uniformized chain.
Eigen::VectorXd stationary(int m, const PasepParams& params);

struct SimResult {
  std::vector<double> occupancy;     // time-averaged per site
  std::vector<double> occupancy_se;  // batch-means standard error
  std::vector<std::uint64_t> visit_counts;  // per state
  double total_time = 0;
  std::uint64_t num_jumps = 0;
};

// Exact-jump continuous-time simulation from the all-empty state.
SimResult simulate(int m, const PasepParams& params, double horizon, std::uint64_t seed);

}  // namespace btab
