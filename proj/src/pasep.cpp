#include "btab/pasep.hpp"

#include <cmath>

#include "btab/sample.hpp"

namespace btab {

namespace {

void check_params(int m, const PasepParams& p, int cap) {
  if (m < 1) fail(Errc::domain_error, "chain needs at least one site");
  if (m > cap)
    fail(Errc::resource_cap,
         "dense chain capped at " + std::to_string(cap) + " sites, got " + std::to_string(m));
  if (p.alpha < 0 || p.beta < 0 || p.q < 0) fail(Errc::domain_error, "rates must be >= 0");
}

// Enumerates the outgoing transitions of state s.
template <class F>
void for_transitions(std::uint64_t s, int m, const PasepParams& p, F&& f) {
  std::uint64_t top = std::uint64_t{1} << (m - 1);  // site 1
  if (!(s & top)) f(s | top, p.alpha);
  if (s & 1) f(s & ~std::uint64_t{1}, p.beta);
  for (int i = 0; i < m - 1; ++i) {
    std::uint64_t left = std::uint64_t{1} << (m - 1 - i);
    std::uint64_t right = left >> 1;
    bool a = s & left, b = s & right;
    if (a != b) f(s ^ left ^ right, a ? 1.0 : p.q);
  }
}

}  // namespace

PasepState border_to_state(const std::vector<Step>& path) {
  std::size_t n = path.size();
  PasepState state(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    std::uint8_t v = path[k] == Step::south ? 1 : 0;
    state[n + k] = v;
    state[n - 1 - k] = v;
  }
  return state;
}

OccupancySummary occupancy_summary(const PasepState& state) {
  OccupancySummary s;
  for (std::size_t i = 0; i < state.size(); ++i) {
    s.filled += state[i];
    if (i > 0) {
      s.filled_pairs += state[i - 1] && state[i];
      s.empty_pairs += !state[i - 1] && !state[i];
    }
  }
  return s;
}

std::string state_to_glyphs(const PasepState& state) {
  std::string out;
  for (std::uint8_t v : state) out += v ? "•" : "∘";
  return out;
}

std::string state_to_bits(const PasepState& state) {
  std::string out;
  for (std::uint8_t v : state) out.push_back(v ? '1' : '0');
  return out;
}

PasepState index_to_state(std::uint64_t index, int m) {
  PasepState state(m);
  for (int i = 0; i < m; ++i) state[i] = (index >> (m - 1 - i)) & 1;
  return state;
}

Eigen::MatrixXd build_generator(int m, const PasepParams& params) {
  check_params(m, params, kPasepDenseCap);
  std::uint64_t size = std::uint64_t{1} << m;
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
  for (std::uint64_t s = 0; s < size; ++s) {
    double out = 0;
    for_transitions(s, m, params, [&](std::uint64_t t, double rate) {
      if (rate == 0) return;
      gen(s, t) += rate;
      out += rate;
    });
    gen(s, s) = -out;
  }
  return gen;
}

Eigen::VectorXd stationary(int m, const PasepParams& params) {
  check_params(m, params, kPasepDenseCap);
  if (params.alpha <= 0 || params.beta <= 0)
    fail(Errc::not_ergodic, "stationary solve needs alpha > 0 and beta > 0");

  Eigen::MatrixXd gen = build_generator(m, params);
  Eigen::Index size = gen.rows();
  Eigen::MatrixXd a = gen.transpose();
  a.row(size - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(size);
  b(size - 1) = 1;
  Eigen::VectorXd pi = a.partialPivLu().solve(b);

  auto residual = [&](const Eigen::VectorXd& v) {
    return (v.transpose() * gen).cwiseAbs().maxCoeff();
  };
  if (!pi.allFinite() || pi.minCoeff() < -1e-9 || residual(pi) >= 1e-10) {
    // uniformized power iteration fallback
    double lambda = gen.diagonal().cwiseAbs().maxCoeff() * 1.05;
    Eigen::MatrixXd p =
        Eigen::MatrixXd::Identity(size, size) + gen / lambda;
    pi = Eigen::VectorXd::Constant(size, 1.0 / static_cast<double>(size));
    for (int iter = 0; iter < 2'000'000; ++iter) {
      pi = (pi.transpose() * p).transpose();
      pi /= pi.sum();
      if (iter % 64 == 0 && residual(pi) < 1e-12) break;
    }
    if (residual(pi) >= 1e-10) fail(Errc::solver_failure, "stationary residual did not converge");
  }
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  return pi;
}

SimResult simulate(int m, const PasepParams& params, double horizon, std::uint64_t seed) {
  check_params(m, params, kPasepDenseCap);
  if (horizon <= 0) fail(Errc::domain_error, "horizon must be > 0");

  constexpr int kBatches = 64;
  Rng rng(seed);
  std::uint64_t state = 0;
  double now = 0;
  SimResult result;
  result.occupancy.assign(m, 0);
  result.occupancy_se.assign(m, 0);
  result.visit_counts.assign(std::uint64_t{1} << m, 0);

  std::vector<std::vector<double>> batch_occ(kBatches, std::vector<double>(m, 0));
  double batch_len = horizon / kBatches;

  std::vector<std::pair<std::uint64_t, double>> moves;
  while (now < horizon) {
    ++result.visit_counts[state];
    moves.clear();
    double total_rate = 0;
    for_transitions(state, m, params, [&](std::uint64_t t, double rate) {
      if (rate == 0) return;
      moves.emplace_back(t, rate);
      total_rate += rate;
    });
    double dwell = total_rate > 0 ? rng.exponential(total_rate) : horizon - now;
    double leave = std::min(now + dwell, horizon);
    // spread the dwell time over the batches it covers
    for (int b = static_cast<int>(now / batch_len); b < kBatches; ++b) {
      double lo = std::max(now, b * batch_len);
      double hi = std::min(leave, (b + 1) * batch_len);
      if (hi <= lo) break;
      for (int i = 0; i < m; ++i)
        if ((state >> (m - 1 - i)) & 1) batch_occ[b][i] += hi - lo;
    }
    now = leave;
    if (now >= horizon || total_rate == 0) break;
    double pick = rng.uniform01() * total_rate;
    for (const auto& [t, rate] : moves) {
      pick -= rate;
      if (pick <= 0) {
        state = t;
        break;
      }
    }
    ++result.num_jumps;
  }

  result.total_time = horizon;
  for (int i = 0; i < m; ++i) {
    double mean = 0;
    for (int b = 0; b < kBatches; ++b) mean += batch_occ[b][i] / batch_len;
    mean /= kBatches;
    double var = 0;
    for (int b = 0; b < kBatches; ++b) {
      double d = batch_occ[b][i] / batch_len - mean;
      var += d * d;
    }
    var /= kBatches - 1;
    result.occupancy[i] = mean;
    result.occupancy_se[i] = std::sqrt(var / kBatches);
  }
  return result;
}

}  // namespace btab
