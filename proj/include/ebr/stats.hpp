#pragma once

/**
 * Per-arm running statistics and confidence intervals.
 *
 * Fixed-schedule interval after tau pulls, union-bounded over n arms and T
 * rounds:
 *
 *   D(tau, delta) = sigma * sqrt((4 + 2 ln 2) * ln(nT/delta) / tau)
 *
 * Anytime interval, union-bounded over every pull count (1/(tau(tau+1))
 * telescoping), for strategies with no round structure:
 *
 *   D_any(tau, delta) = sigma * sqrt(2 * ln(m * tau * (tau+1) / delta) / tau)
 *
 * Reward sums use compensated summation so means are reproducible across
 * optimization levels even for 1e8-draw runs.
 */

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ebr {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  double value() const noexcept { return sum; }
};

struct ArmStats {
  std::uint64_t pulls = 0;
  KahanSum reward_sum;
  std::vector<std::uint64_t> per_round;  // pulls granted per batch, in order

  void add_batch(double batch_sum, std::uint64_t count) {
    reward_sum.add(batch_sum);
    pulls += count;
    per_round.push_back(count);
  }

  double mean() const {
    if (pulls == 0) throw std::logic_error("mean of an unpulled arm");
    return reward_sum.value() / static_cast<double>(pulls);
  }
};

struct ConfidenceState {
  double lower = 0.0;
  double upper = 0.0;
  double deviation = 0.0;
};

/** Fixed-schedule half-width D(tau, delta); rejects tau = 0. */
inline double deviation(std::uint64_t tau, std::size_t n, int T, double delta, double sigma) {
  if (tau == 0) throw std::invalid_argument("deviation needs at least one pull");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta outside (0,1)");
  if (n < 1 || T < 1) throw std::invalid_argument("need n >= 1 and T >= 1");
  constexpr double k4_2ln2 = 4.0 + 2.0 * 0.6931471805599453094;
  const double horizon = static_cast<double>(n) * static_cast<double>(T);
  return sigma * std::sqrt(k4_2ln2 * std::log(horizon / delta) / static_cast<double>(tau));
}

/** Empirical mean bracketed by +-deviation; no clamping to [0,1]. */
inline ConfidenceState bounds(const ArmStats& stats, std::size_t n, int T, double delta,
                              double sigma) {
  const double d = deviation(stats.pulls, n, T, delta, sigma);
  const double m = stats.mean();
  return {m - d, m + d, d};
}

/** Anytime half-width D_any(tau, delta) over m arms; valid at every pull count. */
inline double anytime_deviation(std::uint64_t tau, std::size_t arm_count, double delta,
                                double sigma) {
  if (tau == 0) throw std::invalid_argument("anytime_deviation needs at least one pull");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta outside (0,1)");
  if (arm_count < 1) throw std::invalid_argument("need arm_count >= 1");
  const double t = static_cast<double>(tau);
  return sigma *
         std::sqrt(2.0 * std::log(static_cast<double>(arm_count) * t * (t + 1.0) / delta) / t);
}

}  // namespace ebr
