#pragma once

/**
 * Bandit instances and their identification complexity.
 *
 * An instance is n arms with means in [0,1] and a sub-Gaussian scale sigma.
 * For a tolerance eps, the gap of a suboptimal arm is Delta_i = mu_best -
 * mu_i and the gap of the best arm is its lead over the runner-up. The
 * per-arm sample requirement is
 *
 *   N_i = eps^-2            if Delta_i < eps,
 *         (Delta_i+eps)^-2  otherwise,
 *
 * and H = sum_i N_i is the instance's identification complexity. With a
 * deadline of T rounds, gaps are binned on the geometric grid eps^(k/T):
 * gamma_i is the smallest k in [1, T-1] with Delta_i >= eps^(k/T), else T.
 * The bin vector alone bounds the complexity of the hardest instance that
 * shares it (partition_sup_complexity).
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ebr/rng.hpp"

namespace ebr {

enum class ArmKind { kBernoulli, kGaussian };

struct ArmDistribution {
  ArmKind kind = ArmKind::kBernoulli;
  double mean = 0.0;
  double stddev = 0.0;  // Gaussian only

  static ArmDistribution bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli mean outside [0,1]");
    return {ArmKind::kBernoulli, p, 0.0};
  }

  static ArmDistribution gaussian(double mean, double stddev) {
    if (!(mean >= 0.0 && mean <= 1.0)) throw std::invalid_argument("gaussian mean outside [0,1]");
    if (!(stddev > 0.0)) throw std::invalid_argument("gaussian stddev must be positive");
    return {ArmKind::kGaussian, mean, stddev};
  }

  /** Scale for which rewards are sub-Gaussian: 1/2 for Bernoulli, stddev for Gaussian. */
  double sub_gaussian_proxy() const noexcept {
    return kind == ArmKind::kBernoulli ? 0.5 : stddev;
  }

  /** Reward for draw j of substream `key`. */
  double draw(std::uint64_t key, std::uint64_t j) const noexcept {
    if (kind == ArmKind::kBernoulli)
      return (stream_word(key, j) >> 11) < bernoulli_threshold(mean) ? 1.0 : 0.0;
    return mean + stddev * standard_normal_icdf(u01_open(key, j));
  }
};

class BanditModel {
 public:
  BanditModel(std::vector<ArmDistribution> arms, double sigma)
      : arms_(std::move(arms)), sigma_(sigma) {
    validate();
  }

  explicit BanditModel(std::vector<ArmDistribution> arms)
      : arms_(std::move(arms)), sigma_(default_sigma(arms_)) {
    validate();
  }

  static double default_sigma(const std::vector<ArmDistribution>& arms) {
    double s = 0.0;
    for (const auto& a : arms) s = std::max(s, a.sub_gaussian_proxy());
    return s;
  }

  const std::vector<ArmDistribution>& arms() const noexcept { return arms_; }
  std::size_t size() const noexcept { return arms_.size(); }
  double sigma() const noexcept { return sigma_; }

  std::vector<double> true_means() const {
    std::vector<double> m(arms_.size());
    for (std::size_t i = 0; i < arms_.size(); ++i) m[i] = arms_[i].mean;
    return m;
  }

  /** Index of the largest mean; ties go to the lowest index. */
  std::size_t best_arm() const noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < arms_.size(); ++i)
      if (arms_[i].mean > arms_[best].mean) best = i;
    return best;
  }

 private:
  void validate() const {
    if (arms_.size() < 2) throw std::invalid_argument("model needs at least two arms");
    for (const auto& a : arms_)
      if (sigma_ < a.sub_gaussian_proxy())
        throw std::invalid_argument("sigma below an arm's sub-Gaussian proxy");
  }

  std::vector<ArmDistribution> arms_;
  double sigma_;
};

struct GapProfile {
  std::size_t best_arm = 0;
  std::vector<double> gaps;        // Delta_i
  std::vector<double> n_opt;       // per-arm sample requirement
  double complexity_h = 0.0;       // sum of n_opt
};

namespace detail {
inline void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon outside (0,1)");
}
}  // namespace detail

inline GapProfile compute_gaps(const BanditModel& model, double epsilon) {
  detail::check_epsilon(epsilon);
  const auto means = model.true_means();
  const std::size_t n = means.size();
  const std::size_t best = model.best_arm();
  double runner_up = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    if (i != best) runner_up = std::max(runner_up, means[i]);

  GapProfile out;
  out.best_arm = best;
  out.gaps.resize(n);
  out.n_opt.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = i == best ? means[best] - runner_up : means[best] - means[i];
    out.gaps[i] = gap;
    out.n_opt[i] = gap < epsilon ? 1.0 / (epsilon * epsilon)
                                 : 1.0 / ((gap + epsilon) * (gap + epsilon));
    out.complexity_h += out.n_opt[i];
  }
  return out;
}

/**
 * Deadline-T bin of each gap: smallest k in [1, T-1] with Delta >= eps^(k/T),
 * else T. T = 1 collapses to the single bin [0, 1].
 */
inline std::vector<int> partition_index(const GapProfile& profile, double epsilon, int T) {
  detail::check_epsilon(epsilon);
  if (T < 1) throw std::invalid_argument("deadline must be >= 1");
  std::vector<double> edges(static_cast<std::size_t>(T > 0 ? T - 1 : 0));
  for (int k = 1; k < T; ++k)
    edges[static_cast<std::size_t>(k - 1)] = std::pow(epsilon, static_cast<double>(k) / T);
  std::vector<int> gamma(profile.gaps.size());
  for (std::size_t i = 0; i < profile.gaps.size(); ++i) {
    const double gap = profile.gaps[i];
    if (!(gap >= 0.0 && gap <= 1.0)) throw std::invalid_argument("gap outside [0,1]");
    int g = T;
    for (int k = 1; k < T; ++k) {
      if (gap >= edges[static_cast<std::size_t>(k - 1)]) { g = k; break; }
    }
    gamma[i] = g;
  }
  return gamma;
}

/**
 * Complexity of the hardest instance in a bin vector's class: each arm
 * contributes with its gap at the bin's lower edge, eps^(gamma_i/T), or with
 * a sub-eps gap when gamma_i = T.
 */
inline double partition_sup_complexity(const std::vector<int>& gamma, double epsilon, int T) {
  detail::check_epsilon(epsilon);
  if (T < 1) throw std::invalid_argument("deadline must be >= 1");
  double total = 0.0;
  for (int g : gamma) {
    if (g < 1 || g > T) throw std::invalid_argument("bin index outside [1,T]");
    if (g == T) {
      total += 1.0 / (epsilon * epsilon);
    } else {
      const double inf_gap = std::pow(epsilon, static_cast<double>(g) / T);
      total += 1.0 / ((inf_gap + epsilon) * (inf_gap + epsilon));
    }
  }
  return total;
}

/** Iterated logarithm: ilog(0, x) = x, ilog(t, x) = max(ln(ilog(t-1, x)), 1). */
inline double ilog(int depth, double x) {
  if (depth < 0) throw std::invalid_argument("ilog depth must be >= 0");
  if (!(x >= 1.0)) throw std::invalid_argument("ilog argument must be >= 1");
  double v = x;
  for (int k = 0; k < depth; ++k) v = std::max(std::log(v), 1.0);
  return v;
}

namespace detail {
inline std::vector<ArmDistribution> arithmetic_bernoulli(double lo, double hi, std::size_t n) {
  std::vector<ArmDistribution> arms;
  arms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    arms.push_back(ArmDistribution::bernoulli(mean));
  }
  return arms;
}
}  // namespace detail

/** Benchmark preset: Bernoulli means evenly spread over 0.1 .. 0.9. */
inline BanditModel spread_model(std::size_t n = 100) {
  return BanditModel(detail::arithmetic_bernoulli(0.1, 0.9, n));
}

/** Benchmark preset: Bernoulli means crowded into 0.65 .. 0.9. */
inline BanditModel crowded_model(std::size_t n = 100) {
  return BanditModel(detail::arithmetic_bernoulli(0.65, 0.9, n));
}

}  // namespace ebr
