#pragma once

/**
 * Seeded execution of strategies against bandit models.
 *
 * Rewards come from counter-based substreams keyed on (run seed, arm), so a
 * run is a pure function of (model, parameters, seed): re-execution is
 * bit-identical, per-arm draws do not depend on how the strategy interleaves
 * pulls, and two strategies run with the same seed face identical reward
 * tables. Raw draws are reduced to sums immediately; only (sum, count)
 * reaches the strategy layer.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/model.hpp"
#include "ebr/stats.hpp"
#include "ebr/strategies.hpp"
#include "ebr/trace.hpp"

namespace ebr {

/** Sum of `count` rewards starting at draw index `start` of one substream. */
inline double sample_rewards(const ArmDistribution& arm, std::uint64_t key, std::uint64_t start,
                             std::uint64_t count) {
  if (arm.kind == ArmKind::kBernoulli) {
    // Integer accept test identical to u01(key, j) < mean, summed exactly.
    const std::uint64_t threshold = bernoulli_threshold(arm.mean);
    std::uint64_t ctr = key + (start + 1) * kGolden;
    std::uint64_t hits = 0;
    for (std::uint64_t j = 0; j < count; ++j) {
      hits += (mix64(ctr) >> 11) < threshold ? 1u : 0u;
      ctr += kGolden;
    }
    return static_cast<double>(hits);
  }
  KahanSum sum;
  for (std::uint64_t j = 0; j < count; ++j)
    sum.add(arm.mean + arm.stddev * standard_normal_icdf(u01_open(key, start + j)));
  return sum.value();
}

/**
 * Per-run reward source. Tracks how many draws each arm has consumed; the
 * j-th draw of an arm is fixed by (seed, arm, j) alone.
 */
class ModelSampler {
 public:
  ModelSampler(const BanditModel& model, Seed seed)
      : model_(&model), drawn_(model.size(), 0), keys_(model.size()) {
    for (std::size_t i = 0; i < model.size(); ++i) keys_[i] = stream_key(seed, i);
  }

  double operator()(int arm, std::uint64_t count) {
    auto& start = drawn_[static_cast<std::size_t>(arm)];
    const double sum = sample_rewards(model_->arms()[static_cast<std::size_t>(arm)],
                                      keys_[static_cast<std::size_t>(arm)], start, count);
    start += count;
    return sum;
  }

  std::uint64_t drawn(int arm) const { return drawn_[static_cast<std::size_t>(arm)]; }

 private:
  const BanditModel* model_;
  std::vector<std::uint64_t> drawn_;
  std::vector<std::uint64_t> keys_;
};

enum class StrategyKind { kEbr, kPassive, kSequential, kKdeltaEr, kAe };

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::kEbr, StrategyKind::kPassive, StrategyKind::kSequential,
    StrategyKind::kKdeltaEr, StrategyKind::kAe};

inline const char* strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kEbr: return "ebr";
    case StrategyKind::kPassive: return "passive";
    case StrategyKind::kSequential: return "sequential";
    case StrategyKind::kKdeltaEr: return "kdelta_er";
    case StrategyKind::kAe: return "ae";
  }
  return "?";
}

inline std::optional<StrategyKind> parse_strategy(std::string_view name) {
  for (StrategyKind k : kAllStrategies)
    if (name == strategy_name(k)) return k;
  return std::nullopt;
}

struct RunParams {
  StrategyKind strategy = StrategyKind::kEbr;
  double epsilon = 0.1;
  double delta = 0.05;
  int deadline = 1;
  double sigma = 0.0;          // <= 0 takes the model's sigma
  std::uint64_t pull_cap = 0;  // round-robin racer only; 0 takes its default
};

/**
 * One seeded run: builds the reward source, dispatches to the strategy, and
 * grades success. A recommendation succeeds when its true mean strictly
 * exceeds the best mean minus epsilon. Strategy aborts surface as traces
 * with `error` set and success false.
 */
inline RunTrace execute_run(const BanditModel& model, const RunParams& params, Seed seed,
                            const RoundObserver& observer = {}) {
  ModelSampler sampler(model, seed);
  const double sigma = params.sigma > 0.0 ? params.sigma : model.sigma();
  const std::size_t n = model.size();
  RunTrace trace;
  switch (params.strategy) {
    case StrategyKind::kEbr:
      trace = run_ebr(sampler, n, params.deadline, params.epsilon, params.delta, sigma, observer);
      break;
    case StrategyKind::kPassive:
      trace = run_passive(sampler, n, params.epsilon, params.delta, sigma);
      break;
    case StrategyKind::kSequential:
      trace = run_sequential(sampler, n, params.epsilon, params.delta, sigma, params.pull_cap);
      break;
    case StrategyKind::kKdeltaEr:
      trace = run_kdelta_er(sampler, n, params.deadline, params.epsilon, params.delta);
      break;
    case StrategyKind::kAe:
      trace = run_ae(sampler, n, params.deadline, params.epsilon, params.delta);
      break;
  }
  trace.seed = seed;
  if (trace.error.empty() && trace.recommendation.arm >= 0) {
    const auto means = model.true_means();
    const double best = means[model.best_arm()];
    trace.success = means[static_cast<std::size_t>(trace.recommendation.arm)] >
                    best - params.epsilon;
  }
  return trace;
}

}  // namespace ebr
