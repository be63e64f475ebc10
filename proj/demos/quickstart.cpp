/**
 * Minimal tour: build a bandit, race it against a deadline, inspect the
 * trace, and compare strategies on identical reward streams.
 */

#include <cstdio>

#include "ebr/model.hpp"
#include "ebr/sim.hpp"

int main() {
  // Five Bernoulli arms; the racer must name an arm within 0.1 of the best
  // (here arm 0) with probability at least 0.95, using at most 4 batches.
  std::vector<ebr::ArmDistribution> arms;
  for (double p : {0.8, 0.72, 0.6, 0.45, 0.3}) arms.push_back(ebr::ArmDistribution::bernoulli(p));
  const ebr::BanditModel model(std::move(arms));

  ebr::RunParams params;
  params.strategy = ebr::StrategyKind::kEbr;
  params.epsilon = 0.1;
  params.delta = 0.05;
  params.deadline = 4;

  const auto trace = ebr::execute_run(model, params, /*seed=*/7);
  std::printf("recommended arm %d after %d of %d rounds, %llu pulls, %s\n",
              trace.recommendation.arm, trace.recommendation.round_stopped, params.deadline,
              static_cast<unsigned long long>(trace.total_cost),
              trace.success ? "correct" : "wrong");
  for (const auto& round : trace.rounds) {
    std::printf("  round %d: survivors %zu, cumulative cost %llu\n", round.round,
                round.survivors_after.size(),
                static_cast<unsigned long long>(round.cumulative_cost));
  }

  // Same seeds, so every strategy sees identical reward streams.
  std::printf("\n%-11s %10s %8s\n", "strategy", "pulls", "correct");
  for (ebr::StrategyKind kind : ebr::kAllStrategies) {
    params.strategy = kind;
    std::uint64_t cost = 0, correct = 0;
    for (ebr::Seed seed = 1; seed <= 20; ++seed) {
      const auto t = ebr::execute_run(model, params, seed);
      cost += t.total_cost;
      correct += t.success ? 1 : 0;
    }
    std::printf("%-11s %10llu %7llu%%\n", ebr::strategy_name(kind),
                static_cast<unsigned long long>(cost / 20),
                static_cast<unsigned long long>(correct * 5));
  }
  return 0;
}
