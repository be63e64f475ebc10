#pragma once

/**
 * Run records shared by the strategies and the simulator.
 *
 * A trace captures one identification run: per round, the pull plan, the
 * arms eliminated, the surviving set, and the cumulative pull count. The
 * strategy that never eliminates mid-stream (the round-robin racer) emits a
 * record whenever its survivor set changes or the run ends, so traces stay
 * proportional to the number of events rather than the number of pulls.
 */

#include <cstdint>
#include <string>
#include <vector>

namespace ebr {

using Seed = std::uint64_t;

struct ArmPull {
  int arm = 0;
  std::uint64_t count = 0;

  friend bool operator==(const ArmPull& a, const ArmPull& b) {
    return a.arm == b.arm && a.count == b.count;
  }
};

/** Pull counts for one round, sorted by arm; absent arms are pulled 0 times. */
using RoundPlan = std::vector<ArmPull>;

/** Surviving arm indices, ascending, never empty while a run is live. */
using SurvivorSet = std::vector<int>;

struct Recommendation {
  int arm = -1;          // -1 only on aborted runs
  int round_stopped = 0;

  friend bool operator==(const Recommendation& a, const Recommendation& b) {
    return a.arm == b.arm && a.round_stopped == b.round_stopped;
  }
};

struct RoundRecord {
  int round = 0;
  RoundPlan plan;
  std::vector<int> eliminated;
  SurvivorSet survivors_after;
  std::uint64_t cumulative_cost = 0;

  friend bool operator==(const RoundRecord& a, const RoundRecord& b) {
    return a.round == b.round && a.plan == b.plan && a.eliminated == b.eliminated &&
           a.survivors_after == b.survivors_after && a.cumulative_cost == b.cumulative_cost;
  }
};

struct RunTrace {
  std::vector<RoundRecord> rounds;
  Recommendation recommendation;
  std::uint64_t total_cost = 0;
  bool success = false;
  std::string strategy;
  Seed seed = 0;
  bool capped = false;  // round-robin racer stopped by its pull budget
  std::string error;    // nonempty when a run aborted; diagnostics

  friend bool operator==(const RunTrace& a, const RunTrace& b) {
    return a.rounds == b.rounds && a.recommendation == b.recommendation &&
           a.total_cost == b.total_cost && a.success == b.success && a.strategy == b.strategy &&
           a.seed == b.seed && a.capped == b.capped && a.error == b.error;
  }
};

}  // namespace ebr
