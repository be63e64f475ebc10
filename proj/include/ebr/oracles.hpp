#pragma once

/**
 * Mechanical checks for the guarantees the toolkit is built around.
 *
 * Scheduling gap: a quota schedule q_1 <= ... <= q_T with a base workload
 * R (empty selection) can realize exactly the subset sums of q plus R. Over
 * budgets x in [R, N), the overshoot of the cheapest achievable value above
 * x has a floor: when (N/R)^(1/T) > 4, some x forces an overshoot of at
 * least (1/8) * (N/R)^(1/T). verify_scheduling_lemma samples random valid
 * schedules and asserts the floor.
 *
 * Cost bounds, checked on completed racing traces against the true model:
 *   partition         cost <= 80 sigma^2 ln(nT/delta) sum_i eps^(-2 gamma_i / T)
 *   complexity_ratio  cost <= 640 sigma^2 eps^(-2/T) ln(nT/delta) H
 *   constant_factor   cost <= 640 e sigma^2 H ln(nT/delta), when T >= 2 ln(1/eps)
 *
 * Coverage: across seeded runs, the fraction where any survivor's interval
 * ever misses its true mean must stay within delta.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebr/model.hpp"
#include "ebr/rng.hpp"
#include "ebr/sim.hpp"
#include "ebr/stats.hpp"
#include "ebr/strategies.hpp"
#include "ebr/trace.hpp"

namespace ebr {

struct ScheduleInstance {
  std::vector<double> quotas;  // nondecreasing, quotas[0] >= base
  double base = 1.0;           // value of the empty selection, >= 1
  double target = 1.0;         // budget interval endpoint, <= sum(quotas)

  void validate() const {
    if (quotas.empty()) throw std::invalid_argument("schedule needs at least one quota");
    if (quotas.size() > 24) throw std::invalid_argument("schedule too long to enumerate");
    if (!(base >= 1.0)) throw std::invalid_argument("base must be >= 1");
    if (!(quotas.front() >= base)) throw std::invalid_argument("quotas must start at or above base");
    double sum = 0.0;
    for (std::size_t k = 0; k < quotas.size(); ++k) {
      if (k > 0 && quotas[k] < quotas[k - 1])
        throw std::invalid_argument("quotas must be nondecreasing");
      sum += quotas[k];
    }
    if (!(sum >= target)) throw std::invalid_argument("quotas cannot reach the target");
    if (!(target >= base)) throw std::invalid_argument("target below base");
  }
};

namespace detail {

/** Sorted, deduplicated achievable values: base plus all nonempty subset sums. */
inline std::vector<double> achievable_values(const ScheduleInstance& inst) {
  const std::size_t t = inst.quotas.size();
  const std::size_t total = std::size_t{1} << t;
  std::vector<double> sums(total, 0.0);
  for (std::size_t mask = 1; mask < total; ++mask) {
    const int low = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + inst.quotas[static_cast<std::size_t>(low)];
  }
  sums[0] = inst.base;
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

}  // namespace detail

/**
 * Worst multiplicative overshoot over budgets in [base, target): the largest
 * ratio between consecutive achievable values anchored in that interval, or
 * target/base when the interval holds no achievable point.
 */
inline double scheduling_gap(const ScheduleInstance& inst) {
  inst.validate();
  const auto values = detail::achievable_values(inst);
  double worst = 0.0;
  bool anchored = false;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    if (values[k] >= inst.target) break;
    if (values[k] < inst.base) continue;
    anchored = true;
    worst = std::max(worst, values[k + 1] / values[k]);
  }
  return anchored ? worst : inst.target / inst.base;
}

/**
 * Independent estimate of the same supremum over a geometric grid of
 * budgets. Lower-bounds scheduling_gap and matches it to within one grid
 * step in ratio space, (target/base)^(1/grid_points).
 */
inline double scheduling_gap_on_grid(const ScheduleInstance& inst, std::size_t grid_points) {
  inst.validate();
  if (grid_points < 1) throw std::invalid_argument("grid needs at least one point");
  const auto values = detail::achievable_values(inst);
  if (!(inst.target > inst.base)) return inst.target / inst.base;
  const double log_span = std::log(inst.target / inst.base);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double x =
        inst.base * std::exp(log_span * static_cast<double>(k) / static_cast<double>(grid_points));
    if (x >= inst.target) break;
    const auto it = std::upper_bound(values.begin(), values.end(), x);
    if (it == values.end()) break;
    worst = std::max(worst, *it / x);
  }
  return worst;
}

struct SchedulingReport {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();  // min gap/floor seen
};

namespace detail {

/**
 * Random valid schedule with the given deadline range: target/base ratio
 * log-uniform above the 4^T precondition floor, base log-uniform in [1, 10],
 * quotas log-uniform in [base, target] then rescaled to reach the target.
 */
inline ScheduleInstance sample_schedule(std::uint64_t key, int t_lo, int t_hi) {
  std::uint64_t ctr = 0;
  auto uni = [&] { return u01_open(key, ctr++); };

  const int t = t_lo + static_cast<int>(uni() * (t_hi - t_lo + 1));
  const double floor_ratio = std::pow(4.0, t) * 1.01;
  const double hi_ratio = std::max(1.0e6, floor_ratio * 100.0);
  const double ratio =
      std::exp(std::log(floor_ratio) + uni() * (std::log(hi_ratio) - std::log(floor_ratio)));
  const double base = std::exp(uni() * std::log(10.0));

  ScheduleInstance inst;
  inst.base = base;
  inst.target = base * ratio;
  inst.quotas.resize(static_cast<std::size_t>(t));
  double sum = 0.0;
  for (auto& q : inst.quotas) {
    q = std::exp(std::log(base) + uni() * std::log(ratio));
    sum += q;
  }
  std::sort(inst.quotas.begin(), inst.quotas.end());
  if (sum < inst.target) {
    // Overshoot a hair so the rescaled quotas still sum past the target
    // after per-element rounding.
    const double scale = inst.target / sum * (1.0 + 1e-9);
    for (auto& q : inst.quotas) q *= scale;
  }
  return inst;
}

}  // namespace detail

/** The guaranteed overshoot floor for a schedule's geometry. */
inline double scheduling_floor(const ScheduleInstance& inst) {
  return std::pow(inst.target / inst.base, 1.0 / static_cast<double>(inst.quotas.size())) / 8.0;
}

/**
 * Samples random valid schedules with deadline in [t_lo, t_hi] and
 * target/base ratio log-uniform above the 4^T precondition floor, then
 * checks gap >= (1/8) * (target/base)^(1/T) on each.
 */
inline SchedulingReport verify_scheduling_lemma(std::uint64_t trials, int t_lo, int t_hi,
                                                Seed seed = 12345) {
  if (t_lo < 2 || t_hi < t_lo || t_hi > 24) throw std::invalid_argument("bad deadline range");
  SchedulingReport report;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const auto inst = detail::sample_schedule(stream_key(seed, trial), t_lo, t_hi);
    const double gap = scheduling_gap(inst);
    const double floor = scheduling_floor(inst);
    report.trials += 1;
    report.worst_slack = std::min(report.worst_slack, gap / floor);
    if (gap < floor * (1.0 - 1e-12)) report.violations += 1;
  }
  return report;
}

struct BoundReport {
  std::string bound;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;

  double rate() const {
    return checked == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(checked);
  }
};

/** High-probability ceilings on total racing cost for one configuration. */
struct CostBoundValues {
  double partition_rhs = 0.0;
  double ratio_rhs = 0.0;
  double constant_rhs = 0.0;
  // The constant-factor ceiling only applies once the deadline passes
  // 2 ln(1/epsilon); below that it is reported but not checked.
  bool constant_regime = false;

  bool any_exceeded(std::uint64_t cost) const {
    const double c = static_cast<double>(cost);
    if (c > partition_rhs || c > ratio_rhs) return true;
    return constant_regime && c > constant_rhs;
  }
};

inline CostBoundValues cost_bound_values(const BanditModel& model, double epsilon, double delta,
                                         int T, double sigma) {
  const auto profile = compute_gaps(model, epsilon);
  const auto gamma = partition_index(profile, epsilon, T);
  const double horizon = static_cast<double>(model.size()) * static_cast<double>(T);
  const double log_term = std::log(horizon / delta);

  double bin_sum = 0.0;
  for (int g : gamma) bin_sum += std::pow(epsilon, -2.0 * g / T);
  CostBoundValues out;
  out.partition_rhs = 80.0 * sigma * sigma * log_term * bin_sum;
  out.ratio_rhs =
      640.0 * sigma * sigma * std::pow(epsilon, -2.0 / T) * log_term * profile.complexity_h;
  out.constant_regime = T >= 2.0 * std::log(1.0 / epsilon);
  out.constant_rhs = 640.0 * std::exp(1.0) * sigma * sigma * profile.complexity_h * log_term;
  return out;
}

/**
 * Checks completed racing traces against the cost bounds implied by the true
 * model. Only traces from the batch racer qualify; anything else throws.
 */
inline std::vector<BoundReport> check_bounds(const std::vector<RunTrace>& traces,
                                             const BanditModel& model, double epsilon,
                                             double delta, int T, double sigma) {
  const auto values = cost_bound_values(model, epsilon, delta, T, sigma);

  BoundReport partition{"partition", 0, 0};
  BoundReport ratio{"complexity_ratio", 0, 0};
  BoundReport constant{"constant_factor", 0, 0};
  for (const auto& trace : traces) {
    if (trace.strategy != "ebr")
      throw std::invalid_argument("cost bounds apply to batch racing traces only");
    if (!trace.error.empty()) throw std::invalid_argument("cannot check an aborted trace");
    const double cost = static_cast<double>(trace.total_cost);
    partition.checked += 1;
    partition.violations += cost > values.partition_rhs ? 1 : 0;
    ratio.checked += 1;
    ratio.violations += cost > values.ratio_rhs ? 1 : 0;
    if (values.constant_regime) {
      constant.checked += 1;
      constant.violations += cost > values.constant_rhs ? 1 : 0;
    }
  }
  std::vector<BoundReport> out{partition, ratio};
  if (values.constant_regime) out.push_back(constant);
  return out;
}

/**
 * Fraction of seeded racing runs in which any survivor's interval ever
 * missed its true mean; the guarantee is a fraction within delta.
 */
inline BoundReport check_coverage(const BanditModel& model, double epsilon, double delta, int T,
                                  std::uint64_t runs, Seed base_seed) {
  const auto means = model.true_means();
  const double sigma = model.sigma();
  BoundReport report{"coverage", 0, 0};
  for (std::uint64_t r = 0; r < runs; ++r) {
    bool missed = false;
    RoundObserver observer = [&](int, const SurvivorSet& survivors,
                                 const std::vector<ArmStats>& stats) {
      for (int i : survivors) {
        const auto cs = bounds(stats[static_cast<std::size_t>(i)], model.size(), T, delta, sigma);
        const double mu = means[static_cast<std::size_t>(i)];
        if (mu < cs.lower || mu > cs.upper) missed = true;
      }
    };
    ModelSampler sampler(model, base_seed + r);
    const auto trace = run_ebr(sampler, model.size(), T, epsilon, delta, sigma, observer);
    if (!trace.error.empty()) throw std::runtime_error("coverage run aborted: " + trace.error);
    report.checked += 1;
    report.violations += missed ? 1 : 0;
  }
  return report;
}

}  // namespace ebr
