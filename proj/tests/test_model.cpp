#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ebr/model.hpp"
#include "ebr/rng.hpp"

using ebr::ArmDistribution;
using ebr::BanditModel;

namespace {

BanditModel three_arm() {
  return BanditModel({ArmDistribution::bernoulli(0.9), ArmDistribution::bernoulli(0.6),
                      ArmDistribution::bernoulli(0.1)});
}

}  // namespace

TEST_CASE("gaps and per-arm requirements on a three-arm model") {
  const auto profile = ebr::compute_gaps(three_arm(), 0.05);
  CHECK(profile.best_arm == 0);
  // Best arm's gap is the distance to the runner-up; others to the best.
  CHECK(profile.gaps[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(profile.gaps[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(profile.gaps[2] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(profile.n_opt[0] == doctest::Approx(1.0 / (0.35 * 0.35)).epsilon(1e-12));
  CHECK(profile.n_opt[2] == doctest::Approx(1.0 / (0.85 * 0.85)).epsilon(1e-12));
  CHECK(profile.complexity_h ==
        doctest::Approx(2.0 / (0.35 * 0.35) + 1.0 / (0.85 * 0.85)).epsilon(1e-12));
}

TEST_CASE("sub-epsilon gaps take the epsilon^-2 branch") {
  const BanditModel model({ArmDistribution::bernoulli(0.5), ArmDistribution::bernoulli(0.45)});
  const auto profile = ebr::compute_gaps(model, 0.1);
  CHECK(profile.n_opt[0] == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(profile.n_opt[1] == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("an exact tie for the best arm goes to the lowest index with gap zero") {
  const BanditModel model({ArmDistribution::bernoulli(0.7), ArmDistribution::bernoulli(0.7),
                           ArmDistribution::bernoulli(0.2)});
  const auto profile = ebr::compute_gaps(model, 0.05);
  CHECK(profile.best_arm == 0);
  CHECK(profile.gaps[0] == 0.0);
  CHECK(profile.n_opt[0] == doctest::Approx(400.0).epsilon(1e-12));
}

TEST_CASE("compute_gaps is permutation-equivariant") {
  const std::vector<double> means = {0.82, 0.13, 0.55, 0.9, 0.31};
  const std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
  std::vector<ArmDistribution> base, permuted(means.size(), ArmDistribution::bernoulli(0.0));
  for (double m : means) base.push_back(ArmDistribution::bernoulli(m));
  for (std::size_t i = 0; i < means.size(); ++i) permuted[perm[i]] = base[i];

  const auto p0 = ebr::compute_gaps(BanditModel(base), 0.05);
  const auto p1 = ebr::compute_gaps(BanditModel(std::move(permuted)), 0.05);
  CHECK(p1.best_arm == perm[p0.best_arm]);
  for (std::size_t i = 0; i < means.size(); ++i) {
    CHECK(p1.gaps[perm[i]] == p0.gaps[i]);
    CHECK(p1.n_opt[perm[i]] == p0.n_opt[i]);
  }
}

TEST_CASE("per-arm requirement never exceeds epsilon^-2, with equality iff gap < epsilon") {
  const std::uint64_t key = ebr::stream_key(2024, 0);
  std::uint64_t ctr = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const double gap = ebr::u01(key, ctr++);
    const double eps = 0.01 + 0.98 * ebr::u01(key, ctr++);
    const double n_opt =
        gap < eps ? 1.0 / (eps * eps) : 1.0 / ((gap + eps) * (gap + eps));
    CHECK(n_opt <= 1.0 / (eps * eps) + 1e-12);
    if (gap >= eps) CHECK(n_opt < 1.0 / (eps * eps));
  }
}

TEST_CASE("deadline bins for spot gaps") {
  ebr::GapProfile profile;
  profile.gaps = {0.1, 1.0, 0.0};
  SUBCASE("three bins at T=3") {
    const auto gamma = ebr::partition_index(profile, 0.01, 3);
    CHECK(gamma[0] == 2);  // 0.1 lies in [0.01^(2/3), 0.01^(1/3)) = [0.0464, 0.2154)
    CHECK(gamma[1] == 1);
    CHECK(gamma[2] == 3);
  }
  SUBCASE("the bottom bin catches zero gaps at T=5") {
    CHECK(ebr::partition_index(profile, 0.01, 5)[2] == 5);
  }
  SUBCASE("a single round means a single bin") {
    const auto gamma = ebr::partition_index(profile, 0.3, 1);
    CHECK(gamma == std::vector<int>{1, 1, 1});
  }
}

TEST_CASE("every gap lands in exactly one bin") {
  const std::uint64_t key = ebr::stream_key(7, 1);
  std::uint64_t ctr = 0;
  ebr::GapProfile profile;
  profile.gaps.resize(1);
  for (int trial = 0; trial < 1000000; ++trial) {
    const double gap = ebr::u01(key, ctr++);
    const double eps = 0.001 + 0.998 * ebr::u01(key, ctr++);
    const int T = 2 + static_cast<int>(ebr::u01(key, ctr++) * 11);
    profile.gaps[0] = gap;
    const int g = ebr::partition_index(profile, eps, T)[0];

    // Count membership over the bins as written: [eps^(k/T), eps^((k-1)/T))
    // for 1 <= k < T with the top bin closed at 1, plus [0, eps^((T-1)/T)).
    int containing = 0;
    int found = 0;
    for (int k = 1; k < T; ++k) {
      const double lo = std::pow(eps, static_cast<double>(k) / T);
      const double hi = k == 1 ? 1.0 : std::pow(eps, static_cast<double>(k - 1) / T);
      const bool inside = k == 1 ? (gap >= lo && gap <= hi) : (gap >= lo && gap < hi);
      if (inside) {
        containing += 1;
        found = k;
      }
    }
    if (gap < std::pow(eps, static_cast<double>(T - 1) / T)) {
      containing += 1;
      found = T;
    }
    REQUIRE(containing == 1);
    REQUIRE(g == found);
  }
}

TEST_CASE("worst-case complexity of a bin assignment") {
  SUBCASE("evaluated at the bin's lower edge") {
    const double expected = 2.0 / std::pow(std::pow(0.01, 2.0 / 3.0) + 0.01, 2.0);
    CHECK(ebr::partition_sup_complexity({2, 2}, 0.01, 3) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(628.4).epsilon(1e-3));
  }
  SUBCASE("the bottom bin contributes epsilon^-2") {
    CHECK(ebr::partition_sup_complexity({3, 3, 3}, 0.1, 3) ==
          doctest::Approx(300.0).epsilon(1e-12));
  }
  SUBCASE("coarser bins are easier") {
    const double coarse = ebr::partition_sup_complexity({1, 1}, 0.01, 3);
    const double expected = 2.0 / std::pow(std::pow(0.01, 1.0 / 3.0) + 0.01, 2.0);
    CHECK(coarse == doctest::Approx(expected).epsilon(1e-12));
    CHECK(coarse == doctest::Approx(39.35).epsilon(1e-3));
    CHECK(coarse < ebr::partition_sup_complexity({2, 2}, 0.01, 3));
  }
}

TEST_CASE("raising any bin index never lowers the worst-case complexity") {
  const std::uint64_t key = ebr::stream_key(99, 2);
  std::uint64_t ctr = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int T = 2 + static_cast<int>(ebr::u01(key, ctr++) * 7);
    const double eps = 0.01 + 0.5 * ebr::u01(key, ctr++);
    const std::size_t n = 2 + static_cast<std::size_t>(ebr::u01(key, ctr++) * 5);
    std::vector<int> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = 1 + static_cast<int>(ebr::u01(key, ctr++) * T);
      hi[i] = std::min(T, lo[i] + static_cast<int>(ebr::u01(key, ctr++) * 3));
    }
    CHECK(ebr::partition_sup_complexity(lo, eps, T) <=
          ebr::partition_sup_complexity(hi, eps, T) + 1e-12);
  }
}

TEST_CASE("iterated logarithm") {
  CHECK(ebr::ilog(0, 100.0) == 100.0);
  CHECK(ebr::ilog(1, 100.0) == doctest::Approx(4.6052).epsilon(1e-4));
  CHECK(ebr::ilog(2, 100.0) == doctest::Approx(1.5272).epsilon(1e-4));
  CHECK(ebr::ilog(3, 100.0) == 1.0);
  for (int k = 1; k <= 6; ++k) CHECK(ebr::ilog(k, 1.0) == 1.0);
  CHECK_THROWS_AS(ebr::ilog(-1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(ebr::ilog(2, 0.5), std::invalid_argument);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(ArmDistribution::bernoulli(1.2), std::invalid_argument);
  CHECK_THROWS_AS(ArmDistribution::gaussian(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ArmDistribution::gaussian(1.5, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(BanditModel({ArmDistribution::bernoulli(0.5)}), std::invalid_argument);
  CHECK_THROWS_AS(BanditModel({ArmDistribution::bernoulli(0.5),
                               ArmDistribution::bernoulli(0.2)},
                              0.25),
                  std::invalid_argument);  // below the Bernoulli proxy 1/2
  CHECK_THROWS_AS(ebr::compute_gaps(three_arm(), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ebr::partition_index(ebr::GapProfile{0, {0.5}, {}, 0.0}, 0.1, 0),
                  std::invalid_argument);
}

TEST_CASE("benchmark presets") {
  const auto spread = ebr::spread_model(20);
  CHECK(spread.size() == 20);
  CHECK(spread.arms().front().mean == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(spread.arms().back().mean == 0.9);  // endpoint is pinned exactly
  CHECK(spread.best_arm() == 19);
  CHECK(spread.sigma() == 0.5);

  const auto crowded = ebr::crowded_model(100);
  CHECK(crowded.size() == 100);
  CHECK(crowded.arms().front().mean == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(crowded.arms().back().mean == 0.9);
  // Evenly spaced: the step between adjacent means is constant.
  const double step = crowded.arms()[1].mean - crowded.arms()[0].mean;
  CHECK(step == doctest::Approx(0.25 / 99.0).epsilon(1e-9));
  CHECK(crowded.arms()[50].mean ==
        doctest::Approx(0.65 + 50.0 * 0.25 / 99.0).epsilon(1e-9));
}

TEST_CASE("gaussian arms widen the default sigma") {
  const BanditModel model({ArmDistribution::gaussian(0.3, 0.8), ArmDistribution::bernoulli(0.5)});
  CHECK(model.sigma() == 0.8);
}
