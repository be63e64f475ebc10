#pragma once

/**
 * Counter-based random number generation.
 *
 * Every reward in a run is addressed by (run seed, arm index, draw index)
 * and produced by a stateless splitmix64-style hash, so the j-th draw of an
 * arm is the same number no matter how pulls are batched or interleaved.
 * Per-arm prefix sums therefore depend only on per-arm totals, and paired
 * runs (same seed, different strategy) consume identical streams.
 */

#include <cmath>
#include <cstdint>

namespace ebr {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

/** splitmix64 finalizer; bijective on 64-bit words. */
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/**
 * Substream key for (run seed, stream index). Two mixing rounds keep
 * adjacent seeds and adjacent arm indices decorrelated; a plain xor would
 * alias (seed, arm) with (seed^1, arm^1).
 */
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed + kGolden) ^ ((stream + 1) * kGolden));
}

/** Raw 64-bit word for draw j of a substream. */
inline std::uint64_t stream_word(std::uint64_t key, std::uint64_t j) noexcept {
  return mix64(key + (j + 1) * kGolden);
}

/** Uniform double on [0, 1); exact on the 2^53 grid, so u < p is exact for p in {0, 1}. */
inline double u01(std::uint64_t key, std::uint64_t j) noexcept {
  return static_cast<double>(stream_word(key, j) >> 11) * 0x1.0p-53;
}

/** Uniform double strictly inside (0, 1); 2^52 grid offset by half a step. */
inline double u01_open(std::uint64_t key, std::uint64_t j) noexcept {
  return (static_cast<double>(stream_word(key, j) >> 12) + 0.5) * 0x1.0p-52;
}

/**
 * Inverse of the standard normal CDF (Wichura's PPND16 rational
 * approximation, |error| < 1e-15 for p in (0,1)). Used as the fixed
 * uniform-to-Gaussian transform so traces do not depend on the standard
 * library's normal_distribution implementation.
 */
inline double standard_normal_icdf(double p) noexcept {
  const double q = p - 0.5;
  if (q < 0.425 && q > -0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -v : v;
}

/**
 * Integer acceptance threshold for Bernoulli(p) draws:
 * (word >> 11) < bernoulli_threshold(p) is exactly u01 < p.
 */
inline std::uint64_t bernoulli_threshold(double p) noexcept {
  return static_cast<std::uint64_t>(std::ceil(p * 0x1.0p53));
}

}  // namespace ebr
