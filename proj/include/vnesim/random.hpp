#pragma once

#include <cstdint>
#include <random>

#include "vnesim/types.hpp"

namespace vnesim {

std::uint64_t splitmix64(std::uint64_t x);

/**
 * mt19937_64 with draw routines defined here rather than through the
 * <random> distributions, whose algorithms are implementation-defined.
 * The same seed gives the same draws on every standard library.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform integer on [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform01() < p; }
  // Inverse-CDF exponential variate.
  double exponential(double mean);

 private:
  std::mt19937_64 engine_;
};

// Independent sub-streams derived from one master seed.
class RandomStreams {
 public:
  explicit RandomStreams(std::uint64_t master_seed);

  std::uint64_t master_seed() const { return master_; }
  Rng& interarrival() { return interarrival_; }
  Rng& lifetime() { return lifetime_; }
  Rng& topology() { return topology_; }
  // Fresh stream for the structure and demands of request `index`, so a
  // request depends only on (seed, index).
  Rng request_stream(std::uint64_t index) const;

 private:
  std::uint64_t master_;
  Rng interarrival_;
  Rng lifetime_;
  Rng topology_;
};

inline constexpr double kMeanInterarrival = 5.0;
inline constexpr double kMeanLifetime = 120.0;

// Strictly positive durations, rounded to whole ticks.
Time draw_interarrival(Rng& rng, double mean = kMeanInterarrival);
Time draw_lifetime(Rng& rng, double mean = kMeanLifetime);

}  // namespace vnesim
