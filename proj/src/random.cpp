#include "vnesim/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vnesim {

namespace {

enum StreamTag : std::uint64_t { kInterarrival = 1, kLifetime = 2, kTopology = 3, kRequest = 4 };

std::uint64_t derive(std::uint64_t master, std::uint64_t tag, std::uint64_t index = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ tag) ^ index);
}

Time to_ticks(double units) {
  auto t = static_cast<Time>(std::llround(units * static_cast<double>(kTicksPerUnit)));
  return std::max<Time>(t, 1);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

double Rng::exponential(double mean) { return -mean * std::log1p(-uniform01()); }

RandomStreams::RandomStreams(std::uint64_t master_seed)
    : master_(master_seed),
      interarrival_(derive(master_seed, kInterarrival)),
      lifetime_(derive(master_seed, kLifetime)),
      topology_(derive(master_seed, kTopology)) {}

Rng RandomStreams::request_stream(std::uint64_t index) const {
  return Rng(derive(master_, kRequest, index));
}

Time draw_interarrival(Rng& rng, double mean) { return to_ticks(rng.exponential(mean)); }

Time draw_lifetime(Rng& rng, double mean) { return to_ticks(rng.exponential(mean)); }

}  // namespace vnesim
