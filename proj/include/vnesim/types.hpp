#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace vnesim {

// Memory, bandwidth and cost quantities. Everything is an exact integer so
// the ledger identities can be checked with ==.
using Amount = std::int64_t;

// Simulation time in micro-time-units.
using Time = std::int64_t;
inline constexpr Time kTicksPerUnit = 1'000'000;

constexpr Time time_units(std::int64_t units) { return units * kTicksPerUnit; }
constexpr double to_units(Time t) {
  return static_cast<double>(t) / static_cast<double>(kTicksPerUnit);
}

template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit Id(int v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const { return value; }
  friend constexpr auto operator<=>(Id, Id) = default;
};

struct SwitchTag;
struct LinkTag;
struct RequestTag;

// Dense switch index. Switch indices follow ascending external label order.
using SwitchId = Id<SwitchTag>;
// Dense substrate link index.
using LinkId = Id<LinkTag>;
using RequestId = Id<RequestTag>;

// Simple substrate path as a switch sequence, source first.
using Path = std::vector<SwitchId>;

}  // namespace vnesim

template <class Tag>
struct std::hash<vnesim::Id<Tag>> {
  std::size_t operator()(vnesim::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
