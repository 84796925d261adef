#pragma once

#include <array>
#include <string_view>

namespace ringpairs {

enum class Channel { actual = 0, phantom = 1 };
inline constexpr std::array<Channel, 2> channels{Channel::actual, Channel::phantom};

// Used both for the outgoing/incoming enhancement factors and for the two
// quasi-phase-matching branches.
enum class Sign { plus = 1, minus = -1 };

enum class Role { pump, signal, idler };

inline constexpr int sign_value(Sign s) { return s == Sign::plus ? 1 : -1; }

inline constexpr std::string_view to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }

inline constexpr std::string_view to_string(Channel c) {
  return c == Channel::actual ? "ac" : "ph";
}

inline constexpr std::string_view to_string(Role r) {
  switch (r) {
    case Role::pump:
      return "pump";
    case Role::signal:
      return "signal";
    case Role::idler:
      return "idler";
  }
  return "?";
}

template <class T>
struct PerChannel {
  T actual{};
  T phantom{};

  constexpr T& operator[](Channel c) { return c == Channel::actual ? actual : phantom; }
  constexpr const T& operator[](Channel c) const { return c == Channel::actual ? actual : phantom; }
};

// Indexed by (signal channel, idler channel).
template <class T>
struct ChannelPairs {
  std::array<std::array<T, 2>, 2> values{};

  constexpr T& operator()(Channel a, Channel b) {
    return values[static_cast<int>(a)][static_cast<int>(b)];
  }
  constexpr const T& operator()(Channel a, Channel b) const {
    return values[static_cast<int>(a)][static_cast<int>(b)];
  }
};

}  // namespace ringpairs
