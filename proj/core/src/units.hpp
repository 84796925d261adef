#pragma once

namespace ringpairs::detail {

// SI dimension exponents (m, kg, s, A) for compile-time unit checks.
struct Dim {
  int m = 0, kg = 0, s = 0, a = 0;

  constexpr Dim operator*(Dim o) const { return {m + o.m, kg + o.kg, s + o.s, a + o.a}; }
  constexpr Dim operator/(Dim o) const { return {m - o.m, kg - o.kg, s - o.s, a - o.a}; }
  constexpr bool operator==(const Dim&) const = default;
};

constexpr Dim pow(Dim d, int n) {
  Dim out;
  for (int i = 0; i < (n < 0 ? -n : n); ++i) out = n < 0 ? out / d : out * d;
  return out;
}

inline constexpr Dim none{};
inline constexpr Dim metre{1, 0, 0, 0};
inline constexpr Dim kilogram{0, 1, 0, 0};
inline constexpr Dim second{0, 0, 1, 0};
inline constexpr Dim ampere{0, 0, 0, 1};
inline constexpr Dim per_second = none / second;
inline constexpr Dim joule = kilogram * metre * metre / (second * second);
inline constexpr Dim watt = joule / second;
inline constexpr Dim volt = watt / ampere;
inline constexpr Dim farad = ampere * second / volt;
inline constexpr Dim velocity = metre / second;

}  // namespace ringpairs::detail
