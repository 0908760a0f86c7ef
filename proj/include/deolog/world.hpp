#pragma once

#include <boost/rational.hpp>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deolog {

/// Worlds and variable sets over a sorted universe of at most 31 variables.
/// Bit (n-1-i) stands for universe[i], so numeric order matches name order:
/// with universe [p, q], "10" = {p} = 0b10.
struct World {
  std::uint32_t members = 0;
  std::uint32_t width = 0;

  bool contains(std::size_t var_index) const { return members >> (width - 1 - var_index) & 1u; }
  friend bool operator==(const World&, const World&) = default;
};

inline constexpr std::size_t max_universe = 31;

class UniverseMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::uint32_t var_bit(std::size_t var_index, std::size_t width) {
  return std::uint32_t{1} << (width - 1 - var_index);
}

std::string world_name(World w);
/// Parses a bit-string name such as "10"; throws std::invalid_argument.
World parse_world_name(std::string_view name);

/// Exact symmetric difference, returned as a variable set of the same width.
World symmetric_difference(World a, World b);

/// Default cap on the universe for full power-set construction.
inline constexpr std::size_t default_powerset_cap = 12;

/// All 2^n worlds in ascending order.
std::vector<World> powerset_worlds(std::size_t n, std::size_t cap = default_powerset_cap);

using Rational = boost::rational<std::int64_t>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Positive weight per universe variable.
struct Weighting {
  std::vector<std::string> universe;
  std::vector<Rational> weight;

  /// Throws unless sizes agree and all weights are positive.
  void check() const;
  /// Integer weights on a common denominator, indexed by bit position.
  std::vector<std::int64_t> scaled_by_bit() const;
  std::string describe() const;
};

}  // namespace deolog
