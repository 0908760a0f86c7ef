#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace deolog {

/// u(left) >= u(right), or u(left) > u(right) when strict.
struct ComparisonAtom {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  bool strict = false;
};

using ConstraintSet = std::vector<ComparisonAtom>;

/// Integer ranks on worlds 0..n-1 satisfying every atom, or none when some
/// cycle of the constraint graph contains a strict edge. Distinct strongly
/// connected components get distinct ranks; among unordered components the
/// one with the smaller least world ranks higher.
std::optional<std::vector<std::int64_t>> solve_order_constraints(std::size_t n, std::span<const ComparisonAtom> atoms);

/// Incrementally maintained transitive closure of weak/strict constraints.
class OrderClosure {
 public:
  enum Rel : std::uint8_t { none = 0, weak = 1, strict = 2 };

  explicit OrderClosure(std::size_t n);
  std::size_t size() const { return n_; }
  /// Known relation of u(a) to u(b): strict means u(a) > u(b) is entailed.
  Rel rel(std::uint32_t a, std::uint32_t b) const { return rel_[a * n_ + b]; }
  /// Adds the atom; returns false (leaving the closure unspecified) when it
  /// contradicts what is already entailed.
  bool add(const ComparisonAtom& atom);
  const ConstraintSet& atoms() const { return atoms_; }

 private:
  std::size_t n_;
  std::vector<Rel> rel_;
  ConstraintSet atoms_;
};

inline constexpr std::size_t max_bruteforce_worlds = 8;

/// Calls `visit` with each weak order on n worlds exactly once, as a
/// surjective rank function onto {0..m}. Stops early when `visit` returns
/// false. Throws std::invalid_argument above max_bruteforce_worlds.
void for_each_weak_order(std::size_t n, const std::function<bool(const std::vector<std::int64_t>&)>& visit);
std::vector<std::vector<std::int64_t>> bruteforce_weak_orders(std::size_t n);

}  // namespace deolog
