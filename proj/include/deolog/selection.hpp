#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deolog/model.hpp"
#include "deolog/world.hpp"

namespace deolog {

// Index-level helpers over raw world masks. Results are indices into `cand`,
// ascending.
std::vector<std::size_t> delta_minimal_indices(std::uint32_t base, const std::vector<std::uint32_t>& cand);
/// `weight_by_bit[b]` is the weight of the variable at bit b.
std::vector<std::size_t> p_nearest_indices(const std::vector<std::int64_t>& weight_by_bit, unsigned nbits,
                                           std::uint32_t base, const std::vector<std::uint32_t>& cand);
std::optional<std::size_t> forced_index(std::uint32_t base, const std::vector<std::uint32_t>& cand);

/// Members of A whose symmetric difference with w is subset-minimal.
std::vector<World> delta_minimal(World w, const std::vector<World>& A);
bool is_delta_based(const Model& m);

Rational weighted_distance(const Weighting& p, World w0, World w1);
std::vector<World> p_nearest(const Weighting& p, World w, const std::vector<World>& A);
/// The member of A whose symmetric difference with w is contained in every
/// other member's; such a pick is nearest under every weighting.
std::optional<World> forced_choice(World w, const std::vector<World>& A);

/// Conjunction of strict inequalities weight(first) > weight(second).
struct WeightClass {
  std::vector<std::pair<std::string, std::string>> greater;

  bool empty() const { return greater.empty(); }
  /// Constraints mentioning a variable outside `universe` are ignored.
  bool admits(const Weighting& p) const;
  std::string describe() const;
};

class ClassError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "q>p,q>r"; empty text gives the unconstrained class. Throws ClassError on
/// bad syntax or a cyclic constraint graph.
WeightClass parse_weight_class(std::string_view text);
/// "1..9" or "1,2,5".
std::vector<std::int64_t> parse_grid(std::string_view text);
std::string describe_grid(const std::vector<std::int64_t>& grid);

/// One weighting per distinct weak order on subset sums, among grid vectors
/// admitted by the class; first in lexicographic grid order wins.
std::vector<Weighting> enumerate_weight_orders(const std::vector<std::string>& universe, const WeightClass& cls,
                                               const std::vector<std::int64_t>& grid);

}  // namespace deolog
