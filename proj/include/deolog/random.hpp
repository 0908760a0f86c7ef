#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "deolog/engine.hpp"
#include "deolog/formula.hpp"
#include "deolog/model.hpp"

namespace deolog {

using Rng = std::mt19937_64;

struct FormulaShape {
  std::vector<std::string> vars = {"p", "q"};
  /// Nesting bound for preference-introducing connectives.
  unsigned max_modal_depth = 2;
  /// Node budget; leaves are forced once it runs out.
  unsigned max_size = 12;
  bool constants = true;
  bool deontic = true;
};

Surface random_formula(Rng& rng, const FormulaShape& shape);
/// Premises (0..max_premises) and conclusion drawn from `shape`.
Sequent random_sequent(Rng& rng, const FormulaShape& shape, std::size_t max_premises = 2);

/// Full power-set model with a total Δ-based selection (every world, every
/// nonempty proposition). Universe sizes above 3 are rejected.
Model random_delta_model(Rng& rng, const std::vector<std::string>& universe, std::int64_t max_utility = 3);
/// Distinct random valuations (1..max_worlds of them) with a total selection.
Model random_basic_model(Rng& rng, const std::vector<std::string>& universe, std::size_t max_worlds = 4,
                         std::int64_t max_utility = 3);
/// Integer weights in [1, max_weight].
Weighting random_weighting(Rng& rng, const std::vector<std::string>& universe, std::int64_t max_weight = 9);

}  // namespace deolog
