#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deolog/formula.hpp"
#include "deolog/world.hpp"
#include "deolog/world_set.hpp"

namespace deolog {

/// A set of worlds of one model.
using Proposition = WorldSet;

/// Key of a selection entry: the base world and the selected-from proposition.
struct Cell {
  std::uint32_t world = 0;
  Proposition prop;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend bool operator<(const Cell& a, const Cell& b) {
    if (a.world != b.world) return a.world < b.world;
    return a.prop < b.prop;
  }
};

/// Partial selection function: only cells some evaluation consults.
using SelectionTable = std::map<Cell, std::uint32_t>;

enum class Mode { basic, delta };

/// A finite model. Worlds are distinct valuations of the universe, kept in
/// ascending order; a variable is true exactly at the worlds containing it.
struct Model {
  std::vector<std::string> universe;
  std::vector<std::uint32_t> worlds;
  SelectionTable selection;
  std::vector<std::int64_t> utility;
  Mode mode = Mode::basic;
  std::optional<Weighting> weights;

  std::size_t size() const { return worlds.size(); }
  World world(std::uint32_t i) const {
    return World{worlds[i], static_cast<std::uint32_t>(universe.size())};
  }
  std::string world_name(std::uint32_t i) const { return deolog::world_name(world(i)); }
  std::optional<std::uint32_t> find_world(std::uint32_t mask) const;
  std::optional<std::size_t> var_index(const std::string& name) const;
  /// Truth set of a universe variable.
  Proposition truth(std::size_t var_index) const;
  Proposition make_prop(const std::vector<std::uint32_t>& members) const;
  std::vector<World> worlds_of(const Proposition& p) const;
};

/// Thrown when an evaluation needs a selection entry the model lacks.
class MissingSelection : public std::runtime_error {
 public:
  MissingSelection(std::string message, std::uint32_t world, Proposition prop)
      : std::runtime_error(std::move(message)), world_(world), prop_(std::move(prop)) {}
  std::uint32_t world() const { return world_; }
  const Proposition& prop() const { return prop_; }

 private:
  std::uint32_t world_;
  Proposition prop_;
};

class UnknownVariable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Denotation of a core formula. A preference with an empty operand denotes
/// the empty set; otherwise w is in it iff the utility of the world selected
/// for the left operand is at least that of the one selected for the right.
Proposition denote(const Model& m, const Core& f);
bool holds_at(const Model& m, const Core& f, std::uint32_t world);

/// Every violated structural invariant; empty means the model is well formed.
std::vector<std::string> validate_model(const Model& m);

}  // namespace deolog
