#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deolog/formula.hpp"

namespace deolog {

/// An axiom schema. PC-taut has no template: its instances are the formulas
/// that are tautologies once modal subformulas are read as atoms.
struct Schema {
  std::string id;
  std::optional<Surface> templ;
};

/// PC-taut, K, T, Five, Ax1-trans, Ax2-conn, Ax3-subst.
const std::vector<Schema>& schemas();
const Schema* find_schema(std::string_view id);

/// Metavariable name (without `$`) to formula.
using Substitution = std::map<std::string, Surface>;

std::optional<Substitution> match_schema(const Schema& s, const Surface& f);
/// Throws std::invalid_argument when a metavariable is unbound.
Surface instantiate(const Surface& templ, const Substitution& sub);
bool is_tautology_instance(const Surface& f);

struct Step {
  enum class Kind { axiom, mp, nec };
  Kind kind = Kind::axiom;
  std::string schema;
  std::optional<Substitution> substitution;
  std::optional<Surface> formula;
  /// 1-based. mp: {implication, antecedent}; nec: {premise}.
  std::vector<std::size_t> refs;
};

struct Derivation {
  std::vector<Step> steps;
};

class DerivationFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Derivation derivation_from_json(const nlohmann::json& doc);
Derivation load_derivation(const std::string& path);

struct ProofResult {
  bool ok = false;
  std::optional<Surface> theorem;
  /// 1-based index of the first failing step.
  std::size_t failed_step = 0;
  std::string reason;
};

ProofResult check_derivation(const Derivation& d);

}  // namespace deolog
