#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "deolog/formula.hpp"
#include "deolog/model.hpp"
#include "deolog/selection.hpp"

namespace deolog {

struct Sequent {
  std::vector<Surface> premises;
  Surface conclusion;
};

/// "f1 ; f2 |- g"; the left side may be empty. Syntax errors report offsets
/// into the whole text.
Sequent parse_sequent(std::string_view text);
std::string print(const Sequent& s);

struct RegimeBasic {
  std::size_t max_worlds = 4;
};
struct RegimeDelta {
  /// Fresh variables tried, 0 through this many.
  std::size_t extra_vars = 0;
};
struct RegimeWeighted {
  WeightClass cls;
  std::vector<std::int64_t> grid;
  std::size_t extra_vars = 0;
};
using Regime = std::variant<RegimeBasic, RegimeDelta, RegimeWeighted>;

enum class Backend { solver, oracle };

/// Thrown by the find_* searches when the node budget runs out; the
/// verdict-level entry points turn it into a budget-limited verdict.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineConfig {
  /// Only permission_as_dual is consulted; the anchor is chosen per query.
  DesugarOptions desugar;
  /// Search nodes allowed per call before giving up.
  std::uint64_t budget = 5'000'000;
  Backend backend = Backend::solver;
};

/// What a verdict was established against.
struct Fingerprint {
  std::string regime;
  std::size_t max_worlds = 0;
  std::size_t extra_vars = 0;
  std::string grid;
  std::string weight_class;
  std::size_t weightings = 0;
  std::string backend;
  std::uint64_t nodes = 0;

  nlohmann::json to_json() const;
  static Fingerprint from_json(const nlohmann::json& j);
};

struct Valid {
  Fingerprint fingerprint;
};
struct Invalid {
  Model model;
  std::uint32_t witness = 0;
  /// Every selection the verdict depends on is forced, so the model stays a
  /// countermodel under any weighting.
  bool weight_robust = false;
  std::vector<Cell> needed_cells;
  std::string strategy;
  Fingerprint fingerprint;
};
struct QualifiedValid {
  Fingerprint fingerprint;
  bool budget_limited = false;
  std::string note;
};
struct Satisfiable {
  Model model;
  std::uint32_t world = 0;
  Fingerprint fingerprint;
};
struct Unsatisfiable {
  Fingerprint fingerprint;
  bool budget_limited = false;
};
using Verdict = std::variant<Valid, Invalid, QualifiedValid, Satisfiable, Unsatisfiable>;

std::string verdict_name(const Verdict& v);

/// premises & ~conclusion, with T anchored across the whole sequent.
Core query_formula(const Sequent& s, const DesugarOptions& opts = {});
/// Conjunction of the formulas (T when empty).
Core conjunction_formula(std::span<const Surface> fs, const DesugarOptions& opts = {});

Verdict check(const Sequent& s, const Regime& r, const EngineConfig& cfg = {});
Verdict satisfiable(std::span<const Surface> fs, const Regime& r, const EngineConfig& cfg = {});

std::optional<Invalid> find_countermodel_delta(const Sequent& s, std::size_t extra_vars, const EngineConfig& cfg = {});
std::optional<Invalid> find_countermodel_basic(const Sequent& s, std::size_t max_worlds, const EngineConfig& cfg = {});
Verdict check_weighted_validity(const Sequent& s, const WeightClass& cls, const std::vector<std::int64_t>& grid,
                                std::size_t extra_vars, const EngineConfig& cfg = {});
/// Strategy 1 looks for one weight-robust countermodel; strategy 2 looks for a
/// countermodel under each representative weighting.
Verdict check_forall_weights_invalidity(const Sequent& s, const std::vector<std::int64_t>& grid,
                                        std::size_t extra_vars, const EngineConfig& cfg = {});

/// Re-evaluates the query at the witness and checks model invariants.
bool reverify(const Invalid& inv, const Core& query);
/// Replaces every selection that is not nearest under `p` by the first
/// nearest world. Forced selections never change.
Model reweight(const Model& m, const Weighting& p);

nlohmann::json verdict_to_json(const Verdict& v);

}  // namespace deolog
