#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deolog {

/// Connectives of the surface language. `meta` only occurs in schema templates.
enum class Op : std::uint8_t {
  var,
  top,
  bot,
  meta,
  not_,
  box,
  diamond,
  oblig,
  perm,
  and_,
  or_,
  implies,
  iff,
  pref_weak,
  pref_strict,
  pref_eq,
  pref_weak_rev,
  pref_strict_rev,
  cond_oblig,
};

std::size_t arity(Op op);
bool is_preference(Op op);

/// True iff `name` is a legal user variable (`[a-z][a-zA-Z0-9_]*`).
bool is_valid_variable_name(std::string_view name);
/// Names beginning with `_` are reserved for generated variables.
bool is_reserved_variable_name(std::string_view name);

/// Immutable surface syntax tree with every abbreviation still present.
class Surface {
 public:
  static Surface var(std::string name);
  static Surface meta(std::string name);
  static Surface top();
  static Surface bot();
  static Surface unary(Op op, Surface child);
  static Surface binary(Op op, Surface left, Surface right);

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  std::span<const Surface> kids() const { return node_->kids; }
  const Surface& kid(std::size_t i) const { return node_->kids[i]; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Surface& a, const Surface& b);

 private:
  struct Node {
    Op op;
    std::string name;
    std::vector<Surface> kids;
    std::size_t hash;
  };
  explicit Surface(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Surface make(Op op, std::string name, std::vector<Surface> kids);

  std::shared_ptr<const Node> node_;
};

enum class CoreOp : std::uint8_t { var, not_, and_, pref };

/// Desugared formula over exactly variables, negation, conjunction and weak preference.
class Core {
 public:
  static Core var(std::string name);
  static Core negate(Core child);
  static Core conj(Core left, Core right);
  static Core pref(Core left, Core right);

  CoreOp op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const Core& left() const { return node_->kids[0]; }
  const Core& right() const { return node_->kids[1]; }
  const Core& child() const { return node_->kids[0]; }
  std::size_t arity() const { return node_->kids.size(); }
  std::size_t hash() const { return node_->hash; }
  /// Nesting depth of preference nodes, cached at construction.
  unsigned depth() const { return node_->depth; }
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Core& a, const Core& b);

 private:
  struct Node {
    CoreOp op;
    std::string name;
    std::vector<Core> kids;
    std::size_t hash;
    unsigned depth;
  };
  explicit Core(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Core make(CoreOp op, std::string name, std::vector<Core> kids);

  std::shared_ptr<const Node> node_;
};

struct SurfaceHash {
  std::size_t operator()(const Surface& f) const { return f.hash(); }
};
struct CoreHash {
  std::size_t operator()(const Core& f) const { return f.hash(); }
};

struct DesugarOptions {
  /// Variable used to lower T as (v -> v). Defaults to the least variable of
  /// the formula, or `_t` when it has none.
  std::optional<std::string> anchor;
  /// Lower P f literally as ~O~f instead of f >= ~f.
  bool permission_as_dual = false;
};

inline constexpr std::string_view reserved_top_variable = "_t";

Core desugar(const Surface& f, const DesugarOptions& opts = {});
/// Reinterprets a core formula as surface syntax (no new connectives).
Surface embed(const Core& f);

/// Sorted, deduplicated variables.
std::vector<std::string> variables(const Core& f);
std::vector<std::string> variables(const Surface& f);
/// Least anchor for T across a whole query.
std::string anchor_for(std::span<const Surface> query);

unsigned modal_depth(const Core& f);
bool contains_modal(const Surface& f);

/// Every operand of every preference node, structurally deduplicated and
/// ordered innermost-first (stable by first post-order occurrence).
std::vector<Core> pref_operands(const Core& f);

}  // namespace deolog
