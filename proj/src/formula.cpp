#include "deolog/formula.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace deolog {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::size_t arity(Op op) {
  switch (op) {
    case Op::var:
    case Op::top:
    case Op::bot:
    case Op::meta:
      return 0;
    case Op::not_:
    case Op::box:
    case Op::diamond:
    case Op::oblig:
    case Op::perm:
      return 1;
    default:
      return 2;
  }
}

bool is_preference(Op op) {
  return op == Op::pref_weak || op == Op::pref_strict || op == Op::pref_eq ||
         op == Op::pref_weak_rev || op == Op::pref_strict_rev;
}

bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool is_reserved_variable_name(std::string_view name) {
  if (name.size() < 2 || name[0] != '_') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// ---------------------------------------------------------------------------
// Surface

Surface Surface::make(Op op, std::string name, std::vector<Surface> kids) {
  if (kids.size() != arity(op)) throw std::logic_error("surface node arity mismatch");
  std::size_t h = mix(static_cast<std::size_t>(op) * 1315423911u, std::hash<std::string>{}(name));
  for (const auto& k : kids) h = mix(h, k.hash());
  return Surface(std::make_shared<const Node>(Node{op, std::move(name), std::move(kids), h}));
}

Surface Surface::var(std::string name) { return make(Op::var, std::move(name), {}); }
Surface Surface::meta(std::string name) { return make(Op::meta, std::move(name), {}); }
Surface Surface::top() { return make(Op::top, {}, {}); }
Surface Surface::bot() { return make(Op::bot, {}, {}); }
Surface Surface::unary(Op op, Surface child) { return make(op, {}, {std::move(child)}); }
Surface Surface::binary(Op op, Surface left, Surface right) {
  return make(op, {}, {std::move(left), std::move(right)});
}

bool operator==(const Surface& a, const Surface& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.name() != b.name()) return false;
  auto ka = a.kids();
  auto kb = b.kids();
  return std::equal(ka.begin(), ka.end(), kb.begin(), kb.end());
}

// ---------------------------------------------------------------------------
// Core

Core Core::make(CoreOp op, std::string name, std::vector<Core> kids) {
  std::size_t h = mix(static_cast<std::size_t>(op) * 2654435761u, std::hash<std::string>{}(name));
  unsigned d = 0;
  for (const auto& k : kids) {
    h = mix(h, k.hash());
    d = std::max(d, k.depth());
  }
  if (op == CoreOp::pref) ++d;
  return Core(std::make_shared<const Node>(Node{op, std::move(name), std::move(kids), h, d}));
}

Core Core::var(std::string name) { return make(CoreOp::var, std::move(name), {}); }
Core Core::negate(Core child) { return make(CoreOp::not_, {}, {std::move(child)}); }
Core Core::conj(Core left, Core right) {
  return make(CoreOp::and_, {}, {std::move(left), std::move(right)});
}
Core Core::pref(Core left, Core right) {
  return make(CoreOp::pref, {}, {std::move(left), std::move(right)});
}

bool operator==(const Core& a, const Core& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.name() != b.name() ||
      a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.node_->kids[i] == b.node_->kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Desugaring

namespace {

class Desugarer {
 public:
  Desugarer(std::string anchor, bool dual) : anchor_(std::move(anchor)), dual_(dual) {}

  Core run(const Surface& f) {
    switch (f.op()) {
      case Op::var:
        return Core::var(f.name());
      case Op::meta:
        throw std::invalid_argument("cannot desugar a schema metavariable");
      case Op::top:
        return top();
      case Op::bot:
        return Core::negate(top());
      case Op::not_:
        return Core::negate(run(f.kid(0)));
      case Op::and_:
        return Core::conj(run(f.kid(0)), run(f.kid(1)));
      case Op::or_:
        return disj(run(f.kid(0)), run(f.kid(1)));
      case Op::implies:
        return implies(run(f.kid(0)), run(f.kid(1)));
      case Op::iff: {
        Core a = run(f.kid(0));
        Core b = run(f.kid(1));
        return Core::conj(implies(a, b), implies(b, a));
      }
      case Op::pref_weak:
        return Core::pref(run(f.kid(0)), run(f.kid(1)));
      case Op::pref_weak_rev:
        return Core::pref(run(f.kid(1)), run(f.kid(0)));
      case Op::pref_strict:
        return strict(run(f.kid(0)), run(f.kid(1)));
      case Op::pref_strict_rev:
        return strict(run(f.kid(1)), run(f.kid(0)));
      case Op::pref_eq: {
        Core a = run(f.kid(0));
        Core b = run(f.kid(1));
        return Core::conj(Core::pref(a, b), Core::pref(b, a));
      }
      case Op::box: {
        Core n = Core::negate(run(f.kid(0)));
        return Core::negate(Core::pref(n, n));
      }
      case Op::diamond: {
        Core a = run(f.kid(0));
        return Core::pref(a, a);
      }
      case Op::cond_oblig:
        return cond(run(f.kid(0)), run(f.kid(1)));
      case Op::oblig:
        return cond(top(), run(f.kid(0)));
      case Op::perm: {
        Core a = run(f.kid(0));
        if (dual_) return Core::negate(cond(top(), Core::negate(a)));
        return Core::pref(a, Core::negate(a));
      }
    }
    throw std::logic_error("unhandled connective");
  }

 private:
  Core top() const {
    Core v = Core::var(anchor_);
    return implies(v, v);
  }
  static Core disj(Core a, Core b) {
    return Core::negate(Core::conj(Core::negate(std::move(a)), Core::negate(std::move(b))));
  }
  static Core implies(Core a, Core b) { return disj(Core::negate(std::move(a)), std::move(b)); }
  static Core strict(Core a, Core b) {
    return Core::conj(Core::pref(a, b), Core::negate(Core::pref(b, a)));
  }
  static Core cond(const Core& a, const Core& b) {
    return strict(Core::conj(a, b), Core::conj(a, Core::negate(b)));
  }

  std::string anchor_;
  bool dual_;
};

void collect_vars(const Surface& f, std::vector<std::string>& out) {
  if (f.op() == Op::var) out.push_back(f.name());
  for (const auto& k : f.kids()) collect_vars(k, out);
}

void collect_vars(const Core& f, std::vector<std::string>& out) {
  if (f.op() == CoreOp::var) {
    out.push_back(f.name());
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    collect_vars(i == 0 ? f.left() : f.right(), out);
}

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<std::string> variables(const Surface& f) {
  std::vector<std::string> out;
  collect_vars(f, out);
  sort_unique(out);
  return out;
}

std::vector<std::string> variables(const Core& f) {
  std::vector<std::string> out;
  collect_vars(f, out);
  sort_unique(out);
  return out;
}

std::string anchor_for(std::span<const Surface> query) {
  std::vector<std::string> all;
  for (const auto& f : query) collect_vars(f, all);
  if (all.empty()) return std::string(reserved_top_variable);
  return *std::min_element(all.begin(), all.end());
}

Core desugar(const Surface& f, const DesugarOptions& opts) {
  std::string anchor = opts.anchor ? *opts.anchor : anchor_for(std::span<const Surface>(&f, 1));
  return Desugarer(std::move(anchor), opts.permission_as_dual).run(f);
}

Surface embed(const Core& f) {
  switch (f.op()) {
    case CoreOp::var:
      return Surface::var(f.name());
    case CoreOp::not_:
      return Surface::unary(Op::not_, embed(f.child()));
    case CoreOp::and_:
      return Surface::binary(Op::and_, embed(f.left()), embed(f.right()));
    case CoreOp::pref:
      return Surface::binary(Op::pref_weak, embed(f.left()), embed(f.right()));
  }
  throw std::logic_error("unhandled core connective");
}

unsigned modal_depth(const Core& f) { return f.depth(); }

bool contains_modal(const Surface& f) {
  switch (f.op()) {
    case Op::var:
    case Op::top:
    case Op::bot:
    case Op::meta:
      return false;
    case Op::not_:
    case Op::and_:
    case Op::or_:
    case Op::implies:
    case Op::iff:
      break;
    default:
      return true;
  }
  for (const auto& k : f.kids())
    if (contains_modal(k)) return true;
  return false;
}

std::vector<Core> pref_operands(const Core& f) {
  std::vector<Core> order;
  std::unordered_set<Core, CoreHash> seen;
  std::unordered_set<const void*> visited;
  std::function<void(const Core&)> walk = [&](const Core& g) {
    if (!visited.insert(g.identity()).second) return;
    for (std::size_t i = 0; i < g.arity(); ++i) walk(i == 0 ? g.left() : g.right());
    if (g.op() == CoreOp::pref) {
      for (const Core* side : {&g.left(), &g.right()})
        if (seen.insert(*side).second) order.push_back(*side);
    }
  };
  walk(f);
  std::stable_sort(order.begin(), order.end(),
                   [](const Core& a, const Core& b) { return a.depth() < b.depth(); });
  return order;
}

}  // namespace deolog
