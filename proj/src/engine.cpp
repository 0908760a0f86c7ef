#include "deolog/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "deolog/model_io.hpp"
#include "deolog/order.hpp"
#include "deolog/syntax.hpp"

namespace deolog {

using nlohmann::json;

Sequent parse_sequent(std::string_view text) {
  auto turn = text.find("|-");
  if (turn == std::string_view::npos) throw SyntaxError(text.size(), {"|-"}, "sequent lacks a turnstile");
  if (auto again = text.find("|-", turn + 2); again != std::string_view::npos)
    throw SyntaxError(again, {}, "sequent has more than one turnstile");
  auto parse_at = [&](std::size_t begin, std::size_t end) {
    try {
      return parse(text.substr(begin, end - begin));
    } catch (const SyntaxError& e) {
      throw SyntaxError(begin + e.offset(), e.expected(), e.detail());
    }
  };
  std::vector<Surface> premises;
  std::string_view left = text.substr(0, turn);
  if (left.find_first_not_of(" \t\r\n") != std::string_view::npos) {
    std::size_t start = 0;
    for (;;) {
      auto semi = left.find(';', start);
      std::size_t end = semi == std::string_view::npos ? left.size() : semi;
      premises.push_back(parse_at(start, end));
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
  }
  return Sequent{std::move(premises), parse_at(turn + 2, text.size())};
}

std::string print(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.premises.size(); ++i) out += (i ? " ; " : "") + print(s.premises[i]);
  return out + (out.empty() ? "|- " : " |- ") + print(s.conclusion);
}

json Fingerprint::to_json() const {
  json j{{"regime", regime}, {"backend", backend}, {"nodes", nodes}};
  if (regime == "basic") j["max_worlds"] = max_worlds;
  if (regime != "basic") j["extra_vars"] = extra_vars;
  if (!grid.empty()) j["grid"] = grid;
  if (!weight_class.empty()) j["class"] = weight_class;
  if (weightings) j["weightings"] = weightings;
  return j;
}

Fingerprint Fingerprint::from_json(const json& j) {
  Fingerprint f;
  f.regime = j.at("regime").get<std::string>();
  f.backend = j.value("backend", "");
  f.nodes = j.value("nodes", std::uint64_t{0});
  f.max_worlds = j.value("max_worlds", std::size_t{0});
  f.extra_vars = j.value("extra_vars", std::size_t{0});
  f.grid = j.value("grid", "");
  f.weight_class = j.value("class", "");
  f.weightings = j.value("weightings", std::size_t{0});
  return f;
}

std::string verdict_name(const Verdict& v) {
  static const char* names[] = {"valid", "invalid", "qualified-valid", "satisfiable", "unsatisfiable"};
  return names[v.index()];
}

Core query_formula(const Sequent& s, const DesugarOptions& opts) {
  std::vector<Surface> all = s.premises;
  all.push_back(s.conclusion);
  DesugarOptions o = opts;
  o.anchor = anchor_for(all);
  std::optional<Core> q;
  for (const auto& p : s.premises) {
    Core c = desugar(p, o);
    q = q ? Core::conj(*q, c) : c;
  }
  Core neg = Core::negate(desugar(s.conclusion, o));
  return q ? Core::conj(*q, neg) : neg;
}

Core conjunction_formula(std::span<const Surface> fs, const DesugarOptions& opts) {
  DesugarOptions o = opts;
  o.anchor = anchor_for(fs);
  if (fs.empty()) return desugar(Surface::top(), o);
  std::optional<Core> q;
  for (const auto& f : fs) {
    Core c = desugar(f, o);
    q = q ? Core::conj(*q, c) : c;
  }
  return *q;
}

namespace {

struct Budget {
  std::uint64_t limit;
  std::uint64_t used = 0;
  void tick() {
    if (++used > limit) throw BudgetExceeded("search budget of " + std::to_string(limit) + " nodes exhausted");
  }
};

/// The query as a DAG over core connectives.
struct Plan {
  struct Node {
    CoreOp op;
    int a = -1;
    int b = -1;
    std::string name;
  };
  Core query;
  std::vector<Node> nodes;
  int root = -1;

  explicit Plan(Core q) : query(std::move(q)) {
    std::unordered_map<Core, int, CoreHash> ids;
    root = add(query, ids);
  }

 private:
  int add(const Core& f, std::unordered_map<Core, int, CoreHash>& ids) {
    if (auto it = ids.find(f); it != ids.end()) return it->second;
    Node n{f.op(), -1, -1, {}};
    switch (f.op()) {
      case CoreOp::var:
        n.name = f.name();
        break;
      case CoreOp::not_:
        n.a = add(f.child(), ids);
        break;
      case CoreOp::and_:
      case CoreOp::pref:
        n.a = add(f.left(), ids);
        n.b = add(f.right(), ids);
        break;
    }
    nodes.push_back(std::move(n));
    int id = static_cast<int>(nodes.size() - 1);
    ids.emplace(f, id);
    return id;
  }
};

enum class Chooser { any, delta, nearest, forced };

/// A universe, its worlds, and the admissible selections.
struct Frame {
  Model base;
  Chooser chooser = Chooser::any;
  std::vector<std::int64_t> weight_by_bit;

  std::vector<std::uint32_t> candidates(std::uint32_t x, const WorldSet& a, Chooser how) const {
    std::vector<std::uint32_t> members = a.members();
    if (how == Chooser::any) return members;
    std::vector<std::uint32_t> masks;
    masks.reserve(members.size());
    for (auto i : members) masks.push_back(base.worlds[i]);
    std::vector<std::size_t> idx;
    std::uint32_t w = base.worlds[x];
    switch (how) {
      case Chooser::delta:
        idx = delta_minimal_indices(w, masks);
        break;
      case Chooser::nearest:
        idx = p_nearest_indices(weight_by_bit, static_cast<unsigned>(base.universe.size()), w, masks);
        break;
      case Chooser::forced:
        if (auto f = forced_index(w, masks)) idx.push_back(*f);
        break;
      case Chooser::any:
        break;
    }
    std::vector<std::uint32_t> out;
    for (auto i : idx) out.push_back(members[i]);
    return out;
  }
};

Frame make_delta_frame(const std::vector<std::string>& universe, Chooser chooser,
                       const std::optional<Weighting>& weights) {
  Frame f;
  f.base.universe = universe;
  for (const auto& w : powerset_worlds(universe.size())) f.base.worlds.push_back(w.members);
  f.base.utility.assign(f.base.worlds.size(), 0);
  f.base.mode = Mode::delta;
  f.chooser = chooser;
  if (weights) {
    f.base.weights = weights;
    f.weight_by_bit = weights->scaled_by_bit();
  }
  return f;
}

/// One basic frame per multiset of valuations; repeated valuations are told
/// apart by fresh variables that no query mentions.
template <typename Visit>
void for_each_basic_frame(const std::vector<std::string>& vars, std::size_t max_worlds, Visit&& visit) {
  const std::size_t nv = vars.size();
  const std::uint32_t valuations = std::uint32_t{1} << nv;
  for (std::size_t k = 1; k <= max_worlds; ++k) {
    std::vector<std::uint32_t> pick(k, 0);
    for (;;) {
      std::map<std::uint32_t, std::size_t> mult;
      for (auto v : pick) ++mult[v];
      std::size_t most = 0;
      for (const auto& [v, c] : mult) most = std::max(most, c);
      std::size_t bits = 0;
      while ((std::size_t{1} << bits) < most) ++bits;
      std::vector<std::string> universe = vars;
      for (std::size_t j = 0; j < bits; ++j) universe.push_back("_d" + std::to_string(j));
      std::sort(universe.begin(), universe.end());
      Frame f;
      f.base.universe = universe;
      f.base.mode = Mode::basic;
      f.chooser = Chooser::any;
      std::map<std::uint32_t, std::size_t> copy;
      for (auto v : pick) {
        std::size_t c = copy[v]++;
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < universe.size(); ++i) {
          const auto& name = universe[i];
          bool on;
          if (name.rfind("_d", 0) == 0) {
            on = (c >> std::stoul(name.substr(2))) & 1u;
          } else {
            auto at = std::find(vars.begin(), vars.end(), name) - vars.begin();
            on = (v >> (nv - 1 - static_cast<std::size_t>(at))) & 1u;
          }
          if (on) mask |= var_bit(i, universe.size());
        }
        f.base.worlds.push_back(mask);
      }
      std::sort(f.base.worlds.begin(), f.base.worlds.end());
      f.base.utility.assign(k, 0);
      if (!visit(f)) return;
      // Next nondecreasing sequence over the valuations.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == valuations - 1) --i;
      if (i == 0) break;
      std::uint32_t v = pick[i - 1] + 1;
      for (std::size_t j = i - 1; j < k; ++j) pick[j] = v;
    }
  }
}

struct Found {
  Model model;
  std::uint32_t witness = 0;
  std::vector<Cell> needed;
};

/// Fills every selection the full denotation consults and checks the result.
void complete_and_verify(Found& found, const Frame& frame, const Core& query) {
  Model& m = found.model;
  for (;;) {
    try {
      Proposition p = denote(m, query);
      if (!p.test(found.witness)) throw std::logic_error("internal error: countermodel failed re-verification");
      break;
    } catch (const MissingSelection& e) {
      auto c = frame.candidates(e.world(), e.prop(), frame.chooser);
      if (c.empty()) c = frame.candidates(e.world(), e.prop(), Chooser::delta);
      m.selection.emplace(Cell{e.world(), e.prop()}, c.front());
    }
  }
  auto violations = validate_model(m);
  if (!violations.empty()) throw std::logic_error("internal error: generated model is malformed: " + violations.front());
}

/// Lazy search: evaluates the query at a witness under a partial selection and
/// partial utility order, and branches on the first undecided fact.
class Solver {
 public:
  Solver(const Plan& plan, const Frame& frame, Budget& budget)
      : plan_(plan), frame_(frame), budget_(budget), n_(frame.base.size()), closure_(n_) {
    truth_.resize(plan.nodes.size());
    for (std::size_t i = 0; i < plan.nodes.size(); ++i)
      if (plan.nodes[i].op == CoreOp::var) {
        auto idx = frame.base.var_index(plan.nodes[i].name);
        if (!idx) throw UnknownVariable("variable '" + plan.nodes[i].name + "' is not in the frame");
        truth_[i] = frame.base.truth(*idx);
      }
  }

  std::optional<Found> run() {
    for (std::uint32_t w = 0; w < n_; ++w) {
      picks_.clear();
      closure_ = OrderClosure(n_);
      forced_.assign(plan_.nodes.size(), std::vector<std::int8_t>(n_, -1));
      if (dfs({plan_.root, w, true})) {
        set_memo_.assign(plan_.nodes.size(), std::nullopt);
        consulted_.clear();
        eval_at(plan_.root, w);
        return leaf(w);
      }
    }
    return std::nullopt;
  }

 private:
  enum class T : std::uint8_t { f, t, u };
  struct Decision {
    bool is_pick = false;
    Cell cell;
    std::uint32_t a = 0, b = 0;
  };
  struct Tri {
    T v;
    Decision d;
  };
  /// Three-valued set: members of `lo` are in, worlds outside `hi` are out.
  struct SetRes {
    WorldSet lo, hi;
    Decision d;
    bool exact() const { return lo == hi; }
  };

  const std::vector<std::uint32_t>& candidates(const Cell& c) {
    auto it = cand_.find(c);
    if (it == cand_.end()) it = cand_.emplace(c, frame_.candidates(c.world, c.prop, frame_.chooser)).first;
    return it->second;
  }

  std::optional<std::uint32_t> pick(std::uint32_t x, const WorldSet& a, Decision& d) {
    Cell c{x, a};
    if (auto it = picks_.find(c); it != picks_.end()) {
      consulted_.insert(c);
      return it->second;
    }
    const auto& cs = candidates(c);
    if (cs.size() == 1) {
      consulted_.insert(c);
      return cs.front();
    }
    d = Decision{true, std::move(c), 0, 0};
    return std::nullopt;
  }

  Tri compare_at(std::uint32_t x, const WorldSet& a, const WorldSet& b) {
    // One cell, one pick: the comparison is reflexive whatever is picked.
    if (a == b) return {T::t, {}};
    Tri r{T::u, {}};
    auto pa = pick(x, a, r.d);
    if (!pa) return r;
    auto pb = pick(x, b, r.d);
    if (!pb) return r;
    if (*pa == *pb || closure_.rel(*pa, *pb) != OrderClosure::none) return {T::t, {}};
    if (closure_.rel(*pb, *pa) == OrderClosure::strict) return {T::f, {}};
    r.d = Decision{false, {}, *pa, *pb};
    return r;
  }

  SetRes unknown_set(const Decision& d) const { return SetRes{WorldSet(n_), WorldSet::full(n_), d}; }

  const SetRes& eval_set(int id) {
    if (set_memo_[id]) return *set_memo_[id];
    const auto& n = plan_.nodes[id];
    SetRes r;
    switch (n.op) {
      case CoreOp::var:
        r.lo = r.hi = truth_[id];
        break;
      case CoreOp::not_: {
        const auto& a = eval_set(n.a);
        r = SetRes{a.hi.complement(), a.lo.complement(), a.d};
        break;
      }
      case CoreOp::and_: {
        const auto& a = eval_set(n.a);
        const auto& b = eval_set(n.b);
        r = SetRes{a.lo & b.lo, a.hi & b.hi, a.exact() ? b.d : a.d};
        break;
      }
      case CoreOp::pref: {
        const auto& a = eval_set(n.a);
        if (n.a == n.b) {
          // Same operand on both sides: true everywhere iff it is nonempty.
          if (!a.lo.empty())
            r.lo = r.hi = WorldSet::full(n_);
          else if (a.hi.empty())
            r.lo = r.hi = WorldSet(n_);
          else
            r = unknown_set(a.d);
          break;
        }
        const auto& b = eval_set(n.b);
        if (a.hi.empty() || b.hi.empty()) {
          r.lo = r.hi = WorldSet(n_);
          break;
        }
        if (!a.exact() || !b.exact()) {
          r = unknown_set(a.exact() ? b.d : a.d);
          break;
        }
        r.lo = r.hi = WorldSet(n_);
        bool decided = true;
        for (std::uint32_t x = 0; x < n_; ++x) {
          Tri t = compare_at(x, a.lo, b.lo);
          if (t.v == T::t) {
            r.lo.set(x);
            r.hi.set(x);
          } else if (t.v == T::u) {
            r.hi.set(x);
            if (decided) r.d = std::move(t.d);
            decided = false;
          }
        }
        break;
      }
    }
    for (std::uint32_t x = 0; x < n_; ++x)
      if (forced_[id][x] == 1) {
        r.lo.set(x);
        r.hi.set(x);
      } else if (forced_[id][x] == 0) {
        r.lo.reset(x);
        r.hi.reset(x);
      }
    set_memo_[id] = std::move(r);
    return *set_memo_[id];
  }

  Tri eval_at(int id, std::uint32_t w) {
    if (forced_[id][w] >= 0) return {forced_[id][w] ? T::t : T::f, {}};
    const auto& n = plan_.nodes[id];
    switch (n.op) {
      case CoreOp::var:
        return {truth_[id].test(w) ? T::t : T::f, {}};
      case CoreOp::not_: {
        Tri a = eval_at(n.a, w);
        if (a.v != T::u) a.v = a.v == T::t ? T::f : T::t;
        return a;
      }
      case CoreOp::and_: {
        Tri a = eval_at(n.a, w);
        if (a.v == T::f) return a;
        Tri b = eval_at(n.b, w);
        if (b.v == T::f) return b;
        if (a.v == T::u) return a;
        return b;
      }
      case CoreOp::pref: {
        const auto& a = eval_set(n.a);
        if (n.a == n.b) {
          if (!a.lo.empty()) return {T::t, {}};
          if (a.hi.empty()) return {T::f, {}};
          blocked_.push_back(n.a);
          return {T::u, a.d};
        }
        const auto& b = eval_set(n.b);
        if (a.hi.empty() || b.hi.empty()) return {T::f, {}};
        if (!a.exact()) blocked_.push_back(n.a);
        if (!b.exact()) blocked_.push_back(n.b);
        if (!a.exact()) return {T::u, a.d};
        if (!b.exact()) return {T::u, b.d};
        return compare_at(w, a.lo, b.lo);
      }
    }
    throw std::logic_error("unhandled core connective");
  }

  /// Node `id` should evaluate to `want` at world `w`.
  struct Target {
    int id;
    std::uint32_t w;
    bool want;
  };

  struct State {
    std::map<Cell, std::uint32_t> picks;
    OrderClosure closure;
    std::vector<std::vector<std::int8_t>> forced;
  };
  State save() const { return {picks_, closure_, forced_}; }
  void restore(const State& s) {
    picks_ = s.picks;
    closure_ = s.closure;
    forced_ = s.forced;
  }

  enum class Probe { none, changed, dead };

  /// For each undecided world of each operand set that blocked the last
  /// evaluation, checks whether membership can still go both ways; a side that
  /// no extension reaches is fixed. This keeps independent worlds from
  /// multiplying each other's search trees.
  Probe probe() {
    std::vector<std::pair<int, std::vector<std::uint32_t>>> open;
    std::sort(blocked_.begin(), blocked_.end());
    blocked_.erase(std::unique(blocked_.begin(), blocked_.end()), blocked_.end());
    for (int id : blocked_) {
      const SetRes& s = eval_set(id);
      open.emplace_back(id, s.hi.minus(s.lo).members());
    }
    bool changed = false;
    for (const auto& [id, worlds] : open)
      for (auto x : worlds) {
        if (forced_[id][x] >= 0) continue;
        State saved = save();
        bool can_in = dfs({id, x, true});
        restore(saved);
        bool can_out = dfs({id, x, false});
        restore(saved);
        if (!can_in && !can_out) return Probe::dead;
        if (!can_in || !can_out) {
          forced_[id][x] = can_in ? 1 : 0;
          changed = true;
        }
      }
    return changed ? Probe::changed : Probe::none;
  }

  bool dfs(const Target& t) {
    for (;;) {
      budget_.tick();
      set_memo_.assign(plan_.nodes.size(), std::nullopt);
      consulted_.clear();
      blocked_.clear();
      Tri r = eval_at(t.id, t.w);
      if (r.v != T::u) return (r.v == T::t) == t.want;
      Probe p = probe();
      if (p == Probe::dead) return false;
      if (p == Probe::changed) continue;
      set_memo_.assign(plan_.nodes.size(), std::nullopt);
      blocked_.clear();
      r = eval_at(t.id, t.w);
      return branch(t, r.d);
    }
  }

  bool branch(const Target& t, const Decision& d) {
    if (d.is_pick) {
      std::vector<std::uint32_t> cs = candidates(d.cell);
      for (auto c : cs) {
        State saved = save();
        picks_[d.cell] = c;
        if (dfs(t)) return true;
        restore(saved);
      }
      return false;
    }
    const ComparisonAtom options[3][2] = {{{d.a, d.b, true}, {d.a, d.b, true}},
                                          {{d.b, d.a, true}, {d.b, d.a, true}},
                                          {{d.a, d.b, false}, {d.b, d.a, false}}};
    for (const auto& opt : options) {
      State saved = save();
      if (closure_.add(opt[0]) && closure_.add(opt[1]) && dfs(t)) return true;
      restore(saved);
    }
    return false;
  }

  Found leaf(std::uint32_t w) {
    Found f{frame_.base, w, {}};
    for (const auto& c : consulted_) {
      f.needed.push_back(c);
      auto it = picks_.find(c);
      f.model.selection.emplace(c, it != picks_.end() ? it->second : candidates(c).front());
    }
    auto ranks = solve_order_constraints(n_, closure_.atoms());
    if (!ranks) throw std::logic_error("internal error: consistent closure has no ranking");
    f.model.utility = *ranks;
    complete_and_verify(f, frame_, plan_.query);
    return f;
  }

  const Plan& plan_;
  const Frame& frame_;
  Budget& budget_;
  std::uint32_t n_;
  std::vector<WorldSet> truth_;
  std::map<Cell, std::vector<std::uint32_t>> cand_;
  std::map<Cell, std::uint32_t> picks_;
  std::set<Cell> consulted_;
  std::vector<int> blocked_;
  /// Per node and world: -1 open, else the value every extension agrees on.
  std::vector<std::vector<std::int8_t>> forced_;
  OrderClosure closure_;
  std::vector<std::optional<SetRes>> set_memo_;
};

/// Reference search: every weak order, every admissible selection on the
/// cells the denotation asks for, evaluated by `denote`.
std::optional<Found> oracle_search(const Plan& plan, const Frame& frame, Budget& budget) {
  if (frame.chooser == Chooser::forced) throw std::invalid_argument("the oracle does not search forced selections");
  std::optional<Found> found;
  Model m = frame.base;
  std::function<bool()> picks = [&]() -> bool {
    budget.tick();
    try {
      Proposition p = denote(m, plan.query);
      if (p.empty()) return false;
      found = Found{m, static_cast<std::uint32_t>(p.first()), {}};
      for (const auto& [c, _] : m.selection) found->needed.push_back(c);
      return true;
    } catch (const MissingSelection& e) {
      Cell c{e.world(), e.prop()};
      for (auto x : frame.candidates(c.world, c.prop, frame.chooser)) {
        m.selection[c] = x;
        if (picks()) return true;
      }
      m.selection.erase(c);
      return false;
    }
  };
  for_each_weak_order(frame.base.size(), [&](const std::vector<std::int64_t>& ranks) {
    m.selection.clear();
    m.utility = ranks;
    return !picks();
  });
  if (found) complete_and_verify(*found, frame, plan.query);
  return found;
}

std::optional<Found> search(const Plan& plan, const Frame& frame, Backend backend, Budget& budget) {
  if (backend == Backend::oracle && frame.chooser != Chooser::forced) return oracle_search(plan, frame, budget);
  return Solver(plan, frame, budget).run();
}

std::vector<std::string> universe_with_extra(const Core& q, std::size_t extra) {
  std::vector<std::string> u = variables(q);
  for (std::size_t i = 0; i < extra; ++i) u.push_back("_e" + std::to_string(i));
  std::sort(u.begin(), u.end());
  if (u.size() > default_powerset_cap)
    throw std::invalid_argument("query needs " + std::to_string(u.size()) + " variables; the cap is " +
                                std::to_string(default_powerset_cap));
  return u;
}

Fingerprint base_fingerprint(const std::string& regime, const EngineConfig& cfg) {
  Fingerprint f;
  f.regime = regime;
  f.backend = cfg.backend == Backend::solver ? "solver" : "oracle";
  return f;
}

Invalid make_invalid(Found f, bool robust, std::string strategy, Fingerprint fp) {
  Invalid inv;
  inv.model = std::move(f.model);
  inv.witness = f.witness;
  inv.weight_robust = robust;
  inv.needed_cells = std::move(f.needed);
  inv.strategy = std::move(strategy);
  inv.fingerprint = std::move(fp);
  return inv;
}

/// Searches for a world satisfying `q`, regime by regime.
struct RegimeSearch {
  const Plan& plan;
  const EngineConfig& cfg;
  Budget budget;

  RegimeSearch(const Plan& p, const EngineConfig& c) : plan(p), cfg(c), budget{c.budget} {}

  std::optional<Found> basic(std::size_t max_worlds) {
    std::optional<Found> out;
    for_each_basic_frame(variables(plan.query), max_worlds, [&](const Frame& f) {
      out = search(plan, f, cfg.backend, budget);
      return !out;
    });
    return out;
  }

  std::optional<Found> delta(std::size_t extra, Chooser chooser, const std::optional<Weighting>& p = std::nullopt) {
    Frame f = make_delta_frame(universe_with_extra(plan.query, extra), chooser, p);
    return search(plan, f, cfg.backend, budget);
  }
};

}  // namespace

std::optional<Invalid> find_countermodel_basic(const Sequent& s, std::size_t max_worlds, const EngineConfig& cfg) {
  Plan plan(query_formula(s, cfg.desugar));
  RegimeSearch rs(plan, cfg);
  auto f = rs.basic(max_worlds);
  if (!f) return std::nullopt;
  Fingerprint fp = base_fingerprint("basic", cfg);
  fp.max_worlds = max_worlds;
  fp.nodes = rs.budget.used;
  return make_invalid(std::move(*f), false, "basic", fp);
}

std::optional<Invalid> find_countermodel_delta(const Sequent& s, std::size_t extra_vars, const EngineConfig& cfg) {
  Plan plan(query_formula(s, cfg.desugar));
  RegimeSearch rs(plan, cfg);
  for (std::size_t e = 0; e <= extra_vars; ++e) {
    if (auto f = rs.delta(e, Chooser::delta)) {
      Fingerprint fp = base_fingerprint("delta", cfg);
      fp.extra_vars = e;
      fp.nodes = rs.budget.used;
      return make_invalid(std::move(*f), false, "delta", fp);
    }
  }
  return std::nullopt;
}

Verdict check_weighted_validity(const Sequent& s, const WeightClass& cls, const std::vector<std::int64_t>& grid,
                                std::size_t extra_vars, const EngineConfig& cfg) {
  Plan plan(query_formula(s, cfg.desugar));
  RegimeSearch rs(plan, cfg);
  Fingerprint fp = base_fingerprint("weighted", cfg);
  fp.grid = describe_grid(grid);
  fp.weight_class = cls.describe();
  try {
    for (std::size_t e = 0; e <= extra_vars; ++e) {
      fp.extra_vars = e;
      if (auto f = rs.delta(e, Chooser::forced)) {
        fp.nodes = rs.budget.used;
        return make_invalid(std::move(*f), true, "robust", fp);
      }
      auto reps = enumerate_weight_orders(universe_with_extra(plan.query, e), cls, grid);
      if (reps.empty()) throw ClassError("weight class '" + cls.describe() + "' has no member on grid " + fp.grid);
      fp.weightings = reps.size();
      for (const auto& p : reps)
        if (auto f = rs.delta(e, Chooser::nearest, p)) {
          fp.nodes = rs.budget.used;
          return make_invalid(std::move(*f), false, "weighting", fp);
        }
    }
  } catch (const BudgetExceeded& ex) {
    fp.nodes = rs.budget.used;
    return QualifiedValid{fp, true, ex.what()};
  }
  fp.nodes = rs.budget.used;
  return Valid{fp};
}

Verdict check_forall_weights_invalidity(const Sequent& s, const std::vector<std::int64_t>& grid,
                                        std::size_t extra_vars, const EngineConfig& cfg) {
  Plan plan(query_formula(s, cfg.desugar));
  RegimeSearch rs(plan, cfg);
  Fingerprint fp = base_fingerprint("weighted", cfg);
  fp.grid = describe_grid(grid);
  try {
    for (std::size_t e = 0; e <= extra_vars; ++e)
      if (auto f = rs.delta(e, Chooser::forced)) {
        fp.extra_vars = e;
        fp.nodes = rs.budget.used;
        return make_invalid(std::move(*f), true, "robust", fp);
      }
    for (std::size_t e = 0; e <= extra_vars; ++e) {
      auto reps = enumerate_weight_orders(universe_with_extra(plan.query, e), WeightClass{}, grid);
      std::optional<Found> first;
      bool all = true;
      for (const auto& p : reps) {
        auto f = rs.delta(e, Chooser::nearest, p);
        if (!f) {
          all = false;
          break;
        }
        if (!first) first = std::move(f);
      }
      if (all && first) {
        fp.extra_vars = e;
        fp.weightings = reps.size();
        fp.nodes = rs.budget.used;
        return make_invalid(std::move(*first), false, "per-weighting", fp);
      }
    }
  } catch (const BudgetExceeded& ex) {
    fp.extra_vars = extra_vars;
    fp.nodes = rs.budget.used;
    return QualifiedValid{fp, true, ex.what()};
  }
  fp.extra_vars = extra_vars;
  fp.nodes = rs.budget.used;
  return QualifiedValid{fp, false, "some weighting admits no countermodel"};
}

Verdict check(const Sequent& s, const Regime& r, const EngineConfig& cfg) {
  if (const auto* w = std::get_if<RegimeWeighted>(&r)) return check_weighted_validity(s, w->cls, w->grid, w->extra_vars, cfg);
  Plan plan(query_formula(s, cfg.desugar));
  RegimeSearch rs(plan, cfg);
  Fingerprint fp;
  try {
    if (const auto* b = std::get_if<RegimeBasic>(&r)) {
      fp = base_fingerprint("basic", cfg);
      fp.max_worlds = b->max_worlds;
      auto f = rs.basic(b->max_worlds);
      fp.nodes = rs.budget.used;
      if (f) return make_invalid(std::move(*f), false, "basic", fp);
      return QualifiedValid{fp, false, "no countermodel up to " + std::to_string(b->max_worlds) + " worlds"};
    }
    const auto& d = std::get<RegimeDelta>(r);
    fp = base_fingerprint("delta", cfg);
    for (std::size_t e = 0; e <= d.extra_vars; ++e) {
      fp.extra_vars = e;
      if (auto f = rs.delta(e, Chooser::delta)) {
        fp.nodes = rs.budget.used;
        return make_invalid(std::move(*f), false, "delta", fp);
      }
    }
    fp.nodes = rs.budget.used;
    return Valid{fp};
  } catch (const BudgetExceeded& ex) {
    fp.nodes = rs.budget.used;
    return QualifiedValid{fp, true, ex.what()};
  }
}

Verdict satisfiable(std::span<const Surface> fs, const Regime& r, const EngineConfig& cfg) {
  Plan plan(conjunction_formula(fs, cfg.desugar));
  RegimeSearch rs(plan, cfg);
  Fingerprint fp;
  auto sat = [&](Found f) {
    fp.nodes = rs.budget.used;
    return Satisfiable{std::move(f.model), f.witness, fp};
  };
  try {
    if (const auto* b = std::get_if<RegimeBasic>(&r)) {
      fp = base_fingerprint("basic", cfg);
      fp.max_worlds = b->max_worlds;
      if (auto f = rs.basic(b->max_worlds)) return sat(std::move(*f));
    } else if (const auto* d = std::get_if<RegimeDelta>(&r)) {
      fp = base_fingerprint("delta", cfg);
      for (std::size_t e = 0; e <= d->extra_vars; ++e) {
        fp.extra_vars = e;
        if (auto f = rs.delta(e, Chooser::delta)) return sat(std::move(*f));
      }
    } else {
      const auto& w = std::get<RegimeWeighted>(r);
      fp = base_fingerprint("weighted", cfg);
      fp.grid = describe_grid(w.grid);
      fp.weight_class = w.cls.describe();
      for (std::size_t e = 0; e <= w.extra_vars; ++e) {
        fp.extra_vars = e;
        for (const auto& p : enumerate_weight_orders(universe_with_extra(plan.query, e), w.cls, w.grid))
          if (auto f = rs.delta(e, Chooser::nearest, p)) return sat(std::move(*f));
      }
    }
  } catch (const BudgetExceeded&) {
    fp.nodes = rs.budget.used;
    return Unsatisfiable{fp, true};
  }
  fp.nodes = rs.budget.used;
  return Unsatisfiable{fp, false};
}

bool reverify(const Invalid& inv, const Core& query) {
  if (!validate_model(inv.model).empty()) return false;
  try {
    return denote(inv.model, query).test(inv.witness);
  } catch (const std::exception&) {
    return false;
  }
}

Model reweight(const Model& m, const Weighting& p) {
  Model out = m;
  auto scaled = p.scaled_by_bit();
  for (auto& [cell, pick] : out.selection) {
    std::vector<std::uint32_t> members = cell.prop.members();
    std::vector<std::uint32_t> masks;
    for (auto x : members) masks.push_back(m.worlds[x]);
    auto nearest = p_nearest_indices(scaled, static_cast<unsigned>(m.universe.size()), m.worlds[cell.world], masks);
    bool ok = std::any_of(nearest.begin(), nearest.end(), [&](std::size_t k) { return members[k] == pick; });
    if (!ok) pick = members[nearest.front()];
  }
  out.weights = p;
  return out;
}

json verdict_to_json(const Verdict& v) {
  json j{{"verdict", verdict_name(v)}};
  std::visit(
      [&](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Valid>) {
          j["fingerprint"] = x.fingerprint.to_json();
        } else if constexpr (std::is_same_v<X, Invalid>) {
          j["fingerprint"] = x.fingerprint.to_json();
          j["model"] = model_to_json(x.model);
          j["witness"] = x.model.world_name(x.witness);
          j["weight_robust"] = x.weight_robust;
          j["strategy"] = x.strategy;
          json cells = json::array();
          for (const auto& c : x.needed_cells) {
            json of = json::array();
            c.prop.for_each([&](std::uint32_t w) { of.push_back(x.model.world_name(w)); });
            cells.push_back({{"at", x.model.world_name(c.world)}, {"of", of}});
          }
          j["needed_cells"] = cells;
        } else if constexpr (std::is_same_v<X, QualifiedValid>) {
          j["fingerprint"] = x.fingerprint.to_json();
          j["budget_limited"] = x.budget_limited;
          j["note"] = x.note;
        } else if constexpr (std::is_same_v<X, Satisfiable>) {
          j["fingerprint"] = x.fingerprint.to_json();
          j["model"] = model_to_json(x.model);
          j["witness"] = x.model.world_name(x.world);
        } else {
          j["fingerprint"] = x.fingerprint.to_json();
          j["budget_limited"] = x.budget_limited;
        }
      },
      v);
  return j;
}

}  // namespace deolog
