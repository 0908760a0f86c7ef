#include "deolog/model.hpp"

#include <algorithm>
#include <unordered_map>

#include "deolog/kernels.hpp"
#include "deolog/selection.hpp"

namespace deolog {

std::optional<std::uint32_t> Model::find_world(std::uint32_t mask) const {
  auto it = std::lower_bound(worlds.begin(), worlds.end(), mask);
  if (it == worlds.end() || *it != mask) return std::nullopt;
  return static_cast<std::uint32_t>(it - worlds.begin());
}

std::optional<std::size_t> Model::var_index(const std::string& name) const {
  auto it = std::lower_bound(universe.begin(), universe.end(), name);
  if (it == universe.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - universe.begin());
}

Proposition Model::truth(std::size_t var_index) const {
  Proposition p(worlds.size());
  std::uint32_t bit = var_bit(var_index, universe.size());
  for (std::uint32_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] & bit) p.set(i);
  return p;
}

Proposition Model::make_prop(const std::vector<std::uint32_t>& members) const {
  Proposition p(worlds.size());
  for (auto w : members) p.set(w);
  return p;
}

std::vector<World> Model::worlds_of(const Proposition& p) const {
  std::vector<World> out;
  p.for_each([&](std::uint32_t i) { out.push_back(world(i)); });
  return out;
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Model& m) : m_(m), rank_(dense_ranks(m.utility)) {}

  Proposition eval(const Core& f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    Proposition r = compute(f);
    memo_.emplace(f, r);
    return r;
  }

 private:
  static std::vector<std::int32_t> dense_ranks(const std::vector<std::int64_t>& u) {
    std::vector<std::int64_t> sorted = u;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::int32_t> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      r[i] = static_cast<std::int32_t>(std::lower_bound(sorted.begin(), sorted.end(), u[i]) -
                                       sorted.begin());
    return r;
  }

  std::int32_t pick(std::uint32_t w, const Proposition& a) const {
    auto it = m_.selection.find(Cell{w, a});
    if (it == m_.selection.end()) {
      std::string members;
      a.for_each([&](std::uint32_t x) { members += (members.empty() ? "" : ",") + m_.world_name(x); });
      throw MissingSelection("missing selection at world " + m_.world_name(w) + " for {" + members + "}",
                             w, a);
    }
    return static_cast<std::int32_t>(it->second);
  }

  Proposition compute(const Core& f) {
    const std::size_t n = m_.size();
    switch (f.op()) {
      case CoreOp::var: {
        auto idx = m_.var_index(f.name());
        if (!idx) throw UnknownVariable("variable '" + f.name() + "' is not in the model universe");
        return m_.truth(*idx);
      }
      case CoreOp::not_:
        return eval(f.child()).complement();
      case CoreOp::and_:
        return eval(f.left()) & eval(f.right());
      case CoreOp::pref: {
        Proposition a = eval(f.left());
        Proposition b = eval(f.right());
        Proposition out(n);
        if (a.empty() || b.empty()) return out;
        std::vector<std::int32_t> left(n), right(n);
        for (std::uint32_t w = 0; w < n; ++w) {
          left[w] = pick(w, a);
          right[w] = pick(w, b);
        }
        kernels::active().pref_geq(rank_.data(), left.data(), right.data(), n, out.data());
        return out;
      }
    }
    throw std::logic_error("unhandled core connective");
  }

  const Model& m_;
  std::vector<std::int32_t> rank_;
  std::unordered_map<Core, Proposition, CoreHash> memo_;
};

}  // namespace

Proposition denote(const Model& m, const Core& f) {
  if (m.utility.size() != m.size()) throw std::invalid_argument("utility is not total on worlds");
  return Evaluator(m).eval(f);
}

bool holds_at(const Model& m, const Core& f, std::uint32_t world) {
  if (world >= m.size()) throw std::out_of_range("world index out of range");
  return denote(m, f).test(world);
}

std::vector<std::string> validate_model(const Model& m) {
  std::vector<std::string> v;
  const std::size_t n = m.universe.size();
  if (n == 0 || n > max_universe) v.push_back("universe must have 1.." + std::to_string(max_universe) + " variables");
  for (std::size_t i = 0; i < m.universe.size(); ++i) {
    const auto& name = m.universe[i];
    if (!is_valid_variable_name(name) && !is_reserved_variable_name(name))
      v.push_back("bad variable name '" + name + "'");
    if (i && !(m.universe[i - 1] < name)) v.push_back("universe not strictly sorted at '" + name + "'");
  }
  if (m.worlds.empty()) v.push_back("model has no worlds");
  for (std::size_t i = 0; i < m.worlds.size(); ++i) {
    if (n < 32 && m.worlds[i] >> n) v.push_back("world " + std::to_string(i) + " outside the universe");
    if (i && m.worlds[i - 1] >= m.worlds[i]) v.push_back("worlds not strictly ascending at index " + std::to_string(i));
  }
  if (m.utility.size() != m.worlds.size()) v.push_back("utility is not total on worlds");
  if (!v.empty()) return v;

  if (m.mode == Mode::delta) {
    if (n > default_powerset_cap || m.worlds.size() != (std::size_t{1} << n))
      v.push_back("delta model must contain every subset of the universe");
  }
  std::vector<std::int64_t> scaled;
  if (m.weights) {
    try {
      m.weights->check();
      if (m.weights->universe != m.universe) v.push_back("weights do not cover exactly the universe");
      else scaled = m.weights->scaled_by_bit();
    } catch (const std::exception& e) {
      v.push_back(e.what());
    }
  }
  for (const auto& [cell, pick] : m.selection) {
    std::string at = cell.world < m.size() ? m.world_name(cell.world) : std::to_string(cell.world);
    if (cell.world >= m.size()) {
      v.push_back("selection base world out of range: " + at);
      continue;
    }
    if (cell.prop.capacity() != m.size()) {
      v.push_back("selection proposition at " + at + " has wrong capacity");
      continue;
    }
    if (cell.prop.empty()) {
      v.push_back("selection from the empty proposition at " + at);
      continue;
    }
    if (pick >= m.size() || !cell.prop.test(pick)) {
      v.push_back("selection at " + at + " picks a world outside its proposition");
      continue;
    }
    std::vector<std::uint32_t> members = cell.prop.members();
    std::vector<std::uint32_t> masks;
    masks.reserve(members.size());
    for (auto x : members) masks.push_back(m.worlds[x]);
    if (m.mode == Mode::delta) {
      auto minimal = delta_minimal_indices(m.worlds[cell.world], masks);
      bool ok = std::any_of(minimal.begin(), minimal.end(),
                            [&](std::size_t k) { return members[k] == pick; });
      if (!ok) v.push_back("selection at " + at + " picking " + m.world_name(pick) + " is not delta-based");
    }
    if (!scaled.empty()) {
      auto nearest = p_nearest_indices(scaled, static_cast<unsigned>(n), m.worlds[cell.world], masks);
      bool ok = std::any_of(nearest.begin(), nearest.end(),
                            [&](std::size_t k) { return members[k] == pick; });
      if (!ok) v.push_back("selection at " + at + " picking " + m.world_name(pick) + " is not weight-nearest");
    }
  }
  return v;
}

}  // namespace deolog
