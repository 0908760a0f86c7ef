#include "deolog/selection.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "deolog/kernels.hpp"

namespace deolog {

std::vector<std::size_t> delta_minimal_indices(std::uint32_t base, const std::vector<std::uint32_t>& cand) {
  if (cand.empty()) throw std::invalid_argument("selection from the empty proposition");
  std::vector<std::uint8_t> dominated(cand.size());
  kernels::active().delta_dominated(base, cand.data(), cand.size(), dominated.data());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (!dominated[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> p_nearest_indices(const std::vector<std::int64_t>& weight_by_bit, unsigned nbits,
                                           std::uint32_t base, const std::vector<std::uint32_t>& cand) {
  if (cand.empty()) throw std::invalid_argument("selection from the empty proposition");
  std::vector<std::int64_t> dist(cand.size());
  kernels::active().weighted_distance(base, cand.data(), cand.size(), weight_by_bit.data(), nbits, dist.data());
  std::int64_t best = *std::min_element(dist.begin(), dist.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (dist[i] == best) out.push_back(i);
  return out;
}

std::optional<std::size_t> forced_index(std::uint32_t base, const std::vector<std::uint32_t>& cand) {
  if (cand.empty()) throw std::invalid_argument("selection from the empty proposition");
  // The candidate with the fewest differences is the only one that can be
  // contained in all the others.
  std::size_t best = 0;
  for (std::size_t i = 1; i < cand.size(); ++i)
    if (std::popcount(base ^ cand[i]) < std::popcount(base ^ cand[best])) best = i;
  std::uint32_t d = base ^ cand[best];
  for (auto c : cand)
    if (d & ~(base ^ c)) return std::nullopt;
  return best;
}

namespace {

std::vector<std::uint32_t> masks_of(World w, const std::vector<World>& A) {
  std::vector<std::uint32_t> out;
  out.reserve(A.size());
  for (const auto& x : A) {
    if (x.width != w.width) throw UniverseMismatch("worlds over different universes");
    out.push_back(x.members);
  }
  return out;
}

std::vector<World> pick(const std::vector<World>& A, const std::vector<std::size_t>& idx) {
  std::vector<World> out;
  for (auto i : idx) out.push_back(A[i]);
  return out;
}

}  // namespace

std::vector<World> delta_minimal(World w, const std::vector<World>& A) {
  return pick(A, delta_minimal_indices(w.members, masks_of(w, A)));
}

bool is_delta_based(const Model& m) {
  for (const auto& [cell, choice] : m.selection) {
    std::vector<std::uint32_t> masks;
    std::vector<std::uint32_t> members = cell.prop.members();
    for (auto x : members) masks.push_back(m.worlds[x]);
    if (masks.empty()) return false;
    auto minimal = delta_minimal_indices(m.worlds[cell.world], masks);
    if (std::none_of(minimal.begin(), minimal.end(), [&](std::size_t k) { return members[k] == choice; }))
      return false;
  }
  return true;
}

Rational weighted_distance(const Weighting& p, World w0, World w1) {
  World d = symmetric_difference(w0, w1);
  if (p.universe.size() != d.width) throw UniverseMismatch("weighting over a different universe");
  Rational sum(0);
  for (std::size_t i = 0; i < d.width; ++i)
    if (d.contains(i)) sum += p.weight[i];
  return sum;
}

std::vector<World> p_nearest(const Weighting& p, World w, const std::vector<World>& A) {
  if (p.universe.size() != w.width) throw UniverseMismatch("weighting over a different universe");
  return pick(A, p_nearest_indices(p.scaled_by_bit(), w.width, w.members, masks_of(w, A)));
}

std::optional<World> forced_choice(World w, const std::vector<World>& A) {
  auto i = forced_index(w.members, masks_of(w, A));
  if (!i) return std::nullopt;
  return A[*i];
}

bool WeightClass::admits(const Weighting& p) const {
  auto find = [&](const std::string& v) -> const Rational* {
    for (std::size_t i = 0; i < p.universe.size(); ++i)
      if (p.universe[i] == v) return &p.weight[i];
    return nullptr;
  };
  for (const auto& [a, b] : greater) {
    const Rational* wa = find(a);
    const Rational* wb = find(b);
    if (wa && wb && !(*wa > *wb)) return false;
  }
  return true;
}

std::string WeightClass::describe() const {
  std::string s;
  for (const auto& [a, b] : greater) s += (s.empty() ? "" : ",") + a + ">" + b;
  return s;
}

WeightClass parse_weight_class(std::string_view text) {
  WeightClass cls;
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t += c;
  if (t.empty()) return cls;
  std::stringstream ss(t);
  std::string atom;
  while (std::getline(ss, atom, ',')) {
    auto gt = atom.find('>');
    if (gt == std::string::npos) throw ClassError("weight constraint '" + atom + "' lacks '>'");
    std::string a = atom.substr(0, gt), b = atom.substr(gt + 1);
    if (!is_valid_variable_name(a) || !is_valid_variable_name(b))
      throw ClassError("bad weight constraint '" + atom + "'");
    if (a == b) throw ClassError("weight constraint '" + atom + "' is unsatisfiable");
    cls.greater.emplace_back(a, b);
  }
  // Reject cycles: repeatedly strip variables with no outgoing constraint.
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [a, b] : cls.greater) {
    out[a].insert(b);
    out[b];
  }
  while (!out.empty()) {
    auto it = std::find_if(out.begin(), out.end(), [](const auto& kv) { return kv.second.empty(); });
    if (it == out.end()) throw ClassError("weight class '" + std::string(text) + "' is cyclic");
    std::string v = it->first;
    out.erase(it);
    for (auto& kv : out) kv.second.erase(v);
  }
  return cls;
}

std::vector<std::int64_t> parse_grid(std::string_view text) {
  auto num = [&](std::string_view s) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("bad grid '" + std::string(text) + "'");
    std::int64_t v = std::stoll(std::string(s));
    if (v <= 0) throw std::invalid_argument("grid values must be positive");
    return v;
  };
  std::vector<std::int64_t> g;
  auto dots = text.find("..");
  if (dots != std::string_view::npos) {
    std::int64_t lo = num(text.substr(0, dots)), hi = num(text.substr(dots + 2));
    if (lo > hi || hi - lo > 1000) throw std::invalid_argument("bad grid range '" + std::string(text) + "'");
    for (std::int64_t v = lo; v <= hi; ++v) g.push_back(v);
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto comma = text.find(',', start);
      if (comma == std::string_view::npos) comma = text.size();
      g.push_back(num(text.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

std::string describe_grid(const std::vector<std::int64_t>& grid) {
  bool contiguous = grid.size() > 2;
  for (std::size_t i = 1; i < grid.size() && contiguous; ++i) contiguous = grid[i] == grid[i - 1] + 1;
  if (contiguous) return std::to_string(grid.front()) + ".." + std::to_string(grid.back());
  std::string s;
  for (auto v : grid) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

std::vector<Weighting> enumerate_weight_orders(const std::vector<std::string>& universe, const WeightClass& cls,
                                               const std::vector<std::int64_t>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty weight grid");
  const std::size_t n = universe.size();
  if (n == 0 || n > 6) throw std::invalid_argument("weight enumeration supports 1..6 variables");
  std::vector<Weighting> out;
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<std::size_t> digit(n, 0);
  std::vector<std::int64_t> sums(std::size_t{1} << n);
  for (;;) {
    Weighting p{universe, {}};
    for (std::size_t i = 0; i < n; ++i) p.weight.emplace_back(grid[digit[i]]);
    if (cls.admits(p)) {
      for (std::size_t s = 0; s < sums.size(); ++s) {
        std::int64_t t = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (s >> i & 1u) t += grid[digit[i]];
        sums[s] = t;
      }
      std::vector<std::int64_t> sorted = sums;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      std::vector<std::uint8_t> key(sums.size());
      for (std::size_t s = 0; s < sums.size(); ++s)
        key[s] = static_cast<std::uint8_t>(std::lower_bound(sorted.begin(), sorted.end(), sums[s]) - sorted.begin());
      if (seen.insert(std::move(key)).second) out.push_back(std::move(p));
    }
    std::size_t i = n;
    while (i > 0 && ++digit[i - 1] == grid.size()) digit[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace deolog
