#include "deolog/random.hpp"

#include <algorithm>
#include <stdexcept>

#include "deolog/selection.hpp"

namespace deolog {

namespace {

constexpr std::size_t max_total_selection_worlds = 8;

std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

class FormulaMaker {
 public:
  FormulaMaker(Rng& rng, const FormulaShape& s) : rng_(rng), s_(s), left_(s.max_size) {}

  Surface make(unsigned depth) {
    if (left_ == 0 || below(rng_, 4) == 0) return leaf();
    --left_;
    static const Op boolean[] = {Op::not_, Op::and_, Op::or_, Op::implies, Op::iff};
    static const Op modal[] = {Op::box, Op::diamond, Op::pref_weak, Op::pref_strict, Op::pref_eq,
                               Op::pref_weak_rev, Op::pref_strict_rev};
    static const Op deontic[] = {Op::oblig, Op::perm, Op::cond_oblig};
    std::vector<Op> ops(std::begin(boolean), std::end(boolean));
    if (depth < s_.max_modal_depth) {
      ops.insert(ops.end(), std::begin(modal), std::end(modal));
      if (s_.deontic) ops.insert(ops.end(), std::begin(deontic), std::end(deontic));
    }
    Op op = ops[below(rng_, ops.size())];
    unsigned next = depth + (is_boolean(op) ? 0 : 1);
    if (arity(op) == 1) return Surface::unary(op, make(next));
    Surface a = make(next);
    return Surface::binary(op, a, make(next));
  }

 private:
  static bool is_boolean(Op op) {
    return op == Op::not_ || op == Op::and_ || op == Op::or_ || op == Op::implies || op == Op::iff;
  }
  Surface leaf() {
    if (s_.constants && below(rng_, 8) == 0) return below(rng_, 2) ? Surface::top() : Surface::bot();
    return Surface::var(s_.vars[below(rng_, s_.vars.size())]);
  }

  Rng& rng_;
  const FormulaShape& s_;
  unsigned left_;
};

void fill_utility(Rng& rng, Model& m, std::int64_t max_utility) {
  std::uniform_int_distribution<std::int64_t> u(0, max_utility);
  m.utility.resize(m.size());
  for (auto& x : m.utility) x = u(rng);
}

template <typename Pick>
void fill_selection(Model& m, Pick pick) {
  const std::size_t n = m.size();
  if (n > max_total_selection_worlds) throw std::invalid_argument("too many worlds for a total selection");
  for (std::uint32_t w = 0; w < n; ++w)
    for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
      Proposition a(n);
      std::vector<std::uint32_t> members;
      for (std::uint32_t i = 0; i < n; ++i)
        if (bits >> i & 1u) {
          a.set(i);
          members.push_back(i);
        }
      m.selection.emplace(Cell{w, a}, pick(w, members));
    }
}

}  // namespace

Surface random_formula(Rng& rng, const FormulaShape& shape) {
  if (shape.vars.empty()) throw std::invalid_argument("formula shape needs variables");
  return FormulaMaker(rng, shape).make(0);
}

Sequent random_sequent(Rng& rng, const FormulaShape& shape, std::size_t max_premises) {
  Sequent s{{}, random_formula(rng, shape)};
  std::size_t k = below(rng, max_premises + 1);
  for (std::size_t i = 0; i < k; ++i) s.premises.push_back(random_formula(rng, shape));
  return s;
}

Model random_delta_model(Rng& rng, const std::vector<std::string>& universe, std::int64_t max_utility) {
  if (universe.size() > 3) throw std::invalid_argument("random delta models take at most 3 variables");
  Model m;
  m.universe = universe;
  m.mode = Mode::delta;
  for (const auto& w : powerset_worlds(universe.size())) m.worlds.push_back(w.members);
  fill_utility(rng, m, max_utility);
  fill_selection(m, [&](std::uint32_t w, const std::vector<std::uint32_t>& members) {
    std::vector<std::uint32_t> masks;
    for (auto i : members) masks.push_back(m.worlds[i]);
    auto best = delta_minimal_indices(m.worlds[w], masks);
    return members[best[below(rng, best.size())]];
  });
  return m;
}

Model random_basic_model(Rng& rng, const std::vector<std::string>& universe, std::size_t max_worlds,
                         std::int64_t max_utility) {
  const std::size_t all = std::size_t{1} << universe.size();
  if (universe.size() > 8) throw std::invalid_argument("universe too large");
  std::vector<std::uint32_t> masks(all);
  for (std::size_t i = 0; i < all; ++i) masks[i] = static_cast<std::uint32_t>(i);
  std::shuffle(masks.begin(), masks.end(), rng);
  std::size_t k = 1 + below(rng, std::min(max_worlds, all));
  Model m;
  m.universe = universe;
  m.worlds.assign(masks.begin(), masks.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(m.worlds.begin(), m.worlds.end());
  fill_utility(rng, m, max_utility);
  fill_selection(m, [&](std::uint32_t, const std::vector<std::uint32_t>& members) {
    return members[below(rng, members.size())];
  });
  return m;
}

Weighting random_weighting(Rng& rng, const std::vector<std::string>& universe, std::int64_t max_weight) {
  std::uniform_int_distribution<std::int64_t> d(1, max_weight);
  Weighting p;
  p.universe = universe;
  for (std::size_t i = 0; i < universe.size(); ++i) p.weight.emplace_back(d(rng));
  return p;
}

}  // namespace deolog
