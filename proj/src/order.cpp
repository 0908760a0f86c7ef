#include "deolog/order.hpp"

#include <algorithm>
#include <stdexcept>

namespace deolog {

namespace {

struct Edge {
  std::uint32_t to;
  bool strict;
};

class Tarjan {
 public:
  explicit Tarjan(const std::vector<std::vector<Edge>>& g)
      : g_(g), index_(g.size(), -1), low_(g.size(), 0), on_(g.size(), false), comp_(g.size(), -1) {
    for (std::uint32_t v = 0; v < g.size(); ++v)
      if (index_[v] < 0) visit(v);
  }
  const std::vector<int>& components() const { return comp_; }
  int count() const { return ncomp_; }

 private:
  void visit(std::uint32_t v) {
    index_[v] = low_[v] = counter_++;
    stack_.push_back(v);
    on_[v] = true;
    for (const auto& e : g_[v]) {
      if (index_[e.to] < 0) {
        visit(e.to);
        low_[v] = std::min(low_[v], low_[e.to]);
      } else if (on_[e.to]) {
        low_[v] = std::min(low_[v], index_[e.to]);
      }
    }
    if (low_[v] == index_[v]) {
      std::uint32_t w;
      do {
        w = stack_.back();
        stack_.pop_back();
        on_[w] = false;
        comp_[w] = ncomp_;
      } while (w != v);
      ++ncomp_;
    }
  }

  const std::vector<std::vector<Edge>>& g_;
  std::vector<int> index_, low_;
  std::vector<bool> on_;
  std::vector<int> comp_;
  std::vector<std::uint32_t> stack_;
  int counter_ = 0;
  int ncomp_ = 0;
};

}  // namespace

std::optional<std::vector<std::int64_t>> solve_order_constraints(std::size_t n, std::span<const ComparisonAtom> atoms) {
  std::vector<std::vector<Edge>> g(n);
  for (const auto& a : atoms) {
    if (a.left >= n || a.right >= n) throw std::out_of_range("comparison atom names an unknown world");
    if (a.left == a.right) {
      if (a.strict) return std::nullopt;
      continue;
    }
    g[a.left].push_back({a.right, a.strict});
  }
  Tarjan t(g);
  const auto& comp = t.components();
  const int k = t.count();
  std::vector<std::uint32_t> least(k, static_cast<std::uint32_t>(n));
  for (std::uint32_t v = 0; v < n; ++v) least[comp[v]] = std::min(least[comp[v]], v);
  std::vector<std::vector<int>> succ(k);
  std::vector<int> indeg(k, 0);
  for (std::uint32_t v = 0; v < n; ++v)
    for (const auto& e : g[v]) {
      if (comp[v] == comp[e.to]) {
        if (e.strict) return std::nullopt;
        continue;
      }
      succ[comp[v]].push_back(comp[e.to]);
      ++indeg[comp[e.to]];
    }
  // Top-down: components nobody is required to beat get the highest ranks.
  std::vector<std::int64_t> comp_rank(k, 0);
  std::vector<int> ready;
  for (int c = 0; c < k; ++c)
    if (indeg[c] == 0) ready.push_back(c);
  std::int64_t next = k - 1;
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end(), [&](int a, int b) { return least[a] < least[b]; });
    int c = *it;
    ready.erase(it);
    comp_rank[c] = next--;
    for (int d : succ[c])
      if (--indeg[d] == 0) ready.push_back(d);
  }
  std::vector<std::int64_t> rank(n);
  for (std::uint32_t v = 0; v < n; ++v) rank[v] = comp_rank[comp[v]];
  return rank;
}

OrderClosure::OrderClosure(std::size_t n) : n_(n), rel_(n * n, none) {
  for (std::size_t i = 0; i < n; ++i) rel_[i * n + i] = weak;
}

bool OrderClosure::add(const ComparisonAtom& atom) {
  const std::uint32_t x = atom.left, y = atom.right;
  const Rel e = atom.strict ? strict : weak;
  if (rel(y, x) == strict || (e == strict && rel(y, x) != none)) return false;
  atoms_.push_back(atom);
  if (rel(x, y) >= e) return true;
  // Every i above x now sits above every j below y.
  std::vector<std::uint32_t> above, below;
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (rel(i, x) != none) above.push_back(i);
    if (rel(y, i) != none) below.push_back(i);
  }
  for (auto i : above)
    for (auto j : below) {
      Rel r = std::max({rel(i, x), e, rel(y, j)});
      Rel& cur = rel_[i * n_ + j];
      if (r > cur) cur = r;
    }
  for (std::size_t i = 0; i < n_; ++i)
    if (rel_[i * n_ + i] == strict) return false;
  return true;
}

void for_each_weak_order(std::size_t n, const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  if (n > max_bruteforce_worlds)
    throw std::invalid_argument("weak-order enumeration is capped at " + std::to_string(max_bruteforce_worlds) +
                                " worlds");
  if (n == 0) {
    visit({});
    return;
  }
  std::vector<std::int64_t> rank(n);
  std::vector<std::size_t> used;
  bool stop = false;
  for (std::size_t m = 1; m <= n && !stop; ++m) {
    used.assign(m, 0);
    std::size_t missing = m;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (stop) return;
      if (i == n) {
        if (!visit(rank)) stop = true;
        return;
      }
      for (std::size_t r = 0; r < m && !stop; ++r) {
        bool fresh = used[r] == 0;
        if (missing - (fresh ? 1 : 0) > n - i - 1) continue;
        rank[i] = static_cast<std::int64_t>(r);
        if (used[r]++ == 0) --missing;
        self(self, i + 1);
        if (--used[r] == 0) ++missing;
      }
    };
    rec(rec, 0);
  }
}

std::vector<std::vector<std::int64_t>> bruteforce_weak_orders(std::size_t n) {
  std::vector<std::vector<std::int64_t>> out;
  for_each_weak_order(n, [&](const std::vector<std::int64_t>& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

}  // namespace deolog
