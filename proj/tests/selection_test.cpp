#include <doctest.h>

#include <algorithm>
#include <set>

#include "deolog/random.hpp"
#include "deolog/selection.hpp"
#include "helpers.hpp"

using namespace deolog;

namespace {

World w(const char* name) { return parse_world_name(name); }

std::vector<World> ws(std::initializer_list<const char*> xs) {
  std::vector<World> out;
  for (auto x : xs) out.push_back(w(x));
  return out;
}

Weighting weights(std::vector<std::string> universe, std::vector<std::int64_t> ws) {
  Weighting p;
  p.universe = std::move(universe);
  for (auto x : ws) p.weight.emplace_back(x);
  return p;
}

std::vector<World> sorted(std::vector<World> v) {
  std::sort(v.begin(), v.end(), [](const World& a, const World& b) { return a.members < b.members; });
  return v;
}

bool subset(const std::vector<World>& a, const std::vector<World>& b) {
  return std::all_of(a.begin(), a.end(), [&](const World& x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

std::vector<World> random_prop(Rng& rng, std::size_t n) {
  auto all = powerset_worlds(n);
  std::vector<World> a;
  for (const auto& x : all)
    if (rng() % 2) a.push_back(x);
  if (a.empty()) a.push_back(all[rng() % all.size()]);
  return a;
}

}  // namespace

TEST_SUITE("selection") {
  TEST_CASE("delta_minimal") {
    // universe [p, q]
    CHECK(sorted(delta_minimal(w("00"), ws({"10", "01", "11"}))) == ws({"01", "10"}));
    CHECK(delta_minimal(w("01"), ws({"00", "01", "11"})) == ws({"01"}));
    CHECK(delta_minimal(w("11"), ws({"10"})) == ws({"10"}));
    CHECK(delta_minimal(w("11"), ws({"10", "00"})) == ws({"10"}));
  }

  TEST_CASE("is_delta_based") {
    Model m = testing::appendix_model();
    CHECK(is_delta_based(m));
    Model empty = m;
    empty.selection.clear();
    CHECK(is_delta_based(empty));
    Model bad = m;
    Proposition notq = bad.make_prop({*m.find_world(0b00), *m.find_world(0b10)});
    bad.selection[Cell{*m.find_world(0b11), notq}] = *m.find_world(0b00);
    CHECK(!is_delta_based(bad));
  }

  TEST_CASE("weighted distance") {
    auto p = weights({"p", "q"}, {1, 2});
    CHECK(weighted_distance(p, w("10"), w("01")) == Rational(3));
    CHECK(weighted_distance(p, w("11"), w("11")) == Rational(0));
    auto p3 = weights({"p", "q", "r"}, {1, 2, 4});
    CHECK(weighted_distance(p3, w("000"), w("111")) == Rational(7));
  }

  TEST_CASE("p_nearest") {
    auto p = weights({"p", "q"}, {1, 2});
    CHECK(p_nearest(p, w("00"), ws({"10", "01"})) == ws({"10"}));
    CHECK(p_nearest(p, w("01"), ws({"01", "10"})) == ws({"01"}));
    auto even = weights({"p", "q"}, {1, 1});
    CHECK(sorted(p_nearest(even, w("00"), ws({"10", "01"}))) == ws({"01", "10"}));
  }

  TEST_CASE("forced_choice") {
    CHECK(forced_choice(w("01"), ws({"00", "01", "11"})) == w("01"));
    CHECK(!forced_choice(w("00"), ws({"10", "01"})));
    CHECK(forced_choice(w("01"), ws({"10", "11"})) == w("11"));
  }

  TEST_CASE("weight classes and grids") {
    auto cls = parse_weight_class("q>p,q>r");
    CHECK(cls.greater.size() == 2);
    CHECK(cls.admits(weights({"p", "q", "r"}, {1, 3, 2})));
    CHECK(!cls.admits(weights({"p", "q", "r"}, {3, 3, 2})));
    CHECK(cls.admits(weights({"p", "q"}, {1, 2})));
    CHECK_THROWS_AS(parse_weight_class("p>q,q>p"), ClassError);
    CHECK_THROWS_AS(parse_weight_class("p>p"), ClassError);
    CHECK_THROWS_AS(parse_weight_class("p=q"), ClassError);
    CHECK(parse_weight_class("").empty());
    CHECK(parse_grid("1..4") == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(parse_grid("1,2,5") == std::vector<std::int64_t>{1, 2, 5});
    CHECK_THROWS(parse_grid("0..3"));
    CHECK_THROWS(parse_grid("4..2"));
  }

  TEST_CASE("enumerate_weight_orders") {
    auto two = enumerate_weight_orders({"p", "q"}, {}, {1, 2});
    CHECK(two.size() == 3);

    auto cls = parse_weight_class("q>p,q>r");
    auto three = enumerate_weight_orders({"p", "q", "r"}, cls, parse_grid("1..9"));
    auto wider = enumerate_weight_orders({"p", "q", "r"}, cls, parse_grid("1..12"));
    CHECK(three.size() == wider.size());
    bool below = false, above = false;
    for (const auto& p : three) {
      CHECK(cls.admits(p));
      auto s = p.weight[0] + p.weight[2];
      below = below || s < p.weight[1];
      above = above || s > p.weight[1];
    }
    CHECK(below);
    CHECK(above);
  }

  TEST_CASE("nearest picks are delta-minimal and forced picks are nearest") {
    Rng rng(21);
    for (int i = 0; i < 1000; ++i) {
      std::size_t n = 1 + rng() % 4;
      std::vector<std::string> universe;
      for (std::size_t k = 0; k < n; ++k) universe.push_back(std::string(1, static_cast<char>('p' + k)));
      Weighting p = random_weighting(rng, universe);
      auto all = powerset_worlds(n);
      World base = all[rng() % all.size()];
      auto a = random_prop(rng, n);
      auto near = p_nearest(p, base, a);
      auto delta = delta_minimal(base, a);
      REQUIRE(!near.empty());
      REQUIRE(subset(near, delta));
      if (auto f = forced_choice(base, a)) {
        REQUIRE(std::find(near.begin(), near.end(), *f) != near.end());
        REQUIRE(delta == std::vector<World>{*f});
      }
      if (std::find(a.begin(), a.end(), base) != a.end()) {
        REQUIRE(delta == std::vector<World>{base});
        REQUIRE(near == std::vector<World>{base});
      }
    }
  }

  TEST_CASE("weighted distance is a metric") {
    Rng rng(23);
    for (int i = 0; i < 500; ++i) {
      std::vector<std::string> universe = {"p", "q", "r"};
      Weighting p = random_weighting(rng, universe);
      auto all = powerset_worlds(3);
      World a = all[rng() % 8], b = all[rng() % 8], c = all[rng() % 8];
      REQUIRE(weighted_distance(p, a, b) == weighted_distance(p, b, a));
      REQUIRE((weighted_distance(p, a, b) == Rational(0)) == (a == b));
      REQUIRE(weighted_distance(p, a, c) <= weighted_distance(p, a, b) + weighted_distance(p, b, c));
    }
  }
}
