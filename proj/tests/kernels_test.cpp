#include <doctest.h>

#include <random>
#include <vector>

#include "deolog/kernels.hpp"

using namespace deolog;

namespace {

std::vector<std::uint64_t> words(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = rng() & rng();
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("active table is one of the known variants") {
    const auto& a = kernels::active();
    CHECK((&a == &kernels::scalar() || &a == kernels::avx2()));
  }

  TEST_CASE("vector kernels match the scalar reference") {
    const kernels::Table* v = kernels::avx2();
    if (!v) {
      MESSAGE("AVX2 unavailable; only the scalar table is exercised");
      v = &kernels::scalar();
    }
    const auto& s = kernels::scalar();
    std::mt19937_64 rng(61);
    for (int iter = 0; iter < 500; ++iter) {
      std::size_t n = rng() % 19;
      auto a = words(rng, n), b = words(rng, n);
      if (iter % 5 == 0) b = a;
      std::vector<std::uint64_t> o1(n), o2(n);
      s.and_words(a.data(), b.data(), o1.data(), n);
      v->and_words(a.data(), b.data(), o2.data(), n);
      REQUIRE(o1 == o2);
      s.or_words(a.data(), b.data(), o1.data(), n);
      v->or_words(a.data(), b.data(), o2.data(), n);
      REQUIRE(o1 == o2);
      s.andnot_words(a.data(), b.data(), o1.data(), n);
      v->andnot_words(a.data(), b.data(), o2.data(), n);
      REQUIRE(o1 == o2);
      REQUIRE(s.is_zero(o1.data(), n) == v->is_zero(o1.data(), n));
      REQUIRE(s.is_subset(a.data(), b.data(), n) == v->is_subset(a.data(), b.data(), n));
      REQUIRE(s.is_subset(o1.data(), a.data(), n) == v->is_subset(o1.data(), a.data(), n));
      REQUIRE(s.popcount(a.data(), n) == v->popcount(a.data(), n));

      std::size_t worlds = rng() % 300;
      std::vector<std::int32_t> rank(worlds + 1), left(worlds), right(worlds);
      for (auto& r : rank) r = static_cast<std::int32_t>(rng() % 7) - 3;
      for (std::size_t i = 0; i < worlds; ++i) {
        left[i] = static_cast<std::int32_t>(rng() % rank.size());
        right[i] = static_cast<std::int32_t>(rng() % rank.size());
      }
      std::size_t nw = (worlds + 63) / 64;
      std::vector<std::uint64_t> g1(nw, ~0ull), g2(nw, ~0ull);
      s.pref_geq(rank.data(), left.data(), right.data(), worlds, g1.data());
      v->pref_geq(rank.data(), left.data(), right.data(), worlds, g2.data());
      REQUIRE(g1 == g2);

      unsigned nbits = 1 + static_cast<unsigned>(rng() % 12);
      std::uint32_t mask = (1u << nbits) - 1;
      std::size_t k = rng() % 40;
      std::uint32_t base = static_cast<std::uint32_t>(rng()) & mask;
      std::vector<std::uint32_t> cand(k);
      for (auto& c : cand) c = static_cast<std::uint32_t>(rng()) & mask;
      std::vector<std::uint8_t> d1(k), d2(k);
      s.delta_dominated(base, cand.data(), k, d1.data());
      v->delta_dominated(base, cand.data(), k, d2.data());
      REQUIRE(d1 == d2);
      std::vector<std::int64_t> weight(nbits), w1(k), w2(k);
      for (auto& x : weight) x = 1 + static_cast<std::int64_t>(rng() % 1000);
      s.weighted_distance(base, cand.data(), k, weight.data(), nbits, w1.data());
      v->weighted_distance(base, cand.data(), k, weight.data(), nbits, w2.data());
      REQUIRE(w1 == w2);
    }
  }

  TEST_CASE("scalar reference on hand-made inputs") {
    const auto& s = kernels::scalar();
    std::int32_t rank[] = {3, 1, 2};
    std::int32_t left[] = {0, 1, 2};
    std::int32_t right[] = {1, 0, 2};
    std::uint64_t out = ~0ull;
    s.pref_geq(rank, left, right, 3, &out);
    CHECK(out == 0b101);

    std::uint32_t cand[] = {0b10, 0b01, 0b11};
    std::uint8_t dom[3];
    s.delta_dominated(0b00, cand, 3, dom);
    CHECK(dom[0] == 0);
    CHECK(dom[1] == 0);
    CHECK(dom[2] == 1);
    std::int64_t weight[] = {1, 2};
    std::int64_t dist[3];
    s.weighted_distance(0b00, cand, 3, weight, 2, dist);
    CHECK(dist[0] + dist[1] == 3);
    CHECK(dist[2] == 3);
  }
}
