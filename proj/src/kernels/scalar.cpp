#include <bit>

#include "deolog/kernels.hpp"

namespace deolog::kernels {

namespace {

void and_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void or_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & ~b[i];
}

bool is_zero(const std::uint64_t* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) return false;
  return true;
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t popcount(const std::uint64_t* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

void pref_geq(const std::int32_t* rank, const std::int32_t* left, const std::int32_t* right,
              std::size_t n, std::uint64_t* out) {
  std::size_t words = (n + 63) / 64;
  for (std::size_t i = 0; i < words; ++i) out[i] = 0;
  for (std::size_t w = 0; w < n; ++w)
    if (rank[left[w]] >= rank[right[w]]) out[w / 64] |= std::uint64_t{1} << (w % 64);
}

void delta_dominated(std::uint32_t base, const std::uint32_t* cand, std::size_t n,
                     std::uint8_t* dominated) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t di = base ^ cand[i];
    std::uint8_t hit = 0;
    for (std::size_t j = 0; j < n && !hit; ++j) {
      std::uint32_t dj = base ^ cand[j];
      hit = ((dj & ~di) == 0 && dj != di) ? 1 : 0;
    }
    dominated[i] = hit;
  }
}

void weighted_distance(std::uint32_t base, const std::uint32_t* cand, std::size_t n,
                       const std::int64_t* weight, unsigned nbits, std::int64_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t d = base ^ cand[i];
    std::int64_t s = 0;
    for (unsigned b = 0; b < nbits; ++b)
      if (d >> b & 1u) s += weight[b];
    out[i] = s;
  }
}

}  // namespace

const Table& scalar() {
  static const Table t{"scalar",  and_words, or_words, andnot_words,    is_zero,
                       is_subset, popcount,  pref_geq, delta_dominated, weighted_distance};
  return t;
}

}  // namespace deolog::kernels
