#pragma once

#include <cstddef>
#include <cstdint>

namespace deolog::kernels {

/// Data-parallel inner loops. Every table entry has a scalar reference
/// implementation; vector variants must agree with it bit-for-bit.
struct Table {
  const char* name;

  // out[i] = a[i] & b[i] / a[i] | b[i] / a[i] & ~b[i]
  void (*and_words)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n);
  void (*or_words)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n);
  void (*andnot_words)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n);
  bool (*is_zero)(const std::uint64_t* a, std::size_t n);
  // a & ~b == 0
  bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t n);

  /// Bit w of `out` is set iff rank[left[w]] >= rank[right[w]], for w < n.
  /// `out` must hold ceil(n / 64) words; trailing bits are cleared.
  void (*pref_geq)(const std::int32_t* rank, const std::int32_t* left, const std::int32_t* right,
                   std::size_t n, std::uint64_t* out);

  /// dominated[i] = 1 iff some j has (base ^ cand[j]) a proper subset of (base ^ cand[i]).
  void (*delta_dominated)(std::uint32_t base, const std::uint32_t* cand, std::size_t n,
                          std::uint8_t* dominated);

  /// out[i] = sum of weight[b] over bits b set in (base ^ cand[i]), b < nbits.
  void (*weighted_distance)(std::uint32_t base, const std::uint32_t* cand, std::size_t n,
                            const std::int64_t* weight, unsigned nbits, std::int64_t* out);
};

const Table& scalar();
/// nullptr when the CPU (or the build) lacks AVX2.
const Table* avx2();
/// Runtime choice: AVX2 when available unless DEOLOG_FORCE_SCALAR is set.
const Table& active();

}  // namespace deolog::kernels
