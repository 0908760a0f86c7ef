// Compiled with -mavx2 -mpopcnt. Only reachable through kernels::avx2(),
// which checks the CPU first.
#include <immintrin.h>

#include <bit>

#include "deolog/kernels.hpp"

namespace deolog::kernels {

namespace {

void and_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] & b[i];
}

void or_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_or_si256(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_andnot_si256(vb, va));
  }
  for (; i < n; ++i) out[i] = a[i] & ~b[i];
}

bool is_zero(const std::uint64_t* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    if (!_mm256_testz_si256(va, va)) return false;
  }
  for (; i < n; ++i)
    if (a[i]) return false;
  return true;
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // testc(b, a) == 1 iff (~b & a) == 0
    if (!_mm256_testc_si256(vb, va)) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t popcount(const std::uint64_t* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return c;
}

void pref_geq(const std::int32_t* rank, const std::int32_t* left, const std::int32_t* right,
              std::size_t n, std::uint64_t* out) {
  std::size_t words = (n + 63) / 64;
  for (std::size_t i = 0; i < words; ++i) out[i] = 0;
  std::size_t w = 0;
  for (; w + 8 <= n; w += 8) {
    __m256i li = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(left + w));
    __m256i ri = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(right + w));
    __m256i lr = _mm256_i32gather_epi32(rank, li, 4);
    __m256i rr = _mm256_i32gather_epi32(rank, ri, 4);
    __m256i lt = _mm256_cmpgt_epi32(rr, lr);
    auto bits = static_cast<std::uint64_t>(~_mm256_movemask_ps(_mm256_castsi256_ps(lt)) & 0xFF);
    out[w / 64] |= bits << (w % 64);
  }
  for (; w < n; ++w)
    if (rank[left[w]] >= rank[right[w]]) out[w / 64] |= std::uint64_t{1} << (w % 64);
}

void delta_dominated(std::uint32_t base, const std::uint32_t* cand, std::size_t n,
                     std::uint8_t* dominated) {
  const __m256i vbase = _mm256_set1_epi32(static_cast<int>(base));
  const __m256i zero = _mm256_setzero_si256();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t di = base ^ cand[i];
    __m256i vdi = _mm256_set1_epi32(static_cast<int>(di));
    std::uint8_t hit = 0;
    std::size_t j = 0;
    for (; j + 8 <= n && !hit; j += 8) {
      __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cand + j));
      __m256i dj = _mm256_xor_si256(c, vbase);
      __m256i outside = _mm256_andnot_si256(vdi, dj);
      __m256i within = _mm256_cmpeq_epi32(outside, zero);
      __m256i same = _mm256_cmpeq_epi32(dj, vdi);
      __m256i proper = _mm256_andnot_si256(same, within);
      hit = _mm256_movemask_ps(_mm256_castsi256_ps(proper)) != 0 ? 1 : 0;
    }
    for (; j < n && !hit; ++j) {
      std::uint32_t dj = base ^ cand[j];
      hit = ((dj & ~di) == 0 && dj != di) ? 1 : 0;
    }
    dominated[i] = hit;
  }
}

void weighted_distance(std::uint32_t base, const std::uint32_t* cand, std::size_t n,
                       const std::int64_t* weight, unsigned nbits, std::int64_t* out) {
  const __m128i vbase = _mm_set1_epi32(static_cast<int>(base));
  const __m256i one = _mm256_set1_epi64x(1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m128i c = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cand + i));
    __m256i d = _mm256_cvtepu32_epi64(_mm_xor_si128(c, vbase));
    __m256i acc = _mm256_setzero_si256();
    for (unsigned b = 0; b < nbits; ++b) {
      __m256i bit = _mm256_and_si256(_mm256_srli_epi64(d, static_cast<int>(b)), one);
      __m256i mask = _mm256_cmpeq_epi64(bit, one);
      acc = _mm256_add_epi64(acc, _mm256_and_si256(mask, _mm256_set1_epi64x(weight[b])));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), acc);
  }
  for (; i < n; ++i) {
    std::uint32_t d = base ^ cand[i];
    std::int64_t s = 0;
    for (unsigned b = 0; b < nbits; ++b)
      if (d >> b & 1u) s += weight[b];
    out[i] = s;
  }
}

}  // namespace

const Table& avx2_table() {
  static const Table t{"avx2",    and_words, or_words, andnot_words,    is_zero,
                       is_subset, popcount,  pref_geq, delta_dominated, weighted_distance};
  return t;
}

}  // namespace deolog::kernels
