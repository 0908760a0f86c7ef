#include "deolog/world_set.hpp"

#include <stdexcept>

#include "deolog/kernels.hpp"

namespace deolog {

namespace {

void require_same(const WorldSet& a, const WorldSet& b) {
  if (a.capacity() != b.capacity()) throw std::invalid_argument("world sets over different models");
}

}  // namespace

WorldSet WorldSet::full(std::size_t capacity) {
  WorldSet s(capacity);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.clear_tail();
  return s;
}

void WorldSet::clear_tail() {
  if (size_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

bool WorldSet::empty() const {
  if (words_.size() == 1) return words_[0] == 0;
  return kernels::active().is_zero(words_.data(), words_.size());
}

std::size_t WorldSet::count() const {
  if (words_.size() == 1) return static_cast<std::size_t>(std::popcount(words_[0]));
  return kernels::active().popcount(words_.data(), words_.size());
}

bool WorldSet::is_subset_of(const WorldSet& other) const {
  require_same(*this, other);
  if (words_.size() == 1) return (words_[0] & ~other.words_[0]) == 0;
  return kernels::active().is_subset(words_.data(), other.words_.data(), words_.size());
}

WorldSet WorldSet::operator&(const WorldSet& o) const {
  require_same(*this, o);
  WorldSet r(size_);
  if (words_.size() == 1)
    r.words_[0] = words_[0] & o.words_[0];
  else
    kernels::active().and_words(words_.data(), o.words_.data(), r.words_.data(), words_.size());
  return r;
}

WorldSet WorldSet::operator|(const WorldSet& o) const {
  require_same(*this, o);
  WorldSet r(size_);
  if (words_.size() == 1)
    r.words_[0] = words_[0] | o.words_[0];
  else
    kernels::active().or_words(words_.data(), o.words_.data(), r.words_.data(), words_.size());
  return r;
}

WorldSet WorldSet::minus(const WorldSet& o) const {
  require_same(*this, o);
  WorldSet r(size_);
  if (words_.size() == 1)
    r.words_[0] = words_[0] & ~o.words_[0];
  else
    kernels::active().andnot_words(words_.data(), o.words_.data(), r.words_.data(), words_.size());
  return r;
}

WorldSet WorldSet::complement() const { return full(size_).minus(*this); }

std::vector<std::uint32_t> WorldSet::members() const {
  std::vector<std::uint32_t> out;
  out.reserve(count());
  for_each([&](std::uint32_t w) { out.push_back(w); });
  return out;
}

std::size_t WorldSet::first() const {
  for (std::size_t wi = 0; wi < words_.size(); ++wi)
    if (words_[wi]) return wi * 64 + static_cast<std::size_t>(std::countr_zero(words_[wi]));
  return size_;
}

std::size_t WorldSet::hash() const {
  std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool operator<(const WorldSet& a, const WorldSet& b) {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  // Lexicographic on characteristic vectors, with membership sorting first.
  for (std::size_t wi = 0; wi < a.words_.size(); ++wi) {
    std::uint64_t x = a.words_[wi], y = b.words_[wi];
    if (x == y) continue;
    std::uint64_t diff = x ^ y;
    std::uint64_t low = diff & (~diff + 1);
    return (x & low) != 0;
  }
  return false;
}

}  // namespace deolog
