#pragma once

#include <bit>
#include <boost/container/small_vector.hpp>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace deolog {

/// A set of worlds, by index into a model's world list. Fixed capacity.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t capacity) : size_(capacity), words_((capacity + 63) / 64, 0) {}

  static WorldSet full(std::size_t capacity);

  std::size_t capacity() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  const std::uint64_t* data() const { return words_.data(); }
  std::uint64_t* data() { return words_.data(); }

  bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  bool empty() const;
  std::size_t count() const;
  bool is_subset_of(const WorldSet& other) const;

  WorldSet operator&(const WorldSet& o) const;
  WorldSet operator|(const WorldSet& o) const;
  /// this \ o
  WorldSet minus(const WorldSet& o) const;
  WorldSet complement() const;

  std::vector<std::uint32_t> members() const;
  /// Lowest member; capacity() when empty.
  std::size_t first() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f(static_cast<std::uint32_t>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const;

  friend bool operator==(const WorldSet& a, const WorldSet& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  /// Total order: capacity, then characteristic vector (lowest differing world decides).
  friend bool operator<(const WorldSet& a, const WorldSet& b);

 private:
  void clear_tail();

  std::size_t size_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

struct WorldSetHash {
  std::size_t operator()(const WorldSet& s) const { return s.hash(); }
};

}  // namespace deolog
