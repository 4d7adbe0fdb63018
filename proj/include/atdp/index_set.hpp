#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace atdp {

/// Fixed-universe bitset over indices [0, size). Used for sets of functions
/// and sets of inputs. Universes up to 128 elements live inline.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static IndexSet full(std::size_t size) {
    IndexSet s(size);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return size_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool is_subset_of(const IndexSet& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }

  bool intersects(const IndexSet& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & other.words_[k]) return true;
    return false;
  }

  IndexSet& operator&=(const IndexSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  IndexSet& operator|=(const IndexSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  /// Removes every element of `o`.
  IndexSet& operator-=(const IndexSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.size_ == b.size_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        const int bit = std::countr_zero(w);
        f(k * 64 + static_cast<std::size_t>(bit));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = size_;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void trim() {
    if (size_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

}  // namespace atdp
