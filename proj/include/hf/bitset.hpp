#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hf {

// Fixed-size bitset with the handful of set operations the poset and
// algebra code needs. Word-parallel, value semantics.
class DynBitset {
public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  DynBitset& operator&=(const DynBitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }

  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }

  bool operator==(const DynBitset& o) const = default;

  bool intersects(const DynBitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool is_subset_of(const DynBitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  // Index of the first set bit at or after `from`; size() if none.
  std::size_t next_set(std::size_t from) const {
    if (from >= n_) return n_;
    std::size_t word = from >> 6;
    std::uint64_t w = w_[word] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) {
        std::size_t i = (word << 6) + static_cast<std::size_t>(std::countr_zero(w));
        return i < n_ ? i : n_;
      }
      if (++word >= w_.size()) return n_;
      w = w_[word];
    }
  }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace hf
