#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace announce {

// Bit set over a fixed universe of dense indices [0, universe).
// Used for state sets; comparison is numeric (index 0 = least significant bit)
// which gives every collection of sets one deterministic order.
class StateSet {
public:
  StateSet() = default;
  explicit StateSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  static StateSet full(int universe) {
    StateSet s(universe);
    for (int i = 0; i < universe; ++i) s.set(i);
    return s;
  }

  int universe() const { return n_; }

  bool test(int i) const { return (w_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[static_cast<size_t>(i) >> 6] |= 1ull << (i & 63); }
  void reset(int i) { w_[static_cast<size_t>(i) >> 6] &= ~(1ull << (i & 63)); }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  int count() const {
    int c = 0;
    for (std::uint64_t w : w_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (std::uint64_t w : w_)
      if (w) return false;
    return true;
  }
  int first() const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(i * 64 + __builtin_ctzll(w_[i]));
    return -1;
  }

  StateSet& operator&=(const StateSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  StateSet& operator|=(const StateSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }

  bool is_subset_of(const StateSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const StateSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool operator==(const StateSet& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const StateSet& o) const { return !(*this == o); }
  // Numeric order over the bit pattern; total and deterministic.
  bool operator<(const StateSet& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (size_t i = w_.size(); i-- > 0;)
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(count()));
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        f(static_cast<int>(i * 64 + __builtin_ctzll(w)));
        w &= w - 1;
      }
    }
  }

  size_t hash() const {
    size_t h = 0xcbf29ce484222325ull ^ static_cast<size_t>(n_);
    for (std::uint64_t w : w_) {
      h ^= static_cast<size_t>(w);
      h *= 0x100000001b3ull;
    }
    return h;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct StateSetHash {
  size_t operator()(const StateSet& s) const { return s.hash(); }
};

}  // namespace announce
