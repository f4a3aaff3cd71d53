#ifndef PROBCSP_BITSET_HPP
#define PROBCSP_BITSET_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace probcsp {

// Fixed-width bit set, sized at construction. Support rows and live-domain
// masks are stored in these so emptiness and subset tests cost O(d/64).
class bit_set {
public:
  bit_set() = default;
  explicit bit_set(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  int size() const { return bits_; }

  void set(int i) {
    assert(i >= 0 && i < bits_);
    words_[i >> 6] |= word(1) << (i & 63);
  }
  void reset(int i) {
    assert(i >= 0 && i < bits_);
    words_[i >> 6] &= ~(word(1) << (i & 63));
  }
  bool test(int i) const {
    assert(i >= 0 && i < bits_);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  int count() const {
    int c = 0;
    for (word w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (word w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool intersects(const bit_set& o) const {
    assert(bits_ == o.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  // every bit set here is also set in o
  bool is_subset_of(const bit_set& o) const {
    assert(bits_ == o.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  // clears every bit that is set in o
  void subtract(const bit_set& o) {
    assert(bits_ == o.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  }

  void set_all() {
    for (auto& w : words_) w = ~word(0);
    trim();
  }
  void reset_all() {
    for (auto& w : words_) w = 0;
  }

  friend bool operator==(const bit_set&, const bit_set&) = default;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      word w = words_[wi];
      while (w) {
        f(static_cast<int>(wi * 64) + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

private:
  using word = std::uint64_t;

  void trim() {
    int tail = bits_ & 63;
    if (tail && !words_.empty()) words_.back() &= (word(1) << tail) - 1;
  }

  int bits_ = 0;
  std::vector<word> words_;
};

}  // namespace probcsp

#endif
