#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "tcforge/core/nat.hpp"

namespace tcforge {

// Finite set of naturals stored as a dense bitvector. The stored length is
// always 1 + max element (0 for the empty set) and no bit at or beyond the
// length is ever set, so equality is plain storage equality.
class BitSet {
 public:
  using Word = std::uint64_t;
  static constexpr Nat kWordBits = 64;

  BitSet() = default;
  BitSet(std::initializer_list<Nat> elems) {
    for (Nat e : elems) insert(e);
  }

  template <typename Range>
  static BitSet from_elements(const Range& elems) {
    BitSet s;
    for (Nat e : elems) s.insert(e);
    return s;
  }

  // Takes ownership of raw words; trailing zero words are trimmed.
  static BitSet from_words(std::vector<Word> words) {
    BitSet s;
    s.words_ = std::move(words);
    s.normalize();
    return s;
  }

  // {lo, ..., hi-1}
  static BitSet interval(Nat lo, Nat hi) {
    BitSet s;
    s.insert_range(lo, hi);
    return s;
  }

  bool contains(Nat i) const {
    return i < length_ && ((words_[i / kWordBits] >> (i % kWordBits)) & 1u);
  }
  bool operator()(Nat i) const { return contains(i); }

  Nat length() const { return length_; }
  bool empty() const { return length_ == 0; }

  Nat count() const {
    Nat c = 0;
    for (Word w : words_) c += static_cast<Nat>(std::popcount(w));
    return c;
  }

  // Members strictly below z.
  Nat count_below(Nat z) const {
    z = std::min(z, length_);
    const Nat full = z / kWordBits;
    Nat c = 0;
    for (Nat w = 0; w < full; ++w) c += static_cast<Nat>(std::popcount(words_[w]));
    if (Nat rem = z % kWordBits) c += static_cast<Nat>(std::popcount(words_[full] & ((Word{1} << rem) - 1)));
    return c;
  }

  void insert(Nat i) {
    if (i >= length_) {
      words_.resize(i / kWordBits + 1, 0);
      length_ = i + 1;
    }
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }

  void erase(Nat i) {
    if (i >= length_) return;
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
    if (i + 1 == length_) normalize();
  }

  void assign(Nat i, bool value) {
    if (value) insert(i);
    else erase(i);
  }

  // Inserts every i with lo <= i < hi.
  void insert_range(Nat lo, Nat hi) {
    if (lo >= hi) return;
    if (hi > length_) {
      words_.resize((hi - 1) / kWordBits + 1, 0);
      length_ = hi;
    }
    Nat i = lo;
    for (; i < hi && i % kWordBits != 0; ++i) words_[i / kWordBits] |= Word{1} << (i % kWordBits);
    while (i + kWordBits <= hi) {
      words_[i / kWordBits] = ~Word{0};
      i += kWordBits;
    }
    for (; i < hi; ++i) words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }

  template <typename F>
  void for_each(F&& f) const {
    for (Nat w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        const Nat b = static_cast<Nat>(std::countr_zero(bits));
        f(w * kWordBits + b);
        bits &= bits - 1;
      }
    }
  }

  std::vector<Nat> elements() const {
    std::vector<Nat> out;
    for_each([&](Nat i) { out.push_back(i); });
    return out;
  }

  std::span<const Word> words() const { return words_; }

  // {j in X : j < i}
  BitSet prefix(Nat i) const {
    if (i >= length_) return *this;
    std::vector<Word> w(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(ceil_div(i, kWordBits)));
    if (Nat rem = i % kWordBits) w.back() &= (Word{1} << rem) - 1;
    return from_words(std::move(w));
  }

  // {j + by : j in X}
  BitSet shifted(Nat by) const {
    if (empty()) return {};
    const Nat ws = by / kWordBits, bs = by % kWordBits;
    std::vector<Word> w(words_.size() + ws + 1, 0);
    for (Nat k = 0; k < words_.size(); ++k) {
      w[k + ws] |= words_[k] << bs;
      if (bs) w[k + ws + 1] |= words_[k] >> (kWordBits - bs);
    }
    return from_words(std::move(w));
  }

  friend BitSet operator|(const BitSet& a, const BitSet& b) {
    std::vector<Word> w(std::max(a.words_.size(), b.words_.size()), 0);
    for (Nat k = 0; k < a.words_.size(); ++k) w[k] |= a.words_[k];
    for (Nat k = 0; k < b.words_.size(); ++k) w[k] |= b.words_[k];
    return from_words(std::move(w));
  }

  friend BitSet operator&(const BitSet& a, const BitSet& b) {
    std::vector<Word> w(std::min(a.words_.size(), b.words_.size()), 0);
    for (Nat k = 0; k < w.size(); ++k) w[k] = a.words_[k] & b.words_[k];
    return from_words(std::move(w));
  }

  friend bool operator==(const BitSet& a, const BitSet& b) {
    return a.length_ == b.length_ && a.words_ == b.words_;
  }

 private:
  void normalize() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
    length_ = words_.empty() ? 0 : (words_.size() - 1) * kWordBits + bit_length(words_.back());
  }

  std::vector<Word> words_;
  Nat length_ = 0;
};

}  // namespace tcforge
