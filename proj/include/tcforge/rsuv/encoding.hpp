#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iterator>
#include <vector>

#include "tcforge/core/error.hpp"
#include "tcforge/kernel/bitset.hpp"

namespace tcforge {

using BigNat = boost::multiprecision::cpp_int;

// X  |->  sum of 2^i over i in X.
inline BigNat encode_num(const BitSet& x) {
  BigNat out;
  auto words = x.words();
  if (words.empty()) return out;
  boost::multiprecision::import_bits(out, words.begin(), words.end(), 64, false);
  return out;
}

inline BitSet decode_num(const BigNat& a) {
  if (a < 0) throw DomainError("negative value has no set encoding");
  std::vector<BitSet::Word> words;
  if (a != 0) boost::multiprecision::export_bits(a, std::back_inserter(words), 64, false);
  return BitSet::from_words(std::move(words));
}

inline BitSet decode_num(Nat a) { return BitSet::from_words({a}); }

}  // namespace tcforge
