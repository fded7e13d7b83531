#pragma once

#include <functional>
#include <optional>

#include "tcforge/circuits/circuit.hpp"
#include "tcforge/core/rng.hpp"
#include "tcforge/kernel/assignment.hpp"

namespace tcforge::verify {

// Number of distinct layout-consistent inputs, saturating at 2^63.
inline Nat input_space(const circuits::InputLayout& layout) {
  Nat total = 1;
  for (const auto& d : layout) {
    const Nat choices = d.kind == circuits::InputKind::String ? (d.width >= 63 ? Nat{1} << 63 : Nat{1} << d.width) : d.width + 1;
    total = total > (Nat{1} << 63) / std::max<Nat>(choices, 1) ? Nat{1} << 63 : total * choices;
  }
  return total;
}

// Input number `index` in mixed radix over the layout.
inline circuits::InputValues input_at(const circuits::InputLayout& layout, Nat index) {
  circuits::InputValues out;
  for (const auto& d : layout) {
    if (d.kind == circuits::InputKind::String) {
      const Nat mask = d.width >= 64 ? ~Nat{0} : (Nat{1} << d.width) - 1;
      out[d.name] = BitSet::from_words({index & mask});
      index = d.width >= 64 ? 0 : index >> d.width;
    } else {
      out[d.name] = index % (d.width + 1);
      index /= d.width + 1;
    }
  }
  return out;
}

inline void for_each_input(const circuits::InputLayout& layout, const std::function<void(const circuits::InputValues&)>& f) {
  const Nat n = input_space(layout);
  for (Nat i = 0; i < n; ++i) f(input_at(layout, i));
}

inline circuits::InputValues random_input(const circuits::InputLayout& layout, Rng& rng) {
  circuits::InputValues out;
  for (const auto& d : layout) {
    if (d.kind == circuits::InputKind::String) {
      BitSet s;
      for (Nat i = 0; i < d.width; ++i)
        if (rng.coin()) s.insert(i);
      out[d.name] = s;
    } else {
      out[d.name] = rng.below(d.width + 1);
    }
  }
  return out;
}

inline Nat total_width(const circuits::InputLayout& layout) {
  Nat w = 0;
  for (const auto& d : layout) w += d.width;
  return w;
}

inline Assignment to_assignment(const circuits::InputValues& values) {
  Assignment env;
  for (const auto& [name, v] : values) {
    if (const BitSet* s = std::get_if<BitSet>(&v)) env.bind(name, *s);
    else env.bind(name, std::get<Nat>(v));
  }
  return env;
}

// Exhaustive when the layout has at most `exhaustive_bits` input bits, else
// `samples` random inputs. Returns the first input where check fails.
inline std::optional<circuits::InputValues> find_mismatch(const circuits::InputLayout& layout, Rng& rng,
                                                          const std::function<bool(const circuits::InputValues&)>& check,
                                                          Nat exhaustive_bits = 12, Nat samples = 200) {
  if (total_width(layout) <= exhaustive_bits) {
    const Nat n = input_space(layout);
    for (Nat i = 0; i < n; ++i) {
      auto in = input_at(layout, i);
      if (!check(in)) return in;
    }
    return std::nullopt;
  }
  for (Nat i = 0; i < samples; ++i) {
    auto in = random_input(layout, rng);
    if (!check(in)) return in;
  }
  return std::nullopt;
}

}  // namespace tcforge::verify
