#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "tcforge/kernel/bitset.hpp"
#include "tcforge/kernel/pairing.hpp"

namespace tcforge {

// Row(x, Z)(i) <-> i < |Z| and Z(<x,i>), on a raw pairing-coded set.
inline BitSet row(Nat x, const BitSet& z) {
  BitSet out;
  for (Nat i = 0;; ++i) {
    const Nat code = pair(x, i);
    if (code >= z.length()) break;
    if (z.contains(code)) out.insert(i);
  }
  return out;
}

// Two-dimensional array: cell (x,y) is the member <x,y> of a pairing-coded
// backing set. Cells are held row by row; backing() materializes the coded set.
class Table2D {
 public:
  Table2D() = default;

  static Table2D from_rows(std::vector<BitSet> rows) {
    Table2D t;
    t.rows_ = std::move(rows);
    t.trim();
    return t;
  }

  static Table2D from_backing(const BitSet& backing) {
    Table2D t;
    backing.for_each([&](Nat code) {
      auto [x, y] = unpair(code);
      t.set(x, y);
    });
    return t;
  }

  static Table2D from_pairs(std::initializer_list<std::pair<Nat, Nat>> cells) {
    Table2D t;
    for (auto [x, y] : cells) t.set(x, y);
    return t;
  }

  bool cell(Nat x, Nat y) const { return x < rows_.size() && rows_[x].contains(y); }
  bool operator()(Nat x, Nat y) const { return cell(x, y); }

  void set(Nat x, Nat y) {
    if (x >= rows_.size()) rows_.resize(x + 1);
    rows_[x].insert(y);
  }

  void assign(Nat x, Nat y, bool value) {
    if (value) {
      set(x, y);
    } else if (x < rows_.size()) {
      rows_[x].erase(y);
      trim();
    }
  }

  void set_row(Nat x, BitSet r) {
    if (x >= rows_.size()) {
      if (r.empty()) return;
      rows_.resize(x + 1);
    }
    rows_[x] = std::move(r);
    trim();
  }

  // Z^{[x]}; empty beyond the last stored row.
  const BitSet& row(Nat x) const {
    static const BitSet kEmpty;
    return x < rows_.size() ? rows_[x] : kEmpty;
  }

  // One past the last non-empty row.
  Nat row_count() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // |Z| of the coded set, computed without materializing it.
  Nat length() const {
    Nat len = 0;
    for (Nat x = 0; x < rows_.size(); ++x)
      if (!rows_[x].empty()) len = std::max(len, pair(x, rows_[x].length() - 1) + 1);
    return len;
  }

  BitSet backing() const {
    BitSet out;
    for (Nat x = 0; x < rows_.size(); ++x) rows_[x].for_each([&](Nat y) { out.insert(pair(x, y)); });
    return out;
  }

  Nat count() const {
    Nat c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
  }

  const std::vector<BitSet>& rows() const { return rows_; }

  friend bool operator==(const Table2D& a, const Table2D& b) { return a.rows_ == b.rows_; }

 private:
  void trim() {
    while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
  }

  std::vector<BitSet> rows_;
};

}  // namespace tcforge
