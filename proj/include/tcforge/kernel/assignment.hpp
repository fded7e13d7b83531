#pragma once

#include <map>
#include <string>

#include "tcforge/core/error.hpp"
#include "tcforge/kernel/bitset.hpp"

namespace tcforge {

// Binds free number variables to naturals and string variables to sets.
class Assignment {
 public:
  Assignment& bind(const std::string& name, Nat value) {
    nums_[name] = value;
    return *this;
  }
  Assignment& bind(const std::string& name, BitSet value) {
    strs_[name] = std::move(value);
    return *this;
  }

  Nat num(const std::string& name) const {
    auto it = nums_.find(name);
    if (it == nums_.end()) throw UnboundVariable(name);
    return it->second;
  }
  const BitSet& str(const std::string& name) const {
    auto it = strs_.find(name);
    if (it == strs_.end()) throw UnboundVariable(name);
    return it->second;
  }

  bool has_num(const std::string& name) const { return nums_.count(name) != 0; }
  bool has_str(const std::string& name) const { return strs_.count(name) != 0; }

  void unbind_num(const std::string& name) { nums_.erase(name); }
  void unbind_str(const std::string& name) { strs_.erase(name); }

  const std::map<std::string, Nat>& nums() const { return nums_; }
  const std::map<std::string, BitSet>& strs() const { return strs_; }

 private:
  std::map<std::string, Nat> nums_;
  std::map<std::string, BitSet> strs_;
};

}  // namespace tcforge
