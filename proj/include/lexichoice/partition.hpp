#pragma once

#include <vector>

#include "lexichoice/sets.hpp"

namespace lexichoice {

/// A partition of the ground set into disjoint non-empty equivalence classes
/// (one class per "doctor" in the contracts reading).
class EquivalencePartition {
 public:
  EquivalencePartition(const GroundSet& ground, std::vector<ItemSet> blocks);

  const std::vector<ItemSet>& blocks() const { return blocks_; }
  ItemSet class_of(int item) const { return class_of_[item]; }

  /// Union of the classes of the members of z.
  ItemSet closure(ItemSet z) const {
    ItemSet out;
    for (int i : z.items()) out |= class_of_[i];
    return out;
  }

  /// No more than one item per class.
  bool feasible(ItemSet z) const {
    for (const ItemSet& b : blocks_) {
      if ((z & b).size() > 1) return false;
    }
    return true;
  }

  bool operator==(const EquivalencePartition& other) const { return blocks_ == other.blocks_; }

 private:
  std::vector<ItemSet> blocks_;
  std::vector<ItemSet> class_of_;
};

}  // namespace lexichoice
