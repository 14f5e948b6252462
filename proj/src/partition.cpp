#include "lexichoice/partition.hpp"

namespace lexichoice {

EquivalencePartition::EquivalencePartition(const GroundSet& ground, std::vector<ItemSet> blocks)
    : blocks_(std::move(blocks)), class_of_(ground.size()) {
  ItemSet seen;
  for (const ItemSet& b : blocks_) {
    if (b.empty()) throw InvalidParams("partition block must be non-empty");
    if (!ground.contains(b)) throw InvalidParams("partition block outside ground set");
    if (seen.intersects(b)) throw InvalidParams("partition blocks must be disjoint");
    seen |= b;
    for (int i : b.items()) class_of_[i] = b;
  }
  if (seen != ground.all()) throw InvalidParams("partition must cover the ground set");
}

}  // namespace lexichoice
