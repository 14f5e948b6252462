#include "lexichoice/sets.hpp"

#include <algorithm>
#include <set>

namespace lexichoice {

GroundSet::GroundSet(int size, int headroom, std::vector<std::string> labels)
    : size_(size), headroom_(headroom), labels_(std::move(labels)) {
  if (size_ < 0 || size_ > kMaxGroundSize) throw InvalidParams("ground size out of range");
  if (headroom_ < 0) headroom_ = std::min(2, std::max(0, size_ - 1));  // default
  if (size_ == 0) {
    if (headroom_ != 0) throw InvalidParams("headroom must be 0 for the empty ground set");
  } else if (headroom_ >= size_) {
    throw InvalidParams("headroom must be smaller than the ground size");
  }
  if (!labels_.empty()) {
    if (static_cast<int>(labels_.size()) != size_)
      throw InvalidParams("label count must match ground size");
    std::set<std::string> distinct(labels_.begin(), labels_.end());
    if (static_cast<int>(distinct.size()) != size_) throw InvalidParams("labels must be distinct");
  }
  cardlex_.reserve(1u << size_);
  for (std::uint32_t m = 0; m < (1u << size_); ++m) cardlex_.push_back(ItemSet{m});
  std::stable_sort(cardlex_.begin(), cardlex_.end(), [](ItemSet a, ItemSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits < b.bits;
  });
}

std::string GroundSet::label(int item) const {
  if (!labels_.empty()) return labels_[item];
  if (size_ <= 26) return std::string(1, static_cast<char>('a' + item));
  return std::to_string(item);
}

std::string GroundSet::format(ItemSet s) const {
  std::string out = "{";
  bool first = true;
  for (int i : s.items()) {
    if (!first) out += ",";
    out += label(i);
    first = false;
  }
  return out + "}";
}

std::vector<ItemSet> GroundSet::tested_sets() const {
  std::vector<ItemSet> out;
  const int cap = max_tested_card();
  for (ItemSet s : cardlex_) {
    if (s.size() <= cap) out.push_back(s);
  }
  return out;
}

}  // namespace lexichoice
