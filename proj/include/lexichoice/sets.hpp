#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lexichoice/errors.hpp"

namespace lexichoice {

/// A subset of a ground set of at most kMaxGroundSize items, as a bitmask.
struct ItemSet {
  std::uint32_t bits = 0;

  static constexpr ItemSet none() { return ItemSet{0}; }
  static ItemSet of(std::initializer_list<int> items) {
    ItemSet s;
    for (int i : items) s.bits |= (1u << i);
    return s;
  }
  static ItemSet single(int item) { return ItemSet{1u << item}; }
  static ItemSet full(int n) { return ItemSet{n == 0 ? 0u : ((n >= 32 ? 0u : (1u << n)) - 1u)}; }

  bool contains(int item) const { return (bits >> item) & 1u; }
  int size() const { return __builtin_popcount(bits); }
  bool empty() const { return bits == 0; }

  ItemSet with(int item) const { return ItemSet{bits | (1u << item)}; }
  ItemSet without(int item) const { return ItemSet{bits & ~(1u << item)}; }

  bool subset_of(ItemSet other) const { return (bits & ~other.bits) == 0; }
  bool intersects(ItemSet other) const { return (bits & other.bits) != 0; }

  /// Smallest member; set must be non-empty.
  int lowest() const { return __builtin_ctz(bits); }
  int highest() const { return 31 - __builtin_clz(bits); }

  std::vector<int> items() const {
    std::vector<int> out;
    for (std::uint32_t b = bits; b; b &= b - 1) out.push_back(__builtin_ctz(b));
    return out;
  }

  friend ItemSet operator|(ItemSet a, ItemSet b) { return ItemSet{a.bits | b.bits}; }
  friend ItemSet operator&(ItemSet a, ItemSet b) { return ItemSet{a.bits & b.bits}; }
  friend ItemSet operator-(ItemSet a, ItemSet b) { return ItemSet{a.bits & ~b.bits}; }
  ItemSet& operator|=(ItemSet b) { bits |= b.bits; return *this; }
  ItemSet& operator&=(ItemSet b) { bits &= b.bits; return *this; }
  ItemSet& operator-=(ItemSet b) { bits &= ~b.bits; return *this; }

  auto operator<=>(const ItemSet&) const = default;
};

/// Either a finite subset of the ground set or TOP, the marker for the whole
/// (conceptually infinite) universe. A finite value never equals TOP, even
/// when it covers the full ground set: the ground set is a truncation.
class SetValue {
 public:
  SetValue() = default;
  static SetValue top() { SetValue v; v.top_ = true; return v; }
  static SetValue finite(ItemSet s) { SetValue v; v.set_ = s; return v; }

  bool is_top() const { return top_; }
  ItemSet finite_set() const {
    if (top_) throw DomainError("finite_set() on TOP");
    return set_;
  }

  SetValue union_with(const SetValue& other) const {
    if (top_ || other.top_) return top();
    return finite(set_ | other.set_);
  }
  SetValue union_with(ItemSet s) const {
    if (top_) return top();
    return finite(set_ | s);
  }

  bool contains_all(ItemSet s) const { return top_ || s.subset_of(set_); }
  bool contains(int item) const { return top_ || set_.contains(item); }
  bool subset_of(const SetValue& other) const {
    if (other.top_) return true;
    if (top_) return false;
    return set_.subset_of(other.set_);
  }

  bool operator==(const SetValue& other) const {
    return top_ == other.top_ && (top_ || set_ == other.set_);
  }

 private:
  bool top_ = false;
  ItemSet set_;
};

/// Subtraction of a SetValue from a finite set: removing TOP leaves nothing.
inline ItemSet minus(ItemSet y, const SetValue& e) {
  if (e.is_top()) return ItemSet::none();
  return y - e.finite_set();
}

constexpr int kMaxGroundSize = 16;

/// The finite truncation of the universe: items 0..size-1, cosmetic labels,
/// and a headroom count. Verification routines that emulate the infinite
/// universe only quantify over sets that leave at least `headroom` items
/// free, so that "fresh" items always exist.
class GroundSet {
 public:
  explicit GroundSet(int size, int headroom = -1, std::vector<std::string> labels = {});

  int size() const { return size_; }
  int headroom() const { return headroom_; }
  ItemSet all() const { return ItemSet::full(size_); }
  bool contains(ItemSet s) const { return s.subset_of(all()); }
  void require_inside(ItemSet s) const {
    if (!contains(s)) throw DomainError("set outside ground set");
  }

  /// Largest cardinality the headroom discipline lets checkers quantify over.
  int max_tested_card() const { return size_ - headroom_; }

  bool has_labels() const { return !labels_.empty(); }
  std::string label(int item) const;
  std::string format(ItemSet s) const;

  /// All subsets ordered by (cardinality, numeric mask): the scan order used
  /// for reproducible witnesses everywhere.
  const std::vector<ItemSet>& subsets_cardlex() const { return cardlex_; }
  /// The subsets with cardinality <= max_tested_card, in scan order.
  std::vector<ItemSet> tested_sets() const;

  bool operator==(const GroundSet& other) const {
    return size_ == other.size_ && headroom_ == other.headroom_;
  }

 private:
  int size_;
  int headroom_;
  std::vector<std::string> labels_;
  std::vector<ItemSet> cardlex_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

inline GroundPtr make_ground(int size, int headroom = -1, std::vector<std::string> labels = {}) {
  return std::make_shared<const GroundSet>(size, headroom, std::move(labels));
}

/// Visits every subset of `mask` (including the empty set and mask itself)
/// in increasing numeric order.
template <class F>
void for_each_subset(ItemSet mask, F&& fn) {
  std::uint32_t sub = 0;
  while (true) {
    fn(ItemSet{sub});
    if (sub == mask.bits) break;
    sub = (sub - mask.bits) & mask.bits;
  }
}

}  // namespace lexichoice
