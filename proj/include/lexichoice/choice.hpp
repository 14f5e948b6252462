#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "lexichoice/partition.hpp"
#include "lexichoice/sets.hpp"

namespace lexichoice {

/// A strict ranking of all items plus one marker for "choose nothing".
/// Items ranked below the marker are unacceptable.
class LinearOrder {
 public:
  static constexpr int kMarker = -1;

  LinearOrder(std::vector<int> ranking, int ground_size);

  /// Ranking that accepts exactly `acceptable` (best first); every other item
  /// is placed below the marker in ascending index order.
  static LinearOrder over(std::vector<int> acceptable, const GroundSet& ground);

  const std::vector<int>& ranking() const { return ranking_; }
  ItemSet acceptable() const { return acceptable_; }

  bool operator==(const LinearOrder& other) const { return ranking_ == other.ranking_; }

 private:
  std::vector<int> ranking_;  // items and kMarker, best first
  ItemSet acceptable_;
};

/// A table mapping subset masks to values; entries may be missing.
template <class V>
using SetTable = std::vector<std::optional<V>>;

/// A total contraction on subsets of the ground set, backed by one of the
/// parametric rules or an explicit table.
class ChoiceFunction {
 public:
  struct Responsive {
    LinearOrder order;
    int quota;
  };
  struct UnionOfOrders {
    std::vector<LinearOrder> orders;
  };
  struct Table {
    SetTable<ItemSet> entries;
  };
  struct Mto1Responsive {
    LinearOrder order;
    int quota;
    EquivalencePartition partition;
  };
  using Rule = std::variant<Responsive, UnionOfOrders, Table, Mto1Responsive>;

  ChoiceFunction(GroundPtr ground, Rule rule);

  static ChoiceFunction responsive(GroundPtr ground, LinearOrder order, int quota);
  static ChoiceFunction union_of_orders(GroundPtr ground, std::vector<LinearOrder> orders);
  static ChoiceFunction table(GroundPtr ground, SetTable<ItemSet> entries);
  static ChoiceFunction table_from(GroundPtr ground, const std::map<ItemSet, ItemSet>& entries);
  static ChoiceFunction mto1_responsive(GroundPtr ground, LinearOrder order, int quota,
                                        EquivalencePartition partition);

  /// C(y). Throws DomainError if y is outside the ground set and
  /// MissingTableEntry for a partial table.
  ItemSet operator()(ItemSet y) const;

  const GroundSet& ground() const { return *ground_; }
  const GroundPtr& ground_ptr() const { return ground_; }
  const Rule& rule() const { return rule_; }

  /// The full function table indexed by subset mask.
  std::vector<ItemSet> materialize() const;

  /// Extensional equality.
  bool agrees_with(const ChoiceFunction& other) const;

 private:
  GroundPtr ground_;
  Rule rule_;
};

}  // namespace lexichoice
