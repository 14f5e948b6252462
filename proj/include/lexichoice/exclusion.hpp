#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lexichoice/choice.hpp"
#include "lexichoice/partition.hpp"
#include "lexichoice/sets.hpp"

namespace lexichoice {

/// Natural number, zero, or infinity.
struct Threshold {
  bool finite = true;
  int value = 0;

  static Threshold of(int v) { return Threshold{true, v}; }
  static Threshold infinity() { return Threshold{false, 0}; }

  /// |Z| >= t, the "everything excluded" regime.
  bool reached_by(int card) const { return finite && card >= value; }

  bool operator==(const Threshold&) const = default;
  std::string to_string() const { return finite ? std::to_string(value) : "inf"; }
};

/// The characterization data of a threshold-linear exclusion with cardinal
/// reuse: threshold t, base exclusion K, and the nested reuse sets T^1.. .
/// Reuse indices beyond the stored list repeat the last stored set.
struct TlcrParams {
  Threshold t = Threshold::infinity();
  ItemSet base;                // K
  std::vector<ItemSet> reuse;  // T^1, T^2, ...

  ItemSet reuse_at(int card) const {
    if (card <= 0 || reuse.empty()) return ItemSet::none();
    if (card <= static_cast<int>(reuse.size())) return reuse[card - 1];
    return reuse.back();
  }

  /// Nesting, K-disjointness, and the t=0 restriction.
  void validate(const GroundSet& ground) const;

  bool operator==(const TlcrParams&) const = default;
};

/// A total map from subsets of the ground set to SetValues.
class ExclusionFunction {
 public:
  struct Identity {};
  struct Empty {};
  struct Capacity {
    int cap;
  };
  struct Tlcr {
    TlcrParams params;
  };
  struct UnderlineEquiv {
    EquivalencePartition partition;
  };
  struct Table {
    SetTable<SetValue> entries;
  };
  using Rule = std::variant<Identity, Empty, Capacity, Tlcr, UnderlineEquiv, Table>;

  ExclusionFunction(GroundPtr ground, Rule rule);

  static ExclusionFunction identity(GroundPtr ground);
  static ExclusionFunction empty(GroundPtr ground);
  static ExclusionFunction capacity(GroundPtr ground, int cap);
  static ExclusionFunction tlcr(GroundPtr ground, TlcrParams params);
  static ExclusionFunction underline_equiv(GroundPtr ground, EquivalencePartition partition);
  static ExclusionFunction table(GroundPtr ground, SetTable<SetValue> entries);
  static ExclusionFunction table_from(GroundPtr ground, const std::map<ItemSet, SetValue>& entries);

  /// E(z).
  SetValue operator()(ItemSet z) const;

  /// K = E(empty set).
  SetValue base_exclusion() const { return (*this)(ItemSet::none()); }

  const GroundSet& ground() const { return *ground_; }
  const GroundPtr& ground_ptr() const { return ground_; }
  const Rule& rule() const { return rule_; }

  std::vector<SetValue> materialize() const;
  bool agrees_with(const ExclusionFunction& other) const;

 private:
  GroundPtr ground_;
  Rule rule_;
};

/// The gross-exclusion / reuse decomposition E(Z) = G_E(Z) \ R_E(Z), with
/// G_E(Z) = E(Z) u Z and R_E(Z) = Z \ E(Z). R_E is relevant exactly where
/// G_E stays finite.
class Decomposition {
 public:
  explicit Decomposition(ExclusionFunction e) : e_(std::move(e)) {}

  SetValue gross(ItemSet z) const { return e_(z).union_with(z); }
  ItemSet reuse(ItemSet z) const { return minus(z, e_(z)); }
  bool relevant(ItemSet z) const { return !gross(z).is_top(); }

  const ExclusionFunction& exclusion() const { return e_; }

 private:
  ExclusionFunction e_;
};

inline Decomposition decompose(const ExclusionFunction& e) { return Decomposition(e); }

}  // namespace lexichoice
