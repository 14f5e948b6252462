#include "lexichoice/contracts.hpp"

#include <algorithm>

namespace lexichoice {

bool is_feasible(ItemSet z, const EquivalencePartition& partition) {
  return partition.feasible(z);
}

bool completes(const ChoiceFunction& cbar, const ChoiceFunction& c,
               const EquivalencePartition& partition) {
  if (!(cbar.ground() == c.ground())) throw DomainError("completion requires a shared ground set");
  for (ItemSet y : c.ground().subsets_cardlex()) {
    ItemSet v = cbar(y);
    if (partition.feasible(v) && v != c(y)) return false;
  }
  return true;
}

bool is_equivalence_excluding(const ExclusionFunction& e, const EquivalencePartition& partition) {
  for (ItemSet z : e.ground().tested_sets()) {
    if (!partition.feasible(z)) continue;
    if (!e(z).union_with(z).contains_all(partition.closure(z))) return false;
  }
  return true;
}

bool check_equiv_dilation(const ExclusionFunction& e, const EquivalencePartition& partition,
                          EquivCondition condition) {
  const GroundSet& g = e.ground();
  Decomposition d = decompose(e);
  std::vector<ItemSet> domain;
  for (ItemSet z : g.tested_sets()) {
    if (partition.feasible(z)) domain.push_back(z);
  }

  if (condition == EquivCondition::Mto1Monotone) {
    for (ItemSet zs : domain) {
      for (ItemSet zb : domain) {
        if (!zs.subset_of(zb)) continue;
        if (!d.gross(zs).subset_of(d.gross(zb))) return false;
      }
    }
    return true;
  }

  SetValue k_value = e.base_exclusion();
  for (ItemSet z : domain) {
    SetValue base = k_value.union_with(partition.closure(z));
    if (base.is_top()) continue;  // nothing survives outside
    ItemSet outside = g.all() - base.finite_set();
    if (outside.empty() || outside.subset_of(partition.class_of(outside.lowest()))) continue;
    SetValue gz = d.gross(z);
    if (!gz.is_top() && !(gz == base)) return false;
  }
  return true;
}

ExclusionFunction build_overline_exclusion(GroundPtr ground, const TlcrParams& params) {
  return make_tlcr(std::move(ground), params);
}

bool verify_lemma_mto1(const ChoiceFunction& c1, const ChoiceFunction& c2,
                       const ChoiceFunction& c1bar, const ChoiceFunction& c2bar,
                       const ExclusionFunction& e, const EquivalencePartition& partition) {
  if (!is_equivalence_excluding(e, partition))
    throw PreconditionFailed("exclusion is not equivalence-excluding");
  TlcrClassification cls = classify_mto1_tlcr(e, partition);
  if (!cls.is_tlcr)
    throw PreconditionFailed("exclusion is not feasibly threshold-linear with cardinal reuse");
  if (!completes(c1bar, c1, partition))
    throw PreconditionFailed("first completion does not complete its base");
  if (!completes(c2bar, c2, partition))
    throw PreconditionFailed("second completion does not complete its base");
  if (!check_choice(c2bar, Property::CON).holds)
    throw PreconditionFailed("second completion is not consistent");

  ExclusionFunction overline = build_overline_exclusion(e.ground_ptr(), *cls.params);
  ChoiceFunction composed_bar = lex_compose(c1bar, c2bar, overline);
  ChoiceFunction composed = lex_compose(c1, c2, e);
  return completes(composed_bar, composed, partition);
}

EquivPairExample build_example_pair_exclusion(GroundPtr ground,
                                              const EquivalencePartition& partition, int item_a,
                                              int item_b, int item_c) {
  const GroundSet& g = *ground;
  ItemSet class_a = partition.class_of(item_a);
  if (class_a != ItemSet::of({item_a, item_c}))
    throw DomainError("items a and c must complete one equivalence class");
  if (class_a.contains(item_b)) throw DomainError("item b must sit in another class");

  SetTable<SetValue> entries(1u << g.size());
  for (std::uint32_t m = 0; m < entries.size(); ++m) {
    ItemSet z{m};
    ItemSet closure = partition.closure(z);
    if (!closure.intersects(class_a)) {
      entries[m] = SetValue::finite(g.all().without(item_a));
    } else if (closure == class_a) {
      entries[m] = SetValue::finite(class_a);
    } else {
      entries[m] = SetValue::top();
    }
  }
  return EquivPairExample{ExclusionFunction::table(std::move(ground), std::move(entries)), item_a,
                          item_b, item_c};
}

ChoiceFunction EquivPairExample::make_completion(const ChoiceFunction& c1,
                                                 const ChoiceFunction& c2) const {
  ChoiceFunction composed = lex_compose(c1, c2, exclusion);
  const GroundPtr& ground = composed.ground_ptr();
  ItemSet corner = ItemSet::of({item_a, item_c});
  SetTable<ItemSet> entries(1u << ground->size());
  for (std::uint32_t m = 0; m < entries.size(); ++m) entries[m] = composed(ItemSet{m});
  if (composed(ground->all()).contains(item_a) &&
      composed(corner) == ItemSet::single(item_c)) {
    entries[corner.bits] = corner;
  }
  return ChoiceFunction::table(ground, std::move(entries));
}

namespace {

/// Depth-first assignment of completion values in scan order with
/// incremental substitutes + consistency pruning against assigned subsets.
struct CompletionSearch {
  const std::vector<ItemSet>& order;  // card-lex subsets
  std::vector<ItemSet> assigned;      // values chosen so far, by mask
  std::vector<std::vector<ItemSet>> options_by_pos;
  std::size_t budget;

  bool compatible(ItemSet y, ItemSet value) {
    ItemSet rejected = y - value;
    for (ItemSet ys : order) {
      if (ys == y) break;  // only smaller-or-earlier sets are assigned
      if (!ys.subset_of(y)) continue;
      ItemSet small_value = assigned[ys.bits];
      if (!(ys - small_value).subset_of(rejected)) return false;      // substitutes
      if (value.subset_of(ys) && small_value != value) return false;  // consistency
    }
    return true;
  }

  bool run(std::size_t pos) {
    if (budget-- == 0) throw BudgetExceeded("completion search budget exhausted");
    if (pos == order.size()) return true;
    ItemSet y = order[pos];
    for (ItemSet candidate : options_by_pos[pos]) {
      if (!compatible(y, candidate)) continue;
      assigned[y.bits] = candidate;
      if (run(pos + 1)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<ChoiceFunction> find_pi_completion(const ChoiceFunction& c,
                                                 const EquivalencePartition& partition,
                                                 std::size_t node_budget) {
  const GroundSet& g = c.ground();
  if (g.size() > 5) throw BudgetExceeded("completion search is bounded to ground sizes <= 5");
  const auto& order = g.subsets_cardlex();
  std::vector<ItemSet> base = c.materialize();

  std::vector<std::vector<ItemSet>> options(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    ItemSet y = order[pos];
    std::vector<ItemSet>& opts = options[pos];
    if (partition.feasible(base[y.bits])) opts.push_back(base[y.bits]);
    for_each_subset(y, [&](ItemSet s) {
      if (!partition.feasible(s)) opts.push_back(s);
    });
  }

  CompletionSearch search{order, std::vector<ItemSet>(order.size()), std::move(options),
                          node_budget};
  if (!search.run(0)) return std::nullopt;
  SetTable<ItemSet> entries(order.size());
  for (std::size_t m = 0; m < entries.size(); ++m) entries[m] = search.assigned[m];
  return ChoiceFunction::table(c.ground_ptr(), std::move(entries));
}

}  // namespace lexichoice
