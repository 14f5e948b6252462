#include "lexichoice/families.hpp"

#include <algorithm>
#include <set>

namespace lexichoice {

ChoiceFunction make_responsive(GroundPtr ground, LinearOrder order, int quota) {
  return ChoiceFunction::responsive(std::move(ground), std::move(order), quota);
}

ChoiceFunction make_union_of_orders(GroundPtr ground, std::vector<LinearOrder> orders) {
  return ChoiceFunction::union_of_orders(std::move(ground), std::move(orders));
}

ExclusionFunction make_tlcr(GroundPtr ground, TlcrParams params) {
  return ExclusionFunction::tlcr(std::move(ground), std::move(params));
}

namespace {

/// Runs fn(order) for every permutation of items+marker, in lexicographic
/// order of the ranking sequence (marker encoded after all items).
template <class F>
void for_each_order(const GroundSet& ground, F&& fn) {
  const int n = ground.size();
  std::vector<int> symbols(n + 1);
  for (int i = 0; i <= n; ++i) symbols[i] = i;  // n encodes the marker
  do {
    std::vector<int> ranking(symbols.begin(), symbols.end());
    for (int& r : ranking) {
      if (r == n) r = LinearOrder::kMarker;
    }
    fn(LinearOrder(std::move(ranking), n));
  } while (std::next_permutation(symbols.begin(), symbols.end()));
}

std::vector<ChoiceFunction> enumerate_impl(GroundPtr ground,
                                           std::optional<ItemSet> restrict_acceptable,
                                           const std::vector<int>& quotas, std::size_t cap,
                                           const EquivalencePartition* partition) {
  std::size_t order_count = 1;
  for (int i = 2; i <= ground->size() + 1; ++i) order_count *= i;
  if (order_count * std::max<std::size_t>(quotas.size(), 1) > cap)
    throw EnumerationCapExceeded("too many (order, quota) pairs for the enumeration cap");

  std::vector<ChoiceFunction> out;
  std::set<std::vector<ItemSet>> seen;
  for_each_order(*ground, [&](const LinearOrder& order) {
    if (restrict_acceptable && !order.acceptable().subset_of(*restrict_acceptable)) return;
    for (int q : quotas) {
      if (q < 0 || q > ground->size()) continue;
      ChoiceFunction c = partition
                             ? ChoiceFunction::mto1_responsive(ground, order, q, *partition)
                             : ChoiceFunction::responsive(ground, order, q);
      if (seen.insert(c.materialize()).second) out.push_back(std::move(c));
    }
  });
  return out;
}

}  // namespace

std::vector<ChoiceFunction> enumerate_responsive(GroundPtr ground,
                                                 std::optional<ItemSet> restrict_acceptable,
                                                 const std::vector<int>& quotas, std::size_t cap) {
  return enumerate_impl(std::move(ground), restrict_acceptable, quotas, cap, nullptr);
}

std::vector<ChoiceFunction> enumerate_mto1_responsive(GroundPtr ground,
                                                      const EquivalencePartition& partition,
                                                      std::optional<ItemSet> restrict_acceptable,
                                                      const std::vector<int>& quotas,
                                                      std::size_t cap) {
  return enumerate_impl(std::move(ground), restrict_acceptable, quotas, cap, &partition);
}

ChoiceFunction sample_consistent(GroundPtr ground, std::uint64_t seed, int budget) {
  if (ground->size() > 4)
    throw SamplingBudgetExceeded("consistent sampling is bounded to ground sizes <= 4");
  Rng rng(seed);
  const auto& cardlex = ground->subsets_cardlex();

  for (int attempt = 0; attempt < budget; ++attempt) {
    SetTable<ItemSet> table(cardlex.size());
    bool ok = true;
    // Assign from large to small; a superset whose choice fits inside y
    // forces the value at y. Conflicting forcings reject the attempt.
    for (auto it = cardlex.rbegin(); it != cardlex.rend() && ok; ++it) {
      ItemSet y = *it;
      std::optional<ItemSet> forced;
      for (ItemSet big : cardlex) {
        if (big == y || !y.subset_of(big) || !table[big.bits]) continue;
        ItemSet c = *table[big.bits];
        if (!c.subset_of(y)) continue;
        if (forced && *forced != c) {
          ok = false;
          break;
        }
        forced = c;
      }
      if (!ok) break;
      table[y.bits] = forced ? *forced : ItemSet{rng.mask_bits(ground->size())} & y;
    }
    if (!ok) continue;
    return ChoiceFunction::table(ground, std::move(table));
  }
  throw SamplingBudgetExceeded("consistent sampling budget exhausted");
}

LinearOrder sample_order(const GroundSet& ground, Rng& rng) {
  std::vector<int> perm = rng.permutation(ground.size() + 1);
  for (int& r : perm) {
    if (r == ground.size()) r = LinearOrder::kMarker;
  }
  return LinearOrder(std::move(perm), ground.size());
}

ChoiceFunction sample_responsive(GroundPtr ground, Rng& rng, std::optional<int> quota) {
  LinearOrder order = sample_order(*ground, rng);
  int q = quota ? *quota : rng.below(ground->size() + 1);
  return ChoiceFunction::responsive(std::move(ground), std::move(order), q);
}

ChoiceFunction sample_union_of_orders(GroundPtr ground, Rng& rng, int max_orders) {
  int k = 1 + rng.below(max_orders);
  std::vector<LinearOrder> orders;
  orders.reserve(k);
  for (int i = 0; i < k; ++i) orders.push_back(sample_order(*ground, rng));
  return ChoiceFunction::union_of_orders(std::move(ground), std::move(orders));
}

ChoiceFunction sample_mto1_responsive(GroundPtr ground, const EquivalencePartition& partition,
                                      Rng& rng, std::optional<int> quota) {
  LinearOrder order = sample_order(*ground, rng);
  int q = quota ? *quota : rng.below(ground->size() + 1);
  return ChoiceFunction::mto1_responsive(std::move(ground), std::move(order), q, partition);
}

ExclusionFunction sample_table_exclusion(GroundPtr ground, Rng& rng) {
  SetTable<SetValue> entries(1u << ground->size());
  for (std::size_t m = 0; m < entries.size(); ++m) {
    if (rng.chance(1, 8)) {
      entries[m] = SetValue::top();
    } else {
      entries[m] = SetValue::finite(ItemSet{rng.mask_bits(ground->size())});
    }
  }
  return ExclusionFunction::table(std::move(ground), std::move(entries));
}

TlcrParams sample_tlcr_params(const GroundSet& ground, Rng& rng) {
  TlcrParams p;
  switch (rng.below(5)) {
    case 0: p.t = Threshold::of(0); break;
    case 1: p.t = Threshold::of(1); break;
    case 2: p.t = Threshold::of(2); break;
    case 3: p.t = Threshold::of(3); break;
    default: p.t = Threshold::infinity(); break;
  }
  ItemSet k;
  for (int i = 0; i < ground.size(); ++i) {
    if (rng.chance(1, 4)) k |= ItemSet::single(i);
  }
  p.base = k;
  if (!(p.t.finite && p.t.value == 0)) {
    ItemSet pool = ground.all() - k;
    ItemSet chain;
    for (int level = 0; level < 3; ++level) {
      for (int i : pool.items()) {
        if (rng.chance(1, 4)) chain |= ItemSet::single(i);
      }
      p.reuse.push_back(chain);
    }
  }
  p.validate(ground);
  return p;
}

}  // namespace lexichoice
