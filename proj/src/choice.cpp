#include "lexichoice/choice.hpp"

#include <algorithm>

namespace lexichoice {

LinearOrder::LinearOrder(std::vector<int> ranking, int ground_size) : ranking_(std::move(ranking)) {
  if (static_cast<int>(ranking_.size()) != ground_size + 1)
    throw InvalidParams("ranking must list every item plus one marker");
  std::vector<bool> seen(ground_size, false);
  int markers = 0;
  bool below_marker = false;
  for (int r : ranking_) {
    if (r == kMarker) {
      ++markers;
      below_marker = true;
      continue;
    }
    if (r < 0 || r >= ground_size || seen[r]) throw InvalidParams("ranking is not a permutation");
    seen[r] = true;
    if (!below_marker) acceptable_ |= ItemSet::single(r);
  }
  if (markers != 1) throw InvalidParams("ranking must contain exactly one marker");
}

LinearOrder LinearOrder::over(std::vector<int> acceptable, const GroundSet& ground) {
  ItemSet acc;
  for (int i : acceptable) acc |= ItemSet::single(i);
  std::vector<int> ranking = std::move(acceptable);
  ranking.push_back(kMarker);
  for (int i = 0; i < ground.size(); ++i) {
    if (!acc.contains(i)) ranking.push_back(i);
  }
  return LinearOrder(std::move(ranking), ground.size());
}

namespace {

ItemSet eval_responsive(const LinearOrder& order, int quota, ItemSet y) {
  ItemSet chosen;
  int taken = 0;
  for (int r : order.ranking()) {
    if (r == LinearOrder::kMarker || taken >= quota) break;
    if (y.contains(r)) {
      chosen |= ItemSet::single(r);
      ++taken;
    }
  }
  return chosen;
}

ItemSet eval_mto1(const LinearOrder& order, int quota, const EquivalencePartition& part, ItemSet y) {
  ItemSet chosen;
  ItemSet occupied;
  int taken = 0;
  for (int r : order.ranking()) {
    if (r == LinearOrder::kMarker || taken >= quota) break;
    if (!y.contains(r) || occupied.contains(r)) continue;
    chosen |= ItemSet::single(r);
    occupied |= part.class_of(r);
    ++taken;
  }
  return chosen;
}

}  // namespace

ChoiceFunction::ChoiceFunction(GroundPtr ground, Rule rule)
    : ground_(std::move(ground)), rule_(std::move(rule)) {}

ChoiceFunction ChoiceFunction::responsive(GroundPtr ground, LinearOrder order, int quota) {
  if (quota < 0 || quota > ground->size()) throw InvalidParams("quota out of range");
  return ChoiceFunction(std::move(ground), Responsive{std::move(order), quota});
}

ChoiceFunction ChoiceFunction::union_of_orders(GroundPtr ground, std::vector<LinearOrder> orders) {
  return ChoiceFunction(std::move(ground), UnionOfOrders{std::move(orders)});
}

ChoiceFunction ChoiceFunction::table(GroundPtr ground, SetTable<ItemSet> entries) {
  if (entries.size() != (1u << ground->size()))
    throw InvalidParams("choice table must have one slot per subset");
  for (std::size_t m = 0; m < entries.size(); ++m) {
    if (entries[m] && !entries[m]->subset_of(ItemSet{static_cast<std::uint32_t>(m)}))
      throw InvalidParams("choice table entry violates contraction");
  }
  return ChoiceFunction(std::move(ground), Table{std::move(entries)});
}

ChoiceFunction ChoiceFunction::table_from(GroundPtr ground,
                                          const std::map<ItemSet, ItemSet>& entries) {
  SetTable<ItemSet> t(1u << ground->size());
  for (const auto& [y, c] : entries) t[y.bits] = c;
  return table(std::move(ground), std::move(t));
}

ChoiceFunction ChoiceFunction::mto1_responsive(GroundPtr ground, LinearOrder order, int quota,
                                               EquivalencePartition partition) {
  if (quota < 0 || quota > ground->size()) throw InvalidParams("quota out of range");
  return ChoiceFunction(std::move(ground),
                        Mto1Responsive{std::move(order), quota, std::move(partition)});
}

ItemSet ChoiceFunction::operator()(ItemSet y) const {
  ground_->require_inside(y);
  if (const auto* r = std::get_if<Responsive>(&rule_)) return eval_responsive(r->order, r->quota, y);
  if (const auto* u = std::get_if<UnionOfOrders>(&rule_)) {
    ItemSet out;
    for (const LinearOrder& o : u->orders) out |= eval_responsive(o, 1, y);
    return out;
  }
  if (const auto* t = std::get_if<Table>(&rule_)) {
    const auto& slot = t->entries[y.bits];
    if (!slot) throw MissingTableEntry("choice table has no entry for " + ground_->format(y));
    return *slot;
  }
  const auto& m = std::get<Mto1Responsive>(rule_);
  return eval_mto1(m.order, m.quota, m.partition, y);
}

std::vector<ItemSet> ChoiceFunction::materialize() const {
  std::vector<ItemSet> out(1u << ground_->size());
  for (std::uint32_t m = 0; m < out.size(); ++m) out[m] = (*this)(ItemSet{m});
  return out;
}

bool ChoiceFunction::agrees_with(const ChoiceFunction& other) const {
  if (!(ground() == other.ground())) return false;
  return materialize() == other.materialize();
}

}  // namespace lexichoice
