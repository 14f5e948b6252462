#include "lexichoice/exclusion.hpp"

namespace lexichoice {

void TlcrParams::validate(const GroundSet& ground) const {
  if (t.finite && t.value < 0) throw InvalidParams("threshold must be non-negative");
  if (t.finite && t.value == 0 && !reuse.empty())
    throw InvalidParams("t=0 admits no reuse sets");
  if (!ground.contains(base)) throw InvalidParams("K outside ground set");
  ItemSet prev;
  for (const ItemSet& ts : reuse) {
    if (!ground.contains(ts)) throw InvalidParams("reuse set outside ground set");
    if (!prev.subset_of(ts)) throw InvalidParams("reuse sets must be nested");
    if (ts.intersects(base)) throw InvalidParams("reuse sets must be disjoint from K");
    prev = ts;
  }
}

ExclusionFunction::ExclusionFunction(GroundPtr ground, Rule rule)
    : ground_(std::move(ground)), rule_(std::move(rule)) {}

ExclusionFunction ExclusionFunction::identity(GroundPtr ground) {
  return ExclusionFunction(std::move(ground), Identity{});
}

ExclusionFunction ExclusionFunction::empty(GroundPtr ground) {
  return ExclusionFunction(std::move(ground), Empty{});
}

ExclusionFunction ExclusionFunction::capacity(GroundPtr ground, int cap) {
  if (cap < 0) throw InvalidParams("capacity must be non-negative");
  return ExclusionFunction(std::move(ground), Capacity{cap});
}

ExclusionFunction ExclusionFunction::tlcr(GroundPtr ground, TlcrParams params) {
  params.validate(*ground);
  return ExclusionFunction(std::move(ground), Tlcr{std::move(params)});
}

ExclusionFunction ExclusionFunction::underline_equiv(GroundPtr ground,
                                                     EquivalencePartition partition) {
  return ExclusionFunction(std::move(ground), UnderlineEquiv{std::move(partition)});
}

ExclusionFunction ExclusionFunction::table(GroundPtr ground, SetTable<SetValue> entries) {
  if (entries.size() != (1u << ground->size()))
    throw InvalidParams("exclusion table must have one slot per subset");
  return ExclusionFunction(std::move(ground), Table{std::move(entries)});
}

ExclusionFunction ExclusionFunction::table_from(GroundPtr ground,
                                                const std::map<ItemSet, SetValue>& entries) {
  SetTable<SetValue> t(1u << ground->size());
  for (const auto& [z, v] : entries) t[z.bits] = v;
  return table(std::move(ground), std::move(t));
}

SetValue ExclusionFunction::operator()(ItemSet z) const {
  ground_->require_inside(z);
  if (std::holds_alternative<Identity>(rule_)) return SetValue::finite(z);
  if (std::holds_alternative<Empty>(rule_)) return SetValue::finite(ItemSet::none());
  if (const auto* c = std::get_if<Capacity>(&rule_))
    return z.size() < c->cap ? SetValue::finite(z) : SetValue::top();
  if (const auto* t = std::get_if<Tlcr>(&rule_)) {
    const TlcrParams& p = t->params;
    if (p.t.reached_by(z.size())) return SetValue::top();
    return SetValue::finite((z - p.reuse_at(z.size())) | p.base);
  }
  if (const auto* u = std::get_if<UnderlineEquiv>(&rule_))
    return SetValue::finite(u->partition.closure(z));
  const auto& tab = std::get<Table>(rule_);
  const auto& slot = tab.entries[z.bits];
  if (!slot) throw MissingTableEntry("exclusion table has no entry for " + ground_->format(z));
  return *slot;
}

std::vector<SetValue> ExclusionFunction::materialize() const {
  std::vector<SetValue> out(1u << ground_->size());
  for (std::uint32_t m = 0; m < out.size(); ++m) out[m] = (*this)(ItemSet{m});
  return out;
}

bool ExclusionFunction::agrees_with(const ExclusionFunction& other) const {
  if (!(ground() == other.ground())) return false;
  return materialize() == other.materialize();
}

}  // namespace lexichoice
