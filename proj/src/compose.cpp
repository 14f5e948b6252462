#include "lexichoice/compose.hpp"

namespace lexichoice {

namespace {

void require_same_ground(const GroundSet& a, const GroundSet& b) {
  if (!(a == b)) throw DomainError("composition requires a shared ground set");
}

ChoiceFunction materialize_as_table(GroundPtr ground, const std::vector<ItemSet>& values) {
  SetTable<ItemSet> entries(values.size());
  for (std::size_t m = 0; m < values.size(); ++m) entries[m] = values[m];
  return ChoiceFunction::table(std::move(ground), std::move(entries));
}

}  // namespace

ChoiceFunction lex_compose(const ChoiceFunction& c1, const ChoiceFunction& c2,
                           const ExclusionFunction& e) {
  require_same_ground(c1.ground(), c2.ground());
  require_same_ground(c1.ground(), e.ground());
  const GroundPtr& ground = c1.ground_ptr();
  std::vector<ItemSet> values(1u << ground->size());
  for (std::uint32_t m = 0; m < values.size(); ++m) {
    ItemSet y{m};
    ItemSet first = c1(y);
    values[m] = first | c2(minus(y, e(first)));
  }
  return materialize_as_table(ground, values);
}

ChoiceFunction fold_left(const std::vector<ChoiceFunction>& choices,
                         const std::vector<ExclusionFunction>& exclusions) {
  if (choices.empty()) throw ArityMismatch("fold needs at least one choice function");
  if (exclusions.size() + 1 != choices.size())
    throw ArityMismatch("fold needs one exclusion per interior node");
  ChoiceFunction acc = choices.back();
  for (std::size_t i = choices.size() - 1; i-- > 0;)
    acc = lex_compose(choices[i], acc, exclusions[i]);
  return acc;
}

ChoiceFunction fold_right(const std::vector<ChoiceFunction>& choices,
                          const std::vector<ExclusionFunction>& exclusions) {
  if (choices.empty()) throw ArityMismatch("fold needs at least one choice function");
  if (exclusions.size() + 1 != choices.size())
    throw ArityMismatch("fold needs one exclusion per interior node");
  ChoiceFunction acc = choices.front();
  for (std::size_t i = 1; i < choices.size(); ++i)
    acc = lex_compose(acc, choices[i], exclusions[i - 1]);
  return acc;
}

CompositionTree CompositionTree::leaf(ChoiceFunction c) {
  CompositionTree t;
  t.leaf_ = std::move(c);
  return t;
}

CompositionTree CompositionTree::node(CompositionTree left, CompositionTree right,
                                      ExclusionFunction label) {
  CompositionTree t;
  t.left_ = std::make_shared<const CompositionTree>(std::move(left));
  t.right_ = std::make_shared<const CompositionTree>(std::move(right));
  t.label_ = std::move(label);
  return t;
}

ChoiceFunction eval_tree(const CompositionTree& tree) {
  if (tree.is_leaf()) return tree.choice();
  return lex_compose(eval_tree(tree.left()), eval_tree(tree.right()), tree.label());
}

namespace {

ChoiceFunction procedure_quota(const std::vector<ChoiceFunction>& choices, int n_quota,
                               bool aggregate) {
  if (choices.empty()) throw ArityMismatch("procedure needs at least one choice function");
  if (n_quota < 0) throw InvalidParams("quota must be non-negative");
  const GroundPtr& ground = choices.front().ground_ptr();
  for (const ChoiceFunction& c : choices) require_same_ground(*ground, c.ground());

  std::vector<ItemSet> values(1u << ground->size());
  for (std::uint32_t m = 0; m < values.size(); ++m) {
    ItemSet remaining{m};
    ItemSet chosen;
    int total = 0;
    bool any_prior_at_quota = false;
    for (const ChoiceFunction& c : choices) {
      bool blocked = aggregate ? total >= n_quota : any_prior_at_quota || n_quota == 0;
      ItemSet pick = blocked ? ItemSet::none() : c(remaining);
      chosen |= pick;
      remaining -= pick;
      total += pick.size();
      if (pick.size() >= n_quota) any_prior_at_quota = true;
    }
    values[m] = chosen;
  }
  return materialize_as_table(ground, values);
}

}  // namespace

ChoiceFunction procedure_aggregate_quota(const std::vector<ChoiceFunction>& choices, int n_quota) {
  return procedure_quota(choices, n_quota, true);
}

ChoiceFunction procedure_individual_quota(const std::vector<ChoiceFunction>& choices, int n_quota) {
  return procedure_quota(choices, n_quota, false);
}

CompositionTree build_soft_quota_tree(const std::vector<ChoiceFunction>& choices, int k) {
  if (choices.empty()) throw ArityMismatch("soft quota needs at least one choice function");
  if (k < 0) throw InvalidParams("soft quota must be non-negative");
  const GroundPtr& ground = choices.front().ground_ptr();
  SetTable<SetValue> entries(1u << ground->size());
  for (std::uint32_t m = 0; m < entries.size(); ++m) {
    ItemSet z{m};
    entries[m] = z.size() <= k ? SetValue::finite(z) : SetValue::top();
  }
  ExclusionFunction label = ExclusionFunction::table(ground, std::move(entries));

  CompositionTree tree = CompositionTree::leaf(choices.front());
  for (std::size_t i = 1; i < choices.size(); ++i)
    tree = CompositionTree::node(std::move(tree), CompositionTree::leaf(choices[i]), label);
  return tree;
}

CompositionTree build_nested_reserves(const std::vector<ChoiceFunction>& choices,
                                      const std::vector<ItemSet>& reserves) {
  if (choices.empty()) throw ArityMismatch("nested reserves need at least one choice function");
  if (reserves.size() != choices.size())
    throw ArityMismatch("nested reserves need one reserve set per choice function");
  for (std::size_t j = 1; j < reserves.size(); ++j) {
    if (!reserves[j].subset_of(reserves[j - 1]))
      throw NestingViolation("reserve sets must be nested decreasing");
  }
  const GroundPtr& ground = choices.front().ground_ptr();

  CompositionTree tree = CompositionTree::leaf(choices.front());
  for (std::size_t i = 1; i < choices.size(); ++i) {
    // Items reserved to positions before i are barred from choices[i] onward.
    ItemSet barred = reserves.front() - reserves[i];
    SetTable<SetValue> entries(1u << ground->size());
    for (std::uint32_t m = 0; m < entries.size(); ++m)
      entries[m] = SetValue::finite(ItemSet{m} | barred);
    ExclusionFunction label = ExclusionFunction::table(ground, std::move(entries));
    tree = CompositionTree::node(std::move(tree), CompositionTree::leaf(choices[i]), label);
  }
  return tree;
}

}  // namespace lexichoice
