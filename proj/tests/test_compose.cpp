#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lexichoice/compose.hpp"
#include "lexichoice/contracts.hpp"
#include "lexichoice/families.hpp"
#include "lexichoice/props.hpp"

using namespace lexichoice;

namespace {
const GroundPtr g5 = make_ground(5, 2);

ChoiceFunction accepting(ItemSet acceptable, int quota, const GroundPtr& g = g5) {
  return ChoiceFunction::responsive(g, LinearOrder::over(acceptable.items(), *g), quota);
}
ChoiceFunction sv(std::vector<int> preference, const GroundPtr& g = g5) {
  return ChoiceFunction::responsive(g, LinearOrder::over(std::move(preference), *g), 1);
}
}  // namespace

TEST_CASE("lexicographic composition examples") {
  ChoiceFunction c1 = sv({0, 1, 2});
  ChoiceFunction c2 = sv({1, 2});
  CHECK(lex_compose(c1, c2, ExclusionFunction::identity(g5))(ItemSet::of({0, 1, 2})) ==
        ItemSet::of({0, 1}));
  // Capacity(1) turns TOP after the first pick: the second chooser is starved.
  CHECK(lex_compose(c1, c2, ExclusionFunction::capacity(g5, 1))(ItemSet::of({0, 1, 2})) ==
        ItemSet::of({0}));

  // The three-branch equivalence exclusion: choosing {b} leaves only a open.
  EquivalencePartition part(*g5, {ItemSet::of({0, 2}), ItemSet::of({1, 3, 4})});
  EquivPairExample ex = build_example_pair_exclusion(g5, part, 0, 1, 2);
  ChoiceFunction pick_b = accepting(ItemSet::of({1}), 1);
  ChoiceFunction want_a = sv({0});
  CHECK(lex_compose(pick_b, want_a, ex.exclusion)(ItemSet::of({0, 1})) == ItemSet::of({0, 1}));

  GroundPtr other = make_ground(4, 1);
  CHECK_THROWS_AS(lex_compose(c1, sv({0}, other), ExclusionFunction::identity(g5)), DomainError);
}

TEST_CASE("folds agree with each other and with the binary operator") {
  ChoiceFunction only = accepting(ItemSet::of({0, 1}), 1);
  CHECK(fold_left({only}, {}).agrees_with(only));
  CHECK(fold_right({only}, {}).agrees_with(only));

  ChoiceFunction c1 = sv({0, 1, 2, 3, 4}), c2 = sv({1, 0, 3}), c3 = sv({4, 2});
  ExclusionFunction id = ExclusionFunction::identity(g5);
  CHECK(fold_left({c1, c2}, {id}).agrees_with(lex_compose(c1, c2, id)));
  CHECK(fold_right({c1, c2}, {id}).agrees_with(lex_compose(c1, c2, id)));

  // Three single-valued choosers with distinct favourites and identity
  // labels choose all three.
  std::vector<ChoiceFunction> distinct{sv({0}), sv({1}), sv({2})};
  std::vector<ExclusionFunction> ids{id, id};
  CHECK(fold_left(distinct, ids)(ItemSet::of({0, 1, 2})) == ItemSet::of({0, 1, 2}));
  CHECK(fold_right(distinct, ids)(ItemSet::of({0, 1, 2})) == ItemSet::of({0, 1, 2}));

  CHECK_THROWS_AS(fold_left({c1, c2}, {}), ArityMismatch);
  CHECK_THROWS_AS(fold_right({}, {}), ArityMismatch);
}

TEST_CASE("identity labels make composition associative") {
  Rng rng(2024);
  ExclusionFunction id = ExclusionFunction::identity(g5);
  std::vector<ExclusionFunction> ids{id, id};
  for (int i = 0; i < 10; ++i) {
    std::vector<ChoiceFunction> triple{sample_responsive(g5, rng), sample_responsive(g5, rng),
                                       sample_responsive(g5, rng)};
    CHECK(fold_left(triple, ids).agrees_with(fold_right(triple, ids)));
  }
}

TEST_CASE("empty labels make composition commutative and associative") {
  Rng rng(99);
  ExclusionFunction none = ExclusionFunction::empty(g5);
  std::vector<ExclusionFunction> labels{none, none};
  for (int i = 0; i < 5; ++i) {
    std::vector<ChoiceFunction> triple{sample_union_of_orders(g5, rng),
                                       sample_union_of_orders(g5, rng),
                                       sample_union_of_orders(g5, rng)};
    ChoiceFunction reference = fold_left(triple, labels);
    std::vector<int> idx{0, 1, 2};
    do {
      std::vector<ChoiceFunction> permuted{triple[idx[0]], triple[idx[1]], triple[idx[2]]};
      CHECK(fold_left(permuted, labels).agrees_with(reference));
      CHECK(fold_right(permuted, labels).agrees_with(reference));
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
}

TEST_CASE("tree evaluation") {
  ChoiceFunction c1 = sv({0, 1}), c2 = sv({1, 2}), c3 = sv({2, 3});
  ExclusionFunction id = ExclusionFunction::identity(g5);
  CHECK(eval_tree(CompositionTree::leaf(c1)).agrees_with(c1));
  CompositionTree node =
      CompositionTree::node(CompositionTree::leaf(c1), CompositionTree::leaf(c2), id);
  CHECK(eval_tree(node).agrees_with(lex_compose(c1, c2, id)));
  CompositionTree nested = CompositionTree::node(
      std::move(node), CompositionTree::leaf(c3), ExclusionFunction::capacity(g5, 2));
  CHECK(eval_tree(nested)(ItemSet::of({0, 1, 2, 3})) == ItemSet::of({0, 1}));
}

TEST_CASE("quota procedures follow the prose") {
  // the appendix instance: Z1 = {0,1}, Z2 = {2,3}, z3 = 4
  std::vector<ChoiceFunction> inst{accepting(ItemSet::of({0, 1}), 2),
                                   accepting(ItemSet::of({2, 3}), 2),
                                   accepting(ItemSet::of({4}), 1)};
  ItemSet y = g5->all();
  CHECK(procedure_aggregate_quota(inst, 3)(y) == ItemSet::of({0, 1, 2, 3}));
  CHECK(procedure_individual_quota(inst, 3)(y) == ItemSet::of({0, 1, 2, 3, 4}));
  CHECK(procedure_aggregate_quota(inst, 0)(y) == ItemSet::none());
  CHECK(procedure_individual_quota(inst, 0)(y) == ItemSet::none());
  ChoiceFunction alone = accepting(ItemSet::of({0, 2}), 2);
  CHECK(procedure_aggregate_quota({alone}, 5).agrees_with(alone));
  std::vector<ChoiceFunction> silent{accepting(ItemSet::none(), 0), accepting(ItemSet::none(), 0)};
  CHECK(procedure_individual_quota(silent, 2)(y) == ItemSet::none());
}

TEST_CASE("procedures coincide with the matching fold over all inputs") {
  std::vector<std::vector<ChoiceFunction>> battery;
  battery.push_back({accepting(ItemSet::of({0, 1}), 2), accepting(ItemSet::of({2, 3}), 2),
                     accepting(ItemSet::of({4}), 1)});
  battery.push_back({sv({3, 1, 0}), accepting(ItemSet::of({0, 1, 2, 3, 4}), 3), sv({2, 4})});
  battery.push_back({accepting(ItemSet::none(), 0), sv({0, 1}), accepting(ItemSet::of({1, 2}), 2),
                     sv({4})});
  for (int n_quota = 1; n_quota <= 3; ++n_quota) {
    TlcrParams p;
    p.t = Threshold::of(n_quota);
    ExclusionFunction label = make_tlcr(g5, p);
    for (const auto& components : battery) {
      std::vector<ExclusionFunction> labels(components.size() - 1, label);
      CHECK(procedure_aggregate_quota(components, n_quota)
                .agrees_with(fold_right(components, labels)));
      CHECK(procedure_individual_quota(components, n_quota)
                .agrees_with(fold_left(components, labels)));
    }
  }

  // and the appendix witness separates the other pairing
  TlcrParams p3;
  p3.t = Threshold::of(3);
  ExclusionFunction label = make_tlcr(g5, p3);
  std::vector<ExclusionFunction> labels{label, label};
  ItemSet y = g5->all();
  CHECK(fold_left(battery[0], labels)(y) == ItemSet::of({0, 1, 2, 3, 4}));
  CHECK(procedure_aggregate_quota(battery[0], 3)(y) == ItemSet::of({0, 1, 2, 3}));
  CHECK(fold_right(battery[0], labels)(y) == ItemSet::of({0, 1, 2, 3}));
  CHECK(procedure_individual_quota(battery[0], 3)(y) == ItemSet::of({0, 1, 2, 3, 4}));
}

TEST_CASE("soft quota trees stop once the threshold is crossed") {
  std::vector<ChoiceFunction> divisions{sv({0, 1, 2, 3, 4}), sv({1, 2, 3}), sv({2, 0, 4}),
                                        sv({3, 4}), sv({4, 0})};
  ChoiceFunction soft = eval_tree(build_soft_quota_tree(divisions, 2));
  int best = 0;
  for (std::uint32_t m = 0; m < 32; ++m) {
    int size = soft(ItemSet{m}).size();
    CHECK(size <= 3);  // k+1 is the hard bound with single-valued components
    best = std::max(best, size);
  }
  CHECK(best == 3);  // the tree halts exactly at the threshold

  // k = 0: only the first non-empty pick survives
  ChoiceFunction tight = eval_tree(build_soft_quota_tree(divisions, 0));
  for (std::uint32_t m = 0; m < 32; ++m) {
    ItemSet y{m};
    ItemSet expect;
    for (const ChoiceFunction& c : divisions) {
      expect = c(y);
      if (!expect.empty()) break;
    }
    CHECK(tight(y) == expect);
  }

  // k >= ground size: the soft-quota label never trips, so the tree matches
  // the identity-exclusion fold
  ChoiceFunction wide = eval_tree(build_soft_quota_tree(divisions, 5));
  std::vector<ExclusionFunction> ids(4, ExclusionFunction::identity(g5));
  CHECK(wide.agrees_with(fold_right(divisions, ids)));
}

TEST_CASE("nested reserves bar items from later components") {
  // X1 = {0,1,2} >= X2 = {0,1} >= X3 = {0}
  std::vector<ItemSet> reserves{ItemSet::of({0, 1, 2}), ItemSet::of({0, 1}), ItemSet::of({0})};
  // first chooser rejects item 1; second wants it; third wants it too
  std::vector<ChoiceFunction> components{sv({3}), sv({1, 4}), sv({1, 2})};
  ChoiceFunction reserved = eval_tree(build_nested_reserves(components, reserves));
  // item 1 sits at reserve level 2: the second chooser may take it
  CHECK(reserved(ItemSet::of({1, 3, 4})) == ItemSet::of({1, 3}));
  // item 2 sits at level 1 only: the second chooser must fall back to 4 and
  // the third chooser never sees 2
  CHECK(reserved(ItemSet::of({2, 3, 4})) == ItemSet::of({3, 4}));

  // with empty reserves the tree is the plain identity-exclusion fold
  std::vector<ItemSet> empty_reserves{ItemSet::none(), ItemSet::none()};
  std::vector<ChoiceFunction> pair{sv({0, 1}), sv({0, 1})};
  ChoiceFunction plain = eval_tree(build_nested_reserves(pair, empty_reserves));
  CHECK(plain.agrees_with(fold_right(pair, {ExclusionFunction::identity(g5)})));

  CHECK_THROWS_AS(build_nested_reserves(components, {ItemSet::of({0}), ItemSet::of({0, 1}),
                                                     ItemSet::of({0, 1})}),
                  NestingViolation);
  CHECK_THROWS_AS(build_nested_reserves(components, {ItemSet::of({0})}), ArityMismatch);
}

TEST_CASE("nested reserves agree with a direct policy simulation at n=6") {
  GroundPtr g6 = make_ground(6, 2);
  // X1 = {0..4} >= X2 = {0,1,2} >= X3 = {0}; item 5 is unreserved
  std::vector<ItemSet> reserves{ItemSet::of({0, 1, 2, 3, 4}), ItemSet::of({0, 1, 2}),
                                ItemSet::of({0})};
  std::vector<ChoiceFunction> components{
      ChoiceFunction::responsive(g6, LinearOrder::over({3, 5, 0}, *g6), 2),
      ChoiceFunction::responsive(g6, LinearOrder::over({1, 3, 4, 2}, *g6), 2),
      ChoiceFunction::responsive(g6, LinearOrder::over({0, 2, 5}, *g6), 1)};
  ChoiceFunction tree = eval_tree(build_nested_reserves(components, reserves));

  for (std::uint32_t m = 0; m < 64; ++m) {
    ItemSet y{m};
    // direct simulation: component i sees the input minus prior picks minus
    // everything reserved to positions before it
    ItemSet chosen;
    for (std::size_t i = 0; i < components.size(); ++i) {
      ItemSet barred = i == 0 ? ItemSet::none() : reserves.front() - reserves[i];
      chosen |= components[i]((y - chosen) - barred);
    }
    CHECK(tree(y) == chosen);
  }
}

TEST_CASE("TOP absorption: once gross exclusion covers everything the composition is the first choice") {
  ExclusionFunction cap = ExclusionFunction::capacity(g5, 2);
  ChoiceFunction c1 = accepting(ItemSet::of({0, 1, 2}), 3);
  ChoiceFunction c2 = accepting(ItemSet::of({3, 4}), 2);
  ChoiceFunction composed = lex_compose(c1, c2, cap);
  for (std::uint32_t m = 0; m < 32; ++m) {
    ItemSet y{m};
    if (cap(c1(y)).is_top()) CHECK(composed(y) == c1(y));
  }
}
