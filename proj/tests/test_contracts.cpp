#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "lexichoice/contracts.hpp"
#include "lexichoice/families.hpp"
#include "lexichoice/witness.hpp"

using namespace lexichoice;

namespace {
const GroundPtr g5 = make_ground(5, 2);
const EquivalencePartition part5(*g5, {ItemSet::of({0, 2}), ItemSet::of({1}), ItemSet::of({3}),
                                       ItemSet::of({4})});

ExclusionFunction from_rule(const GroundPtr& g, const std::function<SetValue(ItemSet)>& fn) {
  SetTable<SetValue> entries(1u << g->size());
  for (std::uint32_t m = 0; m < entries.size(); ++m) entries[m] = fn(ItemSet{m});
  return ExclusionFunction::table(g, std::move(entries));
}
}  // namespace

TEST_CASE("feasibility") {
  CHECK(is_feasible(ItemSet::of({0, 1}), part5));
  CHECK_FALSE(is_feasible(ItemSet::of({0, 2}), part5));
  CHECK(is_feasible(ItemSet::none(), part5));
}

TEST_CASE("completion relation") {
  ChoiceFunction c = ChoiceFunction::mto1_responsive(g5, LinearOrder::over({0, 2, 1}, *g5), 2,
                                                     part5);
  CHECK(completes(c, c, part5));  // self-completion

  // A completion may output infeasible sets freely; those corners impose
  // nothing.
  SetTable<ItemSet> entries(32);
  for (std::uint32_t m = 0; m < 32; ++m) entries[m] = c(ItemSet{m});
  entries[ItemSet::of({0, 2}).bits] = ItemSet::of({0, 2});
  ChoiceFunction cbar = ChoiceFunction::table(g5, std::move(entries));
  CHECK(completes(cbar, c, part5));

  // Disagreeing on a feasible output breaks it.
  SetTable<ItemSet> wrong(32);
  for (std::uint32_t m = 0; m < 32; ++m) wrong[m] = c(ItemSet{m});
  wrong[ItemSet::of({1}).bits] = ItemSet::none();
  if (c(ItemSet::of({1})) != ItemSet::none())
    CHECK_FALSE(completes(ChoiceFunction::table(g5, std::move(wrong)), c, part5));
}

TEST_CASE("equivalence-excluding exclusions") {
  CHECK(is_equivalence_excluding(ExclusionFunction::underline_equiv(g5, part5), part5));
  // identity with a block of size >= 2 leaves the partner contract open
  CHECK_FALSE(is_equivalence_excluding(ExclusionFunction::identity(g5), part5));
  EquivPairExample ex = build_example_pair_exclusion(g5, part5, 0, 1, 2);
  CHECK(is_equivalence_excluding(ex.exclusion, part5));
}

TEST_CASE("feasible-domain dilation conditions") {
  ExclusionFunction under = ExclusionFunction::underline_equiv(g5, part5);
  CHECK(check_equiv_dilation(under, part5, EquivCondition::Mto1Monotone));
  CHECK(check_equiv_dilation(under, part5, EquivCondition::WeakAllOrNothing));

  EquivPairExample ex = build_example_pair_exclusion(g5, part5, 0, 1, 2);
  CHECK(check_equiv_dilation(ex.exclusion, part5, EquivCondition::WeakAllOrNothing));
  TlcrClassification cls = classify_mto1_tlcr(ex.exclusion, part5);
  CHECK_FALSE(cls.is_tlcr);
  CHECK(std::find(cls.failed.begin(), cls.failed.end(), Condition::AllOrNothing) !=
        cls.failed.end());

  // gross exclusion strictly between closure u K and TOP, with two
  // non-equivalent items outside, breaks weak all-or-nothingness
  ExclusionFunction strut = from_rule(g5, [&](ItemSet z) {
    if (z == ItemSet::of({1})) return SetValue::finite(ItemSet::of({1, 3}));
    return SetValue::finite(part5.closure(z));
  });
  CHECK_FALSE(check_equiv_dilation(strut, part5, EquivCondition::WeakAllOrNothing));
}

TEST_CASE("many-to-one classification") {
  // plain threshold-linear parameters classify identically on the feasible
  // domain
  TlcrParams p;
  p.t = Threshold::of(3);
  p.base = ItemSet::of({1});
  p.reuse = {ItemSet::of({0}), ItemSet::of({0, 3})};
  ExclusionFunction e = make_tlcr(g5, p);
  TlcrClassification cls = classify_mto1_tlcr(e, part5);
  REQUIRE(cls.is_tlcr);
  CHECK(cls.params->t == p.t);
  CHECK(cls.params->base == p.base);
  CHECK(cls.params->reuse_at(1) == ItemSet::of({0}));
  CHECK(cls.params->reuse_at(2) == ItemSet::of({0, 3}));

  // underline exclusion with a block of size >= 2 fails feasible-domain
  // all-or-nothingness: closure(Z) u K differs from Z u K
  TlcrClassification under = classify_mto1_tlcr(ExclusionFunction::underline_equiv(g5, part5),
                                                part5);
  CHECK_FALSE(under.is_tlcr);
  CHECK(std::find(under.failed.begin(), under.failed.end(), Condition::AllOrNothing) !=
        under.failed.end());
}

TEST_CASE("overline exclusion is the plain threshold-linear function") {
  TlcrParams p;
  p.t = Threshold::of(2);
  p.base = ItemSet::of({4});
  CHECK(build_overline_exclusion(g5, p).agrees_with(make_tlcr(g5, p)));
  TlcrParams zero;
  zero.t = Threshold::of(0);
  ExclusionFunction top_everywhere = build_overline_exclusion(g5, zero);
  CHECK(top_everywhere(ItemSet::none()).is_top());
  CHECK(top_everywhere(ItemSet::of({0, 1})).is_top());
  TlcrParams id;
  id.t = Threshold::infinity();
  CHECK(build_overline_exclusion(g5, id).agrees_with(ExclusionFunction::identity(g5)));
}

TEST_CASE("completion transfer and its hypothesis checks") {
  GroundPtr g6 = make_ground(6, 2);
  EquivalencePartition part(*g6, {ItemSet::of({0, 1}), ItemSet::of({2, 3}), ItemSet::of({4, 5})});
  TlcrParams p;
  p.t = Threshold::infinity();
  p.base = g6->all();  // partners of every item must sit inside K
  ExclusionFunction e = make_tlcr(g6, p);

  LinearOrder o1 = LinearOrder::over({0, 2, 4, 1}, *g6);
  LinearOrder o2 = LinearOrder::over({1, 3, 5}, *g6);
  ChoiceFunction c1 = ChoiceFunction::mto1_responsive(g6, o1, 2, part);
  ChoiceFunction c2 = ChoiceFunction::mto1_responsive(g6, o2, 2, part);
  ChoiceFunction c1bar = ChoiceFunction::responsive(g6, o1, 2);
  ChoiceFunction c2bar = ChoiceFunction::responsive(g6, o2, 2);
  CHECK(verify_lemma_mto1(c1, c2, c1bar, c2bar, e, part));

  // an inconsistent second completion is rejected up front
  SetTable<ItemSet> bad(64);
  for (std::uint32_t m = 0; m < 64; ++m) bad[m] = c2bar(ItemSet{m});
  bad[ItemSet::of({1, 3}).bits] = ItemSet::of({1});
  bad[ItemSet::of({1}).bits] = ItemSet::none();
  ChoiceFunction c2bad = ChoiceFunction::table(g6, std::move(bad));
  CHECK_THROWS_AS(verify_lemma_mto1(c1, c2, c1bar, c2bad, e, part), PreconditionFailed);

  // a non-equivalence-excluding exclusion is rejected too
  CHECK_THROWS_AS(verify_lemma_mto1(c1, c2, c1bar, c2bar, ExclusionFunction::identity(g6), part),
                  PreconditionFailed);
}

TEST_CASE("many-to-oneness is preserved exactly for equivalence-excluding exclusions") {
  PreservationOptions options;
  options.partition = &part5;

  std::vector<std::pair<ExclusionFunction, bool>> battery;
  battery.emplace_back(ExclusionFunction::underline_equiv(g5, part5), true);
  battery.emplace_back(build_example_pair_exclusion(g5, part5, 0, 1, 2).exclusion, true);
  battery.emplace_back(ExclusionFunction::identity(g5), false);
  battery.emplace_back(ExclusionFunction::empty(g5), false);

  for (const auto& [e, excluding] : battery) {
    CHECK(is_equivalence_excluding(e, part5) == excluding);
    auto r = verify_preservation(e, Property::MTO1, DomainClass::MTO1_RES, DomainClass::MTO1_RES,
                                 SampleSpec::sampled(11, 300), options);
    CHECK(r.all_pass() == excluding);
  }

  // the remark's necessity construction: choosing x leaves its partner open
  ExclusionFunction id = ExclusionFunction::identity(g5);
  ChoiceFunction c1 = ChoiceFunction::mto1_responsive(g5, LinearOrder::over({0}, *g5), 1, part5);
  ChoiceFunction c2 = ChoiceFunction::mto1_responsive(g5, LinearOrder::over({2}, *g5), 1, part5);
  ChoiceFunction composed = lex_compose(c1, c2, id);
  CHECK_FALSE(check_choice(composed, Property::MTO1, &part5).holds);
}

TEST_CASE("the many-to-oneness remark holds exhaustively at n=6") {
  GroundPtr g6 = make_ground(6, 2);
  EquivalencePartition part(*g6, {ItemSet::of({0, 3}), ItemSet::of({1, 4}), ItemSet::of({2}),
                                  ItemSet::of({5})});
  PreservationOptions options;
  options.partition = &part;

  // Exhaustive over a restricted many-to-one responsive family: acceptable
  // sets within the first four items, quotas up to 2.
  auto family = enumerate_mto1_responsive(g6, part, ItemSet::of({0, 1, 2, 3}), {0, 1, 2});
  REQUIRE(family.size() > 10);

  auto run_exhaustive = [&](const ExclusionFunction& e) {
    for (const ChoiceFunction& c1 : family) {
      for (const ChoiceFunction& c2 : family) {
        if (!check_choice(lex_compose(c1, c2, e), Property::MTO1, &part).holds) return false;
      }
    }
    return true;
  };

  ExclusionFunction under = ExclusionFunction::underline_equiv(g6, part);
  CHECK(is_equivalence_excluding(under, part));
  CHECK(run_exhaustive(under));

  ExclusionFunction id = ExclusionFunction::identity(g6);
  CHECK_FALSE(is_equivalence_excluding(id, part));
  CHECK_FALSE(run_exhaustive(id));
}

TEST_CASE("completion search certifies non-completability") {
  // Appendix-style violation of many-to-one monotonicity: a is excluded
  // after the smaller feasible choice but not the larger one. Both violating
  // outputs are feasible, so no completion can repair path independence.
  GroundPtr g4 = make_ground(4, 1);
  EquivalencePartition part(*g4, {ItemSet::of({0, 2}), ItemSet::of({1}), ItemSet::of({3})});
  ExclusionFunction e = from_rule(g4, [&](ItemSet z) -> SetValue {
    ItemSet closure = part.closure(z);
    if (z == ItemSet::of({1})) return SetValue::finite(closure.with(3));
    return SetValue::finite(closure);
  });
  CHECK(is_equivalence_excluding(e, part));
  CHECK_FALSE(check_equiv_dilation(e, part, EquivCondition::Mto1Monotone));

  ChoiceFunction c1 = ChoiceFunction::mto1_responsive(g4, LinearOrder::over({1, 0}, *g4), 2, part);
  ChoiceFunction c2 = ChoiceFunction::mto1_responsive(g4, LinearOrder::over({3}, *g4), 1, part);
  ChoiceFunction composed = lex_compose(c1, c2, e);
  CHECK_FALSE(check_choice(composed, Property::PI).holds);
  CHECK(check_choice(composed, Property::MTO1, &part).holds);
  CHECK_FALSE(find_pi_completion(composed, part).has_value());

  // sanity: a function that is already path independent completes itself
  ChoiceFunction fine = ChoiceFunction::mto1_responsive(g4, LinearOrder::over({0, 1, 3}, *g4), 2,
                                                        part);
  auto found = find_pi_completion(fine, part);
  REQUIRE(found.has_value());
  CHECK(completes(*found, fine, part));
  CHECK(check_choice(*found, Property::PI).holds);
}

TEST_CASE("weak all-or-nothingness violations break completability too") {
  // G({b}) sits strictly between closure({b}) u K and TOP while two
  // non-equivalent items (a and d) survive outside; the two violating
  // composition values are feasible, so no completion repairs them.
  ExclusionFunction e = from_rule(g5, [&](ItemSet z) -> SetValue {
    ItemSet closure = part5.closure(z);
    return SetValue::finite(z.contains(1) ? closure.with(3) : closure);
  });
  CHECK(is_equivalence_excluding(e, part5));
  CHECK(check_equiv_dilation(e, part5, EquivCondition::Mto1Monotone));
  CHECK_FALSE(check_equiv_dilation(e, part5, EquivCondition::WeakAllOrNothing));

  // Appendix-style pair: the first chooser accepts exactly {b}; the second
  // prefers the strayed item d over the fresh item a.
  ChoiceFunction c1 = ChoiceFunction::mto1_responsive(g5, LinearOrder::over({1}, *g5), 1, part5);
  ChoiceFunction c2 = ChoiceFunction::mto1_responsive(g5, LinearOrder::over({3, 0}, *g5), 1,
                                                      part5);
  ChoiceFunction composed = lex_compose(c1, c2, e);
  CHECK(violates_at(composed, Property::SUB, ItemSet::of({0, 3}), ItemSet::of({0, 1, 3})));
  CHECK(check_choice(composed, Property::MTO1, &part5).holds);
  CHECK_FALSE(find_pi_completion(composed, part5).has_value());
}
