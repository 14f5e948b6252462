#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>

#include "lexichoice/compose.hpp"
#include "lexichoice/witness.hpp"

using namespace lexichoice;

namespace {
const GroundPtr g5 = make_ground(5, 2);

ExclusionFunction from_rule(const std::function<SetValue(ItemSet)>& fn) {
  SetTable<SetValue> entries(32);
  for (std::uint32_t m = 0; m < 32; ++m) entries[m] = fn(ItemSet{m});
  return ExclusionFunction::table(g5, std::move(entries));
}
}  // namespace

TEST_CASE("the all-or-nothing construction reproduces the worked instance") {
  // E(Z) = Z u {c} once two items are chosen (a=0, b=1, c=2, d=3)
  ExclusionFunction e = from_rule([](ItemSet z) {
    return SetValue::finite(z.size() >= 2 ? z.with(2) : z);
  });
  Witness w = synthesize(e, ViolationCase::AllOrNothing);
  CHECK(validate_witness(e, w));
  CHECK(w.property_broken == Property::SUB);
  CHECK(w.y_big == ItemSet::of({0, 1, 2, 3}));
  CHECK(w.y_small == ItemSet::of({1, 2, 3}));
  // first chooser accepts {a,b} with quota 2; second prefers c over d
  const auto& r1 = std::get<ChoiceFunction::Responsive>(w.c1.rule());
  CHECK(r1.order.acceptable() == ItemSet::of({0, 1}));
  CHECK(r1.quota == 2);
  const auto& r2 = std::get<ChoiceFunction::Responsive>(w.c2.rule());
  CHECK(r2.order.acceptable() == ItemSet::of({2, 3}));
  CHECK(r2.order.ranking()[0] == 2);
  CHECK(r2.quota == 1);
  // the composition chooses d from the big set but not from the small one
  ChoiceFunction composed = lex_compose(w.c1, w.c2, e);
  CHECK(composed(w.y_big).contains(3));
  CHECK_FALSE(composed(w.y_small).contains(3));
}

TEST_CASE("identity violates nothing") {
  ExclusionFunction id = ExclusionFunction::identity(g5);
  for (ViolationCase c : {ViolationCase::GrossMonotone, ViolationCase::AllOrNothing,
                          ViolationCase::GrossCardinal, ViolationCase::ReuseMonotone,
                          ViolationCase::ReuseCardinal, ViolationCase::KDisjoint,
                          ViolationCase::PiFiniteThreshold, ViolationCase::PiReuseChain,
                          ViolationCase::SmReuse, ViolationCase::SmFiniteThreshold,
                          ViolationCase::SvSingleton}) {
    CHECK_THROWS_AS(synthesize(id, c), ConditionNotViolated);
  }
}

TEST_CASE("brute search: preserving exclusions yield no witness") {
  GroundPtr g4 = make_ground(4, 1);
  SearchBounds bounds;
  bounds.max_pairs = 400000;
  CHECK_FALSE(brute_search(ExclusionFunction::identity(g4), Property::PI, DomainClass::RES,
                           DomainClass::RES, bounds)
                  .has_value());
  bounds.sample_count = 60;
  CHECK_FALSE(brute_search(ExclusionFunction::empty(g4), Property::PI, DomainClass::PI_GEN,
                           DomainClass::PI_GEN, bounds)
                  .has_value());
}

TEST_CASE("synthesizer and brute search agree on the violation battery") {
  std::map<ViolationCase, ExclusionFunction> battery{
      {ViolationCase::GrossMonotone, from_rule([](ItemSet z) {
         return z.size() == 1 ? SetValue::top() : SetValue::finite(z);
       })},
      {ViolationCase::AllOrNothing, from_rule([](ItemSet z) {
         return SetValue::finite(z.size() >= 2 ? z.with(4) : z);
       })},
      {ViolationCase::GrossCardinal, from_rule([](ItemSet z) {
         return z.contains(0) && z.size() >= 2 ? SetValue::top() : SetValue::finite(z);
       })},
      {ViolationCase::ReuseMonotone, from_rule([](ItemSet z) {
         return SetValue::finite(z.size() == 1 ? ItemSet::none() : z);
       })},
      {ViolationCase::ReuseCardinal, from_rule([](ItemSet z) {
         return SetValue::finite(z.contains(1) ? z.without(0) : z);
       })},
      {ViolationCase::KDisjoint, from_rule([](ItemSet z) {
         return SetValue::finite(z.contains(0) ? z.without(0) : z.with(0));
       })},
  };
  for (const auto& [condition, e] : battery) {
    CAPTURE(violation_case_name(condition));
    Witness w = synthesize(e, condition);
    CHECK(validate_witness(e, w));
    SearchBounds bounds;
    bounds.max_pairs = 1500000;
    auto found = brute_search(e, Property::PI, DomainClass::RES, DomainClass::SV_RES, bounds);
    REQUIRE(found.has_value());
    CHECK(validate_witness(e, *found));
  }
}

TEST_CASE("witness synthesis is deterministic") {
  ExclusionFunction e = from_rule([](ItemSet z) {
    return SetValue::finite(z.size() >= 2 ? z.with(4) : z);
  });
  Witness w1 = synthesize(e, ViolationCase::AllOrNothing);
  Witness w2 = synthesize(e, ViolationCase::AllOrNothing);
  CHECK(w1.y_small == w2.y_small);
  CHECK(w1.y_big == w2.y_big);
  CHECK(w1.c1.agrees_with(w2.c1));
  CHECK(w1.c2.agrees_with(w2.c2));
}

TEST_CASE("threshold-domain witnesses") {
  ExclusionFunction cap2 = ExclusionFunction::capacity(g5, 2);
  Witness w = synthesize(cap2, ViolationCase::PiFiniteThreshold);
  CHECK(validate_witness(cap2, w));
  CHECK(std::holds_alternative<ChoiceFunction::UnionOfOrders>(w.c1.rule()));
  // replaying through the checker reproduces the violation
  ChoiceFunction composed = lex_compose(w.c1, w.c2, cap2);
  CHECK_FALSE(check_choice(composed, Property::PI).holds);
  CHECK_FALSE(check_choice(composed, w.property_broken).holds);

  TlcrParams chain;
  chain.t = Threshold::infinity();
  chain.reuse = {ItemSet::none(), ItemSet::of({0}), ItemSet::of({0, 1})};
  ExclusionFunction drift = make_tlcr(g5, chain);
  Witness wc = synthesize(drift, ViolationCase::PiReuseChain);
  CHECK(validate_witness(drift, wc));

  // a stable chain is safe, so the chain case reports no violation
  TlcrParams stable;
  stable.t = Threshold::infinity();
  stable.reuse = {ItemSet::of({0})};
  CHECK_THROWS_AS(synthesize(make_tlcr(g5, stable), ViolationCase::PiReuseChain),
                  ConditionNotViolated);
}

TEST_CASE("search results are independent of the worker count") {
  ExclusionFunction e = from_rule([](ItemSet z) {
    return SetValue::finite(z.contains(1) ? z.without(0) : z);
  });
  setenv("LEXICHOICE_THREADS", "1", 1);
  auto serial = brute_search(e, Property::PI, DomainClass::RES, DomainClass::SV_RES);
  setenv("LEXICHOICE_THREADS", "8", 1);
  auto parallel = brute_search(e, Property::PI, DomainClass::RES, DomainClass::SV_RES);
  unsetenv("LEXICHOICE_THREADS");
  REQUIRE(serial.has_value());
  REQUIRE(parallel.has_value());
  CHECK(serial->y_small == parallel->y_small);
  CHECK(serial->y_big == parallel->y_big);
  CHECK(serial->c1.agrees_with(parallel->c1));
  CHECK(serial->c2.agrees_with(parallel->c2));
}

TEST_CASE("quota-gap witnesses need a separating quota") {
  TlcrParams p1;
  p1.t = Threshold::of(1);
  CHECK_THROWS_AS(synthesize(make_tlcr(g5, p1), ViolationCase::AggregateQuotaLeftGap),
                  ConditionNotViolated);
  TlcrParams p2;
  p2.t = Threshold::of(2);
  Witness w = synthesize(make_tlcr(g5, p2), ViolationCase::AggregateQuotaLeftGap);
  CHECK(validate_witness(make_tlcr(g5, p2), w));
  CHECK(w.c1(w.y_small) != w.c2(w.y_small));
}
