#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lexichoice/spec_io.hpp"

using namespace lexichoice;

namespace {
Json demo_spec_json() {
  return Json::parse(R"({
    "schema": "lexichoice-spec-v1",
    "ground": {"size": 5, "headroom": 2, "labels": ["a","b","c","d","e"]},
    "partition": [[0,2],[1],[3],[4]],
    "functions": {
      "C1": {"kind":"choice","rule":"responsive","order":[0,1,2,-1,3,4],"quota":2},
      "U1": {"kind":"choice","rule":"union_of_orders","orders":[[0,1,-1,2,3,4],[1,0,-1,2,3,4]]},
      "M1": {"kind":"choice","rule":"mto1_responsive","order":[0,2,1,-1,3,4],"quota":2},
      "T1": {"kind":"choice","rule":"table","entries":[
        {"in":[],"out":[]},{"in":[0],"out":[0]},{"in":[0,1],"out":[1]}]},
      "identityE": {"kind":"exclusion","rule":"identity"},
      "capE2": {"kind":"exclusion","rule":"capacity","cap":2},
      "tlcrE": {"kind":"exclusion","rule":"tlcr","params":{"t":3,"K":[3],"T":[[],[0]]}},
      "underE": {"kind":"exclusion","rule":"underline_equiv"},
      "tabE": {"kind":"exclusion","rule":"table","entries":[
        {"in":[],"out":[]},{"in":[0],"out":"TOP"}]}
    }
  })");
}
}  // namespace

TEST_CASE("specs round-trip through print and parse") {
  SpecFile spec = spec_from_json(demo_spec_json());
  CHECK(spec.ground->size() == 5);
  CHECK(spec.partition.has_value());
  CHECK(spec.choices.size() == 4);
  CHECK(spec.exclusions.size() == 5);

  Json printed = spec_to_json(spec);
  SpecFile again = spec_from_json(printed);
  CHECK(spec_to_json(again) == printed);  // canonical form is a fixed point

  // semantic equality of every named function
  for (const auto& [name, c] : spec.choices) {
    if (std::holds_alternative<ChoiceFunction::Table>(c.rule())) continue;  // partial tables
    CHECK(c.agrees_with(again.choice(name)));
  }
  for (const auto& [name, e] : spec.exclusions) {
    if (std::holds_alternative<ExclusionFunction::Table>(e.rule())) continue;
    CHECK(e.agrees_with(again.exclusion(name)));
  }
}

TEST_CASE("parse errors name the offender") {
  Json missing = demo_spec_json();
  missing.erase("schema");
  CHECK_THROWS_AS(spec_from_json(missing), ParseError);

  Json bad_rule = demo_spec_json();
  bad_rule["functions"]["C1"]["rule"] = "nonsense";
  CHECK_THROWS_AS(spec_from_json(bad_rule), ParseError);

  Json out_of_range = demo_spec_json();
  out_of_range["functions"]["C1"]["order"] = Json::array({0, 1, 2, -1, 3, 9});
  CHECK_THROWS_AS(spec_from_json(out_of_range), ParseError);
}

TEST_CASE("sets, thresholds and values serialize canonically") {
  GroundSet g(5, 2);
  CHECK(itemset_to_json(ItemSet::of({4, 0, 2})).dump() == "[0,2,4]");
  CHECK(setvalue_to_json(SetValue::top()).dump() == "\"TOP\"");
  CHECK(threshold_to_json(Threshold::infinity()).dump() == "\"inf\"");
  CHECK(threshold_to_json(Threshold::of(3)).dump() == "3");
  CHECK(itemset_from_json(Json::parse("[1,3]"), g) == ItemSet::of({1, 3}));
  CHECK(setvalue_from_json(Json::parse("\"TOP\""), g).is_top());
  CHECK_FALSE(threshold_from_json(Json::parse("\"inf\"")).finite);
}

TEST_CASE("witnesses round-trip with their functions") {
  SpecFile spec = spec_from_json(demo_spec_json());
  Witness w{ViolationCase::AllOrNothing,
            spec.choice("C1"),
            spec.choice("U1"),
            ItemSet::of({1, 2}),
            ItemSet::of({0, 1, 2}),
            Property::SUB,
            "round-trip probe"};
  Json j = witness_to_json(w);
  Witness back = witness_from_json(j, spec.ground, spec.partition);
  CHECK(back.condition == w.condition);
  CHECK(back.y_small == w.y_small);
  CHECK(back.y_big == w.y_big);
  CHECK(back.property_broken == w.property_broken);
  CHECK(back.c1.agrees_with(w.c1));
  CHECK(back.c2.agrees_with(w.c2));
  CHECK(witness_to_json(back) == j);
}

TEST_CASE("classification serialization carries the finite-scale caveat") {
  SpecFile spec = spec_from_json(demo_spec_json());
  TlcrClassification cls = classify_tlcr(spec.exclusion("identityE"));
  Json j = classification_to_json(cls);
  CHECK(j["is_tlcr"] == true);
  CHECK(j["params"]["t"] == "inf");
  CHECK(j["caveats"].size() == 1);

  TlcrClassification cap = classify_tlcr(spec.exclusion("capE2"));
  Json jc = classification_to_json(cap);
  CHECK(jc["params"]["t"] == 2);
  CHECK(jc["caveats"].empty());
}
