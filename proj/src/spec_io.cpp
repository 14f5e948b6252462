#include "lexichoice/spec_io.hpp"

#include <fstream>

namespace lexichoice {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw ParseError(what); }

const Json& need(const Json& j, const char* key) {
  if (!j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

int need_int(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_integer()) parse_fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

const ChoiceFunction& SpecFile::choice(const std::string& name) const {
  auto it = choices.find(name);
  if (it == choices.end()) parse_fail("unknown choice function '" + name + "'");
  return it->second;
}

const ExclusionFunction& SpecFile::exclusion(const std::string& name) const {
  auto it = exclusions.find(name);
  if (it == exclusions.end()) parse_fail("unknown exclusion function '" + name + "'");
  return it->second;
}

Json itemset_to_json(ItemSet s) {
  Json arr = Json::array();
  for (int i : s.items()) arr.push_back(i);
  return arr;
}

ItemSet itemset_from_json(const Json& j, const GroundSet& ground) {
  if (!j.is_array()) parse_fail("set must be an array of item indices");
  ItemSet s;
  for (const Json& e : j) {
    if (!e.is_number_integer()) parse_fail("set member must be an integer");
    int i = e.get<int>();
    if (i < 0 || i >= ground.size()) parse_fail("set member out of range");
    s |= ItemSet::single(i);
  }
  return s;
}

Json setvalue_to_json(const SetValue& v) {
  if (v.is_top()) return Json("TOP");
  return itemset_to_json(v.finite_set());
}

SetValue setvalue_from_json(const Json& j, const GroundSet& ground) {
  if (j.is_string()) {
    if (j.get<std::string>() == "TOP") return SetValue::top();
    parse_fail("set value must be an array or \"TOP\"");
  }
  return SetValue::finite(itemset_from_json(j, ground));
}

Json threshold_to_json(const Threshold& t) {
  if (t.finite) return Json(t.value);
  return Json("inf");
}

Threshold threshold_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Threshold::infinity();
    parse_fail("threshold must be an integer or \"inf\"");
  }
  if (!j.is_number_integer()) parse_fail("threshold must be an integer or \"inf\"");
  return Threshold::of(j.get<int>());
}

Json tlcr_params_to_json(const TlcrParams& p) {
  Json j;
  j["t"] = threshold_to_json(p.t);
  j["K"] = itemset_to_json(p.base);
  Json chain = Json::array();
  for (const ItemSet& t : p.reuse) chain.push_back(itemset_to_json(t));
  j["T"] = chain;
  return j;
}

TlcrParams tlcr_params_from_json(const Json& j, const GroundSet& ground) {
  TlcrParams p;
  p.t = threshold_from_json(need(j, "t"));
  p.base = itemset_from_json(need(j, "K"), ground);
  for (const Json& t : need(j, "T")) p.reuse.push_back(itemset_from_json(t, ground));
  p.validate(ground);
  return p;
}

namespace {

Json order_to_json(const LinearOrder& o) {
  Json arr = Json::array();
  for (int r : o.ranking()) arr.push_back(r);
  return arr;
}

LinearOrder order_from_json(const Json& j, const GroundSet& ground) {
  if (!j.is_array()) parse_fail("order must be an array");
  std::vector<int> ranking;
  for (const Json& e : j) {
    if (!e.is_number_integer()) parse_fail("order entry must be an integer (-1 for the marker)");
    ranking.push_back(e.get<int>());
  }
  return LinearOrder(std::move(ranking), ground.size());
}

}  // namespace

Json choice_to_json(const ChoiceFunction& c) {
  Json j;
  j["kind"] = "choice";
  if (const auto* r = std::get_if<ChoiceFunction::Responsive>(&c.rule())) {
    j["rule"] = "responsive";
    j["order"] = order_to_json(r->order);
    j["quota"] = r->quota;
  } else if (const auto* u = std::get_if<ChoiceFunction::UnionOfOrders>(&c.rule())) {
    j["rule"] = "union_of_orders";
    Json orders = Json::array();
    for (const LinearOrder& o : u->orders) orders.push_back(order_to_json(o));
    j["orders"] = orders;
  } else if (const auto* t = std::get_if<ChoiceFunction::Table>(&c.rule())) {
    j["rule"] = "table";
    Json entries = Json::array();
    for (std::size_t m = 0; m < t->entries.size(); ++m) {
      if (!t->entries[m]) continue;
      Json e;
      e["in"] = itemset_to_json(ItemSet{static_cast<std::uint32_t>(m)});
      e["out"] = itemset_to_json(*t->entries[m]);
      entries.push_back(e);
    }
    j["entries"] = entries;
  } else {
    const auto& m = std::get<ChoiceFunction::Mto1Responsive>(c.rule());
    j["rule"] = "mto1_responsive";
    j["order"] = order_to_json(m.order);
    j["quota"] = m.quota;
  }
  return j;
}

ChoiceFunction choice_from_json(const Json& j, GroundPtr ground,
                                const std::optional<EquivalencePartition>& partition) {
  std::string rule = need(j, "rule").get<std::string>();
  if (rule == "responsive") {
    return ChoiceFunction::responsive(ground, order_from_json(need(j, "order"), *ground),
                                      need_int(j, "quota"));
  }
  if (rule == "union_of_orders") {
    std::vector<LinearOrder> orders;
    for (const Json& o : need(j, "orders")) orders.push_back(order_from_json(o, *ground));
    return ChoiceFunction::union_of_orders(ground, std::move(orders));
  }
  if (rule == "table") {
    SetTable<ItemSet> entries(1u << ground->size());
    for (const Json& e : need(j, "entries")) {
      ItemSet in = itemset_from_json(need(e, "in"), *ground);
      entries[in.bits] = itemset_from_json(need(e, "out"), *ground);
    }
    return ChoiceFunction::table(ground, std::move(entries));
  }
  if (rule == "mto1_responsive") {
    if (!partition) parse_fail("mto1_responsive needs a partition in the spec file");
    return ChoiceFunction::mto1_responsive(ground, order_from_json(need(j, "order"), *ground),
                                           need_int(j, "quota"), *partition);
  }
  parse_fail("unknown choice rule '" + rule + "'");
}

Json exclusion_to_json(const ExclusionFunction& e) {
  Json j;
  j["kind"] = "exclusion";
  if (std::holds_alternative<ExclusionFunction::Identity>(e.rule())) {
    j["rule"] = "identity";
  } else if (std::holds_alternative<ExclusionFunction::Empty>(e.rule())) {
    j["rule"] = "empty";
  } else if (const auto* c = std::get_if<ExclusionFunction::Capacity>(&e.rule())) {
    j["rule"] = "capacity";
    j["cap"] = c->cap;
  } else if (const auto* t = std::get_if<ExclusionFunction::Tlcr>(&e.rule())) {
    j["rule"] = "tlcr";
    j["params"] = tlcr_params_to_json(t->params);
  } else if (std::holds_alternative<ExclusionFunction::UnderlineEquiv>(e.rule())) {
    j["rule"] = "underline_equiv";
  } else {
    const auto& tab = std::get<ExclusionFunction::Table>(e.rule());
    j["rule"] = "table";
    Json entries = Json::array();
    for (std::size_t m = 0; m < tab.entries.size(); ++m) {
      if (!tab.entries[m]) continue;
      Json entry;
      entry["in"] = itemset_to_json(ItemSet{static_cast<std::uint32_t>(m)});
      entry["out"] = setvalue_to_json(*tab.entries[m]);
      entries.push_back(entry);
    }
    j["entries"] = entries;
  }
  return j;
}

ExclusionFunction exclusion_from_json(const Json& j, GroundPtr ground,
                                      const std::optional<EquivalencePartition>& partition) {
  std::string rule = need(j, "rule").get<std::string>();
  if (rule == "identity") return ExclusionFunction::identity(ground);
  if (rule == "empty") return ExclusionFunction::empty(ground);
  if (rule == "capacity") return ExclusionFunction::capacity(ground, need_int(j, "cap"));
  if (rule == "tlcr")
    return ExclusionFunction::tlcr(ground, tlcr_params_from_json(need(j, "params"), *ground));
  if (rule == "underline_equiv") {
    if (!partition) parse_fail("underline_equiv needs a partition in the spec file");
    return ExclusionFunction::underline_equiv(ground, *partition);
  }
  if (rule == "table") {
    SetTable<SetValue> entries(1u << ground->size());
    for (const Json& e : need(j, "entries")) {
      ItemSet in = itemset_from_json(need(e, "in"), *ground);
      entries[in.bits] = setvalue_from_json(need(e, "out"), *ground);
    }
    return ExclusionFunction::table(ground, std::move(entries));
  }
  parse_fail("unknown exclusion rule '" + rule + "'");
}

SpecFile spec_from_json(const Json& j) {
  if (!j.contains("schema") || j.at("schema").get<std::string>() != kSpecSchema)
    parse_fail(std::string("spec schema must be ") + kSpecSchema);
  const Json& g = need(j, "ground");
  int size = need_int(g, "size");
  int headroom = g.contains("headroom") ? need_int(g, "headroom") : -1;
  std::vector<std::string> labels;
  if (g.contains("labels")) {
    for (const Json& l : g.at("labels")) labels.push_back(l.get<std::string>());
  }
  SpecFile spec;
  try {
    spec.ground = make_ground(size, headroom, std::move(labels));
  } catch (const InvalidParams& err) {
    parse_fail(std::string("invalid ground set: ") + err.what());
  }

  if (j.contains("partition")) {
    std::vector<ItemSet> blocks;
    for (const Json& b : j.at("partition")) blocks.push_back(itemset_from_json(b, *spec.ground));
    try {
      spec.partition.emplace(*spec.ground, std::move(blocks));
    } catch (const InvalidParams& err) {
      parse_fail(std::string("invalid partition: ") + err.what());
    }
  }

  if (j.contains("functions")) {
    for (const auto& [name, def] : j.at("functions").items()) {
      std::string kind = need(def, "kind").get<std::string>();
      try {
        if (kind == "choice") {
          spec.choices.emplace(name, choice_from_json(def, spec.ground, spec.partition));
        } else if (kind == "exclusion") {
          spec.exclusions.emplace(name, exclusion_from_json(def, spec.ground, spec.partition));
        } else {
          parse_fail("function kind must be 'choice' or 'exclusion'");
        }
      } catch (const Error& err) {
        parse_fail("function '" + name + "': " + err.what());
      }
    }
  }
  return spec;
}

Json spec_to_json(const SpecFile& spec) {
  Json j;
  j["schema"] = kSpecSchema;
  Json g;
  g["size"] = spec.ground->size();
  g["headroom"] = spec.ground->headroom();
  if (spec.ground->has_labels()) {
    Json labels = Json::array();
    for (int i = 0; i < spec.ground->size(); ++i) labels.push_back(spec.ground->label(i));
    g["labels"] = labels;
  }
  j["ground"] = g;
  if (spec.partition) {
    Json blocks = Json::array();
    for (const ItemSet& b : spec.partition->blocks()) blocks.push_back(itemset_to_json(b));
    j["partition"] = blocks;
  }
  Json functions = Json::object();
  for (const auto& [name, c] : spec.choices) functions[name] = choice_to_json(c);
  for (const auto& [name, e] : spec.exclusions) functions[name] = exclusion_to_json(e);
  j["functions"] = functions;
  return j;
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open spec file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    parse_fail(std::string("spec file ") + path + ": " + err.what());
  }
  return spec_from_json(j);
}

Json verdict_to_json(const PropertyVerdict& v) {
  Json j;
  j["property"] = property_name(v.property);
  j["holds"] = v.holds;
  if (v.witness) {
    Json w;
    w["y_small"] = itemset_to_json(v.witness->y_small);
    w["y_big"] = itemset_to_json(v.witness->y_big);
    w["detail"] = v.witness->detail;
    j["witness"] = w;
  }
  return j;
}

Json classification_to_json(const TlcrClassification& c) {
  Json j;
  j["is_tlcr"] = c.is_tlcr;
  if (c.params) j["params"] = tlcr_params_to_json(*c.params);
  Json failed = Json::array();
  for (Condition cond : c.failed) failed.push_back(condition_name(cond));
  j["failed_conditions"] = failed;
  j["max_card_tested"] = c.max_card_tested;
  Json caveats = Json::array();
  if (c.is_tlcr && !c.threshold_observed)
    caveats.push_back("t=inf is finite-scale: no TOP value occurs within the tested range");
  j["caveats"] = caveats;
  return j;
}

Json witness_to_json(const Witness& w) {
  Json j;
  j["condition"] = violation_case_name(w.condition);
  j["c1"] = choice_to_json(w.c1);
  j["c2"] = choice_to_json(w.c2);
  j["y_small"] = itemset_to_json(w.y_small);
  j["y_big"] = itemset_to_json(w.y_big);
  j["property_broken"] = property_name(w.property_broken);
  j["narrative"] = w.narrative;
  return j;
}

Witness witness_from_json(const Json& j, GroundPtr ground,
                          const std::optional<EquivalencePartition>& partition) {
  auto cond = violation_case_from_name(need(j, "condition").get<std::string>());
  if (!cond) parse_fail("unknown witness condition");
  auto prop = property_from_name(need(j, "property_broken").get<std::string>());
  if (!prop) parse_fail("unknown witness property");
  return Witness{*cond,
                 choice_from_json(need(j, "c1"), ground, partition),
                 choice_from_json(need(j, "c2"), ground, partition),
                 itemset_from_json(need(j, "y_small"), *ground),
                 itemset_from_json(need(j, "y_big"), *ground),
                 *prop,
                 j.contains("narrative") ? j.at("narrative").get<std::string>() : ""};
}

Json preservation_to_json(const PreservationReport& r) {
  Json j;
  j["property"] = property_name(r.property);
  j["left_domain"] = domain_name(r.left);
  j["right_domain"] = domain_name(r.right);
  j["mode"] = r.exhaustive ? "exhaustive" : "sampled";
  j["seed"] = r.seed;
  j["pairs_checked"] = r.pairs_checked;
  j["failures"] = r.failure_count;
  Json fails = Json::array();
  for (const PreservationFailure& f : r.failures) {
    Json e;
    e["pair_index"] = f.pair_index;
    e["c1"] = choice_to_json(f.c1);
    e["c2"] = choice_to_json(f.c2);
    e["verdict"] = verdict_to_json(f.verdict);
    fails.push_back(e);
  }
  j["failure_samples"] = fails;
  return j;
}

}  // namespace lexichoice
