#include "lexichoice/theorems.hpp"

#include <atomic>
#include <functional>

#include "lexichoice/contracts.hpp"
#include "lexichoice/parallel.hpp"
#include "lexichoice/witness.hpp"

namespace lexichoice {

namespace {

struct Battery {
  BatteryReport report;

  void line(const std::string& name, bool pass, std::string detail = "") {
    report.lines.push_back(CheckLine{name, pass, std::move(detail)});
  }

  /// Runs fn and converts a thrown Error into a failing line.
  void guarded(const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& err) {
      line(name + " (aborted)", false, err.what());
    }
  }
};

ExclusionFunction table_exclusion(const GroundPtr& ground,
                                  const std::function<SetValue(ItemSet)>& fn) {
  SetTable<SetValue> entries(1u << ground->size());
  for (std::uint32_t m = 0; m < entries.size(); ++m) entries[m] = fn(ItemSet{m});
  return ExclusionFunction::table(ground, std::move(entries));
}

ChoiceFunction accepting(const GroundPtr& ground, ItemSet acceptable, int quota) {
  return ChoiceFunction::responsive(ground, LinearOrder::over(acceptable.items(), *ground), quota);
}

/// Spreads the low bits of idx over the members of mask.
ItemSet nth_subset(ItemSet mask, std::uint32_t idx) {
  ItemSet out;
  int bit = 0;
  for (int i : mask.items()) {
    if ((idx >> bit) & 1u) out |= ItemSet::single(i);
    ++bit;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Path independence = substitutes + consistency, exhaustively at n = 3.

void run_am_equiv(Battery& b, const BatteryOptions&) {
  GroundPtr g = make_ground(3, 0);
  const auto& cardlex = g->subsets_cardlex();
  std::vector<int> width(8);
  int total_bits = 0;
  for (ItemSet y : cardlex) {
    width[y.bits] = y.size();
    total_bits += y.size();
  }
  const std::uint32_t total = 1u << total_bits;  // 4096 table choice functions

  std::atomic<std::uint32_t> mismatches{0};
  parallel_for(total, [&](std::size_t idx) {
    SetTable<ItemSet> entries(8);
    std::uint32_t rest = static_cast<std::uint32_t>(idx);
    for (ItemSet y : cardlex) {
      entries[y.bits] = nth_subset(y, rest & ((1u << width[y.bits]) - 1u));
      rest >>= width[y.bits];
    }
    ChoiceFunction c = ChoiceFunction::table(g, std::move(entries));
    bool pi = check_choice(c, Property::PI).holds;
    bool sub = check_choice(c, Property::SUB).holds;
    bool con = check_choice(c, Property::CON).holds;
    if (pi != (sub && con)) mismatches.fetch_add(1);
  });
  b.line("PI coincides with SUB+CON over all 4096 table functions at n=3",
         mismatches.load() == 0, std::to_string(mismatches.load()) + " mismatches");
}

// ---------------------------------------------------------------------------
// Threshold-linear exclusions with cardinal reuse preserve path independence
// over responsive inputs; everything else yields a certified witness.

void run_thm1_forward(Battery& b, const BatteryOptions& opt) {
  Rng rng(opt.seed);
  const int exhaustive_draws = opt.quick ? 4 : (opt.exhaustive ? 50 : 20);
  const int sampled_draws = opt.quick ? 16 : 180;
  const int pairs = opt.quick ? 100 : std::max(500, opt.samples);

  GroundPtr g4 = make_ground(4, 1);
  std::size_t failures = 0;
  for (int i = 0; i < exhaustive_draws; ++i) {
    ExclusionFunction e = make_tlcr(g4, sample_tlcr_params(*g4, rng));
    failures += verify_preservation(e, Property::PI, DomainClass::RES, DomainClass::RES,
                                    SampleSpec::exhaustive_mode())
                    .failure_count;
  }
  b.line("forward: exhaustive RES x RES at n=4 over " + std::to_string(exhaustive_draws) +
             " seeded parameter draws",
         failures == 0, std::to_string(failures) + " PI violations");

  GroundPtr g5 = make_ground(5, 2);
  failures = 0;
  for (int i = 0; i < sampled_draws; ++i) {
    ExclusionFunction e = make_tlcr(g5, sample_tlcr_params(*g5, rng));
    failures += verify_preservation(e, Property::PI, DomainClass::RES, DomainClass::RES,
                                    SampleSpec::sampled(rng.next(), pairs))
                    .failure_count;
  }
  b.line("forward: sampled RES x RES at n=5 over " + std::to_string(sampled_draws) +
             " seeded parameter draws",
         failures == 0, std::to_string(failures) + " PI violations");
}

void run_thm1_reverse(Battery& b, const BatteryOptions& opt) {
  // Reverse, finite form: six table exclusions, each violating exactly one
  // classifier condition.
  GroundPtr g = make_ground(5, 2);
  ItemSet all = g->all();
  std::vector<std::pair<Condition, ExclusionFunction>> battery;
  battery.emplace_back(Condition::GrossMonotone, table_exclusion(g, [&](ItemSet z) {
                         return z.size() == 1 ? SetValue::top() : SetValue::finite(z);
                       }));
  battery.emplace_back(Condition::AllOrNothing, table_exclusion(g, [&](ItemSet z) {
                         return SetValue::finite(z.size() >= 2 ? z.with(4) : z);
                       }));
  battery.emplace_back(Condition::GrossCardinal, table_exclusion(g, [&](ItemSet z) {
                         return z.contains(0) && z.size() >= 2 ? SetValue::top()
                                                               : SetValue::finite(z);
                       }));
  battery.emplace_back(Condition::ReuseMonotone, table_exclusion(g, [&](ItemSet z) {
                         return SetValue::finite(z.size() == 1 ? ItemSet::none() : z);
                       }));
  battery.emplace_back(Condition::ReuseCardinal, table_exclusion(g, [&](ItemSet z) {
                         return SetValue::finite(z.contains(1) ? z.without(0) : z);
                       }));
  battery.emplace_back(Condition::KDisjoint, table_exclusion(g, [&](ItemSet z) {
                         return SetValue::finite(z.contains(0) ? z.without(0) : z.with(0));
                       }));
  (void)all;

  std::vector<ViolationCase> cases{ViolationCase::GrossMonotone, ViolationCase::AllOrNothing,
                                   ViolationCase::GrossCardinal, ViolationCase::ReuseMonotone,
                                   ViolationCase::ReuseCardinal, ViolationCase::KDisjoint};
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const auto& [cond, e] = battery[i];
    std::string label = std::string("reverse: ") + condition_name(cond);
    b.guarded(label, [&] {
      TlcrClassification cls = classify_tlcr(e);
      bool exact = !cls.is_tlcr && cls.failed.size() == 1 && cls.failed[0] == cond;
      b.line(label + ": classifier reports exactly this condition", exact, "");
      Witness w = synthesize(e, cases[i]);
      b.line(label + ": synthesized witness validates", validate_witness(e, w), w.narrative);
      SearchBounds bounds;
      bounds.max_pairs = opt.quick ? 120000 : 2000000;
      auto found = brute_search(e, Property::PI, DomainClass::RES, DomainClass::SV_RES, bounds);
      b.line(label + ": brute search finds an independent witness",
             found.has_value() && validate_witness(e, *found),
             found ? found->narrative : "none found");
    });
  }
}

// ---------------------------------------------------------------------------
// Expanding the domain to all path independent inputs.

void run_prop_pi(Battery& b, const BatteryOptions& opt) {
  GroundPtr g = make_ground(5, 2);
  const int pairs = opt.quick ? 120 : std::max(500, opt.samples);

  ExclusionFunction cap2 = ExclusionFunction::capacity(g, 2);
  b.guarded("capacity(2) witness", [&] {
    TlcrClassification cls = classify_tlcr(cap2);
    b.line("capacity(2) classifies with t=2", cls.is_tlcr && cls.params->t == Threshold::of(2), "");
    b.line("capacity(2) is PI-domain unsafe",
           cls.is_tlcr && !check_domain_safety(*cls.params, SafetyDomain::PI), "");
    Witness w = synthesize(cap2, ViolationCase::PiFiniteThreshold);
    bool c1_is_union = std::holds_alternative<ChoiceFunction::UnionOfOrders>(w.c1.rule());
    bool c2_is_sv = std::holds_alternative<ChoiceFunction::Responsive>(w.c2.rule()) &&
                    std::get<ChoiceFunction::Responsive>(w.c2.rule()).quota == 1;
    b.line("capacity(2) witness uses a union-of-orders first chooser and a single-valued second",
           c1_is_union && c2_is_sv && validate_witness(cap2, w), w.narrative);
  });

  TlcrParams chain;
  chain.t = Threshold::infinity();
  chain.reuse = {ItemSet::none(), ItemSet::of({0}), ItemSet::of({0, 1})};
  ExclusionFunction drift = make_tlcr(g, chain);
  b.guarded("reuse-chain witness", [&] {
    TlcrClassification cls = classify_tlcr(drift);
    b.line("T^2 != T^3 exclusion is PI-domain unsafe",
           cls.is_tlcr && !check_domain_safety(*cls.params, SafetyDomain::PI), "");
    Witness w = synthesize(drift, ViolationCase::PiReuseChain);
    b.line("T^2 != T^3 witness validates", validate_witness(drift, w), w.narrative);
  });

  TlcrParams t1;
  t1.t = Threshold::of(1);
  t1.base = ItemSet::of({4});
  ExclusionFunction safe1 = make_tlcr(g, t1);
  b.line("t=1 exclusion is PI-domain safe", check_domain_safety(t1, SafetyDomain::PI), "");
  auto r1 = verify_preservation(safe1, Property::PI, DomainClass::PI_GEN, DomainClass::PI_GEN,
                                SampleSpec::sampled(opt.seed, pairs));
  b.line("t=1 preserves PI over " + std::to_string(r1.pairs_checked) + " sampled PI pairs",
         r1.all_pass(), std::to_string(r1.failure_count) + " failures");

  TlcrParams stable;
  stable.t = Threshold::infinity();
  stable.reuse = {ItemSet::of({0}), ItemSet::of({0, 1}), ItemSet::of({0, 1})};
  ExclusionFunction safe2 = make_tlcr(g, stable);
  b.line("t=inf with T^2=T^3=... is PI-domain safe", check_domain_safety(stable, SafetyDomain::PI),
         "");
  auto r2 = verify_preservation(safe2, Property::PI, DomainClass::PI_GEN, DomainClass::PI_GEN,
                                SampleSpec::sampled(opt.seed + 1, pairs));
  b.line("stable reuse chain preserves PI over " + std::to_string(r2.pairs_checked) +
             " sampled PI pairs",
         r2.all_pass(), std::to_string(r2.failure_count) + " failures");
}

// ---------------------------------------------------------------------------
// Preserving substitutes and size monotonicity.

void run_prop_sm(Battery& b, const BatteryOptions&) {
  GroundPtr g5 = make_ground(5, 2);

  TlcrParams fin;
  fin.t = Threshold::of(3);
  ExclusionFunction e_fin = make_tlcr(g5, fin);
  b.guarded("finite-threshold witness", [&] {
    b.line("t=3 with items outside K is SM-unsafe", !check_sm_safety(fin, *g5), "");
    Witness w = synthesize(e_fin, ViolationCase::SmFiniteThreshold);
    b.line("finite-threshold SM witness validates",
           w.property_broken == Property::SM && validate_witness(e_fin, w), w.narrative);
  });

  TlcrParams reuse;
  reuse.t = Threshold::infinity();
  reuse.reuse = {ItemSet::of({0})};
  ExclusionFunction e_reuse = make_tlcr(g5, reuse);
  b.guarded("reuse witness", [&] {
    b.line("t=inf with T^1={a} is SM-unsafe", !check_sm_safety(reuse, *g5), "");
    Witness w = synthesize(e_reuse, ViolationCase::SmReuse);
    b.line("reuse SM witness validates",
           w.property_broken == Property::SM && validate_witness(e_reuse, w), w.narrative);
  });

  GroundPtr g4 = make_ground(4, 1);
  TlcrParams near_full;
  near_full.t = Threshold::infinity();
  near_full.base = g4->all().without(0);
  near_full.reuse = {ItemSet::of({0})};
  ExclusionFunction safe_a = make_tlcr(g4, near_full);
  b.line("|X\\K| <= 1 is SM-safe", check_sm_safety(near_full, *g4), "");
  for (Property p : {Property::SUB, Property::SM}) {
    auto r = verify_preservation(safe_a, p, DomainClass::RES, DomainClass::RES,
                                 SampleSpec::exhaustive_mode());
    b.line(std::string("|X\\K| <= 1 preserves ") + property_name(p) + " over RES x RES at n=4",
           r.all_pass(), std::to_string(r.failure_count) + " failures");
  }

  TlcrParams plain;
  plain.t = Threshold::infinity();
  ExclusionFunction safe_b = make_tlcr(g4, plain);
  b.line("t=inf with empty reuse is SM-safe", check_sm_safety(plain, *g4), "");
  for (Property p : {Property::SUB, Property::SM}) {
    auto r = verify_preservation(safe_b, p, DomainClass::RES, DomainClass::RES,
                                 SampleSpec::exhaustive_mode());
    b.line(std::string("t=inf, T empty preserves ") + property_name(p) + " over RES x RES at n=4",
           r.all_pass(), std::to_string(r.failure_count) + " failures");
  }
}

// ---------------------------------------------------------------------------
// Left vs right composition and the two quota procedures.

void run_claim_lr(Battery& b, const BatteryOptions&) {
  GroundPtr g = make_ground(5, 2);

  std::vector<std::vector<ChoiceFunction>> component_battery;
  component_battery.push_back({accepting(g, ItemSet::of({0, 1}), 2),
                               accepting(g, ItemSet::of({2, 3}), 2),
                               accepting(g, ItemSet::of({4}), 1)});
  component_battery.push_back({accepting(g, ItemSet::of({0, 2, 4}), 2),
                               accepting(g, ItemSet::of({1, 3}), 1),
                               accepting(g, ItemSet::of({0, 1, 2, 3, 4}), 3)});
  component_battery.push_back({accepting(g, ItemSet::of({1}), 0),
                               accepting(g, ItemSet::of({0, 1, 2}), 2),
                               accepting(g, ItemSet::of({2, 3}), 2)});
  component_battery.push_back({accepting(g, ItemSet::of({0, 1, 2}), 1),
                               accepting(g, ItemSet::of({0, 1, 2}), 1),
                               accepting(g, ItemSet::of({0, 1, 2}), 1),
                               accepting(g, ItemSet::of({3, 4}), 2)});

  bool agg_ok = true, ind_ok = true;
  for (int n_quota = 1; n_quota <= 3; ++n_quota) {
    TlcrParams p;
    p.t = Threshold::of(n_quota);
    ExclusionFunction label = make_tlcr(g, p);
    for (const auto& components : component_battery) {
      std::vector<ExclusionFunction> labels(components.size() - 1, label);
      if (!procedure_aggregate_quota(components, n_quota)
               .agrees_with(fold_right(components, labels)))
        agg_ok = false;
      if (!procedure_individual_quota(components, n_quota)
               .agrees_with(fold_left(components, labels)))
        ind_ok = false;
    }
  }
  b.line("aggregate-quota procedure = right composition with threshold labels (battery, N=1..3)",
         agg_ok, "");
  b.line("individual-quota procedure = left composition with threshold labels (battery, N=1..3)",
         ind_ok, "");

  // The appendix instance: Z1 = {0,1}, Z2 = {2,3}, z3 = 4, N = 3.
  const auto& inst = component_battery[0];
  TlcrParams p3;
  p3.t = Threshold::of(3);
  ExclusionFunction label3 = make_tlcr(g, p3);
  std::vector<ExclusionFunction> labels{label3, label3};
  ItemSet y = g->all();
  ItemSet left_out = fold_left(inst, labels)(y);
  ItemSet right_out = fold_right(inst, labels)(y);
  ItemSet agg_out = procedure_aggregate_quota(inst, 3)(y);
  ItemSet ind_out = procedure_individual_quota(inst, 3)(y);
  b.line("appendix instance: right composition stops at the aggregate quota",
         right_out == ItemSet::of({0, 1, 2, 3}) && agg_out == right_out,
         g->format(right_out));
  b.line("appendix instance: left composition lets the last chooser through",
         left_out == ItemSet::of({0, 1, 2, 3, 4}) && ind_out == left_out, g->format(left_out));
  b.line("appendix instance separates the procedures", left_out != right_out, "");

  b.guarded("gap witnesses", [&] {
    Witness wl = synthesize(label3, ViolationCase::AggregateQuotaLeftGap);
    b.line("left composition cannot express the aggregate quota", validate_witness(label3, wl),
           wl.narrative);
    Witness wr = synthesize(label3, ViolationCase::IndividualQuotaRightGap);
    b.line("right composition cannot express the individual quota", validate_witness(label3, wr),
           wr.narrative);
  });
}

// ---------------------------------------------------------------------------
// Any exclusion preserves consistency over consistent inputs.

void run_remark_con(Battery& b, const BatteryOptions& opt) {
  GroundPtr g = make_ground(4, 1);
  Rng rng(opt.seed);
  const int triples = opt.quick ? 100 : 1000;
  int passed = 0;
  for (int i = 0; i < triples; ++i) {
    ExclusionFunction e = sample_table_exclusion(g, rng);
    ChoiceFunction c1 = sample_consistent(g, rng.next());
    ChoiceFunction c2 = sample_consistent(g, rng.next());
    if (check_choice(lex_compose(c1, c2, e), Property::CON).holds) ++passed;
  }
  b.line("consistency preserved for " + std::to_string(triples) +
             " seeded (table E, consistent C1, consistent C2) triples at n=4",
         passed == triples, std::to_string(passed) + "/" + std::to_string(triples));
}

// ---------------------------------------------------------------------------
// Completion transfer for equivalence-excluding exclusions.

void run_lemma_mto1(Battery& b, const BatteryOptions& opt) {
  GroundPtr g = make_ground(6, 2);
  Rng rng(opt.seed);
  const int instances = opt.quick ? 10 : 50;

  int held = 0, completions_pi = 0;
  for (int i = 0; i < instances; ++i) {
    // Three equivalence blocks; every item of a block of size >= 2 sits in K
    // so that choosing one excludes its partners.
    std::vector<int> sizes;
    switch (rng.below(3)) {
      case 0: sizes = {4, 1, 1}; break;
      case 1: sizes = {3, 2, 1}; break;
      default: sizes = {2, 2, 2}; break;
    }
    std::vector<int> perm = rng.permutation(6);
    std::vector<ItemSet> blocks;
    int at = 0;
    for (int s : sizes) {
      ItemSet block;
      for (int j = 0; j < s; ++j) block |= ItemSet::single(perm[at++]);
      blocks.push_back(block);
    }
    EquivalencePartition part(*g, blocks);

    TlcrParams params;
    for (const ItemSet& block : blocks) {
      if (block.size() >= 2) params.base |= block;
    }
    for (int x = 0; x < 6; ++x) {
      if (part.class_of(x).size() == 1 && rng.chance(1, 3)) params.base |= ItemSet::single(x);
    }
    switch (rng.below(4)) {
      case 0: params.t = Threshold::of(1); break;
      case 1: params.t = Threshold::of(2); break;
      case 2: params.t = Threshold::of(3); break;
      default: params.t = Threshold::infinity(); break;
    }
    if (!(params.t.finite && params.t.value == 0)) {
      ItemSet pool = g->all() - params.base;
      ItemSet chain;
      for (int level = 0; level < 2; ++level) {
        for (int x : pool.items()) {
          if (rng.chance(1, 3)) chain |= ItemSet::single(x);
        }
        params.reuse.push_back(chain);
      }
    }
    params.validate(*g);

    // The exclusion follows the threshold-linear formula on feasible sets and
    // is perturbed arbitrarily off the feasible domain.
    ExclusionFunction base_tlcr = make_tlcr(g, params);
    ExclusionFunction e = table_exclusion(g, [&](ItemSet z) {
      if (part.feasible(z)) return base_tlcr(z);
      if (rng.chance(1, 2)) return SetValue::top();
      return SetValue::finite(ItemSet{rng.mask_bits(6)});
    });

    LinearOrder o1 = sample_order(*g, rng);
    LinearOrder o2 = sample_order(*g, rng);
    int q1 = 1 + rng.below(3), q2 = 1 + rng.below(3);
    ChoiceFunction c1 = ChoiceFunction::mto1_responsive(g, o1, q1, part);
    ChoiceFunction c2 = ChoiceFunction::mto1_responsive(g, o2, q2, part);
    ChoiceFunction c1bar = ChoiceFunction::responsive(g, o1, q1);
    ChoiceFunction c2bar = ChoiceFunction::responsive(g, o2, q2);

    if (verify_lemma_mto1(c1, c2, c1bar, c2bar, e, part)) ++held;
    TlcrClassification cls = classify_mto1_tlcr(e, part);
    ChoiceFunction composed_bar =
        lex_compose(c1bar, c2bar, build_overline_exclusion(g, *cls.params));
    if (check_choice(composed_bar, Property::PI).holds) ++completions_pi;
  }
  b.line("completion transfer holds on " + std::to_string(instances) +
             " seeded hypothesis-satisfying instances at n=6",
         held == instances, std::to_string(held) + "/" + std::to_string(instances));
  b.line("the composed completion is path independent on every instance",
         completions_pi == instances,
         std::to_string(completions_pi) + "/" + std::to_string(instances));
}

// ---------------------------------------------------------------------------
// The three-branch equivalence example.

void run_example6(Battery& b, const BatteryOptions&) {
  GroundPtr g = make_ground(5, 2, {"a", "b", "c", "d", "e"});
  // Items a and c complete their equivalence class; everything else shares
  // the other class, as the weak all-or-nothingness analysis assumes.
  EquivalencePartition part(*g, {ItemSet::of({0, 2}), ItemSet::of({1, 3, 4})});
  EquivPairExample ex = build_example_pair_exclusion(g, part, 0, 1, 2);
  const ExclusionFunction& e = ex.exclusion;

  bool branches = e(ItemSet::none()) == SetValue::finite(g->all().without(0)) &&
                  e(ItemSet::of({1})) == SetValue::finite(g->all().without(0)) &&
                  e(ItemSet::of({1, 3})) == SetValue::finite(g->all().without(0)) &&
                  e(ItemSet::of({0})) == SetValue::finite(ItemSet::of({0, 2})) &&
                  e(ItemSet::of({2})) == SetValue::finite(ItemSet::of({0, 2})) &&
                  e(ItemSet::of({0, 1})).is_top() && e(ItemSet::of({2, 3})).is_top();
  b.line("exclusion matches the three branches pointwise", branches, "");
  b.line("exclusion is equivalence-excluding", is_equivalence_excluding(e, part), "");

  TlcrClassification cls = classify_mto1_tlcr(e, part);
  bool aon_fails = !cls.is_tlcr && std::find(cls.failed.begin(), cls.failed.end(),
                                             Condition::AllOrNothing) != cls.failed.end();
  b.line("plain all-or-nothingness fails on the feasible domain", aon_fails, "");
  b.line("weak all-or-nothingness holds",
         check_equiv_dilation(e, part, EquivCondition::WeakAllOrNothing), "");

  // A pair of many-to-one inputs whose composition prefers c at {a,c} but
  // keeps a globally, exercising the completion's repaired corner. The first
  // chooser ranks every item outside the a-class above c so that no strict
  // superset of {a,c} chooses inside it.
  ChoiceFunction c1 = ChoiceFunction::mto1_responsive(
      g, LinearOrder::over({1, 3, 4, 2, 0}, *g), 1, part);
  ChoiceFunction c2 = ChoiceFunction::mto1_responsive(g, LinearOrder::over({0}, *g), 1, part);
  ChoiceFunction composed = lex_compose(c1, c2, e);
  ChoiceFunction completion = ex.make_completion(c1, c2);
  b.line("completion repairs the infeasible corner",
         completion(ItemSet::of({0, 2})) == ItemSet::of({0, 2}), "");
  b.line("completion completes the composition", completes(completion, composed, part), "");
  b.line("completion is path independent", check_choice(completion, Property::PI).holds, "");
}

// ---------------------------------------------------------------------------
// Identity-label associativity and empty-label symmetry.

void run_algebra(Battery& b, const BatteryOptions& opt) {
  GroundPtr g = make_ground(5, 2);
  Rng rng(opt.seed);
  const int draws = opt.quick ? 5 : 20;

  ExclusionFunction id = ExclusionFunction::identity(g);
  bool assoc_ok = true;
  for (int i = 0; i < draws; ++i) {
    std::vector<ChoiceFunction> triple{sample_responsive(g, rng), sample_responsive(g, rng),
                                       sample_responsive(g, rng)};
    std::vector<ExclusionFunction> labels{id, id};
    if (!fold_left(triple, labels).agrees_with(fold_right(triple, labels))) assoc_ok = false;
  }
  b.line("identity labels: left and right composition agree on " + std::to_string(draws) +
             " seeded responsive triples",
         assoc_ok, "");

  ExclusionFunction empty = ExclusionFunction::empty(g);
  bool perm_ok = true;
  for (int i = 0; i < draws; ++i) {
    std::vector<ChoiceFunction> triple{sample_union_of_orders(g, rng),
                                       sample_union_of_orders(g, rng),
                                       sample_union_of_orders(g, rng)};
    std::vector<ExclusionFunction> labels{empty, empty};
    ChoiceFunction reference = fold_left(triple, labels);
    std::vector<int> idx{0, 1, 2};
    do {
      std::vector<ChoiceFunction> permuted{triple[idx[0]], triple[idx[1]], triple[idx[2]]};
      if (!fold_left(permuted, labels).agrees_with(reference)) perm_ok = false;
      if (!fold_right(permuted, labels).agrees_with(reference)) perm_ok = false;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  b.line("empty labels: composition is invariant under input permutation on " +
             std::to_string(draws) + " seeded union-of-orders triples",
         perm_ok, "");
}

// ---------------------------------------------------------------------------
// Single-valued input results.

void run_sv_sub(Battery& b, const BatteryOptions& opt) {
  GroundPtr g = make_ground(5, 2);
  const int pairs = opt.quick ? 120 : std::max(300, opt.samples);
  Rng rng(opt.seed);

  TlcrParams p;
  p.t = Threshold::infinity();
  p.base = ItemSet::of({3});
  p.reuse = {ItemSet::of({0})};
  ExclusionFunction good = make_tlcr(g, p);
  b.line("threshold-linear exclusion has the singleton profile", check_singleton_profile(good),
         "");
  auto r = verify_preservation(good, Property::PI, DomainClass::SV_RES, DomainClass::PI_GEN,
                               SampleSpec::sampled(opt.seed, pairs));
  b.line("profile exclusion preserves PI over sampled SV_RES x PI_GEN", r.all_pass(),
         std::to_string(r.failure_count) + " failures");

  // Only the empty set and singletons matter: junk above cardinality 1
  // cannot reach a single-valued first chooser.
  ExclusionFunction junk = table_exclusion(g, [&](ItemSet z) -> SetValue {
    if (z.size() <= 1) return good(z);
    if (rng.chance(1, 4)) return SetValue::top();
    return SetValue::finite(ItemSet{rng.mask_bits(5)});
  });
  b.line("junk above singletons keeps the profile", check_singleton_profile(junk), "");
  auto rj = verify_preservation(junk, Property::PI, DomainClass::SV_RES, DomainClass::PI_GEN,
                                SampleSpec::sampled(opt.seed + 7, pairs));
  b.line("junk above singletons still preserves PI over SV_RES x PI_GEN", rj.all_pass(),
         std::to_string(rj.failure_count) + " failures");

  ExclusionFunction bad = table_exclusion(g, [&](ItemSet z) -> SetValue {
    if (z == ItemSet::of({0})) return SetValue::finite(ItemSet::of({1}));
    return SetValue::finite(z);
  });
  b.line("stray singleton exclusion breaks the profile", !check_singleton_profile(bad), "");
  b.guarded("singleton witness", [&] {
    Witness w = synthesize(bad, ViolationCase::SvSingleton);
    b.line("singleton witness validates", validate_witness(bad, w), w.narrative);
    SearchBounds bounds;
    bounds.max_pairs = opt.quick ? 60000 : 500000;
    auto found = brute_search(bad, Property::PI, DomainClass::SV_RES, DomainClass::SV_RES, bounds);
    b.line("brute search confirms over SV_RES x SV_RES", found.has_value(),
           found ? found->narrative : "none");
  });
}

void run_sub_sv(Battery& b, const BatteryOptions& opt) {
  GroundPtr g = make_ground(5, 2);
  const int pairs = opt.quick ? 120 : std::max(300, opt.samples);

  TlcrParams t1;
  t1.t = Threshold::of(1);
  t1.base = ItemSet::of({2});
  ExclusionFunction safe = make_tlcr(g, t1);
  b.line("t=1 is safe for PI x SV_RES", check_domain_safety(t1, SafetyDomain::PI), "");
  auto r = verify_preservation(safe, Property::PI, DomainClass::PI_GEN, DomainClass::SV_RES,
                               SampleSpec::sampled(opt.seed, pairs));
  b.line("t=1 preserves PI over sampled PI_GEN x SV_RES", r.all_pass(),
         std::to_string(r.failure_count) + " failures");

  ExclusionFunction cap2 = ExclusionFunction::capacity(g, 2);
  b.guarded("capacity(2) against a single-valued second chooser", [&] {
    Witness w = synthesize(cap2, ViolationCase::PiFiniteThreshold);
    bool sv = std::get<ChoiceFunction::Responsive>(w.c2.rule()).quota == 1;
    b.line("the finite-threshold witness already uses a single-valued second chooser",
           sv && validate_witness(cap2, w), "");
  });
}

void run_sv_subsm(Battery& b, const BatteryOptions& opt) {
  GroundPtr g = make_ground(5, 2);
  const int pairs = opt.quick ? 120 : std::max(300, opt.samples);

  TlcrParams no_reuse;
  no_reuse.t = Threshold::infinity();
  no_reuse.base = ItemSet::of({3});
  ExclusionFunction safe = make_tlcr(g, no_reuse);
  b.line("empty reuse passes the SV-first profile", check_sv_sm_profile(safe, SvSide::SV_FIRST),
         "");
  for (Property prop : {Property::SUB, Property::SM}) {
    auto r = verify_preservation(safe, prop, DomainClass::SV_RES, DomainClass::RES,
                                 SampleSpec::sampled(opt.seed, pairs));
    b.line(std::string("empty reuse preserves ") + property_name(prop) +
               " over sampled SV_RES x RES",
           r.all_pass(), std::to_string(r.failure_count) + " failures");
  }

  TlcrParams near_full;
  near_full.t = Threshold::infinity();
  near_full.base = g->all().without(0);
  near_full.reuse = {ItemSet::of({0})};
  b.line("|X\\K| <= 1 passes the SV-first profile with any reuse",
         check_sv_sm_profile(make_tlcr(g, near_full), SvSide::SV_FIRST), "");

  TlcrParams reuse;
  reuse.t = Threshold::infinity();
  reuse.reuse = {ItemSet::of({0})};
  ExclusionFunction bad = make_tlcr(g, reuse);
  b.line("reuse with room outside K fails the SV-first profile",
         !check_sv_sm_profile(bad, SvSide::SV_FIRST), "");
  b.guarded("SV-first reuse witness", [&] {
    Witness w = synthesize(bad, ViolationCase::SvSmReuse);
    b.line("SV-first reuse witness validates",
           w.property_broken == Property::SM && validate_witness(bad, w), w.narrative);
  });
}

void run_subsm_sv(Battery& b, const BatteryOptions& opt) {
  GroundPtr g = make_ground(5, 2);
  const int pairs = opt.quick ? 120 : std::max(300, opt.samples);

  TlcrParams fin;
  fin.t = Threshold::of(2);
  fin.base = g->all().without(0);
  ExclusionFunction safe = make_tlcr(g, fin);
  b.line("finite threshold with |X\\K| <= 1 passes the SV-second profile",
         check_sv_sm_profile(safe, SvSide::SV_SECOND), "");
  for (Property prop : {Property::SUB, Property::SM}) {
    auto r = verify_preservation(safe, prop, DomainClass::RES, DomainClass::SV_RES,
                                 SampleSpec::sampled(opt.seed, pairs));
    b.line(std::string("it preserves ") + property_name(prop) + " over sampled RES x SV_RES",
           r.all_pass(), std::to_string(r.failure_count) + " failures");
  }

  TlcrParams reuse;
  reuse.t = Threshold::infinity();
  reuse.reuse = {ItemSet::of({0})};
  ExclusionFunction bad = make_tlcr(g, reuse);
  b.line("reuse with room outside K fails the SV-second profile",
         !check_sv_sm_profile(bad, SvSide::SV_SECOND), "");
  b.guarded("SV-second reuse witness", [&] {
    Witness w = synthesize(bad, ViolationCase::SmReuse);
    bool sv = std::get<ChoiceFunction::Responsive>(w.c2.rule()).quota == 1;
    b.line("the reuse witness already uses a single-valued second chooser",
           sv && validate_witness(bad, w), w.narrative);
  });
}

}  // namespace

std::vector<std::string> battery_ids() {
  return {"am-equiv",   "thm1",     "thm1-forward", "thm1-reverse", "prop-pi",
          "prop-sm",    "sv-sub",   "sub-sv",       "sv-subsm",     "subsm-sv",
          "remark-con", "claim-lr", "lemma-mto1",   "example6",     "algebra"};
}

BatteryReport run_battery(const std::string& id, const BatteryOptions& options) {
  Battery b;
  b.report.battery = id;
  b.report.seed = options.seed;
  if (id == "am-equiv") {
    run_am_equiv(b, options);
  } else if (id == "thm1") {
    run_thm1_forward(b, options);
    run_thm1_reverse(b, options);
  } else if (id == "thm1-forward") {
    run_thm1_forward(b, options);
  } else if (id == "thm1-reverse") {
    run_thm1_reverse(b, options);
  } else if (id == "prop-pi") {
    run_prop_pi(b, options);
  } else if (id == "prop-sm") {
    run_prop_sm(b, options);
  } else if (id == "sv-sub") {
    run_sv_sub(b, options);
  } else if (id == "sub-sv") {
    run_sub_sv(b, options);
  } else if (id == "sv-subsm") {
    run_sv_subsm(b, options);
  } else if (id == "subsm-sv") {
    run_subsm_sv(b, options);
  } else if (id == "remark-con") {
    run_remark_con(b, options);
  } else if (id == "claim-lr") {
    run_claim_lr(b, options);
  } else if (id == "lemma-mto1") {
    run_lemma_mto1(b, options);
  } else if (id == "example6") {
    run_example6(b, options);
  } else if (id == "algebra") {
    run_algebra(b, options);
  } else {
    throw InvalidParams("unknown battery '" + id + "'");
  }
  return b.report;
}

}  // namespace lexichoice
