#include "lexichoice/props.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "lexichoice/compose.hpp"
#include "lexichoice/parallel.hpp"

namespace lexichoice {

const char* property_name(Property p) {
  switch (p) {
    case Property::PI: return "PI";
    case Property::SUB: return "SUB";
    case Property::CON: return "CON";
    case Property::SM: return "SM";
    case Property::MTO1: return "MTO1";
  }
  return "?";
}

std::optional<Property> property_from_name(const std::string& name) {
  if (name == "PI") return Property::PI;
  if (name == "SUB") return Property::SUB;
  if (name == "CON") return Property::CON;
  if (name == "SM") return Property::SM;
  if (name == "MTO1") return Property::MTO1;
  return std::nullopt;
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::GrossMonotone: return "G-monotone";
    case Condition::AllOrNothing: return "all-or-nothing";
    case Condition::GrossCardinal: return "cardinal";
    case Condition::ReuseMonotone: return "R-monotone-on-dom";
    case Condition::ReuseCardinal: return "R-cardinal-linear-on-dom";
    case Condition::KDisjoint: return "K-disjoint";
  }
  return "?";
}

const char* domain_name(DomainClass d) {
  switch (d) {
    case DomainClass::RES: return "RES";
    case DomainClass::SV_RES: return "SV_RES";
    case DomainClass::PI_GEN: return "PI_GEN";
    case DomainClass::CON_SAMPLED: return "CON_SAMPLED";
    case DomainClass::MTO1_RES: return "MTO1_RES";
  }
  return "?";
}

bool violates_at(const ChoiceFunction& c, Property p, ItemSet y_small, ItemSet y_big,
                 const EquivalencePartition* partition) {
  switch (p) {
    case Property::PI:
      return c(y_small | y_big) != c(c(y_small) | c(y_big));
    case Property::SUB:
      return y_small.subset_of(y_big) && !(y_small - c(y_small)).subset_of(y_big - c(y_big));
    case Property::CON: {
      ItemSet big_choice = c(y_big);
      return big_choice.subset_of(y_small) && y_small.subset_of(y_big) &&
             c(y_small) != big_choice;
    }
    case Property::SM:
      return y_small.subset_of(y_big) && c(y_small).size() > c(y_big).size();
    case Property::MTO1: {
      if (!partition) throw PreconditionFailed("MTO1 check needs an equivalence partition");
      return !partition->feasible(c(y_small));
    }
  }
  return false;
}

PropertyVerdict check_choice(const ChoiceFunction& c, Property p,
                             const EquivalencePartition* partition) {
  const GroundSet& ground = c.ground();
  if (ground.size() > 12) throw BudgetExceeded("exhaustive property check capped at size 12");
  if (p == Property::MTO1 && !partition)
    throw PreconditionFailed("MTO1 check needs an equivalence partition");
  const std::vector<ItemSet> table = c.materialize();
  const auto& order = ground.subsets_cardlex();
  auto value = [&](ItemSet y) { return table[y.bits]; };

  PropertyVerdict verdict{p, true, std::nullopt};
  auto fail = [&](ItemSet ys, ItemSet yb, std::string detail) {
    verdict.holds = false;
    verdict.witness = PairWitness{ys, yb, std::move(detail)};
  };

  switch (p) {
    case Property::PI:
      for (ItemSet y : order) {
        for (ItemSet y2 : order) {
          if (value(y | y2) != value(value(y) | value(y2))) {
            fail(y, y2, "choice from the union differs from re-choosing from the parts");
            return verdict;
          }
        }
      }
      break;
    case Property::SUB:
      for (ItemSet ys : order) {
        ItemSet rejected_small = ys - value(ys);
        for (ItemSet yb : order) {
          if (!ys.subset_of(yb)) continue;
          if (!rejected_small.subset_of(yb - value(yb))) {
            fail(ys, yb, "an item rejected from the smaller set is chosen from the larger");
            return verdict;
          }
        }
      }
      break;
    case Property::CON:
      for (ItemSet yb : order) {
        ItemSet chosen = value(yb);
        for (ItemSet ys : order) {
          if (!chosen.subset_of(ys) || !ys.subset_of(yb)) continue;
          if (value(ys) != chosen) {
            fail(ys, yb, "eliminating rejected items changed the choice");
            return verdict;
          }
        }
      }
      break;
    case Property::SM:
      for (ItemSet ys : order) {
        for (ItemSet yb : order) {
          if (!ys.subset_of(yb)) continue;
          if (value(ys).size() > value(yb).size()) {
            fail(ys, yb, "a larger input yielded a strictly smaller choice");
            return verdict;
          }
        }
      }
      break;
    case Property::MTO1:
      for (ItemSet y : order) {
        if (!partition->feasible(value(y))) {
          fail(y, y, "two chosen items share an equivalence class");
          return verdict;
        }
      }
      break;
  }
  return verdict;
}

namespace {

/// Shared classifier: quantifiers run over `domain` (already in scan order).
TlcrClassification classify_over(const ExclusionFunction& e, const std::vector<ItemSet>& domain,
                                 int max_card) {
  Decomposition d = decompose(e);
  TlcrClassification out;
  out.max_card_tested = max_card;

  const SetValue k_value = e.base_exclusion();
  const bool k_finite = !k_value.is_top();
  const ItemSet k = k_finite ? k_value.finite_set() : ItemSet::none();

  std::vector<SetValue> gross(domain.size());
  std::vector<ItemSet> reuse(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    gross[i] = d.gross(domain[i]);
    reuse[i] = d.reuse(domain[i]);
  }
  auto relevant = [&](std::size_t i) { return !gross[i].is_top(); };

  bool mono_ok = true;
  for (std::size_t i = 0; i < domain.size() && mono_ok; ++i) {
    for (std::size_t j = 0; j < domain.size() && mono_ok; ++j) {
      if (!domain[i].subset_of(domain[j])) continue;
      if (!gross[i].subset_of(gross[j])) mono_ok = false;
    }
  }
  if (!mono_ok) out.failed.push_back(Condition::GrossMonotone);

  bool aon_ok = true;
  for (std::size_t i = 0; i < domain.size() && aon_ok; ++i) {
    if (gross[i].is_top()) continue;
    if (!k_finite || !(gross[i] == SetValue::finite(domain[i] | k))) aon_ok = false;
  }
  if (!aon_ok) out.failed.push_back(Condition::AllOrNothing);

  // Cardinality: with a finite K, a finite Z u K never equals the infinite
  // universe, so the guard Z u K != X always passes; TOP with an infinite K
  // makes the condition vacuous.
  bool cardinal_ok = true;
  if (k_finite) {
    std::map<int, std::pair<bool, bool>> seen;  // card -> (top seen, finite seen)
    for (std::size_t i = 0; i < domain.size(); ++i) {
      auto& [top_seen, finite_seen] = seen[domain[i].size()];
      (gross[i].is_top() ? top_seen : finite_seen) = true;
    }
    for (const auto& [card, flags] : seen) {
      if (flags.first && flags.second) cardinal_ok = false;
    }
  }
  if (!cardinal_ok) out.failed.push_back(Condition::GrossCardinal);

  bool reuse_mono_ok = true;
  for (std::size_t i = 0; i < domain.size() && reuse_mono_ok; ++i) {
    if (!relevant(i)) continue;
    for (std::size_t j = 0; j < domain.size() && reuse_mono_ok; ++j) {
      if (!relevant(j) || !domain[i].subset_of(domain[j])) continue;
      if (!reuse[i].subset_of(reuse[j])) reuse_mono_ok = false;
    }
  }
  if (!reuse_mono_ok) out.failed.push_back(Condition::ReuseMonotone);

  // Reuse cardinality: whether a member is reusable may depend only on the
  // cardinality of the set it sits in.
  bool reuse_card_ok = true;
  std::map<int, std::pair<ItemSet, ItemSet>> by_card;  // card -> (reusable, blocked)
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (!relevant(i)) continue;
    auto& [reusable, blocked] = by_card[domain[i].size()];
    reusable |= reuse[i];
    blocked |= domain[i] - reuse[i];
  }
  for (const auto& [card, sets] : by_card) {
    if (sets.first.intersects(sets.second)) reuse_card_ok = false;
  }
  if (!reuse_card_ok) out.failed.push_back(Condition::ReuseCardinal);

  bool k_disjoint_ok = true;
  for (std::size_t i = 0; i < domain.size() && k_disjoint_ok; ++i) {
    if (relevant(i) && reuse[i].intersects(k)) k_disjoint_ok = false;
  }
  if (!k_disjoint_ok) out.failed.push_back(Condition::KDisjoint);

  out.is_tlcr = out.failed.empty();
  if (!out.is_tlcr) return out;

  // Extraction. t is the least cardinality where gross exclusion hits TOP.
  TlcrParams params;
  std::optional<int> t_observed;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (gross[i].is_top()) {
      t_observed = t_observed ? std::min(*t_observed, domain[i].size()) : domain[i].size();
    }
  }
  out.threshold_observed = t_observed.has_value();
  if (!k_finite) {
    // E(empty) = TOP forces t = 0; everything is excluded everywhere.
    params.t = Threshold::of(0);
  } else {
    params.t = t_observed ? Threshold::of(*t_observed) : Threshold::infinity();
    params.base = k;
    // Only cardinalities the domain actually contains constrain the chain; a
    // feasible domain may run out of sets well below the headroom bound.
    int max_domain_card = 0;
    for (ItemSet z : domain) max_domain_card = std::max(max_domain_card, z.size());
    int reuse_limit =
        t_observed ? std::min(max_domain_card, *t_observed - 1) : max_domain_card;
    for (int card = 1; card <= reuse_limit; ++card) {
      ItemSet tn;
      for (std::size_t i = 0; i < domain.size(); ++i) {
        if (relevant(i) && domain[i].size() == card) tn |= reuse[i];
      }
      params.reuse.push_back(tn);
    }
    // Reuse beyond the tested range is unconstrained at this scale; the
    // repeat-last convention keeps the chain nested, so trailing entries
    // equal to their predecessor (or a lone empty set) are redundant.
    while (!params.reuse.empty() &&
           params.reuse.back() == (params.reuse.size() >= 2
                                       ? params.reuse[params.reuse.size() - 2]
                                       : ItemSet::none())) {
      params.reuse.pop_back();
    }
  }
  params.validate(e.ground());

  ExclusionFunction synth = make_tlcr(e.ground_ptr(), params);
  for (ItemSet z : domain) {
    if (!(e(z) == synth(z)))
      throw Error("classifier extraction failed to reproduce the exclusion at " +
                  e.ground().format(z));
  }
  out.params = std::move(params);
  return out;
}

}  // namespace

TlcrClassification classify_tlcr(const ExclusionFunction& e) {
  const GroundSet& ground = e.ground();
  if (ground.max_tested_card() < 1)
    throw InsufficientHeadroom("classification needs at least one testable cardinality");
  return classify_over(e, ground.tested_sets(), ground.max_tested_card());
}

TlcrClassification classify_mto1_tlcr(const ExclusionFunction& e,
                                      const EquivalencePartition& partition) {
  const GroundSet& ground = e.ground();
  if (ground.max_tested_card() < 1)
    throw InsufficientHeadroom("classification needs at least one testable cardinality");
  std::vector<ItemSet> domain;
  for (ItemSet z : ground.tested_sets()) {
    if (partition.feasible(z)) domain.push_back(z);
  }
  return classify_over(e, domain, ground.max_tested_card());
}

bool check_domain_safety(const TlcrParams& params, SafetyDomain domain) {
  auto chain_constant_from = [&](int start) {
    for (std::size_t i = start; i < params.reuse.size(); ++i) {
      if (!(params.reuse[i] == params.reuse[start - 1])) return false;
    }
    return true;
  };
  switch (domain) {
    case SafetyDomain::RES:
      return true;
    case SafetyDomain::PI:
      if (params.t.finite) return params.t.value <= 1;
      return params.reuse.size() < 2 || chain_constant_from(2);
    case SafetyDomain::SUB:
      if (params.t.finite) return params.t.value == 0;
      return params.reuse.empty() || chain_constant_from(1);
  }
  return false;
}

bool check_sm_safety(const TlcrParams& params, const GroundSet& ground) {
  if (params.t.finite && params.t.value == 0) return true;  // base exclusion is everything
  if ((ground.all() - params.base).size() <= 1) return true;
  if (params.t.finite) return false;
  for (const ItemSet& t : params.reuse) {
    if (!t.empty()) return false;
  }
  return true;
}

bool check_singleton_profile(const ExclusionFunction& e) {
  const GroundSet& ground = e.ground();
  Decomposition d = decompose(e);
  bool all_top = true;
  for (int x = 0; x < ground.size(); ++x) {
    if (!d.gross(ItemSet::single(x)).is_top()) all_top = false;
  }
  SetValue k_value = e.base_exclusion();
  if (k_value.is_top()) return all_top;
  if (all_top) return true;
  ItemSet k = k_value.finite_set();
  for (int x = 0; x < ground.size(); ++x) {
    SetValue ex = e(ItemSet::single(x));
    if (ex.is_top()) return false;  // mixed profile
    ItemSet s = ex.finite_set();
    if (s != k && s != (k | ItemSet::single(x))) return false;
  }
  return true;
}

bool check_sv_sm_profile(const ExclusionFunction& e, SvSide side) {
  const GroundSet& ground = e.ground();
  if (side == SvSide::SV_FIRST) {
    if (!check_singleton_profile(e)) return false;
    Decomposition d = decompose(e);
    bool all_top = true;
    for (int x = 0; x < ground.size(); ++x) {
      if (!d.gross(ItemSet::single(x)).is_top()) all_top = false;
    }
    if (all_top) return true;  // reuse never reaches the second chooser
    ItemSet k = e.base_exclusion().finite_set();
    if ((ground.all() - k).size() <= 1) return true;
    for (int x = 0; x < ground.size(); ++x) {
      if (!e(ItemSet::single(x)).contains(x)) return false;  // x reusable
    }
    return true;
  }
  TlcrClassification cls = classify_tlcr(e);
  if (!cls.is_tlcr) return false;
  if ((ground.all() - cls.params->base).size() <= 1) return true;
  for (const ItemSet& t : cls.params->reuse) {
    if (!t.empty()) return false;
  }
  return true;
}

std::vector<ChoiceFunction> enumerate_domain(DomainClass domain, GroundPtr ground,
                                             const PreservationOptions& options) {
  std::vector<int> all_quotas;
  for (int q = 0; q <= ground->size(); ++q) all_quotas.push_back(q);
  switch (domain) {
    case DomainClass::RES:
      return enumerate_responsive(ground, std::nullopt, all_quotas, options.enumeration_cap);
    case DomainClass::SV_RES:
      return enumerate_responsive(ground, std::nullopt, {1}, options.enumeration_cap);
    case DomainClass::MTO1_RES:
      if (!options.partition)
        throw PreconditionFailed("MTO1_RES domain needs an equivalence partition");
      return enumerate_mto1_responsive(ground, *options.partition, std::nullopt, all_quotas,
                                       options.enumeration_cap);
    case DomainClass::PI_GEN:
    case DomainClass::CON_SAMPLED:
      throw BudgetExceeded("domain has no exhaustive enumeration; use sampled mode");
  }
  throw Error("unreachable");
}

ChoiceFunction sample_from_domain(DomainClass domain, GroundPtr ground, Rng& rng,
                                  const PreservationOptions& options) {
  switch (domain) {
    case DomainClass::RES:
      return sample_responsive(std::move(ground), rng);
    case DomainClass::SV_RES:
      return sample_responsive(std::move(ground), rng, 1);
    case DomainClass::PI_GEN:
      return sample_union_of_orders(std::move(ground), rng);
    case DomainClass::CON_SAMPLED:
      return sample_consistent(std::move(ground), rng.next());
    case DomainClass::MTO1_RES:
      if (!options.partition)
        throw PreconditionFailed("MTO1_RES domain needs an equivalence partition");
      return sample_mto1_responsive(std::move(ground), *options.partition, rng);
  }
  throw Error("unreachable");
}

PreservationReport verify_preservation(const ExclusionFunction& e, Property property,
                                       DomainClass left, DomainClass right, SampleSpec mode,
                                       const PreservationOptions& options) {
  PreservationReport report;
  report.property = property;
  report.left = left;
  report.right = right;
  report.exhaustive = mode.exhaustive;
  report.seed = mode.seed;

  std::vector<ChoiceFunction> lefts, rights;
  std::size_t pair_total = 0;
  bool paired = false;  // lefts[i] with rights[i] only
  if (mode.exhaustive) {
    lefts = enumerate_domain(left, e.ground_ptr(), options);
    rights = left == right ? lefts : enumerate_domain(right, e.ground_ptr(), options);
    pair_total = lefts.size() * rights.size();
  } else {
    Rng rng(mode.seed);
    paired = true;
    lefts.reserve(mode.pair_count);
    rights.reserve(mode.pair_count);
    for (int i = 0; i < mode.pair_count; ++i) {
      lefts.push_back(sample_from_domain(left, e.ground_ptr(), rng, options));
      rights.push_back(sample_from_domain(right, e.ground_ptr(), rng, options));
    }
    pair_total = lefts.size();
  }
  report.pairs_checked = pair_total;

  std::mutex mu;
  std::vector<PreservationFailure> failures;
  std::atomic<std::size_t> failure_count{0};
  parallel_for(pair_total, [&](std::size_t i) {
    const ChoiceFunction& c1 = paired ? lefts[i] : lefts[i / rights.size()];
    const ChoiceFunction& c2 = paired ? rights[i] : rights[i % rights.size()];
    ChoiceFunction composed = lex_compose(c1, c2, e);
    PropertyVerdict v = check_choice(composed, property, options.partition);
    if (v.holds) return;
    failure_count.fetch_add(1);
    std::lock_guard<std::mutex> lock(mu);
    failures.push_back(PreservationFailure{i, c1, c2, std::move(v)});
  });
  std::sort(failures.begin(), failures.end(),
            [](const PreservationFailure& a, const PreservationFailure& b) {
              return a.pair_index < b.pair_index;
            });
  if (static_cast<int>(failures.size()) > options.max_recorded_failures)
    failures.erase(failures.begin() + options.max_recorded_failures, failures.end());
  report.failure_count = failure_count.load();
  report.failures = std::move(failures);
  return report;
}

}  // namespace lexichoice
