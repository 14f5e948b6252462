#include "lexichoice/witness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

#include "lexichoice/compose.hpp"
#include "lexichoice/parallel.hpp"

namespace lexichoice {

const char* violation_case_name(ViolationCase c) {
  switch (c) {
    case ViolationCase::GrossMonotone: return "G-monotone";
    case ViolationCase::AllOrNothing: return "all-or-nothing";
    case ViolationCase::GrossCardinal: return "cardinal";
    case ViolationCase::ReuseMonotone: return "R-monotone-on-dom";
    case ViolationCase::ReuseCardinal: return "R-cardinal-linear-on-dom";
    case ViolationCase::KDisjoint: return "K-disjoint";
    case ViolationCase::PiFiniteThreshold: return "pi-domain-finite-t";
    case ViolationCase::PiReuseChain: return "pi-domain-reuse-chain";
    case ViolationCase::SmReuse: return "sm-reuse";
    case ViolationCase::SmFiniteThreshold: return "sm-finite-t";
    case ViolationCase::SvSingleton: return "sv-singleton";
    case ViolationCase::SvSmReuse: return "sv-sm-reuse";
    case ViolationCase::AggregateQuotaLeftGap: return "aggregate-quota-left-gap";
    case ViolationCase::IndividualQuotaRightGap: return "individual-quota-right-gap";
    case ViolationCase::Search: return "search";
  }
  return "?";
}

std::optional<ViolationCase> violation_case_from_name(const std::string& name) {
  for (ViolationCase c :
       {ViolationCase::GrossMonotone, ViolationCase::AllOrNothing, ViolationCase::GrossCardinal,
        ViolationCase::ReuseMonotone, ViolationCase::ReuseCardinal, ViolationCase::KDisjoint,
        ViolationCase::PiFiniteThreshold, ViolationCase::PiReuseChain, ViolationCase::SmReuse,
        ViolationCase::SmFiniteThreshold, ViolationCase::SvSingleton, ViolationCase::SvSmReuse,
        ViolationCase::AggregateQuotaLeftGap, ViolationCase::IndividualQuotaRightGap,
        ViolationCase::Search}) {
    if (name == violation_case_name(c)) return c;
  }
  return std::nullopt;
}

bool validate_witness(const ExclusionFunction& e, const Witness& w) {
  if (w.condition == ViolationCase::AggregateQuotaLeftGap ||
      w.condition == ViolationCase::IndividualQuotaRightGap) {
    return w.c1(w.y_small) != w.c2(w.y_small);
  }
  ChoiceFunction composed = lex_compose(w.c1, w.c2, e);
  return violates_at(composed, w.property_broken, w.y_small, w.y_big);
}

namespace {

/// Responsive chooser accepting exactly `acceptable` in ascending item order.
ChoiceFunction accept_all_of(const GroundPtr& ground, ItemSet acceptable) {
  return ChoiceFunction::responsive(ground, LinearOrder::over(acceptable.items(), *ground),
                                    acceptable.size());
}

/// Single-valued responsive chooser with the given preference sequence.
ChoiceFunction single_valued(const GroundPtr& ground, std::vector<int> preference) {
  return ChoiceFunction::responsive(ground, LinearOrder::over(std::move(preference), *ground), 1);
}

/// Responsive chooser ranking the members of `first_block` (ascending) above
/// the remaining members of `second_block`, with the given quota.
ChoiceFunction block_responsive(const GroundPtr& ground, ItemSet first_block, ItemSet second_block,
                                int quota) {
  std::vector<int> pref = first_block.items();
  for (int i : (second_block - first_block).items()) pref.push_back(i);
  return ChoiceFunction::responsive(ground, LinearOrder::over(std::move(pref), *ground), quota);
}

std::optional<int> lowest_outside(const GroundSet& ground, SetValue excluded) {
  if (excluded.is_top()) return std::nullopt;
  ItemSet candidates = ground.all() - excluded.finite_set();
  if (candidates.empty()) return std::nullopt;
  return candidates.lowest();
}

Witness make_witness(ViolationCase cond, ChoiceFunction c1, ChoiceFunction c2, ItemSet ys,
                     ItemSet yb, Property broken, std::string narrative) {
  return Witness{cond, std::move(c1), std::move(c2), ys, yb, broken, std::move(narrative)};
}

/// The union-of-maximizers construction rationalizing a path independent C1
/// with C1(z u zp u extras) = z and C1(zp u extras) = zp, for z not a subset
/// of zp, |zp| > |z|, extras disjoint from every order's acceptable set.
std::vector<LinearOrder> union_orders_for(const GroundSet& ground, ItemSet z, ItemSet zp) {
  std::vector<int> common = (z & zp).items();
  std::vector<int> z_only = (z - zp).items();
  std::vector<int> zp_only = (zp - z).items();
  const int l = static_cast<int>(common.size());
  const int n = l + static_cast<int>(z_only.size());
  const int t = l + static_cast<int>(zp_only.size());
  if (z_only.empty() || t <= n) throw Error("union order construction needs z !<= zp, |zp| > |z|");

  auto z_at = [&](int i) { return i <= l ? common[i - 1] : z_only[i - l - 1]; };      // z_i
  auto zp_at = [&](int i) { return zp_only[i - l - 1]; };                             // z'_i
  std::vector<LinearOrder> orders;
  for (int i = 1; i <= t; ++i) {
    if (i <= l) {
      orders.push_back(LinearOrder::over({z_at(i)}, ground));
    } else if (i < n) {
      orders.push_back(LinearOrder::over({z_at(i), zp_at(i)}, ground));
    } else {
      orders.push_back(LinearOrder::over({z_at(n), zp_at(i)}, ground));
    }
  }
  return orders;
}

struct ClassifierView {
  Decomposition d;
  std::vector<ItemSet> tested;
  ItemSet k;        // finite base exclusion; empty when E(empty) is TOP
  bool k_is_top;

  explicit ClassifierView(const ExclusionFunction& e)
      : d(e), tested(e.ground().tested_sets()), k_is_top(e.base_exclusion().is_top()) {
    if (!k_is_top) k = e.base_exclusion().finite_set();
  }
};

}  // namespace

Witness synthesize(const ExclusionFunction& e, ViolationCase condition,
                   const EquivalencePartition* partition) {
  (void)partition;
  const GroundPtr& ground = e.ground_ptr();
  const GroundSet& g = *ground;
  ClassifierView view(e);
  const auto& tested = view.tested;
  Decomposition& d = view.d;

  auto finish = [&](Witness w) {
    if (!validate_witness(e, w))
      throw Error(std::string("synthesized witness failed validation for ") +
                  violation_case_name(w.condition));
    return w;
  };

  switch (condition) {
    case ViolationCase::GrossMonotone: {
      for (ItemSet zs : tested) {
        for (ItemSet zb : tested) {
          if (!zs.subset_of(zb) || zs == zb) continue;
          SetValue gs = d.gross(zs), gb = d.gross(zb);
          if (gs.subset_of(gb)) continue;
          // a is excluded after the smaller choice but not the larger one.
          int a;
          if (gs.is_top()) {
            auto cand = lowest_outside(g, gb);
            if (!cand) continue;
            a = *cand;
          } else {
            a = (gs.finite_set() - gb.finite_set()).lowest();
          }
          ChoiceFunction c1 = accept_all_of(ground, zb);
          ChoiceFunction c2 = single_valued(ground, {a});
          return finish(make_witness(
              condition, c1, c2, zs.with(a), zb.with(a), Property::SUB,
              "gross exclusion shrinks from " + g.format(zs) + " to " + g.format(zb) +
                  "; item " + g.label(a) + " is chosen after the larger first choice only"));
        }
      }
      throw ConditionNotViolated("gross exclusion is monotonic on the tested domain");
    }

    case ViolationCase::AllOrNothing: {
      if (view.k_is_top)
        throw ConditionNotViolated("base exclusion TOP forces the all branch everywhere");
      const ItemSet k = view.k;
      for (ItemSet z : tested) {
        SetValue gz = d.gross(z);
        if (gz.is_top() || gz == SetValue::finite(z | k)) continue;
        bool minimal = true;
        for_each_subset(z, [&](ItemSet sub) {
          if (sub != z && !(d.gross(sub) == SetValue::finite(sub | k))) minimal = false;
        });
        if (!minimal) continue;
        ItemSet gross = gz.finite_set();
        ItemSet strays = gross - (z | k);
        if (strays.empty())
          throw PreconditionFailed("all-or-nothing construction needs monotone gross exclusion");
        int c = strays.lowest();
        auto a_cand = lowest_outside(g, gz);
        if (!a_cand) throw InsufficientHeadroom("no fresh item outside the gross exclusion");
        int a = *a_cand;
        int b = z.lowest();  // z is non-empty: the empty set never violates
        ChoiceFunction c1 = accept_all_of(ground, z);
        ChoiceFunction c2 = single_valued(ground, {c, a});
        ItemSet big = z | ItemSet::of({a, c});
        return finish(make_witness(
            condition, c1, c2, big.without(b), big, Property::SUB,
            "gross exclusion at " + g.format(z) + " strays to " + g.format(gross) +
                "; dropping " + g.label(b) + " redirects the second chooser from " + g.label(a) +
                " to " + g.label(c)));
      }
      throw ConditionNotViolated("gross exclusion is all-or-nothing on the tested domain");
    }

    case ViolationCase::GrossCardinal: {
      if (view.k_is_top) throw ConditionNotViolated("cardinality is vacuous with TOP base");
      const ItemSet k = view.k;
      // Case 1 pairs first: a fresh item outside both sets and K exists.
      for (int pass = 0; pass < 2; ++pass) {
        for (ItemSet z_top : tested) {
          if (!d.gross(z_top).is_top()) continue;
          for (ItemSet z_fin : tested) {
            if (z_fin.size() != z_top.size()) continue;
            SetValue gf = d.gross(z_fin);
            if (gf.is_top()) continue;
            if (pass == 0) {
              ItemSet blocked = z_top | z_fin | k | gf.finite_set();
              ItemSet fresh = g.all() - blocked;
              if (fresh.empty()) continue;
              int a = fresh.lowest();
              ChoiceFunction c1 = block_responsive(ground, z_fin, z_top, z_top.size());
              ChoiceFunction c2 = single_valued(ground, {a});
              return finish(make_witness(
                  condition, c1, c2, z_top.with(a), z_top | z_fin | ItemSet::single(a),
                  Property::SUB,
                  "same-size sets " + g.format(z_top) + " and " + g.format(z_fin) +
                      " disagree on total exclusion; fresh item " + g.label(a)));
            } else {
              // Fallback: route through an intermediate set as in the proof.
              ItemSet outside_all = g.all() - (z_top | z_fin);
              ItemSet outside_zk = g.all() - (z_top | k);
              if (outside_all.empty() || (outside_zk & z_fin).empty()) continue;
              int b = outside_all.lowest();
              int c = (outside_zk & z_fin).lowest();
              ItemSet z_mid = z_fin.without(c).with(b);
              if (static_cast<int>(z_mid.size()) > g.max_tested_card()) continue;
              ItemSet probe = d.gross(z_mid).is_top() ? z_mid : z_top;
              ItemSet other = d.gross(z_mid).is_top() ? z_fin : z_mid;
              SetValue go = d.gross(other);
              if (go.is_top()) continue;
              ItemSet fresh = g.all() - (probe | other | k | go.finite_set());
              if (fresh.empty()) continue;
              int a = fresh.lowest();
              ChoiceFunction c1 = block_responsive(ground, other, probe, probe.size());
              ChoiceFunction c2 = single_valued(ground, {a});
              return finish(make_witness(
                  condition, c1, c2, probe.with(a), probe | other | ItemSet::single(a),
                  Property::SUB, "cardinality violation via the intermediate set " +
                                     g.format(z_mid)));
            }
          }
        }
      }
      throw ConditionNotViolated("gross exclusion is cardinal on the tested domain");
    }

    case ViolationCase::ReuseMonotone: {
      for (ItemSet zs : tested) {
        if (!d.relevant(zs)) continue;
        for (ItemSet zb : tested) {
          if (!d.relevant(zb) || !zs.subset_of(zb) || zs == zb) continue;
          ItemSet lost = d.reuse(zs) - d.reuse(zb);
          if (lost.empty()) continue;
          int a = lost.lowest();
          auto b_cand = lowest_outside(g, d.gross(zb));
          if (!b_cand) throw InsufficientHeadroom("no item outside the larger gross exclusion");
          int b = *b_cand;
          ChoiceFunction c1 = accept_all_of(ground, zb);
          ChoiceFunction c2 = single_valued(ground, {a, b});
          return finish(make_witness(
              condition, c1, c2, zs.with(b), zb.with(b), Property::SUB,
              "item " + g.label(a) + " is reusable in " + g.format(zs) + " but not in " +
                  g.format(zb) + "; its reuse starves " + g.label(b)));
        }
      }
      throw ConditionNotViolated("reuse is monotonic on its relevant domain");
    }

    case ViolationCase::ReuseCardinal: {
      for (int pass = 0; pass < 2; ++pass) {
        for (ItemSet z_in : tested) {
          if (!d.relevant(z_in)) continue;
          for (ItemSet z_out : tested) {
            if (!d.relevant(z_out) || z_out.size() != z_in.size()) continue;
            ItemSet flip = (z_in & z_out) & (d.reuse(z_in) - d.reuse(z_out));
            if (flip.empty()) continue;
            int a = flip.lowest();
            SetValue g_out = d.gross(z_out);
            ItemSet blocked = z_in | z_out | view.k |
                              (g_out.is_top() ? ItemSet::none() : g_out.finite_set());
            ItemSet fresh = g.all() - blocked;
            if (pass == 0) {
              if (fresh.empty()) continue;
              int b = fresh.lowest();
              ChoiceFunction c1 = block_responsive(ground, z_out, z_in, z_in.size());
              ChoiceFunction c2 = single_valued(ground, {a, b});
              return finish(make_witness(
                  condition, c1, c2, z_in.with(b), z_in | z_out | ItemSet::single(b),
                  Property::SUB,
                  "item " + g.label(a) + " is reusable in " + g.format(z_in) +
                      " but not in the same-size " + g.format(z_out)));
            }
            // Fallback via an intermediate set, mirroring the proof's case 2.
            ItemSet outside_sets = g.all() - (z_in | z_out);
            ItemSet c_pool = ((g.all() - (z_in | view.k)) & z_out).without(a);
            if (outside_sets.empty() || c_pool.empty()) continue;
            int b2 = outside_sets.lowest();
            int c2i = c_pool.lowest();
            ItemSet z_mid = z_out.without(c2i).with(b2);
            if (static_cast<int>(z_mid.size()) > g.max_tested_card() || !d.relevant(z_mid))
              continue;
            ItemSet pair_in = d.reuse(z_mid).contains(a) ? z_mid : z_in;
            ItemSet pair_out = d.reuse(z_mid).contains(a) ? z_out : z_mid;
            SetValue g_po = d.gross(pair_out);
            ItemSet blocked2 = pair_in | pair_out | view.k |
                               (g_po.is_top() ? ItemSet::none() : g_po.finite_set());
            ItemSet fresh2 = g.all() - blocked2;
            if (fresh2.empty() || !pair_in.contains(a) || !pair_out.contains(a)) continue;
            if (!d.reuse(pair_in).contains(a) || d.reuse(pair_out).contains(a)) continue;
            int b3 = fresh2.lowest();
            ChoiceFunction c1 = block_responsive(ground, pair_out, pair_in, pair_in.size());
            ChoiceFunction c2 = single_valued(ground, {a, b3});
            return finish(make_witness(condition, c1, c2, pair_in.with(b3),
                                       pair_in | pair_out | ItemSet::single(b3), Property::SUB,
                                       "reuse cardinality violation via the intermediate set " +
                                           g.format(z_mid)));
          }
        }
      }
      throw ConditionNotViolated("reuse is cardinal on its relevant domain");
    }

    case ViolationCase::KDisjoint: {
      if (view.k_is_top) throw ConditionNotViolated("K-disjointness is vacuous with TOP base");
      const ItemSet k = view.k;
      for (ItemSet z : tested) {
        if (!d.relevant(z)) continue;
        ItemSet shared = d.reuse(z) & k;
        if (shared.empty()) continue;
        int a = shared.lowest();
        auto b_cand = lowest_outside(g, d.gross(z).union_with(k));
        if (!b_cand) throw InsufficientHeadroom("no item outside the gross exclusion and K");
        int b = *b_cand;
        // A same-size set disjoint from z u {b} whose exclusion covers a but
        // leaves b free.
        std::optional<ItemSet> zp;
        for (ItemSet cand : g.subsets_cardlex()) {
          if (cand.size() != z.size() || cand.intersects(z | ItemSet::single(b))) continue;
          if (!e(cand).contains(a)) continue;
          if (d.gross(cand).contains(b)) continue;
          zp = cand;
          break;
        }
        if (!zp) throw InsufficientHeadroom("no room for a disjoint same-size set");
        ChoiceFunction c1 = block_responsive(ground, *zp, z, zp->size());
        ChoiceFunction c2 = single_valued(ground, {a, b});
        return finish(make_witness(
            condition, c1, c2, z.with(b), z | *zp | ItemSet::single(b), Property::SUB,
            "base-excluded item " + g.label(a) + " is reusable in " + g.format(z)));
      }
      throw ConditionNotViolated("reuse stays disjoint from K on the tested domain");
    }

    case ViolationCase::PiFiniteThreshold: {
      TlcrClassification cls = classify_tlcr(e);
      if (!cls.is_tlcr)
        throw PreconditionFailed("PI-domain conditions apply to classified exclusions only");
      const TlcrParams& p = *cls.params;
      if (!p.t.finite || p.t.value < 2)
        throw ConditionNotViolated("threshold is not a finite value above 1");
      const int t = p.t.value;
      ItemSet pool = g.all() - p.base;
      if (pool.size() < t + 2) throw InsufficientHeadroom("threshold too close to the ground size");
      std::vector<int> items = pool.items();
      ItemSet z = ItemSet::single(items[0]);
      ItemSet zp;
      for (int i = 1; i <= t; ++i) zp |= ItemSet::single(items[i]);
      int a = items[t + 1];
      ChoiceFunction c1 = make_union_of_orders(ground, union_orders_for(g, z, zp));
      ChoiceFunction c2 = single_valued(ground, {a});
      return finish(make_witness(
          condition, c1, c2, zp.with(a), z | zp | ItemSet::single(a), Property::SUB,
          "threshold " + std::to_string(t) + " blocks " + g.label(a) +
              " exactly when the path independent first chooser picks the larger set"));
    }

    case ViolationCase::PiReuseChain: {
      TlcrClassification cls = classify_tlcr(e);
      if (!cls.is_tlcr)
        throw PreconditionFailed("PI-domain conditions apply to classified exclusions only");
      const TlcrParams& p = *cls.params;
      std::optional<int> level;  // l >= 2 with T^l != T^{l+1}
      if (!p.t.finite) {
        for (std::size_t i = 2; i < p.reuse.size(); ++i) {
          if (!(p.reuse[i] == p.reuse[i - 1])) {
            level = static_cast<int>(i);
            break;
          }
        }
      }
      if (!level) throw ConditionNotViolated("reuse chain is constant from T^2 on");
      const int l = *level;  // always >= 2
      ItemSet gained = p.reuse_at(l + 1) - p.reuse_at(l);
      int a = gained.lowest();
      ItemSet pool = g.all() - p.base - ItemSet::single(a);
      if (pool.size() < l + 2) throw InsufficientHeadroom("reuse level too close to ground size");
      std::vector<int> items = pool.items();
      ItemSet z = ItemSet::single(a);
      for (int i = 0; i < l - 1; ++i) z |= ItemSet::single(items[i]);
      // zp keeps a, drops z's last extra item, and adds two fresh ones, so it
      // is one larger and not a superset of z.
      ItemSet zp = z.without(items[l - 2]) | ItemSet::of({items[l - 1], items[l]});
      int b = items[l + 1];
      ChoiceFunction c1 = make_union_of_orders(ground, union_orders_for(g, z, zp));
      ChoiceFunction c2 = single_valued(ground, {a, b});
      return finish(make_witness(
          condition, c1, c2, zp.with(b), z | zp | ItemSet::single(b), Property::SUB,
          "item " + g.label(a) + " becomes reusable only at cardinality " +
              std::to_string(l + 1) + "; its reuse starves " + g.label(b)));
    }

    case ViolationCase::SmReuse: {
      TlcrClassification cls = classify_tlcr(e);
      if (!cls.is_tlcr)
        throw PreconditionFailed("SM conditions apply to classified exclusions only");
      const TlcrParams& p = *cls.params;
      if ((g.all() - p.base).size() <= 1)
        throw ConditionNotViolated("at most one item outside K");
      std::optional<int> level;
      for (int n = 1; n <= static_cast<int>(p.reuse.size()); ++n) {
        if (!p.t.reached_by(n) && !p.reuse_at(n).empty()) {
          level = n;
          break;
        }
      }
      if (!level) throw ConditionNotViolated("no reuse below the threshold");
      const int n = *level;
      int a = p.reuse_at(n).lowest();
      ItemSet b_pool = g.all() - p.base - ItemSet::single(a);
      if (b_pool.empty()) throw InsufficientHeadroom("no second item outside K");
      int b = b_pool.lowest();
      ItemSet z_pool = g.all() - ItemSet::of({a, b});
      if (z_pool.size() < n) throw InsufficientHeadroom("no room for the padding set");
      ItemSet z;
      for (int i : z_pool.items()) {
        if (z.size() == n) break;
        z |= ItemSet::single(i);
      }
      int c = z.highest();
      std::vector<int> pref{a};
      for (int i : z.items()) {
        if (i != c) pref.push_back(i);
      }
      pref.push_back(c);
      ChoiceFunction c1 =
          ChoiceFunction::responsive(ground, LinearOrder::over(std::move(pref), g), n);
      ChoiceFunction c2 = single_valued(ground, {a, b});
      return finish(make_witness(
          condition, c1, c2, z.with(b), z | ItemSet::of({a, b}), Property::SM,
          "reusing " + g.label(a) + " at cardinality " + std::to_string(n) +
              " wastes the single-valued chooser's slot"));
    }

    case ViolationCase::SmFiniteThreshold: {
      TlcrClassification cls = classify_tlcr(e);
      if (!cls.is_tlcr)
        throw PreconditionFailed("SM conditions apply to classified exclusions only");
      const TlcrParams& p = *cls.params;
      if (!p.t.finite || p.t.value == 0)
        throw ConditionNotViolated("threshold is zero or infinite");
      if ((g.all() - p.base).size() <= 1)
        throw ConditionNotViolated("at most one item outside K");
      const int t = p.t.value;
      ItemSet ab_pool = g.all() - p.base;
      int a = ab_pool.lowest();
      int b = ab_pool.without(a).lowest();
      ItemSet z_pool = g.all() - ItemSet::of({a, b});
      if (z_pool.size() < t) throw InsufficientHeadroom("threshold too close to the ground size");
      ItemSet z;
      for (int i : z_pool.items()) {
        if (z.size() == t) break;
        z |= ItemSet::single(i);
      }
      int c = z.highest();
      ChoiceFunction c1 = accept_all_of(ground, z);
      ChoiceFunction c2 = ChoiceFunction::responsive(
          ground, LinearOrder::over({a, b}, g), 2);
      return finish(make_witness(
          condition, c1, c2, z.without(c) | ItemSet::of({a, b}), z | ItemSet::of({a, b}),
          Property::SM,
          "hitting threshold " + std::to_string(t) + " shuts both fresh items out"));
    }

    case ViolationCase::SvSingleton: {
      if (check_singleton_profile(e))
        throw ConditionNotViolated("singleton profile holds");
      SetValue k_value = e.base_exclusion();
      if (k_value.is_top()) {
        // Profile broken with TOP base: some singleton exclusion is finite,
        // so the gross exclusion is not monotonic from the empty set.
        return synthesize(e, ViolationCase::GrossMonotone);
      }
      const ItemSet k = view.k;
      // (a) some base-excluded item survives a singleton exclusion
      for (int a = 0; a < g.size(); ++a) {
        ItemSet lost = minus(k, d.gross(ItemSet::single(a)));
        ItemSet lost_not_a = lost.without(a);
        if (lost_not_a.empty()) continue;
        int b = lost_not_a.lowest();
        ChoiceFunction c1 = single_valued(ground, {a});
        ChoiceFunction c2 = single_valued(ground, {b});
        return finish(make_witness(
            condition, c1, c2, ItemSet::single(b), ItemSet::of({a, b}), Property::SUB,
            "base-excluded " + g.label(b) + " opens up only after " + g.label(a) + " is chosen"));
      }
      // (b) a singleton exclusion strays outside K u {a} while staying finite
      for (int a = 0; a < g.size(); ++a) {
        SetValue ga = d.gross(ItemSet::single(a));
        if (ga.is_top()) continue;
        ItemSet strays = e(ItemSet::single(a)).finite_set() - (k | ItemSet::single(a));
        ItemSet outside = g.all() - ga.finite_set();
        if (strays.empty() || outside.empty()) continue;
        int b = strays.lowest();
        int c = outside.lowest();
        ChoiceFunction c1 = single_valued(ground, {a});
        ChoiceFunction c2 = single_valued(ground, {b, c});
        return finish(make_witness(
            condition, c1, c2, ItemSet::of({b, c}), ItemSet::of({a, b, c}), Property::SUB,
            "singleton exclusion at " + g.label(a) + " strays to " + g.label(b)));
      }
      // (c) mixed TOP / finite singleton profile
      {
        std::optional<int> fin, top;
        for (int x = 0; x < g.size() && !(fin && top); ++x) {
          if (d.gross(ItemSet::single(x)).is_top()) {
            if (!top) top = x;
          } else if (!fin) {
            fin = x;
          }
        }
        if (fin && top) {
          int a = *fin, b = *top;
          ItemSet blocked = k | ItemSet::of({a, b}) | d.gross(ItemSet::single(a)).finite_set();
          ItemSet fresh = g.all() - blocked;
          if (fresh.empty()) throw InsufficientHeadroom("no fresh item for the mixed case");
          int c = fresh.lowest();
          ChoiceFunction c1 = single_valued(ground, {a, b});
          ChoiceFunction c2 = single_valued(ground, {c});
          return finish(make_witness(
              condition, c1, c2, ItemSet::of({b, c}), ItemSet::of({a, b, c}), Property::SUB,
              "only " + g.label(b) + " excludes everything among the singletons"));
        }
      }
      // (d) a base-excluded item is reusable at its own singleton
      for (int a : k.items()) {
        if (e(ItemSet::single(a)).contains(a)) continue;
        ItemSet b_pool = g.all() - k;
        ItemSet c_pool = g.all() - k - ItemSet::single(a);
        if (b_pool.empty()) break;
        int b = b_pool.lowest();
        ItemSet c_rest = c_pool.without(b);
        if (c_rest.empty()) throw InsufficientHeadroom("no third item for the reuse case");
        int c = c_rest.lowest();
        ChoiceFunction c1 = single_valued(ground, {b, a});
        ChoiceFunction c2 = single_valued(ground, {a, c});
        return finish(make_witness(
            condition, c1, c2, ItemSet::of({a, c}), ItemSet::of({a, b, c}), Property::SUB,
            "base-excluded " + g.label(a) + " is reusable at its own singleton"));
      }
      throw Error("singleton profile broken but no construction applied");
    }

    case ViolationCase::SvSmReuse: {
      if (!check_singleton_profile(e))
        throw PreconditionFailed("singleton reuse witness needs the singleton profile");
      if (check_sv_sm_profile(e, SvSide::SV_FIRST))
        throw ConditionNotViolated("single-valued size-monotonicity profile holds");
      const ItemSet k = view.k;
      std::optional<int> reusable;
      for (int x = 0; x < g.size(); ++x) {
        if (!k.contains(x) && !e(ItemSet::single(x)).contains(x)) {
          reusable = x;
          break;
        }
      }
      if (!reusable) throw ConditionNotViolated("no reusable singleton");
      int a = *reusable;
      ItemSet b_pool = g.all() - k - ItemSet::single(a);
      if (b_pool.empty()) throw InsufficientHeadroom("no second item outside K");
      int b = b_pool.lowest();
      ItemSet c_pool = g.all() - ItemSet::of({a, b});
      ItemSet c_pref = c_pool - k;
      if (c_pool.empty()) throw InsufficientHeadroom("no third item");
      int c = c_pref.empty() ? c_pool.lowest() : c_pref.lowest();
      ChoiceFunction c1 = single_valued(ground, {a, c});
      ChoiceFunction c2 = single_valued(ground, {a, b});
      return finish(make_witness(
          condition, c1, c2, ItemSet::of({b, c}), ItemSet::of({a, b, c}), Property::SM,
          "reusing " + g.label(a) + " shrinks the choice as the input grows"));
    }

    case ViolationCase::AggregateQuotaLeftGap:
    case ViolationCase::IndividualQuotaRightGap: {
      TlcrClassification cls = classify_tlcr(e);
      bool reuse_free = true;
      if (cls.is_tlcr) {
        for (const ItemSet& t : cls.params->reuse) {
          if (!t.empty()) reuse_free = false;
        }
      }
      if (!cls.is_tlcr || !cls.params->t.finite || !cls.params->base.empty() || !reuse_free)
        throw PreconditionFailed("quota-gap witnesses need a pure threshold exclusion");
      const int n_quota = cls.params->t.value;
      if (n_quota < 2) throw ConditionNotViolated("quota below 2 leaves no gap");
      int s1 = n_quota - 1;
      int s2 = std::max(1, n_quota - s1);
      if (s1 + s2 + 1 > g.size()) throw InsufficientHeadroom("ground too small for the instance");
      std::vector<int> items = g.all().items();
      ItemSet z1, z2;
      for (int i = 0; i < s1; ++i) z1 |= ItemSet::single(items[i]);
      for (int i = s1; i < s1 + s2; ++i) z2 |= ItemSet::single(items[i]);
      int z3 = items[s1 + s2];
      std::vector<ChoiceFunction> components{accept_all_of(ground, z1), accept_all_of(ground, z2),
                                             single_valued(ground, {z3})};
      std::vector<ExclusionFunction> labels{e, e};
      ItemSet y = z1 | z2 | ItemSet::single(z3);
      if (condition == ViolationCase::AggregateQuotaLeftGap) {
        ChoiceFunction composed = fold_left(components, labels);
        ChoiceFunction oracle = procedure_aggregate_quota(components, n_quota);
        return finish(make_witness(condition, composed, oracle, y, y, Property::PI,
                                   "left composition keeps the last chooser alive past the "
                                   "aggregate quota"));
      }
      ChoiceFunction composed = fold_right(components, labels);
      ChoiceFunction oracle = procedure_individual_quota(components, n_quota);
      return finish(make_witness(condition, composed, oracle, y, y, Property::PI,
                                 "right composition kills the last chooser although every prior "
                                 "chooser stayed below the quota"));
    }

    case ViolationCase::Search:
      throw InvalidParams("Search is produced by brute_search, not synthesized");
  }
  throw Error("unreachable");
}

std::optional<Witness> brute_search(const ExclusionFunction& e, Property property,
                                    DomainClass left, DomainClass right, SearchBounds bounds,
                                    const PreservationOptions& options) {
  GroundPtr ground = e.ground_ptr();
  auto family = [&](DomainClass domain) {
    if (domain == DomainClass::PI_GEN || domain == DomainClass::CON_SAMPLED) {
      Rng rng(bounds.seed);
      std::vector<ChoiceFunction> out;
      out.reserve(bounds.sample_count);
      for (int i = 0; i < bounds.sample_count; ++i)
        out.push_back(sample_from_domain(domain, ground, rng, options));
      return out;
    }
    return enumerate_domain(domain, ground, options);
  };
  std::vector<ChoiceFunction> lefts = family(left);
  std::vector<ChoiceFunction> rights = left == right ? lefts : family(right);

  std::size_t total = lefts.size() * rights.size();
  if (total > bounds.max_pairs) total = bounds.max_pairs;

  std::mutex mu;
  std::optional<std::pair<std::size_t, Witness>> best;
  std::atomic<bool> found{false};
  parallel_for(total, [&](std::size_t i) {
    if (found.load(std::memory_order_relaxed)) {
      std::lock_guard<std::mutex> lock(mu);
      if (best && best->first < i) return;
    }
    const ChoiceFunction& c1 = lefts[i / rights.size()];
    const ChoiceFunction& c2 = rights[i % rights.size()];
    ChoiceFunction composed = lex_compose(c1, c2, e);
    PropertyVerdict v = check_choice(composed, property, options.partition);
    if (v.holds) return;
    Witness w{ViolationCase::Search,
              c1,
              c2,
              v.witness->y_small,
              v.witness->y_big,
              property,
              "found by scan at pair " + std::to_string(i)};
    std::lock_guard<std::mutex> lock(mu);
    if (!best || i < best->first) best = {i, std::move(w)};
    found.store(true, std::memory_order_relaxed);
  });
  if (!best) return std::nullopt;
  return best->second;
}

}  // namespace lexichoice
