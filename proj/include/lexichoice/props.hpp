#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lexichoice/choice.hpp"
#include "lexichoice/exclusion.hpp"
#include "lexichoice/families.hpp"
#include "lexichoice/partition.hpp"

namespace lexichoice {

enum class Property { PI, SUB, CON, SM, MTO1 };
const char* property_name(Property p);
std::optional<Property> property_from_name(const std::string& name);

struct PairWitness {
  ItemSet y_small;
  ItemSet y_big;
  std::string detail;
};

struct PropertyVerdict {
  Property property;
  bool holds = true;
  std::optional<PairWitness> witness;  // present exactly when holds is false
};

/// True iff the property's defining statement fails at the specific pair.
/// MTO1 ignores y_big and needs the partition.
bool violates_at(const ChoiceFunction& c, Property p, ItemSet y_small, ItemSet y_big,
                 const EquivalencePartition* partition = nullptr);

/// Exhaustively checks the universally quantified definition over the ground
/// set and returns the first counterexample in scan order (cardinality, then
/// numeric mask). MTO1 requires the partition.
PropertyVerdict check_choice(const ChoiceFunction& c, Property p,
                             const EquivalencePartition* partition = nullptr);

/// Classifier conditions, named as in the characterization.
enum class Condition {
  GrossMonotone,
  AllOrNothing,
  GrossCardinal,
  ReuseMonotone,
  ReuseCardinal,
  KDisjoint,
};
const char* condition_name(Condition c);

struct TlcrClassification {
  bool is_tlcr = false;
  std::optional<TlcrParams> params;
  std::vector<Condition> failed;
  /// True when a TOP value pinned a finite threshold; a reported t=inf
  /// without this flag is only "infinite at this scale".
  bool threshold_observed = false;
  int max_card_tested = 0;
};

/// Tests the six characterization conditions over the headroom-restricted
/// domain (all sets of cardinality <= size - headroom); if every condition
/// holds, extracts (t, K, {T^n}) and validates the extraction by
/// re-synthesizing the exclusion and comparing on every tested subset.
TlcrClassification classify_tlcr(const ExclusionFunction& e);

/// Same conditions and extraction with every quantifier restricted to
/// feasible sets.
TlcrClassification classify_mto1_tlcr(const ExclusionFunction& e,
                                      const EquivalencePartition& partition);

enum class SafetyDomain { RES, PI, SUB };

/// Arithmetic test on the parameters: RES accepts any valid parameters; PI
/// needs t in {0,1,inf} with the reuse chain constant from T^2 on; SUB needs
/// t=0 or t=inf with the chain constant from T^1 on.
bool check_domain_safety(const TlcrParams& params, SafetyDomain domain);

/// |X \ K| <= 1 or (t = inf and every reuse set empty). t=0 counts as the
/// first disjunct: its base exclusion is the whole universe.
bool check_sm_safety(const TlcrParams& params, const GroundSet& ground);

/// True iff on the empty set and singletons, E coincides with some
/// threshold-linear exclusion with cardinal reuse: either every singleton's
/// gross exclusion is TOP, or E({x}) is K for reusable x and K u {x}
/// otherwise.
bool check_singleton_profile(const ExclusionFunction& e);

enum class SvSide { SV_FIRST, SV_SECOND };

/// Size-monotonicity refinements of the single-valued results: reuse must be
/// empty unless at most one item lies outside K.
bool check_sv_sm_profile(const ExclusionFunction& e, SvSide side);

enum class DomainClass { RES, SV_RES, PI_GEN, CON_SAMPLED, MTO1_RES };
const char* domain_name(DomainClass d);

struct SampleSpec {
  bool exhaustive = false;
  std::uint64_t seed = 0;
  int pair_count = 500;

  static SampleSpec exhaustive_mode() { return SampleSpec{true, 0, 0}; }
  static SampleSpec sampled(std::uint64_t seed, int count) { return SampleSpec{false, seed, count}; }
};

struct PreservationOptions {
  const EquivalencePartition* partition = nullptr;  // for MTO1 checks
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  int max_recorded_failures = 8;
};

struct PreservationFailure {
  std::size_t pair_index;
  ChoiceFunction c1;
  ChoiceFunction c2;
  PropertyVerdict verdict;
};

struct PreservationReport {
  Property property;
  DomainClass left;
  DomainClass right;
  bool exhaustive;
  std::uint64_t seed;
  std::size_t pairs_checked = 0;
  std::size_t failure_count = 0;
  std::vector<PreservationFailure> failures;  // first few, in scan order

  bool all_pass() const { return failure_count == 0; }
};

/// Checks the property on the composition for every (C1, C2) pair from the
/// two domains, exhaustively or sampled. Any failure carries the pair and a
/// re-checkable witness.
PreservationReport verify_preservation(const ExclusionFunction& e, Property property,
                                       DomainClass left, DomainClass right, SampleSpec mode,
                                       const PreservationOptions& options = {});

/// The generator backing a domain in sampled mode.
ChoiceFunction sample_from_domain(DomainClass domain, GroundPtr ground, Rng& rng,
                                  const PreservationOptions& options);

/// The family backing a domain in exhaustive mode.
std::vector<ChoiceFunction> enumerate_domain(DomainClass domain, GroundPtr ground,
                                             const PreservationOptions& options);

}  // namespace lexichoice
