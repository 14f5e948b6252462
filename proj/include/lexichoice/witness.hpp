#pragma once

#include <optional>
#include <string>

#include "lexichoice/props.hpp"

namespace lexichoice {

/// One violated condition per mechanized proof construction.
enum class ViolationCase {
  GrossMonotone,
  AllOrNothing,
  GrossCardinal,
  ReuseMonotone,
  ReuseCardinal,
  KDisjoint,
  PiFiniteThreshold,   // 1 < t < inf on the path independent domain
  PiReuseChain,        // t = inf with T^l != T^{l+1} for some l >= 2
  SmReuse,             // some T^n non-empty below a reachable threshold
  SmFiniteThreshold,   // t < inf with more than one item outside K
  SvSingleton,         // singleton profile broken
  SvSmReuse,           // singleton reuse with more than one item outside K
  AggregateQuotaLeftGap,    // left composition cannot express the aggregate quota
  IndividualQuotaRightGap,  // right composition cannot express the individual quota
  Search,                   // produced by brute_search
};
const char* violation_case_name(ViolationCase c);
std::optional<ViolationCase> violation_case_from_name(const std::string& name);

/// A re-checkable counterexample: replaying the broken property on
/// lex_compose(c1, c2, E) at (y_small, y_big) reproduces the violation.
/// For the two quota-gap cases c1 and c2 are instead the two aggregate
/// functions that disagree at y_small = y_big.
struct Witness {
  ViolationCase condition;
  ChoiceFunction c1;
  ChoiceFunction c2;
  ItemSet y_small;
  ItemSet y_big;
  Property property_broken;
  std::string narrative;
};

/// Replays the witness against the exclusion function.
bool validate_witness(const ExclusionFunction& e, const Witness& w);

/// Builds the proof construction for the named condition: checks that E
/// actually violates it (ConditionNotViolated otherwise), picks the
/// lexicographically smallest qualifying items, and returns a validated
/// witness. Throws InsufficientHeadroom when the ground set has no room for
/// the construction's fresh items.
Witness synthesize(const ExclusionFunction& e, ViolationCase condition,
                   const EquivalencePartition* partition = nullptr);

struct SearchBounds {
  std::size_t max_pairs = 2000000;
  int sample_count = 400;  // per sampled domain side
  std::uint64_t seed = 0;
};

/// Independent oracle: scans (C1, C2) pairs from the two domains in
/// deterministic order and returns the first pair whose composition breaks
/// the property, with the first violating (Y, Y') in scan order.
std::optional<Witness> brute_search(const ExclusionFunction& e, Property property,
                                    DomainClass left, DomainClass right, SearchBounds bounds = {},
                                    const PreservationOptions& options = {});

}  // namespace lexichoice
