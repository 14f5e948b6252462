#pragma once

#include <optional>

#include "lexichoice/compose.hpp"
#include "lexichoice/partition.hpp"
#include "lexichoice/props.hpp"

namespace lexichoice {

/// No more than one item per equivalence class.
bool is_feasible(ItemSet z, const EquivalencePartition& partition);

/// cbar completes c: wherever cbar's output is feasible it agrees with c.
bool completes(const ChoiceFunction& cbar, const ChoiceFunction& c,
               const EquivalencePartition& partition);

/// For every feasible Z within headroom, Z u E(Z) covers the closure of Z:
/// choosing an item excludes its whole equivalence class.
bool is_equivalence_excluding(const ExclusionFunction& e, const EquivalencePartition& partition);

enum class EquivCondition {
  Mto1Monotone,
  WeakAllOrNothing,
};

/// Feasible-domain dilation conditions. Mto1Monotone: the gross exclusion is
/// monotonic across nested feasible sets. WeakAllOrNothing: wherever two
/// non-equivalent items survive outside closure(Z) u K, the gross exclusion
/// is exactly closure(Z) u K or TOP; when at most one class survives out
/// there, the value is unconstrained (that slack is exactly what the
/// completion construction exploits).
bool check_equiv_dilation(const ExclusionFunction& e, const EquivalencePartition& partition,
                          EquivCondition condition);

/// The exclusion putting back everything the minimal equivalence exclusion
/// removed except the actually chosen items: a plain threshold-linear
/// exclusion with the same parameters.
ExclusionFunction build_overline_exclusion(GroundPtr ground, const TlcrParams& params);

/// Checks the completion-transfer statement: given an equivalence-excluding,
/// feasibly threshold-linear E with parameters P, completions of the inputs
/// composed under the plain threshold-linear exclusion with parameters P
/// complete the composition under E. Throws PreconditionFailed naming any
/// violated hypothesis.
bool verify_lemma_mto1(const ChoiceFunction& c1, const ChoiceFunction& c2,
                       const ChoiceFunction& c1bar, const ChoiceFunction& c2bar,
                       const ExclusionFunction& e, const EquivalencePartition& partition);

/// The three-branch exclusion over a ground set containing items a, b, c with
/// a ~ c and b in another class, plus the matching completion template.
struct EquivPairExample {
  ExclusionFunction exclusion;
  int item_a, item_b, item_c;

  /// The completion of lex_compose(c1, c2, exclusion) that repairs the one
  /// infeasible corner {a, c}.
  ChoiceFunction make_completion(const ChoiceFunction& c1, const ChoiceFunction& c2) const;
};

EquivPairExample build_example_pair_exclusion(GroundPtr ground,
                                              const EquivalencePartition& partition, int item_a,
                                              int item_b, int item_c);

/// Exhaustive search for a path independent completion: candidates differ
/// from c only where their output is infeasible. Returns the first one found
/// in scan order, or nullopt when none exists. node_budget caps the search
/// tree.
std::optional<ChoiceFunction> find_pi_completion(const ChoiceFunction& c,
                                                 const EquivalencePartition& partition,
                                                 std::size_t node_budget = 5000000);

}  // namespace lexichoice
