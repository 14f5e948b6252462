#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lexichoice/choice.hpp"
#include "lexichoice/exclusion.hpp"
#include "lexichoice/rng.hpp"

namespace lexichoice {

inline constexpr std::size_t kDefaultEnumerationCap = 100000;
inline constexpr int kDefaultSamplingBudget = 20000;

ChoiceFunction make_responsive(GroundPtr ground, LinearOrder order, int quota);
ChoiceFunction make_union_of_orders(GroundPtr ground, std::vector<LinearOrder> orders);
ExclusionFunction make_tlcr(GroundPtr ground, TlcrParams params);

/// Every distinct responsive choice function over the given quotas, ordered
/// lexicographically by (order permutation, quota) and deduplicated by full
/// function table. With `restrict_acceptable`, only orders whose acceptable
/// set lies inside it are enumerated.
std::vector<ChoiceFunction> enumerate_responsive(GroundPtr ground,
                                                 std::optional<ItemSet> restrict_acceptable,
                                                 const std::vector<int>& quotas,
                                                 std::size_t cap = kDefaultEnumerationCap);

/// Many-to-one variant of the above: greedy order-walk functions skipping
/// occupied equivalence classes.
std::vector<ChoiceFunction> enumerate_mto1_responsive(GroundPtr ground,
                                                      const EquivalencePartition& partition,
                                                      std::optional<ItemSet> restrict_acceptable,
                                                      const std::vector<int>& quotas,
                                                      std::size_t cap = kDefaultEnumerationCap);

/// A table choice function passing the consistency checker, found by guided
/// rejection sampling. Only supported for ground sizes up to 4.
ChoiceFunction sample_consistent(GroundPtr ground, std::uint64_t seed,
                                 int budget = kDefaultSamplingBudget);

/// Samplers used by the sampled verification modes.
LinearOrder sample_order(const GroundSet& ground, Rng& rng);
ChoiceFunction sample_responsive(GroundPtr ground, Rng& rng, std::optional<int> quota = {});
ChoiceFunction sample_union_of_orders(GroundPtr ground, Rng& rng, int max_orders = 4);
ChoiceFunction sample_mto1_responsive(GroundPtr ground, const EquivalencePartition& partition,
                                      Rng& rng, std::optional<int> quota = {});
ExclusionFunction sample_table_exclusion(GroundPtr ground, Rng& rng);
TlcrParams sample_tlcr_params(const GroundSet& ground, Rng& rng);

}  // namespace lexichoice
