#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "lexichoice/contracts.hpp"
#include "lexichoice/props.hpp"
#include "lexichoice/witness.hpp"

namespace lexichoice {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSpecSchema = "lexichoice-spec-v1";
inline constexpr const char* kReportSchema = "lexichoice-report-v1";
inline constexpr const char* kToolVersion = "0.1.0";

/// A parsed problem file: the ground set, an optional partition, and named
/// choice/exclusion definitions.
struct SpecFile {
  GroundPtr ground;
  std::optional<EquivalencePartition> partition;
  std::map<std::string, ChoiceFunction> choices;
  std::map<std::string, ExclusionFunction> exclusions;

  const ChoiceFunction& choice(const std::string& name) const;
  const ExclusionFunction& exclusion(const std::string& name) const;
};

SpecFile spec_from_json(const Json& j);
Json spec_to_json(const SpecFile& spec);
SpecFile load_spec(const std::string& path);

// Sets are sorted integer arrays; TOP is the string "TOP"; thresholds are
// integers or "inf"; order rankings use -1 for the unchosen marker.
Json itemset_to_json(ItemSet s);
ItemSet itemset_from_json(const Json& j, const GroundSet& ground);
Json setvalue_to_json(const SetValue& v);
SetValue setvalue_from_json(const Json& j, const GroundSet& ground);
Json threshold_to_json(const Threshold& t);
Threshold threshold_from_json(const Json& j);
Json tlcr_params_to_json(const TlcrParams& p);
TlcrParams tlcr_params_from_json(const Json& j, const GroundSet& ground);

Json choice_to_json(const ChoiceFunction& c);
ChoiceFunction choice_from_json(const Json& j, GroundPtr ground,
                                const std::optional<EquivalencePartition>& partition);
Json exclusion_to_json(const ExclusionFunction& e);
ExclusionFunction exclusion_from_json(const Json& j, GroundPtr ground,
                                      const std::optional<EquivalencePartition>& partition);

Json verdict_to_json(const PropertyVerdict& v);
Json classification_to_json(const TlcrClassification& c);
Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j, GroundPtr ground,
                          const std::optional<EquivalencePartition>& partition);
Json preservation_to_json(const PreservationReport& r);

}  // namespace lexichoice
