#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexichoice/sets.hpp"

namespace lexichoice {

struct BatteryOptions {
  std::uint64_t seed = 0;
  int samples = 500;
  bool quick = false;       // trimmed draw counts for unit-test runs
  bool exhaustive = false;  // widen the exhaustive portions where one exists
};

struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

struct BatteryReport {
  std::string battery;
  std::uint64_t seed = 0;
  std::vector<CheckLine> lines;

  bool pass() const {
    for (const CheckLine& l : lines) {
      if (!l.pass) return false;
    }
    return true;
  }
};

/// Named verification batteries reproducing the characterization results and
/// their counterexample constructions at desk scale.
std::vector<std::string> battery_ids();
BatteryReport run_battery(const std::string& id, const BatteryOptions& options = {});

}  // namespace lexichoice
