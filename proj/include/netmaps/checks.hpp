#pragma once

#include <string>
#include <vector>

#include "netmaps/topology.hpp"

namespace netmaps {

// Built-in verification scenes for the three-node models.
struct CheckSettings {
  int resolution = 600;
  int budget = 100;
  double radius = 10.0;
  double tolerance = kDefaultRelationTolerance;
  unsigned threads = 0;
};

struct CheckLine {
  std::string label;
  bool passed = false;
  std::string detail;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::vector<CheckLine> lines;

  // One "PASS|FAIL label: detail" line per sub-check, then an overall line.
  std::string report() const;
};

// prop1, prop2, prop3, nesting
const std::vector<std::string>& check_names();

// Throws DomainError for an unknown name.
CheckResult run_check(const std::string& name, const CheckSettings& settings = {});

}  // namespace netmaps
