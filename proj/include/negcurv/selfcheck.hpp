#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "negcurv/models.hpp"

namespace negcurv {

/// One instance of every warp variant with a radius window to sample it on.
struct CatalogWarp {
  std::string name;
  WarpSpec warp;
  RadiusRange range;
};
std::vector<CatalogWarp> warp_catalog();

/// The shipped families (defaults) with the radius window they are valid on.
struct CatalogFamily {
  MetricFamily family;
  RadiusRange range;
};
std::vector<CatalogFamily> family_catalog();

struct SuiteResult {
  std::string name;
  long passed = 0;
  long total = 0;
  double worst = 0.0;  // largest observed error measure
  bool ok() const { return passed == total; }
};

struct SelfcheckOptions {
  std::uint64_t seed = 0;
  /// Negative control: corrupt one assembled component before the symmetry suite.
  bool inject_asymmetry = false;
};

/// Runs the invariant suites: jets, symmetry, oracles, gauss, defects, formula.
std::vector<SuiteResult> selfcheck(const SelfcheckOptions& options = {});

/// Prints one line per suite; returns true when every suite passed.
bool print_selfcheck(std::ostream& os, const std::vector<SuiteResult>& results);

}  // namespace negcurv
