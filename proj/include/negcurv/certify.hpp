#pragma once

#include <optional>
#include <string>
#include <vector>

#include "negcurv/config.hpp"
#include "negcurv/grassmann.hpp"
#include "negcurv/volume.hpp"

namespace negcurv {

struct RadiusRecord {
  double r = 0.0;
  Extremum min;
  Extremum max;
  bool second_form_negative_definite = false;
  /// Infranil only: distance of [K_min, K_max] from [-max(Q^2, Q'+Q^2), -1].
  std::optional<double> pattern_error;
};

/// h_i(r) e^{-r} compared at two radii past the exponential threshold.
struct ExponentialFormCheck {
  bool applicable = false;
  double r_from = 0.0;
  double max_relative_deviation = 0.0;
  bool holds = false;
};

inline constexpr double kFormTolerance = 1e-12;

struct CertificationReport {
  std::string version;
  RunConfig config;
  MetricFamily family;
  ScanMethod method = ScanMethod::dense;
  std::vector<RadiusRecord> records;
  /// All sampled K_max < 0.
  bool sign_certificate = false;
  double k_inf = 0.0;
  double k_sup = 0.0;
  /// II negative definite at every sampled radius.
  bool hypothesis_holds = false;
  VolumeVerdict end_volume;
  ExponentialFormCheck form;
};

/// Builds the family, scans the r-grid, extremizes K per radius (dense when
/// the tangent dimension is <= kDenseScanMaxDim, multistart otherwise) and runs
/// the second fundamental form, volume and form checks.
///
/// Up to `jobs` worker threads share the grid; the result does not depend on
/// `jobs`. Throws ConfigError, ModelError or RangeError.
CertificationReport certify(const RunConfig& config, int jobs = 1);

ExponentialFormCheck exponential_form_check(const MetricFamily& family);

}  // namespace negcurv
