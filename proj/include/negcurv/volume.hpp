#pragma once

#include <functional>
#include <string>

#include "negcurv/curvature.hpp"

namespace negcurv {

enum class VolumeStatus { finite, divergent, inconclusive };

inline const char* to_string(VolumeStatus s) {
  switch (s) {
    case VolumeStatus::finite: return "finite";
    case VolumeStatus::divergent: return "divergent";
    case VolumeStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

/// Volume of (-inf, r_hi] x B relative to the volume of ({0} x B, g_0).
struct VolumeVerdict {
  VolumeStatus status = VolumeStatus::inconclusive;
  double value = 0.0;  // meaningful only when finite
  double relative_error = 0.0;
  double decay_rate = 0.0;  // fitted exponent of the density tail
  std::string tail_bound;

  bool finite() const { return status == VolumeStatus::finite; }
};

inline constexpr double kVolumeRelTolerance = 1e-6;
inline constexpr double kMinDecayRate = 1e-3;

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b]. Returns the estimate
/// and sets `error` to the summed error estimate. Kronrod nodes are interior,
/// so integrable endpoint singularities are tolerated.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                          double& error, int max_intervals = 20000);

/// Decides whether the density prod_i h_i(r) is integrable on (-inf, r_hi] and,
/// if so, integrates prod_i h_i(r) / h_i(0) after substituting u = e^r.
///
/// Tail test: log-linear fits of the density on [-40, -25] and [-25, -10].
/// Finite when both slopes are >= kMinDecayRate and agree to 10%; divergent
/// when the far slope is below kMinDecayRate (density not decaying);
/// inconclusive otherwise (slowly varying or oscillating tails).
VolumeVerdict end_volume(const MetricFamily& family, double r_hi = 0.0);

/// True iff h_i' >= 0 for every warp on a dense grid of r in [-40, 0]
/// (restricted to the family's domain); the monotonicity that makes fiber
/// volumes on R_- bounded by the r = 0 volume.
bool monotone_volume_bound(const MetricFamily& family);

}  // namespace negcurv
