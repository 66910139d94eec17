#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "negcurv/curvature.hpp"

namespace negcurv {

/// Orthonormal pair spanning a tangent 2-plane.
struct Plane {
  Eigen::VectorXd u;
  Eigen::VectorXd v;

  /// Unit bivector u ^ v with the sign fixed so its first nonzero entry is positive.
  Eigen::VectorXd canonical_bivector() const;
};

enum class ScanMethod { dense, multistart };

inline const char* to_string(ScanMethod m) { return m == ScanMethod::dense ? "dense" : "multistart"; }

struct Extremum {
  double value = 0.0;
  Plane plane;
  ScanMethod method = ScanMethod::dense;
  long evaluations = 0;
};

struct ScanResult {
  Extremum min;
  Extremum max;
};

enum class ExtremumMode { min, max };

/// Largest tangent dimension (n + 1) the dense scan accepts.
inline constexpr int kDenseScanMaxDim = 5;

class ScanDimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Deterministic plane enumeration: the coordinate planes first, then planes
/// from a Halton sequence in [0,1)^{2N} pushed through Box-Muller and
/// Gram-Schmidt. Bivectors are cached so scans reduce to quadratic forms.
class PlaneSet {
 public:
  PlaneSet(int dim, int count);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(planes_.size()); }
  const Plane& plane(int i) const { return planes_[static_cast<std::size_t>(i)]; }
  /// One unit bivector per column.
  const Eigen::MatrixXd& bivectors() const { return bivectors_; }

 private:
  int dim_;
  std::vector<Plane> planes_;
  Eigen::MatrixXd bivectors_;
};

/// Best and worst sectional curvature over at least `resolution` planes.
/// Refuses tangent dimensions above kDenseScanMaxDim.
ScanResult dense_scan(const CurvatureTensor& t, int resolution);
/// Same with a precomputed enumeration (reused across radii).
ScanResult dense_scan(const CurvatureTensor& t, const PlaneSet& planes);

/// Every frame plane plus `starts` random orthonormal starts, each refined by
/// central-difference gradient steps on the plane manifold. Deterministic in `seed`.
Extremum multistart_extremize(const CurvatureTensor& t, ExtremumMode mode, int starts, std::uint64_t seed);

struct FramePlaneEntry {
  int a = 0;
  int b = 0;
  double curvature = 0.0;
};

/// K(e_a, e_b) for all frame planes, a < b.
std::vector<FramePlaneEntry> frame_plane_table(const CurvatureTensor& t);

/// splitmix64 mixing of (seed, stream); used to derive independent per-task seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace negcurv
