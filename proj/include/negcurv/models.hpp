#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

#include "negcurv/curvature.hpp"

namespace negcurv {

/// Cusp over a flat torus: all h_i = e^r, K = -1.
struct CuspParams {
  int dim = 2;
};

/// Base of constant curvature K_B <= 0 warped by the smoothed e^r + tau.
struct NpcBaseParams {
  double curvature = -1.0;  // K_B
  double tau = 1.0;
  double r_tau = 4.0;
  int dim = 2;
};

/// Heisenberg frame with rates (1, 1, k) whose top layer is slowed to rate 1
/// through Q: k -> 1 on [T1, T2], with q = k c + int_c^r Q.
struct InfranilParams {
  int k = 2;
  double c = 1.0;
  double t1 = 3.0;
  double t2 = 203.0;
  std::vector<double> prefactors = {0.5, 0.5, 0.5};
};

/// Circle bundle over a complex hyperbolic surface in cylindrical
/// coordinates, with v = sinh r, h = cosh(r/2) blended on [T0 - fade, T0] into
/// v = e^r/2, h = e^q/2, and Q: 1/2 -> 1 on [T1, T2].
struct TypeKParams {
  double epsilon = 0.1;
  double t0 = 6.0;
  double t1 = 8.0;
  double t2 = 108.0;
  double c23 = 0.5;
  double fade = 1.0;
};

struct ProductParams;

using ModelParams = std::variant<CuspParams, NpcBaseParams, InfranilParams, TypeKParams, ProductParams>;

struct ProductParams {
  std::vector<ModelParams> factors;  // exactly two
};

MetricFamily cusp(const CuspParams& p);
MetricFamily npc_base(const NpcBaseParams& p);
MetricFamily infranil(const InfranilParams& p);
MetricFamily type_k(const TypeKParams& p);
/// The unmodified cylindrical metric v = sinh r, h = cosh(r/2) on r >= epsilon.
MetricFamily type_k_cylindrical(const TypeKParams& p);
/// Block product: concatenated warps, block frame, block fiber curvature.
MetricFamily product(const MetricFamily& left, const MetricFamily& right);
MetricFamily build_family(const ModelParams& p);

/// Radius range on which the family's claims are certified by default.
struct RadiusRange {
  double lo;
  double hi;
};
RadiusRange default_range(const ModelParams& p);

/// Closed-form K(Y_1, c Y_2 + d d/dr) = c^2 (K_B/h^2 - (h'/h)^2) - d^2 h''/h for c^2 + d^2 = 1.
double npc_plane_curvature(const NpcBaseParams& p, double r, double c, double d);

/// Rate profile Q of the infranil transition and the predicted window
/// [-max(Q^2, Q' + Q^2), -1] its curvature should occupy up to a small error.
struct InfranilPattern {
  double q = 0.0;
  double q_slope = 0.0;
  double window_lo = 0.0;
  double window_hi = -1.0;
};
InfranilPattern infranil_pattern(const InfranilParams& p, double r);

/// Closed-form frame components of the type-(K) metric at radius r.
struct TypeKComponents {
  double r = 0.0;
  double s = 0.0;          // v / h^2
  double k_y2y1 = 0.0;     // = K(Y3, Y1) = s^2/16 - (v'/v)(h'/h)
  double k_y3y1 = 0.0;
  double k_y3y2 = 0.0;     // -1/(4h^2) - 3 c^2/h^2 - 3 c^2 s^2/4 - (h'/h)^2
  double k_ry1 = 0.0;      // -v''/v
  double k_ry2 = 0.0;      // -h''/h
  double k_ry3 = 0.0;
  double r_ry1y2y3 = 0.0;  // <R(d/dr, Y1) Y2, Y3> = -c s (v'/v - h'/h)
  double q_rate = 0.0;     // h'/h on the modified region, i.e. Q
};
TypeKComponents type_k_components(const TypeKParams& p, double r);

/// Plane span{C, D} with C = c0 d/dr + c1 Y1 + c2 Y2 + c3 Y3, D = d1 Y1 + d2 Y2.
struct TypeKPlane {
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0;
  double d1 = 0, d2 = 0;

  Eigen::Vector4d c() const { return {c0, c1, c2, c3}; }
  Eigen::Vector4d d() const { return {0.0, d1, d2, 0.0}; }
  /// Throws std::invalid_argument unless |C| = |D| = 1 and C.D = 0 to 1e-9.
  void require_orthonormal() const;
};

/// Six-term expansion of K(C, D) for the type-(K) frame, built from the component table.
double type_k_expansion(const TypeKComponents& k, const TypeKPlane& plane);

/// d1^2 c0^2 K(dr,Y1) + d2^2 c3^2 K(Y3,Y2) + 3 d1 d2 c0 c3 <R(dr,Y1)Y2,Y3>; nonpositive for r >= T0.
double type_k_defect(const TypeKParams& p, double r, const TypeKPlane& plane);

/// Fiber vectors split by factor, each in its factor's frame {Y_i}.
struct FiberSplit {
  Eigen::VectorXd left;
  Eigen::VectorXd right;
};

/// (C,D,D,C)_g - sum_k (C_k,D_k,D_k,C_k)_g for fiber-tangent C, D of a product,
/// by direct tensor contraction and through T = diag(sqrt(|h_i'|/h_i)).
///
/// The T-matrix value is the exact identity 2 x1 x2 - a1 b2 - a2 b1 with
/// x_k = <TC_k, TD_k>, a_k = |TC_k|^2, b_k = |TD_k|^2, which the bound dominates.
struct ProductDefect {
  double direct = 0.0;
  double t_matrix = 0.0;
  double bound = 0.0;  // -(|TC1||TD2| - |TC2||TD1|)^2
};
ProductDefect product_defect(const MetricFamily& left, const MetricFamily& right, double r, const FiberSplit& c,
                             const FiberSplit& d);

/// Human-readable listing of the families and their parameters with defaults.
std::string describe_models();

}  // namespace negcurv
