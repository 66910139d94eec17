#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "negcurv/frame.hpp"
#include "negcurv/jet.hpp"

namespace negcurv {

/// The metric dr^2 + g_r with g_r diagonal in the frame {X_i}: g_r(X_i, X_i) = h_i(r)^2.
struct MetricFamily {
  std::string name;
  FrameSpec frame;
  std::vector<WarpSpec> warps;
  FiberCurvaturePtr fiber;
  /// Smallest radius at which the family is defined.
  double domain_lo = -std::numeric_limits<double>::infinity();
  /// Radius beyond which g_r = e^{2r} times a fixed metric, when the family has that form.
  std::optional<double> exponential_from;
  std::vector<std::pair<std::string, double>> parameters;

  int fiber_dim() const { return frame.dim(); }
  int dim() const { return frame.dim() + 1; }
  std::vector<Jet2d> jets(double r) const;
  /// Throws ModelError when warps, frame and fiber provider disagree on dimension.
  void validate() const;
};

/// Full curvature of dr^2 + g_r at radius r in the orthonormal frame
/// {d/dr, Y_1, ..., Y_n}; index 0 is the radial direction.
struct CurvatureTensor {
  double r = 0.0;
  RiemannTensord ambient;
  /// Intrinsic curvature of (B, g_r) in the frame {Y_i}.
  RiemannTensord fiber;

  int dim() const { return ambient.dim(); }
};

/// Provider output violating the curvature symmetries beyond tolerance.
class SymmetryError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegeneratePlaneError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kSymmetryTolerance = 1e-9;
inline constexpr double kGramTolerance = 1e-12;

/// Assembles R_g from the warp jets, the structure coefficients and the fiber
/// provider:
///   R_{ijji} = R^fib_{ijji} - h_i' h_j' / (h_i h_j)
///   R_{ijlm} = R^fib_{ijlm}                       if {i,j} != {l,m}
///   R_{i00i} = -h_i'' / h_i,  R_{i00j} = 0         (i != j)
///   2 R_{0ijk} = g_ijk (ln h_k/h_j)' + g_kij (ln h_j/h_k)' + g_kji (ln h_i^2/(h_j h_k))'
CurvatureTensor assemble(const MetricFamily& family, double r);

/// Orthonormal basis of span{u, v} by Gram-Schmidt; throws DegeneratePlaneError
/// when the normalized Gram determinant is below kGramTolerance.
template <typename DerivedU, typename DerivedV>
std::pair<Eigen::VectorXd, Eigen::VectorXd> orthonormalize(const Eigen::MatrixBase<DerivedU>& u,
                                                           const Eigen::MatrixBase<DerivedV>& v) {
  const double uu = u.squaredNorm();
  const double vv = v.squaredNorm();
  const double uv = u.dot(v);
  if (!(uu > 0.0) || !(vv > 0.0) || (uu * vv - uv * uv) <= kGramTolerance * uu * vv)
    throw DegeneratePlaneError("vectors do not span a 2-plane");
  Eigen::VectorXd e1 = u / std::sqrt(uu);
  Eigen::VectorXd e2 = v - e1.dot(v) * e1;
  e2.normalize();
  return {std::move(e1), std::move(e2)};
}

/// <R(x, y) y, x> by full multilinear contraction; no normalization.
template <typename Scalar, typename DerivedX, typename DerivedY>
Scalar curvature_form(const RiemannTensor<Scalar>& R, const Eigen::MatrixBase<DerivedX>& x,
                      const Eigen::MatrixBase<DerivedY>& y) {
  const int n = R.dim();
  Scalar sum(0);
  for (int a = 0; a < n; ++a) {
    if (x(a) == Scalar(0)) continue;
    for (int b = 0; b < n; ++b) {
      if (y(b) == Scalar(0)) continue;
      for (int c = 0; c < n; ++c) {
        const Scalar xyy = x(a) * y(b) * y(c);
        if (xyy == Scalar(0)) continue;
        for (int d = 0; d < n; ++d) sum += xyy * x(d) * R(a, b, c, d);
      }
    }
  }
  return sum;
}

/// Sectional curvature of span{u, v}: K = <R(e1, e2) e2, e1> for an orthonormal basis.
template <typename DerivedU, typename DerivedV>
double sectional(const RiemannTensord& R, const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
  const auto [e1, e2] = orthonormalize(u, v);
  return curvature_form(R, e1, e2);
}

template <typename DerivedU, typename DerivedV>
double sectional(const CurvatureTensor& t, const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
  return sectional(t.ambient, u, v);
}

/// Number of independent bivector components, n(n-1)/2.
inline int bivector_dim(int n) { return n * (n - 1) / 2; }

/// Components x_a y_b - x_b y_a, a < b, in lexicographic order.
template <typename DerivedX, typename DerivedY>
Eigen::VectorXd wedge(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd w(bivector_dim(n));
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) w(k++) = x(a) * y(b) - x(b) * y(a);
  return w;
}

/// The curvature operator as a symmetric matrix on bivectors, scaled so that
/// K(x, y) = w^T M w with w = x ^ y for orthonormal x, y.
Eigen::MatrixXd curvature_operator(const RiemannTensord& R);

/// Diagonal second fundamental form of the slices {r} x B: II(Y_i, Y_i) = -(h_i'/h_i) d/dr.
struct SecondForm {
  double r = 0.0;
  Eigen::VectorXd diagonal;

  /// All h_i' > 0.
  bool negative_definite() const { return (diagonal.array() < 0.0).all(); }
  /// All h_i' >= 0.
  bool negative_semidefinite() const { return (diagonal.array() <= 0.0).all(); }
};

SecondForm second_form(const MetricFamily& family, double r);

/// |(C, D, D, C)_g - [(C, D, D, C)_{g_r} + |II(C,D)|^2 - <II(C,C), II(D,D)>]| for
/// fiber vectors c, d given in the frame {Y_i}; a Gauss-equation cross-check.
double gauss_fiber_slice(const CurvatureTensor& t, const SecondForm& s, const Eigen::VectorXd& c,
                         const Eigen::VectorXd& d);
/// Same for the frame pair (Y_i, Y_j), fiber indices 0-based.
double gauss_fiber_slice(const CurvatureTensor& t, const SecondForm& s, int i, int j);

}  // namespace negcurv
