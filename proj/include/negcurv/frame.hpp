#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "negcurv/jet.hpp"

namespace negcurv {

/// Dense rank-4 array R_{abcd} = <R(e_a, e_b) e_c, e_d> in an orthonormal frame.
///
/// set() writes a value together with its images under the algebraic
/// symmetries R_{abcd} = -R_{bacd} = -R_{abdc} = R_{cdab}; raw() bypasses that
/// and is meant for tests that need to break the symmetries on purpose.
template <typename Scalar>
class RiemannTensor {
 public:
  RiemannTensor() = default;
  explicit RiemannTensor(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim * dim), Scalar(0)) {}

  int dim() const { return dim_; }

  Scalar operator()(int a, int b, int c, int d) const { return data_[index(a, b, c, d)]; }
  Scalar& raw(int a, int b, int c, int d) { return data_[index(a, b, c, d)]; }

  void set(int a, int b, int c, int d, Scalar v) {
    data_[index(a, b, c, d)] = v;
    data_[index(b, a, c, d)] = -v;
    data_[index(a, b, d, c)] = -v;
    data_[index(b, a, d, c)] = v;
    data_[index(c, d, a, b)] = v;
    data_[index(d, c, a, b)] = -v;
    data_[index(c, d, b, a)] = -v;
    data_[index(d, c, b, a)] = v;
  }

  /// Largest violation of the pair antisymmetries, the pair exchange symmetry
  /// and the first Bianchi identity.
  Scalar symmetry_defect() const {
    Scalar worst(0);
    const int n = dim_;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            const Scalar v = (*this)(a, b, c, d);
            worst = std::max(worst, std::abs(v + (*this)(b, a, c, d)));
            worst = std::max(worst, std::abs(v + (*this)(a, b, d, c)));
            worst = std::max(worst, std::abs(v - (*this)(c, d, a, b)));
            worst = std::max(worst, std::abs(v + (*this)(b, c, a, d) + (*this)(c, a, b, d)));
          }
    return worst;
  }

  /// Sectional curvature of the frame plane (e_a, e_b).
  Scalar frame_sectional(int a, int b) const { return (*this)(a, b, b, a); }

  const std::vector<Scalar>& data() const { return data_; }

 private:
  std::size_t index(int a, int b, int c, int d) const {
    return static_cast<std::size_t>(((a * dim_ + b) * dim_ + c) * dim_ + d);
  }

  int dim_ = 0;
  std::vector<Scalar> data_;
};

using RiemannTensord = RiemannTensor<double>;

/// Structure coefficients C_{ijk} = <[X_i, X_j], X_k> of an r-independent
/// frame, antisymmetric in (i, j).
class FrameSpec {
 public:
  FrameSpec() = default;
  explicit FrameSpec(int dim);
  /// Builds from a dense dim^3 array in (i, j, k) row-major order; rejects
  /// coefficients that are not antisymmetric in (i, j) or not finite.
  FrameSpec(int dim, std::vector<double> coeffs, std::vector<std::string> labels = {});

  static FrameSpec abelian(int dim) { return FrameSpec(dim); }
  /// Three-dimensional Heisenberg frame with [X_1, X_2] = lambda X_3.
  static FrameSpec heisenberg(double lambda = 1.0);
  /// Block-diagonal frame of two commuting factors.
  static FrameSpec block(const FrameSpec& left, const FrameSpec& right);

  int dim() const { return dim_; }
  double operator()(int i, int j, int k) const { return coeffs_[index(i, j, k)]; }
  /// Sets [X_i, X_j] component along X_k to value, and the (j, i) entry to -value.
  void set_bracket(int i, int j, int k, double value);
  bool is_abelian() const;

  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t index(int i, int j, int k) const { return static_cast<std::size_t>((i * dim_ + j) * dim_ + k); }

  int dim_ = 0;
  std::vector<double> coeffs_;
  std::vector<std::string> labels_;
};

/// gamma_{ijk} = <[Y_i, Y_j], Y_k> for Y_i = X_i / h_i, i.e. (h_k / (h_i h_j)) C_{ijk}.
std::vector<double> scaled_bracket_coeffs(const FrameSpec& frame, std::span<const Jet2d> warps);

/// Curvature of a locally homogeneous orthonormal frame with constant
/// brackets gamma, via the Koszul formula.
RiemannTensord koszul_curvature(int dim, std::span<const double> gamma);

/// Provider of the fiber curvature <R_{g_r}(Y_i, Y_j) Y_l, Y_m> at radius r.
///
/// Implementations are immutable and may be shared between threads.
class FiberCurvature {
 public:
  virtual ~FiberCurvature() = default;
  virtual int dim() const = 0;
  virtual RiemannTensord evaluate(double r, std::span<const Jet2d> warps) const = 0;
  virtual std::string name() const = 0;
};

using FiberCurvaturePtr = std::shared_ptr<const FiberCurvature>;

FiberCurvaturePtr flat_fiber(int dim);
/// Curvature computed from the frame's structure coefficients.
FiberCurvaturePtr koszul_fiber(FrameSpec frame);
/// Space form of curvature K_B rescaled by the warps: R_{ijji} = K_B / (h_i h_j).
FiberCurvaturePtr constant_curvature_fiber(int dim, double curvature);
/// Block-diagonal provider; warps are split as (left.dim, right.dim).
FiberCurvaturePtr product_fiber(FiberCurvaturePtr left, FiberCurvaturePtr right);

}  // namespace negcurv
