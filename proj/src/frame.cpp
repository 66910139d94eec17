#include "negcurv/frame.hpp"

#include <sstream>
#include <utility>

namespace negcurv {

FrameSpec::FrameSpec(int dim) : dim_(dim), coeffs_(static_cast<std::size_t>(dim * dim * dim), 0.0) {
  if (dim < 1) throw ModelError("frame dimension must be >= 1");
  for (int i = 0; i < dim; ++i) labels_.push_back("X" + std::to_string(i + 1));
}

FrameSpec::FrameSpec(int dim, std::vector<double> coeffs, std::vector<std::string> labels) : FrameSpec(dim) {
  if (coeffs.size() != coeffs_.size())
    throw ModelError("structure coefficient array must have dim^3 entries");
  coeffs_ = std::move(coeffs);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const double c = (*this)(i, j, k);
        if (!std::isfinite(c)) throw ModelError("structure coefficients must be finite");
        if (c != -(*this)(j, i, k)) {
          std::ostringstream os;
          os << "structure coefficients not antisymmetric at (" << i << "," << j << "," << k << ")";
          throw ModelError(os.str());
        }
      }
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != dim) throw ModelError("one label per frame direction");
    labels_ = std::move(labels);
  }
}

FrameSpec FrameSpec::heisenberg(double lambda) {
  FrameSpec f(3);
  f.set_bracket(0, 1, 2, lambda);
  return f;
}

FrameSpec FrameSpec::block(const FrameSpec& left, const FrameSpec& right) {
  const int n1 = left.dim();
  FrameSpec f(n1 + right.dim());
  auto copy = [&f](const FrameSpec& src, int shift) {
    for (int i = 0; i < src.dim(); ++i)
      for (int j = 0; j < src.dim(); ++j)
        for (int k = 0; k < src.dim(); ++k) f.coeffs_[f.index(i + shift, j + shift, k + shift)] = src(i, j, k);
    for (int i = 0; i < src.dim(); ++i) f.labels_[static_cast<std::size_t>(i + shift)] = src.labels()[static_cast<std::size_t>(i)];
  };
  copy(left, 0);
  copy(right, n1);
  return f;
}

void FrameSpec::set_bracket(int i, int j, int k, double value) {
  coeffs_[index(i, j, k)] = value;
  coeffs_[index(j, i, k)] = -value;
}

bool FrameSpec::is_abelian() const {
  for (double c : coeffs_)
    if (c != 0.0) return false;
  return true;
}

std::vector<double> scaled_bracket_coeffs(const FrameSpec& frame, std::span<const Jet2d> warps) {
  const int n = frame.dim();
  std::vector<double> gamma(static_cast<std::size_t>(n * n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double c = frame(i, j, k);
        if (c == 0.0) continue;
        const double hi = warps[static_cast<std::size_t>(i)].value;
        const double hj = warps[static_cast<std::size_t>(j)].value;
        const double hk = warps[static_cast<std::size_t>(k)].value;
        gamma[static_cast<std::size_t>((i * n + j) * n + k)] = hk / (hi * hj) * c;
      }
  return gamma;
}

RiemannTensord koszul_curvature(int n, std::span<const double> gamma) {
  auto g = [n, gamma](int i, int j, int k) { return gamma[static_cast<std::size_t>((i * n + j) * n + k)]; };

  // Gamma_{ijk} = <nabla_{e_i} e_j, e_k>
  std::vector<double> conn(static_cast<std::size_t>(n * n * n));
  auto G = [n, &conn](int i, int j, int k) -> double& { return conn[static_cast<std::size_t>((i * n + j) * n + k)]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) G(i, j, k) = 0.5 * (g(i, j, k) - g(j, k, i) + g(k, i, j));

  RiemannTensord R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          double v = 0.0;
          for (int l = 0; l < n; ++l) v += G(j, k, l) * G(i, l, m) - G(i, k, l) * G(j, l, m) - g(i, j, l) * G(l, k, m);
          R.raw(i, j, k, m) = v;
        }
  return R;
}

namespace {

class FlatFiber final : public FiberCurvature {
 public:
  explicit FlatFiber(int dim) : dim_(dim) {}
  int dim() const override { return dim_; }
  RiemannTensord evaluate(double, std::span<const Jet2d>) const override { return RiemannTensord(dim_); }
  std::string name() const override { return "flat"; }

 private:
  int dim_;
};

class KoszulFiber final : public FiberCurvature {
 public:
  explicit KoszulFiber(FrameSpec frame) : frame_(std::move(frame)) {}
  int dim() const override { return frame_.dim(); }
  RiemannTensord evaluate(double, std::span<const Jet2d> warps) const override {
    if (frame_.is_abelian()) return RiemannTensord(frame_.dim());
    const auto gamma = scaled_bracket_coeffs(frame_, warps);
    return koszul_curvature(frame_.dim(), gamma);
  }
  std::string name() const override { return "koszul"; }

 private:
  FrameSpec frame_;
};

class ConstantCurvatureFiber final : public FiberCurvature {
 public:
  ConstantCurvatureFiber(int dim, double k) : dim_(dim), k_(k) {}
  int dim() const override { return dim_; }
  RiemannTensord evaluate(double, std::span<const Jet2d> warps) const override {
    RiemannTensord R(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        R.set(i, j, j, i, k_ / (warps[static_cast<std::size_t>(i)].value * warps[static_cast<std::size_t>(j)].value));
    return R;
  }
  std::string name() const override { return "constant-curvature"; }

 private:
  int dim_;
  double k_;
};

class ProductFiber final : public FiberCurvature {
 public:
  ProductFiber(FiberCurvaturePtr left, FiberCurvaturePtr right) : left_(std::move(left)), right_(std::move(right)) {}
  int dim() const override { return left_->dim() + right_->dim(); }
  RiemannTensord evaluate(double r, std::span<const Jet2d> warps) const override {
    const int n1 = left_->dim();
    const int n2 = right_->dim();
    const auto a = left_->evaluate(r, warps.subspan(0, static_cast<std::size_t>(n1)));
    const auto b = right_->evaluate(r, warps.subspan(static_cast<std::size_t>(n1), static_cast<std::size_t>(n2)));
    RiemannTensord R(n1 + n2);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n1; ++k)
          for (int l = 0; l < n1; ++l) R.raw(i, j, k, l) = a(i, j, k, l);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        for (int k = 0; k < n2; ++k)
          for (int l = 0; l < n2; ++l) R.raw(i + n1, j + n1, k + n1, l + n1) = b(i, j, k, l);
    return R;
  }
  std::string name() const override { return "product(" + left_->name() + "," + right_->name() + ")"; }

 private:
  FiberCurvaturePtr left_, right_;
};

}  // namespace

FiberCurvaturePtr flat_fiber(int dim) { return std::make_shared<FlatFiber>(dim); }
FiberCurvaturePtr koszul_fiber(FrameSpec frame) { return std::make_shared<KoszulFiber>(std::move(frame)); }
FiberCurvaturePtr constant_curvature_fiber(int dim, double curvature) {
  return std::make_shared<ConstantCurvatureFiber>(dim, curvature);
}
FiberCurvaturePtr product_fiber(FiberCurvaturePtr left, FiberCurvaturePtr right) {
  return std::make_shared<ProductFiber>(std::move(left), std::move(right));
}

}  // namespace negcurv
