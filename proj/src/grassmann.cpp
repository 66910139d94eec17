#include "negcurv/grassmann.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace negcurv {

Eigen::VectorXd Plane::canonical_bivector() const {
  Eigen::VectorXd w = wedge(u, v);
  w.normalize();
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (std::abs(w(k)) > 1e-12) {
      if (w(k) < 0.0) w = -w;
      break;
    }
  }
  return w;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr std::array<int, 12> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(long index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double result = 0.0;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return result;
}

bool lexicographically_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a(k) < b(k)) return true;
    if (a(k) > b(k)) return false;
  }
  return false;
}

/// Whether (value, plane) should replace the incumbent under `mode`.
bool improves(double value, const Plane& plane, const Extremum& incumbent, bool has_incumbent, ExtremumMode mode) {
  if (!has_incumbent) return true;
  if (mode == ExtremumMode::min ? value < incumbent.value : value > incumbent.value) return true;
  if (value != incumbent.value) return false;
  return lexicographically_less(plane.canonical_bivector(), incumbent.plane.canonical_bivector());
}

void require_dense_dim(int dim) {
  if (dim > kDenseScanMaxDim)
    throw ScanDimensionError("dense scan supports tangent dimension <= " + std::to_string(kDenseScanMaxDim) +
                             " (got " + std::to_string(dim) + "); use multistart_extremize");
}

}  // namespace

PlaneSet::PlaneSet(int dim, int count) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("plane enumeration needs dimension >= 2");
  if (2 * dim > static_cast<int>(kPrimes.size())) throw ScanDimensionError("plane enumeration dimension too large");
  if (count < 1) throw std::invalid_argument("plane enumeration needs at least one plane");

  for (int a = 0; a < dim && size() < count; ++a)
    for (int b = a + 1; b < dim && size() < count; ++b)
      planes_.push_back({Eigen::VectorXd::Unit(dim, a), Eigen::VectorXd::Unit(dim, b)});

  Eigen::VectorXd g(2 * dim);
  for (long index = 1; size() < count; ++index) {
    for (int k = 0; k < dim; ++k) {
      const double u1 = radical_inverse(index, kPrimes[static_cast<std::size_t>(2 * k)]);
      const double u2 = radical_inverse(index, kPrimes[static_cast<std::size_t>(2 * k + 1)]);
      const double rho = std::sqrt(-2.0 * std::log(u1));
      g(2 * k) = rho * std::cos(2.0 * std::numbers::pi * u2);
      g(2 * k + 1) = rho * std::sin(2.0 * std::numbers::pi * u2);
    }
    const Eigen::VectorXd x = g.head(dim);
    const Eigen::VectorXd y = g.tail(dim);
    try {
      auto [e1, e2] = orthonormalize(x, y);
      planes_.push_back({std::move(e1), std::move(e2)});
    } catch (const DegeneratePlaneError&) {
      continue;
    }
  }

  bivectors_.resize(bivector_dim(dim), size());
  for (int i = 0; i < size(); ++i) bivectors_.col(i) = wedge(planes_[static_cast<std::size_t>(i)].u, planes_[static_cast<std::size_t>(i)].v);
}

ScanResult dense_scan(const CurvatureTensor& t, int resolution) {
  require_dense_dim(t.dim());
  return dense_scan(t, PlaneSet(t.dim(), resolution));
}

ScanResult dense_scan(const CurvatureTensor& t, const PlaneSet& planes) {
  require_dense_dim(t.dim());
  if (planes.dim() != t.dim()) throw std::invalid_argument("plane set dimension does not match the tensor");
  const Eigen::MatrixXd M = curvature_operator(t.ambient);
  const Eigen::MatrixXd& W = planes.bivectors();
  const Eigen::RowVectorXd values = (M * W).cwiseProduct(W).colwise().sum();

  ScanResult out;
  bool have = false;
  for (int i = 0; i < planes.size(); ++i) {
    const Plane& p = planes.plane(i);
    if (improves(values(i), p, out.min, have, ExtremumMode::min)) out.min = {values(i), p, ScanMethod::dense, 0};
    if (improves(values(i), p, out.max, have, ExtremumMode::max)) out.max = {values(i), p, ScanMethod::dense, 0};
    have = true;
  }
  for (Extremum* e : {&out.min, &out.max}) {
    e->value = curvature_form(t.ambient, e->plane.u, e->plane.v);
    e->evaluations = planes.size();
  }
  return out;
}

namespace {

class PlaneObjective {
 public:
  PlaneObjective(const CurvatureTensor& t, ExtremumMode mode)
      : M_(curvature_operator(t.ambient)), sign_(mode == ExtremumMode::max ? 1.0 : -1.0) {}

  /// Signed objective at span{x, y}; NaN if degenerate.
  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    ++evaluations;
    try {
      const auto [e1, e2] = orthonormalize(x, y);
      const Eigen::VectorXd w = wedge(e1, e2);
      return sign_ * w.dot(M_ * w);
    } catch (const DegeneratePlaneError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  }

  long evaluations = 0;

 private:
  Eigen::MatrixXd M_;
  double sign_;
};

constexpr double kGradientStep = 1e-6;
constexpr double kGradientTolerance = 1e-9;
constexpr int kMaxIterations = 1000;
constexpr double kStallTolerance = 1e-14;
constexpr double kMaxStep = 1024.0;

Plane refine(PlaneObjective& f, Plane p) {
  const int n = static_cast<int>(p.u.size());
  const int m = n - 2;
  if (m <= 0) return p;

  double value = f(p.u, p.v);
  double step = 1.0;
  Eigen::VectorXd grad(2 * m);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    Eigen::MatrixXd span(n, 2);
    span << p.u, p.v;
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(span).householderQ();
    const Eigen::MatrixXd complement = Q.rightCols(m);

    for (int k = 0; k < m; ++k) {
      const Eigen::VectorXd dir = kGradientStep * complement.col(k);
      grad(k) = (f(p.u + dir, p.v) - f(p.u - dir, p.v)) / (2.0 * kGradientStep);
      grad(m + k) = (f(p.u, p.v + dir) - f(p.u, p.v - dir)) / (2.0 * kGradientStep);
    }
    if (!grad.allFinite() || grad.norm() <= kGradientTolerance) break;

    const Eigen::VectorXd du = complement * grad.head(m);
    const Eigen::VectorXd dv = complement * grad.tail(m);
    bool moved = false;
    while (step > 1e-16) {
      const Eigen::VectorXd u = p.u + step * du;
      const Eigen::VectorXd v = p.v + step * dv;
      const double trial = f(u, v);
      if (trial > value) {
        auto [e1, e2] = orthonormalize(u, v);
        p = {std::move(e1), std::move(e2)};
        // Stalled: further steps only chase rounding noise.
        moved = trial - value > kStallTolerance * std::max(1.0, std::abs(value));
        value = trial;
        step = std::min(2.0 * step, kMaxStep);
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return p;
}

}  // namespace

Extremum multistart_extremize(const CurvatureTensor& t, ExtremumMode mode, int starts, std::uint64_t seed) {
  if (starts < 1) throw std::invalid_argument("multistart needs at least one start");
  const int n = t.dim();
  PlaneObjective objective(t, mode);
  Extremum best;
  best.method = ScanMethod::multistart;
  bool have = false;
  auto consider = [&](Plane start) {
    const Plane local = refine(objective, std::move(start));
    const double value = curvature_form(t.ambient, local.u, local.v);
    if (improves(value, local, best, have, mode)) {
      best.value = value;
      best.plane = local;
    }
    have = true;
  };
  // Frame planes first: extremes of the shipped families often sit there.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) consider({Eigen::VectorXd::Unit(n, a), Eigen::VectorXd::Unit(n, b)});
  for (int s = 0; s < starts; ++s) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
    std::normal_distribution<double> normal;
    Plane start;
    for (;;) {
      Eigen::VectorXd x(n), y(n);
      for (int k = 0; k < n; ++k) x(k) = normal(rng);
      for (int k = 0; k < n; ++k) y(k) = normal(rng);
      try {
        auto [e1, e2] = orthonormalize(x, y);
        start = {std::move(e1), std::move(e2)};
        break;
      } catch (const DegeneratePlaneError&) {
      }
    }
    consider(std::move(start));
  }
  best.evaluations = objective.evaluations;
  return best;
}

std::vector<FramePlaneEntry> frame_plane_table(const CurvatureTensor& t) {
  std::vector<FramePlaneEntry> out;
  for (int a = 0; a < t.dim(); ++a)
    for (int b = a + 1; b < t.dim(); ++b) out.push_back({a, b, t.ambient.frame_sectional(a, b)});
  return out;
}

}  // namespace negcurv
