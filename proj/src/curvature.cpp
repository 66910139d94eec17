#include "negcurv/curvature.hpp"

#include <sstream>

namespace negcurv {

std::vector<Jet2d> MetricFamily::jets(double r) const {
  std::vector<Jet2d> out;
  out.reserve(warps.size());
  for (const auto& w : warps) out.push_back(w(r));
  return out;
}

void MetricFamily::validate() const {
  if (frame.dim() < 1) throw ModelError(name + ": empty frame");
  if (static_cast<int>(warps.size()) != frame.dim())
    throw ModelError(name + ": one warp per frame direction required");
  if (!fiber) throw ModelError(name + ": missing fiber curvature provider");
  if (fiber->dim() != frame.dim()) throw ModelError(name + ": fiber provider dimension mismatch");
}

CurvatureTensor assemble(const MetricFamily& family, double r) {
  if (!(r >= family.domain_lo)) {
    std::ostringstream os;
    os << family.name << ": r=" << r << " below the domain start " << family.domain_lo;
    throw DomainError(os.str());
  }
  const int n = family.fiber_dim();
  const auto h = family.jets(r);
  for (int i = 0; i < n; ++i)
    if (!(h[static_cast<std::size_t>(i)].value > 0.0)) {
      std::ostringstream os;
      os << family.name << ": warp h_" << i + 1 << " is not positive at r=" << r;
      throw DomainError(os.str());
    }

  CurvatureTensor t;
  t.r = r;
  t.fiber = family.fiber->evaluate(r, h);
  if (const double defect = t.fiber.symmetry_defect(); defect > kSymmetryTolerance) {
    std::ostringstream os;
    os << family.name << ": fiber provider '" << family.fiber->name() << "' violates curvature symmetries by "
       << defect << " at r=" << r;
    throw SymmetryError(os.str());
  }

  auto hv = [&h](int i) { return h[static_cast<std::size_t>(i)].value; };
  auto rate = [&h](int i) { return h[static_cast<std::size_t>(i)].d1 / h[static_cast<std::size_t>(i)].value; };

  RiemannTensord R(n + 1);

  // Fiber block: Gauss correction only on {i,j} = {l,m}.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          double v = t.fiber(i, j, l, m);
          if (i != j) {
            if (i == m && j == l) v -= rate(i) * rate(j);
            if (i == l && j == m) v += rate(i) * rate(j);
          }
          R.raw(i + 1, j + 1, l + 1, m + 1) = v;
        }

  // Radial planes.
  for (int i = 0; i < n; ++i) R.set(i + 1, 0, 0, i + 1, -h[static_cast<std::size_t>(i)].d2 / hv(i));

  // Mixed components with a single radial index.
  if (!family.frame.is_abelian()) {
    const auto gamma = scaled_bracket_coeffs(family.frame, h);
    auto g = [n, &gamma](int i, int j, int k) { return gamma[static_cast<std::size_t>((i * n + j) * n + k)]; };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double twice = g(i, j, k) * (rate(k) - rate(j)) + g(k, i, j) * (rate(j) - rate(k)) +
                               g(k, j, i) * (2.0 * rate(i) - rate(j) - rate(k));
          const double v = 0.5 * twice;
          R.raw(0, i + 1, j + 1, k + 1) = v;
          R.raw(i + 1, 0, j + 1, k + 1) = -v;
          R.raw(j + 1, k + 1, 0, i + 1) = v;
          R.raw(j + 1, k + 1, i + 1, 0) = -v;
        }
  }

  t.ambient = std::move(R);
  return t;
}

Eigen::MatrixXd curvature_operator(const RiemannTensord& R) {
  const int n = R.dim();
  const int m = bivector_dim(n);
  Eigen::MatrixXd M(m, m);
  int p = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++p) {
      int q = 0;
      for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d, ++q) M(p, q) = R(a, b, d, c);
    }
  return M;
}

SecondForm second_form(const MetricFamily& family, double r) {
  const auto h = family.jets(r);
  SecondForm s;
  s.r = r;
  s.diagonal.resize(static_cast<Eigen::Index>(h.size()));
  for (std::size_t i = 0; i < h.size(); ++i) s.diagonal(static_cast<Eigen::Index>(i)) = -h[i].d1 / h[i].value;
  return s;
}

double gauss_fiber_slice(const CurvatureTensor& t, const SecondForm& s, const Eigen::VectorXd& c,
                         const Eigen::VectorXd& d) {
  const int n = t.fiber.dim();
  Eigen::VectorXd cx = Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd dx = Eigen::VectorXd::Zero(n + 1);
  cx.tail(n) = c;
  dx.tail(n) = d;
  const double ambient = curvature_form(t.ambient, cx, dx);

  // II(A, B) = sum_i A_i B_i II_ii (radial); values are multiples of d/dr.
  const double ii_cd = (c.array() * d.array() * s.diagonal.array()).sum();
  const double ii_cc = (c.array() * c.array() * s.diagonal.array()).sum();
  const double ii_dd = (d.array() * d.array() * s.diagonal.array()).sum();
  const double intrinsic = curvature_form(t.fiber, c, d);
  return std::abs(ambient - (intrinsic + ii_cd * ii_cd - ii_cc * ii_dd));
}

double gauss_fiber_slice(const CurvatureTensor& t, const SecondForm& s, int i, int j) {
  const int n = t.fiber.dim();
  return gauss_fiber_slice(t, s, Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j));
}

}  // namespace negcurv
