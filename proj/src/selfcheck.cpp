#include "negcurv/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "negcurv/grassmann.hpp"

namespace negcurv {

std::vector<CatalogWarp> warp_catalog() {
  const InfranilParams in;
  const TypeKParams tk;
  const MetricFamily infra = infranil(in);
  const MetricFamily typek = type_k(tk);
  return {
      {"exponential", exp_warp(0.5), {-20.0, 20.0}},
      {"sinh", warp::Sinh{}, {0.1, 20.0}},
      {"cosh_half", warp::CoshHalf{}, {-20.0, 20.0}},
      {"shifted_exponential", warp::ShiftedExponential{1.0, 1.0}, {-20.0, 20.0}},
      {"transition_exponential", infra.warps[2], {in.c, in.t2 + 10.0}},
      {"constant", warp::Constant{2.0}, {-20.0, 20.0}},
      {"smoothed_shifted_exponential", npc_smoothed_warp(1.0, 4.0), {-10.0, 10.0}},
      {"faded_tail_v", typek.warps[0], {tk.epsilon, 20.0}},
      {"faded_tail_h", typek.warps[1], {tk.epsilon, tk.t2 + 10.0}},
  };
}

std::vector<CatalogFamily> family_catalog() {
  const TypeKParams tk;
  const InfranilParams in;
  const RadiusRange tk_range{tk.epsilon, tk.t2 + 10.0};
  return {
      {cusp({1}), {-10.0, 10.0}},
      {cusp({2}), {-10.0, 10.0}},
      {cusp({3}), {-10.0, 10.0}},
      {npc_base({}), {-20.0, 5.0}},
      {infranil(in), {in.c, in.t2 + 10.0}},
      {type_k(tk), tk_range},
      {type_k_cylindrical(tk), {tk.epsilon, 20.0}},
      {product(cusp({1}), cusp({1})), {-10.0, 10.0}},
      {product(type_k(tk), cusp({1})), tk_range},
      {product(type_k(tk), npc_base({})), tk_range},
      {product(cusp({1}), npc_base({})), {-20.0, 5.0}},
  };
}

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }
  /// Records one check with error measure `err` against `tol`.
  void check(double err, double tol) {
    ++result_.total;
    if (err <= tol) ++result_.passed;
    if (!(err <= result_.worst)) result_.worst = std::isnan(err) ? err : std::max(result_.worst, err);
  }
  SuiteResult result() const { return result_; }

 private:
  SuiteResult result_;
};

double central(const WarpSpec& w, double r, bool second) {
  const double h = 1e-5;
  const double lo = r - h, hi = r + h;
  const Jet2d a = w(lo), b = w(hi);
  return second ? (b.d1 - a.d1) / (hi - lo) : (b.value - a.value) / (hi - lo);
}

SuiteResult jets_suite(std::mt19937_64& rng) {
  Suite s("jets");
  for (const auto& c : warp_catalog()) {
    std::uniform_real_distribution<double> pick(c.range.lo + 1e-3, c.range.hi - 1e-3);
    for (int k = 0; k < 200; ++k) {
      const double r = pick(rng);
      const Jet2d j = c.warp(r);
      const double scale = std::max({std::abs(j.d1), std::abs(j.d2), std::abs(j.value)});
      s.check(std::abs(central(c.warp, r, false) - j.d1) / scale, 1e-6);
      s.check(std::abs(central(c.warp, r, true) - j.d2) / scale, 1e-6);
    }
  }
  return s.result();
}

SuiteResult symmetry_suite(std::mt19937_64& rng, bool inject) {
  Suite s("symmetry");
  for (const auto& c : family_catalog()) {
    std::uniform_real_distribution<double> pick(c.range.lo, c.range.hi);
    for (int k = 0; k < 100; ++k) {
      CurvatureTensor t = assemble(c.family, pick(rng));
      if (inject && k == 0) t.ambient.raw(0, 1, 1, 0) += 1e-3;
      s.check(t.ambient.symmetry_defect(), kSymmetryTolerance);
    }
  }
  return s.result();
}

SuiteResult oracle_suite() {
  Suite s("oracles");
  // Constant curvature -1 for cusps, frame and dense.
  for (int m = 1; m <= 3; ++m) {
    const MetricFamily f = cusp({m});
    for (double r = -10.0; r <= 10.0; r += 2.5) {
      const ScanResult sc = dense_scan(assemble(f, r), 500);
      s.check(std::max(std::abs(sc.min.value + 1.0), std::abs(sc.max.value + 1.0)), 1e-8);
    }
  }
  // Heisenberg frame, unit warps: Milnor's closed forms -3 l^2/4 and l^2/4.
  for (double lambda : {0.5, 1.0, 2.0}) {
    const FrameSpec f = FrameSpec::heisenberg(lambda);
    const std::vector<Jet2d> ones(3, Jet2d::constant(1.0));
    const RiemannTensord R = koszul_curvature(3, scaled_bracket_coeffs(f, ones));
    const double l2 = lambda * lambda;
    s.check(std::abs(R.frame_sectional(0, 1) + 0.75 * l2), 1e-12);
    s.check(std::abs(R.frame_sectional(0, 2) - 0.25 * l2), 1e-12);
    s.check(std::abs(R.frame_sectional(1, 2) - 0.25 * l2), 1e-12);
  }
  // Infranil unmodified region: frame constants -4 on planes touching Z radially or by X_i, else -1.
  const InfranilParams in;
  const MetricFamily inf = infranil(in);
  for (double r = in.c; r <= in.t1; r += 0.25) {
    const CurvatureTensor t = assemble(inf, r);
    for (const auto& e : frame_plane_table(t)) {
      const bool steep = (e.a == 0 && e.b == 3) || (e.a == 1 && e.b == 2);
      s.check(std::abs(e.curvature - (steep ? -4.0 : -1.0)), 1e-8);
    }
  }
  // Cylindrical type-(K) identities.
  const TypeKParams tk;
  for (int k = 1; k <= 100; ++k) {
    const double r = 0.05 * k;
    const TypeKComponents c = type_k_components(tk, r);
    s.check(std::abs(c.k_y2y1 + 0.25), 1e-9);
    s.check(std::abs(c.k_y3y2 + 1.0), 1e-9);
    s.check(std::abs(c.k_ry1 + 1.0), 1e-9);
  }
  return s.result();
}

SuiteResult gauss_suite(std::mt19937_64& rng) {
  Suite s("gauss");
  std::normal_distribution<double> normal;
  for (const auto& c : family_catalog()) {
    std::uniform_real_distribution<double> pick(c.range.lo, c.range.hi);
    const int n = c.family.fiber_dim();
    for (int k = 0; k < 20; ++k) {
      const double r = pick(rng);
      const CurvatureTensor t = assemble(c.family, r);
      const SecondForm ii = second_form(c.family, r);
      Eigen::VectorXd x(n), y(n);
      for (int i = 0; i < n; ++i) x(i) = normal(rng);
      for (int i = 0; i < n; ++i) y(i) = normal(rng);
      const double scale = std::max(1.0, std::abs(curvature_form(t.ambient, x, y)));
      s.check(gauss_fiber_slice(t, ii, x, y) / scale, 1e-9);
    }
  }
  return s.result();
}

TypeKPlane random_type_k_plane(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Vector2d d(normal(rng), normal(rng));
  d.normalize();
  Eigen::Vector4d c(normal(rng), normal(rng), normal(rng), normal(rng));
  const Eigen::Vector4d dd(0.0, d(0), d(1), 0.0);
  c -= c.dot(dd) * dd;
  c.normalize();
  return {c(0), c(1), c(2), c(3), d(0), d(1)};
}

FiberSplit random_split(std::mt19937_64& rng, int n1, int n2) {
  std::normal_distribution<double> normal;
  FiberSplit out{Eigen::VectorXd(n1), Eigen::VectorXd(n2)};
  for (int i = 0; i < n1; ++i) out.left(i) = normal(rng);
  for (int i = 0; i < n2; ++i) out.right(i) = normal(rng);
  return out;
}

SuiteResult defect_suite(std::mt19937_64& rng) {
  Suite s("defects");
  const TypeKParams tk;
  std::uniform_real_distribution<double> pick_r(tk.t0, tk.t2 + 10.0);
  for (int k = 0; k < 500; ++k) {
    const double d = type_k_defect(tk, pick_r(rng), random_type_k_plane(rng));
    s.check(std::max(d, 0.0), 1e-12);
  }
  const std::vector<std::pair<MetricFamily, MetricFamily>> pairs = {
      {cusp({1}), cusp({1})}, {type_k(tk), cusp({1})}, {type_k(tk), npc_base({})}};
  for (const auto& [a, b] : pairs) {
    const double lo = std::max(a.domain_lo, b.domain_lo) > -1e300 ? std::max(a.domain_lo, b.domain_lo) : -10.0;
    std::uniform_real_distribution<double> pick(lo, tk.t2 + 10.0);
    for (int k = 0; k < 100; ++k) {
      const ProductDefect pd = product_defect(a, b, pick(rng), random_split(rng, a.fiber_dim(), b.fiber_dim()),
                                              random_split(rng, a.fiber_dim(), b.fiber_dim()));
      const double scale = std::max(1.0, std::abs(pd.direct));
      s.check(std::max(pd.t_matrix - pd.bound, 0.0), 1e-12 * scale);
      s.check(std::abs(pd.t_matrix - pd.direct) / scale, 1e-9);
    }
  }
  return s.result();
}

SuiteResult formula_suite(std::mt19937_64& rng) {
  Suite s("formula");
  const TypeKParams tk;
  const MetricFamily f = type_k(tk);
  std::uniform_real_distribution<double> pick_r(tk.t0, tk.t2 + 10.0);
  for (int k = 0; k < 500; ++k) {
    const double r = pick_r(rng);
    const TypeKPlane p = random_type_k_plane(rng);
    const double generic = sectional(assemble(f, r), p.c(), p.d());
    s.check(std::abs(type_k_expansion(type_k_components(tk, r), p) - generic), 1e-9);
  }
  return s.result();
}

}  // namespace

std::vector<SuiteResult> selfcheck(const SelfcheckOptions& options) {
  std::mt19937_64 rng(mix_seed(options.seed, 0));
  std::vector<SuiteResult> out;
  out.push_back(jets_suite(rng));
  out.push_back(symmetry_suite(rng, options.inject_asymmetry));
  out.push_back(oracle_suite());
  out.push_back(gauss_suite(rng));
  out.push_back(defect_suite(rng));
  out.push_back(formula_suite(rng));
  return out;
}

bool print_selfcheck(std::ostream& os, const std::vector<SuiteResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %s  %ld/%ld  worst %.3e\n", r.name.c_str(), r.ok() ? "PASS" : "FAIL",
                  r.passed, r.total, r.worst);
    os << buf;
    all = all && r.ok();
  }
  os << (all ? "selfcheck: all suites passed\n" : "selfcheck: FAILED\n");
  return all;
}

}  // namespace negcurv
