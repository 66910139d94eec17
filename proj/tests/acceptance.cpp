// Acceptance suite: one PASS/FAIL line per criterion, every tolerance pinned below.
//
// usage: acceptance [path-to-negcurv-cli] [work-dir]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "negcurv/certify.hpp"
#include "negcurv/config.hpp"
#include "negcurv/grassmann.hpp"
#include "negcurv/models.hpp"
#include "negcurv/report.hpp"
#include "negcurv/selfcheck.hpp"
#include "negcurv/volume.hpp"

using namespace negcurv;

namespace {

// Pinned tolerances.
constexpr double kConstantCurvatureTol = 1e-8;
constexpr double kCylinderTol = 1e-9;
constexpr double kPinchingTol = 5e-3;
constexpr double kSlopeBound = 0.01;
constexpr double kDefectTol = 1e-12;
constexpr double kFormulaTol = 1e-9;
constexpr double kGaussTol = 1e-9;
constexpr double kFrameConstantTol = 1e-8;
constexpr double kInfranilMargin = 0.2;
constexpr double kVolumeTol = 1e-6;
constexpr double kJetTol = 1e-6;
constexpr double kJetStep = 1e-5;
constexpr double kBianchiTol = 1e-9;

constexpr int kDensePlanes = 10000;
constexpr int kProductRadii = 20;
constexpr int kProductPlanes = 1000;

std::string cli_path;
std::filesystem::path work_dir = std::filesystem::temp_directory_path();

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Eigen::VectorXd random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
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

RunConfig run_config(const std::string& text) { return make_run_config(parse_config(text)); }

// 1. cusp(m): every sampled K is -1.
Verdict constant_curvature_oracle() {
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const MetricFamily f = cusp({m});
    const PlaneSet planes(f.dim(), kDensePlanes);
    for (int k = 0; k <= 40; ++k) {
      const ScanResult s = dense_scan(assemble(f, -10.0 + 0.5 * k), planes);
      worst = std::max({worst, std::abs(s.min.value + 1.0), std::abs(s.max.value + 1.0)});
    }
  }
  return {worst <= kConstantCurvatureTol, "max |K + 1| = " + sci(worst) + " (tol " + sci(kConstantCurvatureTol) + ")"};
}

// 2. Cylindrical type-(K) identities, generic tensor against the closed-form list.
Verdict cylindrical_identities() {
  const TypeKParams p;
  const MetricFamily f = type_k(p);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double r = p.epsilon + k * (5.0 - p.epsilon) / 999.0;
    const RiemannTensord R = assemble(f, r).ambient;
    // v = sinh r, h = cosh(r/2): v'/v = coth r, h'/h = tanh(r/2)/2.
    const double s = std::sinh(r) / std::pow(std::cosh(0.5 * r), 2);
    const double mixed = -p.c23 * s * (1.0 / std::tanh(r) - 0.5 * std::tanh(0.5 * r));
    const double expected[][3] = {
        {0, 1, -1.0},   // K(dr, Y1) = -v''/v
        {0, 2, -0.25},  // K(dr, Y2) = -h''/h
        {0, 3, -0.25},  // K(dr, Y3)
        {1, 2, -0.25},  // K(Y2, Y1)
        {1, 3, -0.25},  // K(Y3, Y1)
        {2, 3, -1.0},   // K(Y3, Y2) at |c23| = 1/2
    };
    for (const auto& e : expected)
      worst = std::max(worst, std::abs(R.frame_sectional(int(e[0]), int(e[1])) - e[2]));
    worst = std::max(worst, std::abs(R(0, 1, 2, 3) - mixed));
    const TypeKComponents c = type_k_components(p, r);
    worst = std::max({worst, std::abs(c.k_y2y1 + 0.25), std::abs(c.k_y3y2 + 1.0), std::abs(c.k_ry1 + 1.0)});
  }
  return {worst <= kCylinderTol, "1000 radii in [0.1, 5], max deviation " + sci(worst) + " (tol " + sci(kCylinderTol) + ")"};
}

// 3. Complex hyperbolic pinching on the cylindrical region.
Verdict ch_pinching() {
  const MetricFamily f = type_k({});
  const PlaneSet planes(f.dim(), kDensePlanes);
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0, 5.0}) {
    const ScanResult s = dense_scan(assemble(f, r), planes);
    worst = std::max({worst, std::abs(s.min.value + 1.0), std::abs(s.max.value + 0.25)});
  }
  return {worst <= kPinchingTol, "dense [min, max] vs [-1, -1/4] at r in {0.5,1,2,5}: max gap " + sci(worst) +
                                     " (tol " + sci(kPinchingTol) + ")"};
}

// 4. Modified type-(K) metric: sign, defect and formula agreement.
Verdict type_k_modified() {
  const TypeKParams p;
  const double slope = Transition(0.5, 1.0, p.t1, p.t2).max_slope();
  const CertificationReport rep = certify(run_config("model = type_k\nr_step = 0.1\nplanes_per_r = 10000\n"), 4);

  std::mt19937_64 rng(mix_seed(0, 4));
  std::uniform_real_distribution<double> pick(p.t0, p.t2 + 10.0);
  double defect = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10000; ++k) defect = std::max(defect, type_k_defect(p, pick(rng), random_type_k_plane(rng)));

  const MetricFamily f = type_k(p);
  double formula = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double r = pick(rng);
    const TypeKPlane plane = random_type_k_plane(rng);
    formula = std::max(formula, std::abs(type_k_expansion(type_k_components(p, r), plane) -
                                         sectional(assemble(f, r), plane.c(), plane.d())));
  }
  const bool ok = slope <= kSlopeBound && rep.sign_certificate && rep.records.size() == 1121 && defect <= kDefectTol &&
                  formula <= kFormulaTol;
  return {ok, "max|Q'| = " + sci(slope) + ", K_max = " + sci(rep.k_sup) + " over " +
                  std::to_string(rep.records.size()) + " radii, max defect " + sci(defect) + ", formula gap " +
                  sci(formula)};
}

// 5. Products: defect sign, sampled K < 0, Gauss cross-check.
Verdict product_curvature() {
  struct Case {
    MetricFamily left, right;
    RadiusRange range;
  };
  const TypeKParams tk;
  const RadiusRange tk_range{tk.epsilon, tk.t2 + 10.0};
  const std::vector<Case> cases = {{cusp({2}), cusp({1}), {-10.0, 10.0}},
                                   {type_k(tk), cusp({1}), tk_range},
                                   {type_k(tk), npc_base({}), tk_range}};
  std::mt19937_64 rng(mix_seed(0, 5));
  double defect = -std::numeric_limits<double>::infinity(), agreement = 0.0, kmax = -1e300, gauss = 0.0;
  for (const auto& c : cases) {
    const int n1 = c.left.fiber_dim(), n2 = c.right.fiber_dim();
    std::uniform_real_distribution<double> pick(c.range.lo, c.range.hi);
    for (int k = 0; k < 1000; ++k) {
      const FiberSplit C{random_vector(rng, n1), random_vector(rng, n2)};
      const FiberSplit D{random_vector(rng, n1), random_vector(rng, n2)};
      const ProductDefect pd = product_defect(c.left, c.right, pick(rng), C, D);
      defect = std::max(defect, pd.t_matrix);
      agreement = std::max(agreement, std::abs(pd.t_matrix - pd.direct) / std::max(1.0, std::abs(pd.direct)));
    }
    const MetricFamily f = product(c.left, c.right);
    const PlaneSet planes(f.dim(), kProductPlanes);
    for (int k = 0; k < kProductRadii; ++k) {
      const double r = c.range.lo + k * (c.range.hi - c.range.lo) / (kProductRadii - 1);
      const CurvatureTensor t = assemble(f, r);
      const Eigen::MatrixXd M = curvature_operator(t.ambient);
      kmax = std::max(kmax, (M * planes.bivectors()).cwiseProduct(planes.bivectors()).colwise().sum().maxCoeff());
      const SecondForm ii = second_form(f, r);
      for (int j = 0; j < 10; ++j) {
        const Eigen::VectorXd x = random_vector(rng, n1 + n2), y = random_vector(rng, n1 + n2);
        gauss = std::max(gauss, gauss_fiber_slice(t, ii, x, y) / std::max(1.0, std::abs(curvature_form(t.ambient, x, y))));
      }
    }
  }
  const bool ok = defect <= kDefectTol && agreement <= kFormulaTol && kmax < 0.0 && gauss <= kGaussTol;
  return {ok, "max defect " + sci(defect) + " (direct vs T-matrix " + sci(agreement) + "), sampled K_max " + sci(kmax) +
                  ", Gauss gap " + sci(gauss)};
}

// 6. Infranil stand-in.
Verdict infranil_transition() {
  const InfranilParams p;
  const MetricFamily f = infranil(p);
  double frame = 0.0;
  for (double r = p.c; r <= p.t1; r += 0.01) {
    for (const auto& e : frame_plane_table(assemble(f, r))) {
      const bool steep = (e.a == 0 && e.b == 3) || (e.a == 1 && e.b == 2);
      frame = std::max(frame, std::abs(e.curvature - (steep ? -4.0 : -1.0)));
    }
  }
  const double slope = Transition(p.k, 1.0, p.t1, p.t2).max_slope();
  const CertificationReport rep = certify(run_config("model = infranil\nr_step = 0.1\nplanes_per_r = 10000\n"), 4);
  const double floor = -std::pow(p.k + kInfranilMargin, 2);
  const bool ok = frame <= kFrameConstantTol && slope <= kSlopeBound && rep.sign_certificate && rep.k_inf >= floor &&
                  rep.form.applicable && rep.form.holds;
  return {ok, "frame constants gap " + sci(frame) + ", max|Q'| = " + sci(slope) + ", K in [" + sci(rep.k_inf) + ", " +
                  sci(rep.k_sup) + "] on [" + sci(rep.config.r_min) + ", " + sci(rep.config.r_max) +
                  "], h e^-r drift " + sci(rep.form.max_relative_deviation)};
}

// 7. End volumes.
Verdict volumes() {
  double worst = 0.0;
  bool finite = true;
  for (int m = 1; m <= 3; ++m) {
    const VolumeVerdict v = end_volume(cusp({m}));
    finite = finite && v.finite();
    worst = std::max(worst, std::abs(v.value * m - 1.0));
  }
  const VolumeVerdict npc = end_volume(npc_base({}));
  const VolumeVerdict prod = end_volume(product(cusp({1}), npc_base({})));
  // Density e^r (e^r + 1)^2 / 4 on r <= 0 integrates to (1/3 + 1 + 1) / 4.
  const double prod_err = std::abs(prod.value - 7.0 / 12.0) / (7.0 / 12.0);
  const bool ok = finite && worst <= kVolumeTol && npc.status == VolumeStatus::divergent && prod.finite() &&
                  prod_err <= kVolumeTol;
  return {ok, "cusp rel. err " + sci(worst) + ", npc_base " + to_string(npc.status) + ", cusp(1) x npc_base " +
                  to_string(prod.status) + " (rel. err vs 7/12 " + sci(prod_err) + ")"};
}

// 8. Jets against central differences.
Verdict jets() {
  std::mt19937_64 rng(mix_seed(0, 8));
  double worst = 0.0;
  std::string worst_name;
  const auto catalog = warp_catalog();
  for (const auto& c : catalog) {
    std::uniform_real_distribution<double> pick(c.range.lo + 1e-3, c.range.hi - 1e-3);
    for (int k = 0; k < 1000; ++k) {
      const double r = pick(rng);
      const Jet2d j = c.warp(r), lo = c.warp(r - kJetStep), hi = c.warp(r + kJetStep);
      const double step = (r + kJetStep) - (r - kJetStep);
      const double scale = std::max({std::abs(j.value), std::abs(j.d1), std::abs(j.d2)});
      const double e = std::max(std::abs((hi.value - lo.value) / step - j.d1),
                                std::abs((hi.d1 - lo.d1) / step - j.d2)) / scale;
      if (e > worst) {
        worst = e;
        worst_name = c.name;
      }
    }
  }
  return {worst <= kJetTol, std::to_string(catalog.size()) + " variants x 1000 samples, max rel. err " + sci(worst) +
                                " (" + worst_name + ", tol " + sci(kJetTol) + ")"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 9. Byte-identical reports.
Verdict determinism() {
  const std::string text =
      "model = product\nproduct.left = type_k\nproduct.right = npc_base\nleft.T2 = 40\n"
      "r_min = 6\nr_max = 50\nr_step = 4\noptimizer.starts = 4\n";
  const RunConfig c = run_config(text);
  const bool in_process = report_json(certify(c, 1)) == report_json(certify(c, 3));
  if (cli_path.empty()) return {in_process, "in-process only (no CLI path given)"};

  const auto cfg = work_dir / "acceptance_determinism.cfg";
  std::ofstream(cfg) << text;
  std::vector<std::string> reports;
  for (const char* jobs : {"1", "1", "4"}) {
    const auto out = work_dir / ("acceptance_det_" + std::to_string(reports.size()) + ".json");
    const std::string cmd = "\"" + cli_path + "\" certify --config \"" + cfg.string() + "\" --seed 5 --jobs " + jobs +
                            " --out \"" + out.string() + "\" 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "certify run failed: " + cmd};
    reports.push_back(slurp(out));
  }
  const bool ok = in_process && !reports[0].empty() && reports[0] == reports[1] && reports[0] == reports[2];
  return {ok, "two CLI runs (and a 4-job run) " + std::string(ok ? "byte-identical" : "differ") + ", " +
                  std::to_string(reports[0].size()) + " bytes"};
}

// 10. Symmetries and first Bianchi for every shipped family.
Verdict symmetries() {
  std::mt19937_64 rng(mix_seed(0, 10));
  double worst = 0.0;
  const auto catalog = family_catalog();
  for (const auto& c : catalog) {
    std::uniform_real_distribution<double> pick(c.range.lo, c.range.hi);
    for (int k = 0; k < 1000; ++k) worst = std::max(worst, assemble(c.family, pick(rng)).ambient.symmetry_defect());
  }
  return {worst <= kBianchiTol, std::to_string(catalog.size()) + " families x 1000 radii, max defect " + sci(worst) +
                                    " (tol " + sci(kBianchiTol) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  if (argc > 2) work_dir = argv[2];

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"constant-curvature oracle", constant_curvature_oracle},
      {"cylindrical type-(K) identities", cylindrical_identities},
      {"complex hyperbolic pinching", ch_pinching},
      {"modified type-(K) metric", type_k_modified},
      {"product curvature", product_curvature},
      {"infranil transition", infranil_transition},
      {"end volumes", volumes},
      {"jets vs finite differences", jets},
      {"determinism", determinism},
      {"symmetry and Bianchi", symmetries},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
