#include "negcurv/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace negcurv {

namespace {

/// Explicit fiber table of the type-(K) frame {Y1 (circle), Y2, Y3}; warps are (v, h, h).
class TypeKFiber final : public FiberCurvature {
 public:
  explicit TypeKFiber(double c23) : c23_(c23) {}
  int dim() const override { return 3; }
  RiemannTensord evaluate(double, std::span<const Jet2d> warps) const override {
    const double v = warps[0].value;
    const double h = warps[1].value;
    const double s = v / (h * h);
    const double c2 = c23_ * c23_;
    RiemannTensord R(3);
    R.set(1, 0, 0, 1, s * s / 16.0);
    R.set(2, 0, 0, 2, s * s / 16.0);
    R.set(2, 1, 1, 2, -1.0 / (4.0 * h * h) - 3.0 * c2 / (h * h) - 3.0 * c2 * s * s / 4.0);
    return R;
  }
  std::string name() const override { return "type-k table"; }

 private:
  double c23_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ModelError(what);
}

void validate_type_k(const TypeKParams& p) {
  require(p.epsilon > 0.0, "type_k: epsilon must be > 0");
  require(p.fade > 0.0, "type_k: fade width must be > 0");
  require(p.epsilon < p.t0 - p.fade, "type_k: need epsilon < T0 - fade");
  require(p.t0 < p.t1 && p.t1 < p.t2, "type_k: need T0 < T1 < T2");
  require(std::abs(p.c23) <= 0.5, "type_k: need |c23| <= 1/2");
}

FrameSpec type_k_frame(double c23) {
  FrameSpec f(3, std::vector<double>(27, 0.0), {"Y1", "Y2", "Y3"});
  f.set_bracket(1, 2, 0, c23);
  return f;
}

}  // namespace

MetricFamily cusp(const CuspParams& p) {
  require(p.dim >= 1, "cusp: dimension must be >= 1");
  MetricFamily m;
  m.name = "cusp";
  m.frame = FrameSpec::abelian(p.dim);
  m.warps.assign(static_cast<std::size_t>(p.dim), exp_warp());
  m.fiber = flat_fiber(p.dim);
  m.exponential_from = 0.0;
  m.parameters = {{"dim", static_cast<double>(p.dim)}};
  return m;
}

MetricFamily npc_base(const NpcBaseParams& p) {
  require(p.curvature <= 0.0, "npc_base: base curvature K_B must be <= 0");
  require(p.dim >= 2, "npc_base: dimension must be >= 2");
  MetricFamily m;
  m.name = "npc_base";
  m.frame = FrameSpec::abelian(p.dim);
  m.warps.assign(static_cast<std::size_t>(p.dim), npc_smoothed_warp(p.tau, p.r_tau));
  m.fiber = constant_curvature_fiber(p.dim, p.curvature);
  m.exponential_from = p.r_tau;
  m.parameters = {{"curvature", p.curvature}, {"tau", p.tau}, {"r_tau", p.r_tau}, {"dim", static_cast<double>(p.dim)}};
  return m;
}

MetricFamily infranil(const InfranilParams& p) {
  require(p.k == 2, "infranil: only nilpotence degree k = 2 (Heisenberg frame) is modeled");
  require(p.c > 0.0, "infranil: need c > 0");
  require(p.c < p.t1 && p.t1 < p.t2, "infranil: need c < T1 < T2");
  require(p.prefactors.size() == 3, "infranil: three prefactors required");
  for (double a : p.prefactors) require(a > 0.0, "infranil: prefactors must be > 0");

  const double k = p.k;
  const IntegratedTransition q(Transition(k, 1.0, p.t1, p.t2), p.c, k * p.c);
  MetricFamily m;
  m.name = "infranil";
  m.frame = FrameSpec(3, std::vector<double>(27, 0.0), {"X1", "X2", "Z"});
  m.frame.set_bracket(0, 1, 2, 1.0);
  m.warps = {exp_warp(p.prefactors[0]), exp_warp(p.prefactors[1]),
             warp::TransitionExponential{p.prefactors[2], 1.0, q}};
  m.fiber = koszul_fiber(m.frame);
  m.exponential_from = p.t2;
  m.parameters = {{"k", k},
                  {"c", p.c},
                  {"T1", p.t1},
                  {"T2", p.t2},
                  {"a1", p.prefactors[0]},
                  {"a2", p.prefactors[1]},
                  {"a3", p.prefactors[2]},
                  // Past T2, q = r + this constant; recorded rather than assumed.
                  {"q_minus_r_past_T2", q(p.t2).value - p.t2}};
  return m;
}

MetricFamily type_k(const TypeKParams& p) {
  validate_type_k(p);
  const Transition fade(1.0, 0.0, p.t0 - p.fade, p.t0);
  const IntegratedTransition q(Transition(0.5, 1.0, p.t1, p.t2), p.t0, 0.5 * p.t0);
  const WarpSpec v = warp::FadedTail{warp::Exponential{0.5, 1.0, 0.0}, -0.5, -1.0, fade};
  const WarpSpec h = warp::FadedTail{warp::TransitionExponential{0.5, 1.0, q}, 0.5, -0.5, fade};

  MetricFamily m;
  m.name = "type_k";
  m.frame = type_k_frame(p.c23);
  m.warps = {v, h, h};
  m.fiber = std::make_shared<TypeKFiber>(p.c23);
  m.domain_lo = p.epsilon;
  m.exponential_from = p.t2;
  m.parameters = {{"epsilon", p.epsilon}, {"T0", p.t0}, {"T1", p.t1},
                  {"T2", p.t2},           {"c23", p.c23}, {"fade", p.fade}};
  return m;
}

MetricFamily type_k_cylindrical(const TypeKParams& p) {
  require(p.epsilon > 0.0, "type_k: epsilon must be > 0");
  require(std::abs(p.c23) <= 0.5, "type_k: need |c23| <= 1/2");
  MetricFamily m;
  m.name = "type_k_cylindrical";
  m.frame = type_k_frame(p.c23);
  m.warps = {warp::Sinh{}, warp::CoshHalf{}, warp::CoshHalf{}};
  m.fiber = std::make_shared<TypeKFiber>(p.c23);
  m.domain_lo = p.epsilon;
  m.parameters = {{"epsilon", p.epsilon}, {"c23", p.c23}};
  return m;
}

MetricFamily product(const MetricFamily& left, const MetricFamily& right) {
  left.validate();
  right.validate();
  MetricFamily m;
  m.name = left.name + " x " + right.name;
  m.frame = FrameSpec::block(left.frame, right.frame);
  m.warps = left.warps;
  m.warps.insert(m.warps.end(), right.warps.begin(), right.warps.end());
  m.fiber = product_fiber(left.fiber, right.fiber);
  m.domain_lo = std::max(left.domain_lo, right.domain_lo);
  if (left.exponential_from && right.exponential_from)
    m.exponential_from = std::max(*left.exponential_from, *right.exponential_from);
  for (const auto& [k, v] : left.parameters) m.parameters.emplace_back("left." + k, v);
  for (const auto& [k, v] : right.parameters) m.parameters.emplace_back("right." + k, v);
  return m;
}

MetricFamily build_family(const ModelParams& p) {
  struct Builder {
    MetricFamily operator()(const CuspParams& q) const { return cusp(q); }
    MetricFamily operator()(const NpcBaseParams& q) const { return npc_base(q); }
    MetricFamily operator()(const InfranilParams& q) const { return infranil(q); }
    MetricFamily operator()(const TypeKParams& q) const { return type_k(q); }
    MetricFamily operator()(const ProductParams& q) const {
      require(q.factors.size() == 2, "product: exactly two factors required");
      return product(build_family(q.factors[0]), build_family(q.factors[1]));
    }
  };
  MetricFamily m = std::visit(Builder{}, p);
  m.validate();
  return m;
}

RadiusRange default_range(const ModelParams& p) {
  struct Ranger {
    RadiusRange operator()(const CuspParams&) const { return {-10.0, 10.0}; }
    RadiusRange operator()(const NpcBaseParams&) const { return {-20.0, 5.0}; }
    RadiusRange operator()(const InfranilParams& q) const { return {q.c, q.t2 + 10.0}; }
    RadiusRange operator()(const TypeKParams& q) const { return {q.t0, q.t2 + 10.0}; }
    RadiusRange operator()(const ProductParams& q) const {
      require(q.factors.size() == 2, "product: exactly two factors required");
      const RadiusRange a = default_range(q.factors[0]);
      const RadiusRange b = default_range(q.factors[1]);
      return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
  };
  return std::visit(Ranger{}, p);
}

double npc_plane_curvature(const NpcBaseParams& p, double r, double c, double d) {
  const Jet2d h = npc_smoothed_warp(p.tau, p.r_tau)(r);
  const double rate = h.d1 / h.value;
  return c * c * (p.curvature / (h.value * h.value) - rate * rate) - d * d * h.d2 / h.value;
}

InfranilPattern infranil_pattern(const InfranilParams& p, double r) {
  const Jet2d q = Transition(p.k, 1.0, p.t1, p.t2)(r);
  InfranilPattern out;
  out.q = q.value;
  out.q_slope = q.d1;
  out.window_lo = -std::max(q.value * q.value, q.d1 + q.value * q.value);
  out.window_hi = -1.0;
  return out;
}

TypeKComponents type_k_components(const TypeKParams& p, double r) {
  const MetricFamily m = type_k(p);
  const Jet2d v = m.warps[0](r);
  const Jet2d h = m.warps[1](r);
  const double c2 = p.c23 * p.c23;
  const double vrate = v.d1 / v.value;
  const double hrate = h.d1 / h.value;
  TypeKComponents k;
  k.r = r;
  k.s = v.value / (h.value * h.value);
  k.k_y2y1 = k.s * k.s / 16.0 - vrate * hrate;
  k.k_y3y1 = k.k_y2y1;
  k.k_y3y2 = -1.0 / (4.0 * h.value * h.value) - 3.0 * c2 / (h.value * h.value) - 3.0 * c2 * k.s * k.s / 4.0 -
             hrate * hrate;
  k.k_ry1 = -v.d2 / v.value;
  k.k_ry2 = -h.d2 / h.value;
  k.k_ry3 = k.k_ry2;
  k.r_ry1y2y3 = -p.c23 * k.s * (vrate - hrate);
  k.q_rate = hrate;
  return k;
}

void TypeKPlane::require_orthonormal() const {
  const double cc = c().squaredNorm();
  const double dd = d().squaredNorm();
  const double cd = c().dot(d());
  if (std::abs(cc - 1.0) > 1e-9 || std::abs(dd - 1.0) > 1e-9 || std::abs(cd) > 1e-9)
    throw std::invalid_argument("type-(K) plane coefficients are not orthonormal");
}

double type_k_expansion(const TypeKComponents& k, const TypeKPlane& p) {
  const double cross = p.d1 * p.c2 - p.d2 * p.c1;
  return cross * cross * k.k_y2y1 + p.d1 * p.d1 * p.c3 * p.c3 * k.k_y3y1 + p.d1 * p.d1 * p.c0 * p.c0 * k.k_ry1 +
         p.d2 * p.d2 * p.c0 * p.c0 * k.k_ry2 + p.d2 * p.d2 * p.c3 * p.c3 * k.k_y3y2 +
         3.0 * p.d1 * p.d2 * p.c0 * p.c3 * k.r_ry1y2y3;
}

double type_k_defect(const TypeKParams& p, double r, const TypeKPlane& plane) {
  plane.require_orthonormal();
  const TypeKComponents k = type_k_components(p, r);
  return plane.d1 * plane.d1 * plane.c0 * plane.c0 * k.k_ry1 + plane.d2 * plane.d2 * plane.c3 * plane.c3 * k.k_y3y2 +
         3.0 * plane.d1 * plane.d2 * plane.c0 * plane.c3 * k.r_ry1y2y3;
}

ProductDefect product_defect(const MetricFamily& left, const MetricFamily& right, double r, const FiberSplit& c,
                             const FiberSplit& d) {
  const int n1 = left.fiber_dim();
  const int n2 = right.fiber_dim();
  if (c.left.size() != n1 || d.left.size() != n1 || c.right.size() != n2 || d.right.size() != n2)
    throw std::invalid_argument("product_defect: split sizes do not match the factors");

  const MetricFamily joint = product(left, right);
  const CurvatureTensor t = assemble(joint, r);
  const int n = joint.dim();

  auto embed = [n, n1](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    x.segment(1, n1) = a;
    x.segment(1 + n1, b.size()) = b;
    return x;
  };
  const Eigen::VectorXd zero1 = Eigen::VectorXd::Zero(n1);
  const Eigen::VectorXd zero2 = Eigen::VectorXd::Zero(n2);
  const Eigen::VectorXd C = embed(c.left, c.right);
  const Eigen::VectorXd D = embed(d.left, d.right);
  const Eigen::VectorXd C1 = embed(c.left, zero2), D1 = embed(d.left, zero2);
  const Eigen::VectorXd C2 = embed(zero1, c.right), D2 = embed(zero1, d.right);

  ProductDefect out;
  out.direct = curvature_form(t.ambient, C, D) - curvature_form(t.ambient, C1, D1) - curvature_form(t.ambient, C2, D2);

  const auto h = joint.jets(r);
  Eigen::VectorXd T(n1 + n2);
  for (int i = 0; i < n1 + n2; ++i) {
    const Jet2d& j = h[static_cast<std::size_t>(i)];
    T(i) = std::sqrt(std::abs(j.d1) / j.value);
  }
  const Eigen::VectorXd tc1 = T.head(n1).cwiseProduct(c.left), td1 = T.head(n1).cwiseProduct(d.left);
  const Eigen::VectorXd tc2 = T.tail(n2).cwiseProduct(c.right), td2 = T.tail(n2).cwiseProduct(d.right);
  const double x1 = tc1.dot(td1), x2 = tc2.dot(td2);
  const double a1 = tc1.squaredNorm(), a2 = tc2.squaredNorm();
  const double b1 = td1.squaredNorm(), b2 = td2.squaredNorm();
  out.t_matrix = 2.0 * x1 * x2 - a1 * b2 - a2 * b1;
  const double gap = std::sqrt(a1 * b2) - std::sqrt(a2 * b1);
  out.bound = -gap * gap;
  return out;
}

std::string describe_models() {
  std::ostringstream os;
  const CuspParams cu;
  const NpcBaseParams np;
  const InfranilParams in;
  const TypeKParams tk;
  os << "cusp       flat torus fiber, h_i = e^r, K = -1\n"
     << "           cusp.dim = " << cu.dim << "\n"
     << "npc_base   constant curvature K_B <= 0 fiber, h = e^r + tau smoothed into e^r on [0, r_tau]\n"
     << "           npc_base.curvature = " << np.curvature << ", npc_base.tau = " << np.tau
     << ", npc_base.r_tau = " << np.r_tau << ", npc_base.dim = " << np.dim << "\n"
     << "infranil   Heisenberg frame, rates (1, 1, k) slowed to 1 by Q: k -> 1 on [T1, T2]\n"
     << "           infranil.k = " << in.k << ", infranil.c = " << in.c << ", infranil.T1 = " << in.t1
     << ", infranil.T2 = " << in.t2 << ", infranil.a1/a2/a3 = 0.5\n"
     << "type_k     circle bundle over CH^1: v = sinh r blended into e^r/2, h = cosh(r/2) into e^q/2\n"
     << "           on [T0 - fade, T0], with q' = Q: 1/2 -> 1 on [T1, T2]\n"
     << "           type_k.epsilon = " << tk.epsilon << ", type_k.T0 = " << tk.t0 << ", type_k.T1 = " << tk.t1
     << ", type_k.T2 = " << tk.t2 << ", type_k.c23 = " << tk.c23 << ", type_k.fade = " << tk.fade << "\n"
     << "product    block product of two families: product.left = <family>, product.right = <family>;\n"
     << "           factor parameters come from left.<key> / right.<key>, falling back to <family>.<key>\n";
  return os.str();
}

}  // namespace negcurv
