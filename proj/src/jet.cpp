#include "negcurv/jet.hpp"

#include <sstream>

namespace negcurv {

Transition::Transition(double a_left, double b_right, double t1, double t2)
    : a_(a_left), b_(b_right), t1_(t1), t2_(t2) {
  if (!(t2 > t1) || !std::isfinite(t1) || !std::isfinite(t2))
    throw ModelError("transition requires T2 > T1 (got T1=" + std::to_string(t1) +
                     ", T2=" + std::to_string(t2) + ")");
  if (!std::isfinite(a_left) || !std::isfinite(b_right))
    throw ModelError("transition plateau values must be finite");
}

Jet2d Transition::operator()(double r) const {
  if (r <= t1_) return Jet2d::constant(a_);
  if (r >= t2_) return Jet2d::constant(b_);
  const double len = width();
  const double t = (r - t1_) / len;
  const double jump = b_ - a_;
  return {a_ + jump * Smoothstep::value(t), jump * Smoothstep::d1(t) / len,
          jump * Smoothstep::d2(t) / (len * len)};
}

double Transition::max_slope() const { return Smoothstep::max_slope * std::abs(b_ - a_) / width(); }

double Transition::antiderivative(double r) const {
  const double len = width();
  if (r <= t1_) return a_ * (r - t1_);
  if (r >= t2_) return a_ * len + 0.5 * (b_ - a_) * len + b_ * (r - t2_);
  const double t = (r - t1_) / len;
  return a_ * (r - t1_) + (b_ - a_) * len * Smoothstep::integral(t);
}

IntegratedTransition::IntegratedTransition(Transition rate, double r0, double q0)
    : rate_(rate), r0_(r0), q0_(q0), offset_(q0 - rate.antiderivative(r0)) {}

Jet2d IntegratedTransition::operator()(double r) const {
  const Jet2d slope = rate_(r);
  return {offset_ + rate_.antiderivative(r), slope.value, slope.d1};
}

IntegratedTransition transition_integral(const Transition& t, double r0, double q0) {
  return IntegratedTransition(t, r0, q0);
}

namespace {

Jet2d eval_lead(const std::variant<warp::Exponential, warp::TransitionExponential>& lead, double r);

struct Evaluator {
  double r;

  Jet2d operator()(const warp::Exponential& w) const {
    return w.prefactor * exp(w.rate * Jet2d::variable(r) + w.offset);
  }
  Jet2d operator()(const warp::Sinh&) const { return sinh(Jet2d::variable(r)); }
  Jet2d operator()(const warp::CoshHalf&) const { return cosh(0.5 * Jet2d::variable(r)); }
  Jet2d operator()(const warp::ShiftedExponential& w) const {
    return w.prefactor * exp(Jet2d::variable(r)) + w.shift;
  }
  Jet2d operator()(const warp::TransitionExponential& w) const {
    return w.prefactor * exp(w.rate * w.exponent(r));
  }
  Jet2d operator()(const warp::Constant& w) const { return Jet2d::constant(w.value); }
  Jet2d operator()(const warp::SmoothedShiftedExponential& w) const {
    const Transition fade(1.0, 0.0, 0.0, w.band_end);
    return exp(Jet2d::variable(r)) + w.shift * fade(r);
  }
  Jet2d operator()(const warp::FadedTail& w) const {
    const Jet2d tail = w.tail_prefactor * exp(w.tail_rate * Jet2d::variable(r));
    return eval_lead(w.lead, r) + tail * w.fade(r);
  }
};

Jet2d eval_lead(const std::variant<warp::Exponential, warp::TransitionExponential>& lead, double r) {
  return std::visit([r](const auto& w) { return Evaluator{r}(w); }, lead);
}

struct Describer {
  std::ostringstream& os;
  void operator()(const warp::Exponential& w) const {
    os << w.prefactor << "*exp(" << w.rate << "*r+" << w.offset << ")";
  }
  void operator()(const warp::Sinh&) const { os << "sinh(r)"; }
  void operator()(const warp::CoshHalf&) const { os << "cosh(r/2)"; }
  void operator()(const warp::ShiftedExponential& w) const { os << w.prefactor << "*exp(r)+" << w.shift; }
  void operator()(const warp::TransitionExponential& w) const {
    const auto& q = w.exponent.rate();
    os << w.prefactor << "*exp(" << w.rate << "*q(r)), q'=Q[" << q.a_left() << "->" << q.b_right() << " on "
       << q.t1() << ".." << q.t2() << "]";
  }
  void operator()(const warp::Constant& w) const { os << w.value; }
  void operator()(const warp::SmoothedShiftedExponential& w) const {
    os << "exp(r)+" << w.shift << " smoothed on [0," << w.band_end << "]";
  }
  void operator()(const warp::FadedTail& w) const {
    std::visit(*this, w.lead);
    os << " + " << w.tail_prefactor << "*exp(" << w.tail_rate << "*r) faded on [" << w.fade.t1() << ","
       << w.fade.t2() << "]";
  }
};

}  // namespace

Jet2d WarpSpec::operator()(double r) const {
  const Jet2d j = std::visit(Evaluator{r}, v_);
  if (!j.finite()) {
    std::ostringstream os;
    os << "warp " << describe() << " is not finite at r=" << r;
    throw RangeError(os.str(), r);
  }
  return j;
}

std::string WarpSpec::describe() const {
  std::ostringstream os;
  std::visit(Describer{os}, v_);
  return os.str();
}

namespace {

bool smoothed_warp_feasible(double tau, double band_end) {
  const WarpSpec h = warp::SmoothedShiftedExponential{tau, band_end};
  constexpr int samples = 4000;
  for (int i = 0; i <= samples; ++i) {
    const double r = band_end * static_cast<double>(i) / samples;
    const Jet2d j = h(r);
    if (!(j.value > 0.0 && j.d1 > 0.0 && j.d2 > 0.0)) return false;
  }
  return true;
}

}  // namespace

WarpSpec npc_smoothed_warp(double tau, double band_end) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ModelError("npc warp needs tau > 0");
  if (!(band_end > 0.0) || !std::isfinite(band_end)) throw ModelError("npc warp needs r_tau > 0");
  if (smoothed_warp_feasible(tau, band_end)) return warp::SmoothedShiftedExponential{tau, band_end};

  double lo = band_end;
  double hi = 2.0 * band_end;
  while (!smoothed_warp_feasible(tau, hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) throw InfeasibleWarp("no feasible r_tau found below 1e4", hi);
  }
  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    (smoothed_warp_feasible(tau, mid) ? hi : lo) = mid;
  }
  std::ostringstream os;
  os << "r_tau=" << band_end << " too small for tau=" << tau << ": convex increasing blend needs r_tau >= " << hi;
  throw InfeasibleWarp(os.str(), hi);
}

}  // namespace negcurv
