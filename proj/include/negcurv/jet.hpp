#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

namespace negcurv {

/// Value of a scalar function of r together with its first two derivatives.
///
/// Arithmetic on jets applies the sum, product and chain rules exactly, so a
/// warp written as a composite expression of jets carries exact derivatives.
template <typename Scalar>
struct Jet2 {
  Scalar value{};
  Scalar d1{};
  Scalar d2{};

  static constexpr Jet2 constant(Scalar c) { return {c, Scalar(0), Scalar(0)}; }
  static constexpr Jet2 variable(Scalar r) { return {r, Scalar(1), Scalar(0)}; }

  bool finite() const { return std::isfinite(value) && std::isfinite(d1) && std::isfinite(d2); }
};

using Jet2d = Jet2<double>;

template <typename Scalar>
constexpr Jet2<Scalar> operator+(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}

template <typename Scalar>
constexpr Jet2<Scalar> operator-(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}

template <typename Scalar>
constexpr Jet2<Scalar> operator-(const Jet2<Scalar>& a) {
  return {-a.value, -a.d1, -a.d2};
}

template <typename Scalar>
constexpr Jet2<Scalar> operator+(const Jet2<Scalar>& a, Scalar c) {
  return {a.value + c, a.d1, a.d2};
}

template <typename Scalar>
constexpr Jet2<Scalar> operator*(Scalar c, const Jet2<Scalar>& a) {
  return {c * a.value, c * a.d1, c * a.d2};
}

template <typename Scalar>
constexpr Jet2<Scalar> operator*(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + Scalar(2) * a.d1 * b.d1 + a.value * b.d2};
}

/// f(u) given f, f', f'' evaluated at u.value.
template <typename Scalar>
constexpr Jet2<Scalar> compose(Scalar f, Scalar df, Scalar d2f, const Jet2<Scalar>& u) {
  return {f, df * u.d1, d2f * u.d1 * u.d1 + df * u.d2};
}

template <typename Scalar>
Jet2<Scalar> exp(const Jet2<Scalar>& u) {
  const Scalar e = std::exp(u.value);
  return compose(e, e, e, u);
}

template <typename Scalar>
Jet2<Scalar> log(const Jet2<Scalar>& u) {
  const Scalar inv = Scalar(1) / u.value;
  return compose(std::log(u.value), inv, -inv * inv, u);
}

template <typename Scalar>
Jet2<Scalar> sinh(const Jet2<Scalar>& u) {
  const Scalar s = std::sinh(u.value);
  const Scalar c = std::cosh(u.value);
  return compose(s, c, s, u);
}

template <typename Scalar>
Jet2<Scalar> cosh(const Jet2<Scalar>& u) {
  const Scalar s = std::sinh(u.value);
  const Scalar c = std::cosh(u.value);
  return compose(c, s, c, u);
}

template <typename Scalar>
Jet2<Scalar> reciprocal(const Jet2<Scalar>& u) {
  const Scalar inv = Scalar(1) / u.value;
  return compose(inv, -inv * inv, Scalar(2) * inv * inv * inv, u);
}

template <typename Scalar>
Jet2<Scalar> operator/(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  return a * reciprocal(b);
}

/// Evaluation produced a non-finite number (overflow at extreme r).
class RangeError : public std::range_error {
 public:
  RangeError(const std::string& what, double r) : std::range_error(what), r_(r) {}
  double r() const { return r_; }

 private:
  double r_;
};

/// A model or warp could not be constructed from its parameters.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quintic smoothstep s(t) = 6t^5 - 15t^4 + 10t^3 on [0, 1].
struct Smoothstep {
  static double value(double t) { return t * t * t * (t * (6.0 * t - 15.0) + 10.0); }
  static double d1(double t) { return 30.0 * t * t * (t - 1.0) * (t - 1.0); }
  static double d2(double t) { return 60.0 * t * (2.0 * t - 1.0) * (t - 1.0); }
  /// Antiderivative with S(0) = 0; S(1) = 1/2.
  static double integral(double t) { return t * t * t * t * (t * (t - 3.0) + 2.5); }
  static constexpr double max_slope = 15.0 / 8.0;
};

/// C^2 monotone interpolation between two plateau values.
///
/// Q(r) = a_left for r <= T1, b_right for r >= T2, and
/// a + (b - a) s((r - T1)/(T2 - T1)) in between.
class Transition {
 public:
  Transition(double a_left, double b_right, double t1, double t2);

  double a_left() const { return a_; }
  double b_right() const { return b_; }
  double t1() const { return t1_; }
  double t2() const { return t2_; }
  double width() const { return t2_ - t1_; }

  Jet2d operator()(double r) const;

  /// Largest |Q'| over the band: 15|b - a| / (8 (T2 - T1)).
  double max_slope() const;

  /// Antiderivative F with F(T1) = 0.
  double antiderivative(double r) const;

 private:
  double a_, b_, t1_, t2_;
};

/// q(r) = q0 + integral_{r0}^{r} Q, in closed form.
class IntegratedTransition {
 public:
  IntegratedTransition(Transition rate, double r0, double q0);

  const Transition& rate() const { return rate_; }
  double r0() const { return r0_; }
  double q0() const { return q0_; }

  /// Jet of q: (q, Q, Q').
  Jet2d operator()(double r) const;

 private:
  Transition rate_;
  double r0_, q0_, offset_;
};

namespace warp {

/// prefactor * exp(rate * r + offset)
struct Exponential {
  double prefactor = 1.0;
  double rate = 1.0;
  double offset = 0.0;
};

struct Sinh {};

/// cosh(r / 2)
struct CoshHalf {};

/// prefactor * e^r + shift
struct ShiftedExponential {
  double prefactor = 1.0;
  double shift = 0.0;
};

/// prefactor * exp(rate * q(r)) with q an integrated transition.
struct TransitionExponential {
  double prefactor = 1.0;
  double rate = 1.0;
  IntegratedTransition exponent;
};

struct Constant {
  double value = 1.0;
};

/// e^r + shift * (1 - w(r)), with w the quintic smoothstep on [0, band_end].
/// Equals e^r + shift for r <= 0 and e^r for r >= band_end.
struct SmoothedShiftedExponential {
  double shift = 1.0;
  double band_end = 4.0;
};

/// lead(r) + tail_prefactor * exp(tail_rate * r) * fade(r).
///
/// The fade goes from 1 to 0, so the tail is switched off in C^2 fashion.
/// sinh(r) = e^r/2 - e^{-r}/2 and cosh(r/2) = e^{r/2}/2 + e^{-r/2}/2 are
/// written this way to blend them into their leading exponentials.
struct FadedTail {
  std::variant<Exponential, TransitionExponential> lead;
  double tail_prefactor = 0.0;
  double tail_rate = 0.0;
  Transition fade;
};

}  // namespace warp

/// Symbolic description of one warping function h_i(r).
class WarpSpec {
 public:
  using Variant = std::variant<warp::Exponential, warp::Sinh, warp::CoshHalf, warp::ShiftedExponential,
                               warp::TransitionExponential, warp::Constant,
                               warp::SmoothedShiftedExponential, warp::FadedTail>;

  template <class W>
    requires std::is_constructible_v<Variant, W>
  WarpSpec(W w) : v_(std::move(w)) {}  // NOLINT(google-explicit-constructor)

  /// Closed-form jet; throws RangeError when the result is not finite.
  Jet2d operator()(double r) const;

  std::string describe() const;
  const Variant& variant() const { return v_; }

 private:
  Variant v_;
};

inline WarpSpec exp_warp(double prefactor = 1.0, double rate = 1.0, double offset = 0.0) {
  return warp::Exponential{prefactor, rate, offset};
}

/// Integrate a transition Q from (r0, q0): q(r0) = q0 and q' = Q.
IntegratedTransition transition_integral(const Transition& t, double r0, double q0);

/// Smoothed version of e^r + tau: equals e^r + tau for r < 0, e^r for
/// r >= band_end, with h' > 0 and h'' > 0 everywhere.
///
/// Throws InfeasibleWarp when the blend fails the convexity scan; the error
/// carries the smallest feasible band_end found by bisection.
WarpSpec npc_smoothed_warp(double tau, double band_end);

class InfeasibleWarp : public ModelError {
 public:
  InfeasibleWarp(const std::string& what, double minimal_feasible)
      : ModelError(what), minimal_feasible_(minimal_feasible) {}
  double minimal_feasible() const { return minimal_feasible_; }

 private:
  double minimal_feasible_;
};

}  // namespace negcurv
