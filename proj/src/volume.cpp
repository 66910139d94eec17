#include "negcurv/volume.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace negcurv {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, estimate, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

struct TailFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

TailFit fit_log_density(const MetricFamily& family, double lo, double hi, int samples) {
  std::vector<double> xs, ys;
  for (int k = 0; k < samples; ++k) {
    const double r = lo + (hi - lo) * k / (samples - 1);
    double log_density = 0.0;
    for (const auto& w : family.warps) {
      const double h = w(r).value;
      if (!(h > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
      log_density += std::log(h);
    }
    xs.push_back(r);
    ys.push_back(log_density);
  }
  const double n = static_cast<double>(samples);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < samples; ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  TailFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  for (int k = 0; k < samples; ++k)
    fit.max_residual = std::max(fit.max_residual, std::abs(ys[k] - (fit.intercept + fit.slope * xs[k])));
  return fit;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol, double& error,
                          int max_intervals) {
  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod(f, a, b);
  double total = first.estimate;
  double total_error = first.error;
  panels.push(first);
  while (total_error > rel_tol * std::abs(total) && static_cast<int>(panels.size()) < max_intervals) {
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      panels.push(worst);
      break;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.estimate + right.estimate - worst.estimate;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum in a fixed order for reproducibility.
  total = 0.0;
  total_error = 0.0;
  std::vector<Panel> all;
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : all) {
    total += p.estimate;
    total_error += p.error;
  }
  error = total_error;
  return total;
}

VolumeVerdict end_volume(const MetricFamily& family, double r_hi) {
  VolumeVerdict verdict;
  if (std::isfinite(family.domain_lo)) {
    std::ostringstream os;
    os << "family is only defined for r >= " << family.domain_lo << "; no end on R_-";
    verdict.tail_bound = os.str();
    return verdict;
  }

  const TailFit far = fit_log_density(family, -40.0, -25.0, 16);
  const TailFit near = fit_log_density(family, -25.0, -10.0, 16);
  std::ostringstream os;
  os.precision(6);
  if (!std::isfinite(far.slope) || !std::isfinite(near.slope)) {
    verdict.tail_bound = "density not positive on the sampled tail";
    return verdict;
  }
  verdict.decay_rate = far.slope;
  if (far.slope < kMinDecayRate) {
    os << "density does not decay as r -> -inf (fitted exponent " << far.slope << " on [-40,-25] < " << kMinDecayRate
       << ")";
    verdict.status = VolumeStatus::divergent;
    verdict.tail_bound = os.str();
    return verdict;
  }
  const bool consistent = near.slope >= kMinDecayRate && std::abs(far.slope - near.slope) <= 0.1 * far.slope &&
                          far.max_residual <= 0.5 && near.max_residual <= 0.5;
  if (!consistent) {
    os << "tail is not exponential-type (fitted exponents " << far.slope << " on [-40,-25], " << near.slope
       << " on [-25,-10])";
    verdict.tail_bound = os.str();
    return verdict;
  }

  const double log_c = std::max(far.intercept + far.max_residual, near.intercept + near.max_residual);
  os << "density <= " << std::exp(log_c) << " * exp(" << std::min(far.slope, near.slope) << " r) for r <= -10";
  verdict.tail_bound = os.str();

  // Normalize so the fiber has volume 1 at r = 0.
  double fiber_at_zero = 1.0;
  for (const auto& w : family.warps) fiber_at_zero *= w(0.0).value;
  auto integrand = [&family, fiber_at_zero](double u) {
    if (u <= 0.0) return 0.0;
    const double r = std::log(u);
    double density = 1.0 / fiber_at_zero;
    for (const auto& w : family.warps) density *= w(r).value;
    return density / u;
  };
  double error = 0.0;
  const double value = integrate_adaptive(integrand, 0.0, std::exp(r_hi), 0.1 * kVolumeRelTolerance, error);
  verdict.value = value;
  verdict.relative_error = value != 0.0 ? error / std::abs(value) : 0.0;
  if (!(value > 0.0) || !(verdict.relative_error <= kVolumeRelTolerance)) {
    verdict.tail_bound += "; quadrature did not reach the requested accuracy";
    return verdict;
  }
  verdict.status = VolumeStatus::finite;
  return verdict;
}

bool monotone_volume_bound(const MetricFamily& family) {
  const double lo = std::max(-40.0, family.domain_lo);
  if (lo > 0.0) return false;
  constexpr int samples = 4000;
  for (int k = 0; k <= samples; ++k) {
    const double r = lo + (0.0 - lo) * k / samples;
    for (const auto& w : family.warps)
      if (w(r).d1 < 0.0) return false;
  }
  return true;
}

}  // namespace negcurv
