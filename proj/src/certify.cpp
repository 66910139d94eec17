#include "negcurv/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace negcurv {

ExponentialFormCheck exponential_form_check(const MetricFamily& family) {
  ExponentialFormCheck out;
  if (!family.exponential_from) return out;
  out.applicable = true;
  out.r_from = *family.exponential_from;
  const double r1 = out.r_from + 1.0;
  const double r5 = out.r_from + 5.0;
  for (const auto& w : family.warps) {
    const double a = w(r1).value * std::exp(-r1);
    const double b = w(r5).value * std::exp(-r5);
    out.max_relative_deviation = std::max(out.max_relative_deviation, std::abs(a - b) / std::abs(a));
  }
  out.holds = out.max_relative_deviation <= kFormTolerance;
  return out;
}

namespace {

RadiusRecord scan_radius(const CertificationReport& rep, const PlaneSet* planes, int index, double r) {
  const CurvatureTensor t = assemble(rep.family, r);
  RadiusRecord rec;
  rec.r = r;
  if (planes) {
    const ScanResult s = dense_scan(t, *planes);
    rec.min = s.min;
    rec.max = s.max;
  } else {
    const std::uint64_t stream = mix_seed(rep.config.seed, static_cast<std::uint64_t>(index));
    rec.min = multistart_extremize(t, ExtremumMode::min, rep.config.starts, mix_seed(stream, 0));
    rec.max = multistart_extremize(t, ExtremumMode::max, rep.config.starts, mix_seed(stream, 1));
  }
  if (!std::isfinite(rec.min.value) || !std::isfinite(rec.max.value))
    throw RangeError("sectional curvature is not finite", r);
  rec.second_form_negative_definite = second_form(rep.family, r).negative_definite();
  if (const auto* p = std::get_if<InfranilParams>(&rep.config.params)) {
    const InfranilPattern pat = infranil_pattern(*p, r);
    rec.pattern_error = std::max({0.0, pat.window_lo - rec.min.value, rec.max.value - pat.window_hi});
  }
  return rec;
}

}  // namespace

CertificationReport certify(const RunConfig& config, int jobs) {
  CertificationReport rep;
  rep.version = NEGCURV_VERSION;
  rep.config = config;
  rep.family = build_family(config.params);
  if (config.r_min < rep.family.domain_lo)
    throw ConfigError("r_min", "family '" + rep.family.name + "' is defined only for r >= " +
                                   std::to_string(rep.family.domain_lo));

  const int n = rep.family.dim();
  std::optional<PlaneSet> planes;
  if (n <= kDenseScanMaxDim) {
    planes.emplace(n, config.planes_per_r);
    rep.method = ScanMethod::dense;
  } else {
    rep.method = ScanMethod::multistart;
  }

  const int count = grid_size(config);
  rep.records.resize(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        rep.records[static_cast<std::size_t>(i)] =
            scan_radius(rep, planes ? &*planes : nullptr, i, grid_point(config, i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(jobs, 1, count);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  // Report the failure at the smallest radius, whatever the thread schedule.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  rep.k_inf = std::numeric_limits<double>::infinity();
  rep.k_sup = -std::numeric_limits<double>::infinity();
  rep.hypothesis_holds = true;
  for (const auto& rec : rep.records) {
    rep.k_inf = std::min(rep.k_inf, rec.min.value);
    rep.k_sup = std::max(rep.k_sup, rec.max.value);
    rep.hypothesis_holds = rep.hypothesis_holds && rec.second_form_negative_definite;
  }
  rep.sign_certificate = rep.k_sup < 0.0;
  rep.end_volume = end_volume(rep.family, config.volume_r_hi);
  rep.form = exponential_form_check(rep.family);
  return rep;
}

}  // namespace negcurv
