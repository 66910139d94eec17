// negcurv: certify sectional-curvature bounds and end volumes of warped metrics.

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>

#include "negcurv/certify.hpp"
#include "negcurv/config.hpp"
#include "negcurv/report.hpp"
#include "negcurv/selfcheck.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kCertificateFalse = 1,
  kConfig = 2,
  kModel = 3,
  kRange = 4,
  kDivergent = 5,
  kInconclusive = 6,
};

struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  std::string csv;
  bool inject_asymmetry = false;
};

negcurv::RunConfig load(const Flags& f, const CLI::App& sub) {
  if (f.config.empty()) throw negcurv::ConfigError("--config", "a config file is required");
  negcurv::RunConfig c = negcurv::make_run_config(negcurv::load_config_file(f.config));
  if (sub.count("--seed")) c.seed = f.seed;
  if (!f.out.empty()) c.report_path = f.out;
  if (!f.csv.empty()) c.csv_path = f.csv;
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text << std::flush;
  else
    negcurv::write_atomic(path, text);
}

int run_certify(const Flags& f, const CLI::App& sub) {
  const negcurv::RunConfig c = load(f, sub);
  const negcurv::CertificationReport rep = negcurv::certify(c, f.jobs);
  // Render both documents before touching the file system.
  const std::string json = negcurv::report_json(rep);
  const std::string csv = c.csv_path.empty() ? "" : negcurv::report_csv(rep);
  emit(c.report_path, json);
  if (!c.csv_path.empty()) negcurv::write_atomic(c.csv_path, csv);
  std::fprintf(stderr, "%s: K in [%s, %s] over %zu radii; sign certificate %s%s\n", rep.family.name.c_str(),
               negcurv::format_real(rep.k_inf).c_str(), negcurv::format_real(rep.k_sup).c_str(), rep.records.size(),
               rep.sign_certificate ? "true" : "false", rep.hypothesis_holds ? "" : " (hypothesis violated)");
  return rep.sign_certificate ? kOk : kCertificateFalse;
}

int run_volume(const Flags& f, const CLI::App& sub) {
  const negcurv::RunConfig c = load(f, sub);
  const negcurv::MetricFamily family = negcurv::build_family(c.params);
  const negcurv::VolumeVerdict v = negcurv::end_volume(family, c.volume_r_hi);
  emit(c.report_path, negcurv::volume_json(family, v, c.volume_r_hi));
  std::fprintf(stderr, "%s: end volume %s%s%s\n", family.name.c_str(), negcurv::to_string(v.status),
               v.finite() ? " = " : "", v.finite() ? negcurv::format_real(v.value).c_str() : "");
  switch (v.status) {
    case negcurv::VolumeStatus::finite: return kOk;
    case negcurv::VolumeStatus::divergent: return kDivergent;
    case negcurv::VolumeStatus::inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int run_selfcheck(const Flags& f) {
  negcurv::SelfcheckOptions opt;
  opt.seed = f.seed;
  opt.inject_asymmetry = f.inject_asymmetry;
  return negcurv::print_selfcheck(std::cout, negcurv::selfcheck(opt)) ? kOk : kCertificateFalse;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const negcurv::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const negcurv::RangeError& e) {
    std::fprintf(stderr, "numeric range error at r = %s: %s\n", negcurv::format_real(e.r()).c_str(), e.what());
    return kRange;
  } catch (const negcurv::DomainError& e) {
    std::fprintf(stderr, "numeric range error: %s\n", e.what());
    return kRange;
  } catch (const negcurv::InfeasibleWarp& e) {
    std::fprintf(stderr, "model error: %s (minimal feasible r_tau ~ %s)\n", e.what(),
                 negcurv::format_real(e.minimal_feasible()).c_str());
    return kModel;
  } catch (const negcurv::ModelError& e) {
    std::fprintf(stderr, "model error: %s\n", e.what());
    return kModel;
  } catch (const negcurv::SymmetryError& e) {
    std::fprintf(stderr, "model error: %s\n", e.what());
    return kModel;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRange;
  }
}

void add_run_flags(CLI::App* sub, Flags& f, bool outputs) {
  sub->add_option("--config", f.config, "Config file (key = value)")->required();
  sub->add_option("--seed", f.seed, "Seed for randomized plane starts (default 0)");
  sub->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", f.out, "Report path (default: standard output)");
  if (outputs) sub->add_option("--csv", f.csv, "CSV side table r,K_min,K_max");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify sectional curvature and end volume of warped metrics dr^2 + g_r"};
  app.set_version_flag("--version", NEGCURV_VERSION);
  app.require_subcommand(1);

  Flags f;
  CLI::App* certify = app.add_subcommand("certify", "Scan the r-grid and certify the sign of K");
  add_run_flags(certify, f, true);
  CLI::App* volume = app.add_subcommand("volume", "Decide and compute the volume of the end r <= r_hi");
  add_run_flags(volume, f, false);
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "Run the invariant suites");
  selfcheck->add_option("--seed", f.seed, "Seed for random samples (default 0)");
  selfcheck->add_flag("--inject-asymmetry", f.inject_asymmetry)->group("");
  CLI::App* models = app.add_subcommand("models", "List model families and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  if (*certify) return guarded([&] { return run_certify(f, *certify); });
  if (*volume) return guarded([&] { return run_volume(f, *volume); });
  if (*selfcheck) return guarded([&] { return run_selfcheck(f); });
  if (*models) {
    std::cout << negcurv::describe_models();
    return kOk;
  }
  return kConfig;
}
