#pragma once

#include <string>

#include "negcurv/certify.hpp"

namespace negcurv {

/// Real number with 17 significant digits; "null" when not finite.
std::string format_real(double x);

/// The certification report as a single JSON document.
std::string report_json(const CertificationReport& rep);
/// Side table with header r,K_min,K_max.
std::string report_csv(const CertificationReport& rep);
/// A volume verdict as a JSON document (the `volume` subcommand).
std::string volume_json(const MetricFamily& family, const VolumeVerdict& v, double r_hi);

/// Writes `contents` to a temporary file next to `path`, then renames it
/// into place, so `path` is never left half-written.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace negcurv
