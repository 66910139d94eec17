#include "negcurv/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace negcurv {

std::string format_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

/// Minimal streaming JSON writer with two-space indentation.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(const std::string& k) {
    separate();
    out_ << quote(k) << ": ";
    after_key_ = true;
    return *this;
  }
  JsonWriter& value(const std::string& s) { return raw(quote(s)); }
  JsonWriter& value(const char* s) { return raw(quote(s)); }
  JsonWriter& value(double x) { return raw(format_real(x)); }
  JsonWriter& value(bool b) { return raw(b ? "true" : "false"); }
  JsonWriter& value(long long i) { return raw(std::to_string(i)); }
  JsonWriter& value(unsigned long long i) { return raw(std::to_string(i)); }
  JsonWriter& null() { return raw("null"); }
  JsonWriter& vector(const Eigen::VectorXd& v) {
    separate();
    out_ << '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) out_ << (i ? ", " : "") << format_real(v(i));
    out_ << ']';
    return *this;
  }

  template <typename T>
  JsonWriter& field(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }

  std::string str() const { return out_.str() + "\n"; }

 private:
  JsonWriter& open(char c) {
    separate();
    out_ << c;
    first_.push_back(true);
    return *this;
  }
  JsonWriter& close(char c) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    out_ << c;
    return *this;
  }
  JsonWriter& raw(const std::string& s) {
    separate();
    out_ << s;
    return *this;
  }
  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (first_.empty()) return;
    if (!first_.back()) out_ << ',';
    first_.back() = false;
    newline();
  }
  void newline() { out_ << '\n' << std::string(2 * first_.size(), ' '); }

  std::ostringstream out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

void write_extremum(JsonWriter& w, const std::string& k, const Extremum& e) {
  w.key(k).begin_object();
  w.field("K", e.value);
  w.key("u").vector(e.plane.u);
  w.key("v").vector(e.plane.v);
  w.field("evaluations", static_cast<long long>(e.evaluations));
  w.end_object();
}

void write_volume(JsonWriter& w, const VolumeVerdict& v, double r_hi) {
  w.begin_object();
  w.field("status", to_string(v.status));
  w.field("r_hi", r_hi);
  if (v.finite()) {
    w.field("value", v.value);
    w.field("relative_error", v.relative_error);
  } else {
    w.key("value").null();
    w.key("relative_error").null();
  }
  w.field("decay_rate", v.decay_rate);
  w.field("tail_bound", v.tail_bound);
  w.field("normalization", "fiber volume at r = 0 taken as 1");
  w.end_object();
}

void write_family(JsonWriter& w, const MetricFamily& f) {
  w.begin_object();
  w.field("name", f.name);
  w.field("dim", static_cast<long long>(f.dim()));
  w.key("parameters").begin_object();
  for (const auto& [k, v] : f.parameters) w.field(k, v);
  w.end_object();
  w.key("warps").begin_array();
  for (const auto& h : f.warps) w.value(h.describe());
  w.end_array();
  w.field("fiber", f.fiber->name());
  w.field("domain_lo", f.domain_lo);
  w.end_object();
}

}  // namespace

std::string report_json(const CertificationReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.field("tool", "negcurv");
  w.field("version", rep.version);
  w.field("seed", static_cast<unsigned long long>(rep.config.seed));
  w.key("config").begin_object();
  for (const auto& [k, v] : rep.config.echo) w.field(k, v);
  w.end_object();
  w.key("model");
  write_family(w, rep.family);

  w.key("grid").begin_object();
  w.field("r_min", rep.config.r_min);
  w.field("r_max", rep.config.r_max);
  w.field("r_step", rep.config.r_step);
  w.field("count", static_cast<long long>(rep.records.size()));
  w.field("method", to_string(rep.method));
  if (rep.method == ScanMethod::dense)
    w.field("planes_per_r", static_cast<long long>(rep.config.planes_per_r));
  else
    w.field("starts", static_cast<long long>(rep.config.starts));
  w.field("note", "sampled and locally refined extrema; not a proof");
  w.end_object();

  w.key("global").begin_object();
  w.field("sign_certificate", rep.sign_certificate);
  w.field("claim", "all sampled K < 0");
  w.key("bound").begin_array().value(rep.k_inf).value(rep.k_sup).end_array();
  w.field("second_form_negative_definite", rep.hypothesis_holds);
  w.field("hypothesis", rep.hypothesis_holds ? "II negative definite at every sampled r" : "hypothesis violated");
  w.end_object();

  w.key("volume").begin_object();
  w.key("end");
  write_volume(w, rep.end_volume, rep.config.volume_r_hi);
  w.key("exponential_form").begin_object();
  w.field("applicable", rep.form.applicable);
  if (rep.form.applicable) {
    w.field("r_from", rep.form.r_from);
    w.field("max_relative_deviation", rep.form.max_relative_deviation);
    w.field("tolerance", kFormTolerance);
    w.field("holds", rep.form.holds);
  }
  w.end_object();
  w.end_object();

  w.key("records").begin_array();
  for (const auto& rec : rep.records) {
    w.begin_object();
    w.field("r", rec.r);
    w.field("K_min", rec.min.value);
    w.field("K_max", rec.max.value);
    write_extremum(w, "min_plane", rec.min);
    write_extremum(w, "max_plane", rec.max);
    w.field("second_form", rec.second_form_negative_definite ? "negative definite" : "not negative definite");
    if (rec.pattern_error) w.field("pattern_error", *rec.pattern_error);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string report_csv(const CertificationReport& rep) {
  std::string out = "r,K_min,K_max\n";
  for (const auto& rec : rep.records)
    out += format_real(rec.r) + "," + format_real(rec.min.value) + "," + format_real(rec.max.value) + "\n";
  return out;
}

std::string volume_json(const MetricFamily& family, const VolumeVerdict& v, double r_hi) {
  JsonWriter w;
  w.begin_object();
  w.field("tool", "negcurv");
  w.field("version", NEGCURV_VERSION);
  w.key("model");
  write_family(w, family);
  w.key("volume");
  write_volume(w, v, r_hi);
  w.end_object();
  return w.str();
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename into '" + path + "'");
  }
}

}  // namespace negcurv
