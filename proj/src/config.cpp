#include "negcurv/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace negcurv {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  char prev = 0;
  for (char ch : key) {
    if (ch == '.' && prev == '.') return false;
    if (ch != '.' && ch != '_' && !std::isalnum(static_cast<unsigned char>(ch))) return false;
    prev = ch;
  }
  return true;
}

double to_real(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(value))
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  return value;
}

long long to_integer(const std::string& key, const std::string& text) {
  long long value = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError(key, "expected an integer, got '" + text + "'");
  return value;
}

/// Reads model parameters from `entries`, consuming the keys it uses.
class ParamReader {
 public:
  ParamReader(const ConfigMap& entries, std::set<std::string>& used) : entries_(entries), used_(used) {}

  /// Looks up `<prefix>.<name>` then, if given, `<fallback>.<name>`.
  std::optional<std::pair<std::string, std::string>> find(const std::string& prefix, const std::string& fallback,
                                                          const std::string& name) const {
    for (const std::string& p : {prefix, fallback}) {
      if (p.empty()) continue;
      const std::string key = p + "." + name;
      if (auto it = entries_.find(key); it != entries_.end()) {
        used_.insert(key);
        return std::make_pair(key, it->second);
      }
    }
    return std::nullopt;
  }

  void real(const std::string& prefix, const std::string& fallback, const std::string& name, double& out) const {
    if (auto kv = find(prefix, fallback, name)) out = to_real(kv->first, kv->second);
  }
  void integer(const std::string& prefix, const std::string& fallback, const std::string& name, int& out) const {
    if (auto kv = find(prefix, fallback, name)) out = static_cast<int>(to_integer(kv->first, kv->second));
  }

  ModelParams model(const std::string& family, const std::string& prefix, bool allow_product) const {
    // The family section doubles as the fallback for product factors.
    const std::string fallback = prefix == family ? "" : family;
    if (family == "cusp") {
      CuspParams p;
      integer(prefix, fallback, "dim", p.dim);
      return p;
    }
    if (family == "npc_base") {
      NpcBaseParams p;
      real(prefix, fallback, "curvature", p.curvature);
      real(prefix, fallback, "tau", p.tau);
      real(prefix, fallback, "r_tau", p.r_tau);
      integer(prefix, fallback, "dim", p.dim);
      return p;
    }
    if (family == "infranil") {
      InfranilParams p;
      integer(prefix, fallback, "k", p.k);
      real(prefix, fallback, "c", p.c);
      real(prefix, fallback, "T1", p.t1);
      real(prefix, fallback, "T2", p.t2);
      real(prefix, fallback, "a1", p.prefactors[0]);
      real(prefix, fallback, "a2", p.prefactors[1]);
      real(prefix, fallback, "a3", p.prefactors[2]);
      return p;
    }
    if (family == "type_k") {
      TypeKParams p;
      real(prefix, fallback, "epsilon", p.epsilon);
      real(prefix, fallback, "T0", p.t0);
      real(prefix, fallback, "T1", p.t1);
      real(prefix, fallback, "T2", p.t2);
      real(prefix, fallback, "c23", p.c23);
      real(prefix, fallback, "fade", p.fade);
      return p;
    }
    if (family == "product" && allow_product) {
      ProductParams p;
      for (const char* side : {"left", "right"}) {
        const auto kv = find("product", "", side);
        if (!kv) throw ConfigError(std::string("product.") + side, "missing factor family");
        if (kv->second == "product") throw ConfigError(kv->first, "nested products are not supported");
        p.factors.push_back(model(kv->second, side, false));
      }
      return p;
    }
    throw ConfigError(prefix == family ? "model" : "product." + prefix, "unknown family '" + family + "'");
  }

 private:
  const ConfigMap& entries_;
  std::set<std::string>& used_;
};

}  // namespace

ConfigMap parse_config(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(where, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(where, "malformed key '" + key + "'");
    if (value.empty()) throw ConfigError(key, "empty value");
    if (!out.emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }
  return out;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RunConfig make_run_config(const ConfigMap& entries) {
  RunConfig c;
  c.echo = entries;
  std::set<std::string> used;
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    used.insert(key);
    return &it->second;
  };

  const std::string* model = get("model");
  if (!model) throw ConfigError("model", "missing model selector");
  c.model = *model;
  c.params = ParamReader(entries, used).model(c.model, c.model, true);

  RadiusRange range{0.0, 0.0};
  try {
    range = default_range(c.params);
  } catch (const ModelError&) {
    // Reported as a model error once the family is built.
  }
  c.r_min = range.lo;
  c.r_max = range.hi;
  if (auto v = get("r_min")) c.r_min = to_real("r_min", *v);
  if (auto v = get("r_max")) c.r_max = to_real("r_max", *v);
  if (auto v = get("r_step")) c.r_step = to_real("r_step", *v);
  if (auto v = get("planes_per_r")) c.planes_per_r = static_cast<int>(to_integer("planes_per_r", *v));
  if (auto v = get("optimizer.starts")) c.starts = static_cast<int>(to_integer("optimizer.starts", *v));
  if (auto v = get("optimizer.seed")) {
    const long long s = to_integer("optimizer.seed", *v);
    if (s < 0) throw ConfigError("optimizer.seed", "must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (auto v = get("volume.r_hi")) c.volume_r_hi = to_real("volume.r_hi", *v);
  if (auto v = get("output.report")) c.report_path = *v;
  if (auto v = get("output.csv")) c.csv_path = *v;

  for (const auto& [key, value] : entries)
    if (!used.count(key)) throw ConfigError(key, "unknown key");

  if (!(c.r_min < c.r_max)) throw ConfigError("r_min", "must be < r_max");
  if (!(c.r_step > 0.0)) throw ConfigError("r_step", "must be > 0");
  if ((c.r_max - c.r_min) / c.r_step > 1e6) throw ConfigError("r_step", "grid exceeds 10^6 radii");
  if (c.planes_per_r < 10) throw ConfigError("planes_per_r", "must be >= 10");
  if (c.starts < 1) throw ConfigError("optimizer.starts", "must be >= 1");
  return c;
}

int grid_size(const RunConfig& c) {
  return static_cast<int>(std::floor((c.r_max - c.r_min) / c.r_step + 1e-9)) + 1;
}

double grid_point(const RunConfig& c, int index) {
  return c.r_min + index * c.r_step;
}

}  // namespace negcurv
