#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "negcurv/certify.hpp"
#include "negcurv/config.hpp"
#include "negcurv/report.hpp"

using namespace negcurv;
namespace fs = std::filesystem;

namespace {

std::string field_of(const std::string& text) {
  try {
    make_run_config(parse_config(text));
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config grammar") {
  const ConfigMap m = parse_config("# header\n\n  model =  cusp  # trailing\ncusp.dim=3\r\n");
  CHECK(m.size() == 2);
  CHECK(m.at("model") == "cusp");
  CHECK(m.at("cusp.dim") == "3");
  CHECK_THROWS_AS(parse_config("model = cusp\nmodel = type_k\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("bad..key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("key = \n"), ConfigError);
}

TEST_CASE("run config: defaults, overrides and field-level errors") {
  const RunConfig c = make_run_config(parse_config("model = type_k\ntype_k.T2 = 60\n"));
  CHECK(c.r_min == 6.0);
  CHECK(c.r_max == 70.0);
  CHECK(std::get<TypeKParams>(c.params).t2 == 60.0);
  CHECK(c.planes_per_r == 10000);

  const RunConfig p = make_run_config(
      parse_config("model = product\nproduct.left = cusp\nproduct.right = npc_base\nleft.dim = 2\nnpc_base.tau = 2\n"));
  const auto& pp = std::get<ProductParams>(p.params);
  CHECK(std::get<CuspParams>(pp.factors[0]).dim == 2);
  CHECK(std::get<NpcBaseParams>(pp.factors[1]).tau == 2.0);

  CHECK(field_of("model = cusp\nr_min = 1\nr_max = 1\n") == "r_min");
  CHECK(field_of("model = cusp\nr_step = 0\n") == "r_step");
  CHECK(field_of("model = cusp\nplanes_per_r = 9\n") == "planes_per_r");
  CHECK(field_of("model = cusp\ncusp.dims = 2\n") == "cusp.dims");
  CHECK(field_of("model = cusp\ncusp.dim = two\n") == "cusp.dim");
  CHECK(field_of("model = sphere\n") == "model");
  CHECK(field_of("r_min = 0\n") == "model");
  CHECK(field_of("model = product\nproduct.left = cusp\n") == "product.right");
  CHECK(field_of("model = cusp\noptimizer.starts = 0\n") == "optimizer.starts");
}

TEST_CASE("grid") {
  RunConfig c;
  c.r_min = -1.0;
  c.r_max = 1.0;
  c.r_step = 0.1;
  CHECK(grid_size(c) == 21);
  CHECK(grid_point(c, 20) == doctest::Approx(1.0));
}

TEST_CASE("numbers carry 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(-1.0) == "-1");
  CHECK(format_real(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "null");
  CHECK(std::stod(format_real(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("certify report: schema, round-trip, independence from jobs") {
  const RunConfig c =
      make_run_config(parse_config("model = cusp\ncusp.dim = 2\nr_min = -2\nr_max = 2\nr_step = 0.5\nplanes_per_r = 100\n"));
  const CertificationReport one = certify(c, 1);
  const CertificationReport four = certify(c, 4);
  const std::string json = report_json(one);
  CHECK(json == report_json(four));
  CHECK(report_csv(one) == report_csv(four));

  const auto doc = nlohmann::json::parse(json);
  CHECK(doc["seed"] == 0);
  CHECK(doc["config"]["model"] == "cusp");
  CHECK(doc["global"]["sign_certificate"] == true);
  CHECK(doc["records"].size() == 9);
  CHECK(doc["volume"]["end"]["status"] == "finite");
  CHECK(doc["volume"]["exponential_form"]["holds"] == true);
  for (const auto& rec : doc["records"]) {
    CHECK(rec["K_min"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rec["second_form"] == "negative definite");
  }
  // Numbers round-trip exactly.
  CHECK(doc["global"]["bound"][0].get<double>() == one.k_inf);
  CHECK(doc["records"][3]["r"].get<double>() == one.records[3].r);

  const std::string csv = report_csv(one);
  CHECK(csv.rfind("r,K_min,K_max\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
}

TEST_CASE("infranil records carry the pattern error") {
  const RunConfig c =
      make_run_config(parse_config("model = infranil\nr_min = 1\nr_max = 2\nr_step = 0.5\nplanes_per_r = 100\n"));
  const auto doc = nlohmann::json::parse(report_json(certify(c)));
  CHECK(doc["records"][0]["pattern_error"].get<double>() <= 1e-12);
}

TEST_CASE("certify rejects radii below the family's domain") {
  const RunConfig c = make_run_config(parse_config("model = type_k\nr_min = -1\nr_max = 7\n"));
  CHECK_THROWS_AS(certify(c), ConfigError);
}

TEST_CASE("write_atomic replaces the file and leaves no temporary behind") {
  const fs::path dir = fs::temp_directory_path() / "negcurv_atomic_test";
  fs::create_directories(dir);
  const fs::path target = dir / "out.json";
  write_atomic(target.string(), "first");
  write_atomic(target.string(), "second");
  CHECK(slurp(target) == "second");
  CHECK_FALSE(fs::exists(dir / "out.json.tmp"));
  CHECK_THROWS(write_atomic((dir / "missing" / "x.json").string(), "x"));
  CHECK_FALSE(fs::exists(dir / "missing"));
  fs::remove_all(dir);
}
