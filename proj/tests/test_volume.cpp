#include <doctest.h>

#include <cmath>
#include <numbers>

#include "negcurv/models.hpp"
#include "negcurv/volume.hpp"

using namespace negcurv;

TEST_CASE("adaptive Gauss-Kronrod on smooth and endpoint-singular integrands") {
  double err = 0.0;
  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12, err) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10, err) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-8, err) ==
        doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("cusp end volume is 1/m") {
  for (int m = 1; m <= 4; ++m) {
    const VolumeVerdict v = end_volume(cusp({m}));
    REQUIRE(v.finite());
    CHECK(std::abs(v.value - 1.0 / m) * m <= 1e-6);
    CHECK(v.decay_rate == doctest::Approx(m));
  }
  // With r_hi = 1 the volume is e^m / m.
  const VolumeVerdict v = end_volume(cusp({2}), 1.0);
  CHECK(v.value == doctest::Approx(std::exp(2.0) / 2.0).epsilon(1e-6));
}

TEST_CASE("a base that stops shrinking has divergent volume") {
  const VolumeVerdict v = end_volume(npc_base({}));
  CHECK(v.status == VolumeStatus::divergent);
  CHECK_FALSE(v.finite());
}

TEST_CASE("cusp(1) x npc_base: normalized integral of e^r (e^r + 1)^2 over r <= 0 is 7/12") {
  const VolumeVerdict v = end_volume(product(cusp({1}), npc_base({})));
  REQUIRE(v.finite());
  CHECK(std::abs(v.value - 7.0 / 12.0) / (7.0 / 12.0) <= 1e-6);
}

TEST_CASE("families without an end on R_- are inconclusive") {
  CHECK(end_volume(type_k({})).status == VolumeStatus::inconclusive);
  MetricFamily odd = cusp({1});
  odd.warps = {warp::Sinh{}};  // negative density for r < 0
  CHECK(end_volume(odd).status == VolumeStatus::inconclusive);
}

TEST_CASE("monotone warps bound fiber volumes on R_-") {
  CHECK(monotone_volume_bound(cusp({2})));
  CHECK(monotone_volume_bound(npc_base({})));
  MetricFamily bad = cusp({1});
  bad.warps = {warp::CoshHalf{}};
  CHECK_FALSE(monotone_volume_bound(bad));
}
