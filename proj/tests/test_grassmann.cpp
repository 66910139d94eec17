#include <doctest.h>

#include <random>

#include "negcurv/grassmann.hpp"
#include "negcurv/models.hpp"

using namespace negcurv;

TEST_CASE("plane set: coordinate planes first, orthonormal bivectors") {
  const PlaneSet ps(4, 300);
  CHECK(ps.size() == 300);
  CHECK(ps.plane(0).u == Eigen::VectorXd::Unit(4, 0));
  CHECK(ps.plane(5).v == Eigen::VectorXd::Unit(4, 3));
  for (int i = 0; i < ps.size(); ++i) {
    const Plane& p = ps.plane(i);
    CHECK(std::abs(p.u.norm() - 1.0) < 1e-14);
    CHECK(std::abs(p.v.norm() - 1.0) < 1e-14);
    CHECK(std::abs(p.u.dot(p.v)) < 1e-14);
    CHECK(std::abs(ps.bivectors().col(i).norm() - 1.0) < 1e-14);
  }
}

TEST_CASE("dense scan: refuses large dimension, extremal planes re-evaluate") {
  const CurvatureTensor t6 = assemble(product(type_k({}), npc_base({})), 20.0);
  CHECK_THROWS_AS(dense_scan(t6, 100), ScanDimensionError);

  const CurvatureTensor t = assemble(type_k({}), 20.0);
  const ScanResult s = dense_scan(t, 5000);
  CHECK(s.min.value <= s.max.value);
  CHECK(std::abs(sectional(t, s.min.plane.u, s.min.plane.v) - s.min.value) <= 1e-10);
  CHECK(std::abs(sectional(t, s.max.plane.u, s.max.plane.v) - s.max.value) <= 1e-10);
  CHECK(s.min.evaluations == 5000);
}

TEST_CASE("ties resolve to the lexicographically smallest plane") {
  // Flat: every plane has K = 0 exactly.
  MetricFamily flat = cusp({2});
  flat.warps = {warp::Constant{1.0}, warp::Constant{1.0}};
  const ScanResult s = dense_scan(assemble(flat, 0.0), 200);
  CHECK(s.min.value == 0.0);
  const PlaneSet ps(3, 200);
  Eigen::VectorXd best = ps.plane(0).canonical_bivector();
  for (int i = 1; i < ps.size(); ++i) {
    const Eigen::VectorXd w = ps.plane(i).canonical_bivector();
    if (std::lexicographical_compare(w.data(), w.data() + w.size(), best.data(), best.data() + best.size())) best = w;
  }
  CHECK((s.min.plane.canonical_bivector() - best).norm() == 0.0);
  CHECK((s.max.plane.canonical_bivector() - best).norm() == 0.0);
}

TEST_CASE("multistart stays within the dense bracket and is reproducible") {
  const MetricFamily f = product(type_k({}), cusp({1}));
  const PlaneSet ps(5, 10000);
  for (double r : {0.3, 5.5, 30.0, 70.0, 105.0}) {
    CAPTURE(r);
    const CurvatureTensor t = assemble(f, r);
    const ScanResult d = dense_scan(t, ps);
    const Extremum lo = multistart_extremize(t, ExtremumMode::min, 16, 3);
    const Extremum hi = multistart_extremize(t, ExtremumMode::max, 16, 3);
    CHECK(lo.value <= d.min.value + 1e-9);
    CHECK(hi.value >= d.max.value - 1e-9);
    CHECK(std::abs(sectional(t, hi.plane.u, hi.plane.v) - hi.value) <= 1e-10);
    const Extremum again = multistart_extremize(t, ExtremumMode::max, 16, 3);
    CHECK(again.value == hi.value);
    CHECK(again.plane.u == hi.plane.u);
  }
}

TEST_CASE("frame plane table and seed mixing") {
  const auto table = frame_plane_table(assemble(cusp({3}), 0.0));
  CHECK(table.size() == 6);
  for (const auto& e : table) CHECK(e.curvature == doctest::Approx(-1.0));
  CHECK(mix_seed(0, 0) != mix_seed(0, 1));
  CHECK(mix_seed(1, 0) != mix_seed(0, 1));
  CHECK(mix_seed(5, 9) == mix_seed(5, 9));
}
