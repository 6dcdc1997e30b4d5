#include "spraylab/families.hpp"
#include "spraylab/geodesic.hpp"
#include "spraylab/spray.hpp"
#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace spraylab;
using spraylab::testing::vec;

TEST_CASE("eval_spherical on hand-checked pairs") {
  CHECK(eval_spherical(flat_spherical(), {vec({0.3, 0.1}), vec({1, 2})}).norm() == 0.0);
  const Vec g = eval_spherical(spaceform_spray(1.0), {vec({1, 0}), vec({1, 0})});
  CHECK(g(0) == doctest::Approx(-0.5));
  CHECK(g(1) == 0.0);
  const Vec b = eval_spherical({Profile::constant(0.0), Profile::constant(1.0)}, {vec({1, 0}), vec({0, 2})});
  CHECK(b(0) == doctest::Approx(4.0));
  CHECK(b(1) == 0.0);
}

TEST_CASE("eval_projective on hand-checked pairs") {
  CHECK(eval_projective(flat_profile(), {vec({0.2, 0.4}), vec({3, 4})}).norm() == 0.0);
  const Vec g = eval_projective({Profile::constant(1.0)}, {vec({0.2, 0.4}), vec({3, 4})});
  CHECK(g(0) == doctest::Approx(15.0));
  CHECK(g(1) == doctest::Approx(20.0));
  const Vec y = vec({0.6, -0.8, 2.0});
  const Vec f = eval_projective(funk_profile(0.0), {Vec::Zero(3), y});
  CHECK((f - 0.5 * y.norm() * y).norm() <= 1e-15);
}

TEST_CASE("sprays refuse points outside their domain") {
  const FamilyInstance fam = make_family("funk", Json::object(), 2);
  try {
    fam.spray(vec({1.5, 0.0}), vec({0.0, 1.0}));
    FAIL("expected DomainExit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainExit);
  }
}

TEST_CASE("every catalog family is 2-homogeneous") {
  for (int n : testing::kDims) {
    for (const auto& [name, params] : testing::projective_catalog()) {
      const FamilyInstance fam = make_family(name, params, n);
      double worst = 0.0;
      for (const PointPair& pair : testing::family_pairs(fam, 100, 31)) {
        for (double lambda : {0.5, 2.0, 7.0}) worst = std::max(worst, check_homogeneity(fam.spray, pair, lambda));
      }
      INFO(name, " n=", n);
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("a 1-homogeneous field fails the homogeneity check") {
  const SprayField g = make_spray("linear", 3, [](const auto&, const auto& y) { return y; });
  for (const PointPair& pair : testing::ball_pairs(3, 10, 2)) CHECK(check_homogeneity(g, pair, 2.0) > 0.1);
}

TEST_CASE("every catalog family is O(n)-equivariant") {
  for (int n : testing::kDims) {
    for (const auto& [name, params] : testing::projective_catalog()) {
      const FamilyInstance fam = make_family(name, params, n);
      const auto pairs = testing::family_pairs(fam, 50, 41);
      double worst = 0.0;
      for (std::uint64_t k = 0; k < 50; ++k) {
        const Mat u = random_orthogonal(n, 1000 + k);
        for (const PointPair& pair : pairs) worst = std::max(worst, check_equivariance(fam.spray, pair, u));
      }
      INFO(name, " n=", n);
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("the identity is an exact symmetry") {
  const FamilyInstance fam = make_family("funk", Json::object(), 3);
  for (const PointPair& pair : testing::family_pairs(fam, 10, 4)) {
    CHECK(check_equivariance(fam.spray, pair, Mat::Identity(3, 3)) == 0.0);
  }
}

TEST_CASE("a non-symmetric field fails the equivariance check") {
  const SprayField g = make_spray("lopsided", 3, [](const auto&, const auto& y) {
    auto out = y;
    for (auto& v : out) v = 0.0 * v;
    out[0] = y[0] * y[0];
    return out;
  });
  const Mat u = random_orthogonal(3, 77);
  int failures = 0;
  const auto pairs = testing::ball_pairs(3, 20, 8);
  for (const PointPair& pair : pairs) failures += check_equivariance(g, pair, u) > 0.1;
  CHECK(failures >= 15);
}

TEST_CASE("flat geodesics are unit-speed straight lines") {
  const SprayField g = make_spherical_spray("flat", 2, flat_spherical());
  const GeodesicTrace t = geodesic_integrate(g, vec({0, 0}), vec({1, 0}), 1.0);
  CHECK(t.terminated_reason == TerminationReason::Completed);
  CHECK((t.positions.back() - vec({1, 0})).norm() <= 1e-12);
  CHECK(t.times.back() == doctest::Approx(1.0));
  CHECK(straightness_deviation(t) <= 1e-15);
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t.times[i] > t.times[i - 1]);
}

TEST_CASE("space-form geodesics through the origin stay on their ray") {
  const SprayField g = make_spherical_spray("spaceform", 3, spaceform_spray(1.0));
  const Vec y0 = vec({0.3, -1.2, 0.5});
  const GeodesicTrace t = geodesic_integrate(g, Vec::Zero(3), y0, 1.0);
  REQUIRE(t.terminated_reason == TerminationReason::Completed);
  for (const Vec& x : t.positions) CHECK((x - x.dot(y0) / y0.squaredNorm() * y0).norm() <= 1e-12);
}

TEST_CASE("projective families have straight geodesics") {
  for (int n : testing::kDims) {
    for (const auto& [name, params] : testing::projective_catalog()) {
      const FamilyInstance fam = make_family(name, params, n);
      double worst = 0.0;
      for (const PointPair& start : testing::family_pairs(fam, 20, 51)) {
        // Short enough to stay inside bounded domains from any start in the sampling ball.
        const Vec y0 = 0.05 * start.y / start.y.norm();
        const GeodesicTrace t = geodesic_integrate(fam.spray, start.x, y0, 1.0);
        worst = std::max(worst, straightness_deviation(t));
      }
      INFO(name, " n=", n);
      CHECK(worst <= 1e-6);
    }
  }
}

TEST_CASE("a spray with a radial term bends its geodesics") {
  for (int n : testing::kDims) {
    const SprayField g = testing::beta_one_spray(n);
    for (const PointPair& start : testing::ball_pairs(n, 20, 61)) {
      const GeodesicTrace t = geodesic_integrate(g, start.x, start.y / start.y.norm(), 1.0);
      CHECK(straightness_deviation(t) > 1e-3);
    }
  }
}

TEST_CASE("an outward geodesic of the minus zero-curvature branch leaves the domain") {
  const FamilyInstance fam = make_family("zero_curvature", {{"c", 1.0}, {"sign", "-"}}, 2);
  const GeodesicTrace t = geodesic_integrate(fam.spray, vec({0.9, 0}), vec({1, 0}), 1.0);
  CHECK(t.terminated_reason == TerminationReason::DomainExit);
  CHECK(t.times.back() < 1.0);
  CHECK(!t.message.empty());
  for (const Vec& x : t.positions) CHECK(x.squaredNorm() < 1.0);
}

TEST_CASE("geodesic CSV has the documented layout") {
  const SprayField g = make_spherical_spray("flat", 2, flat_spherical());
  GeodesicOptions opt;
  opt.step = 0.25;
  const GeodesicTrace t = geodesic_integrate(g, vec({0, 0}), vec({1, 2}), 1.0, opt);
  std::ostringstream os;
  write_trace_csv(t, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,x1,x2,y1,y2");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == static_cast<int>(t.size()));
  CHECK(rows == 5);
}

TEST_CASE("step-halving control keeps straight lines straight") {
  const FamilyInstance fam = make_family("funk", Json::object(), 3);
  GeodesicOptions opt;
  opt.error_control = true;
  opt.step = 0.1;
  const GeodesicTrace t = geodesic_integrate(fam.spray, vec({0.1, 0.2, 0}), vec({0, 0.3, 0.4}), 1.0, opt);
  CHECK(t.terminated_reason == TerminationReason::Completed);
  CHECK(straightness_deviation(t) <= 1e-8);
}
