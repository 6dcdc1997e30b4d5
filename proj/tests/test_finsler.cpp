#include "spraylab/engine.hpp"
#include "spraylab/families.hpp"
#include "spraylab/finsler.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace spraylab;

namespace {

const FiniteDifferenceEngine fd_engine;
const DualNumberEngine dual_engine;

std::vector<FinslerMetric> builtin_metrics(int n) {
  return {minkowski_metric(n), spaceform_metric(n, 1.0), spaceform_metric(n, -0.5), funk_metric(n),
          berwald_metric(n, 1.0, true), berwald_metric(n, 4.0, false)};
}

std::vector<PointPair> metric_pairs(const FinslerMetric& m, int count, std::uint64_t seed) {
  return testing::ball_pairs(m.dim, count, seed, m.sample_radius);
}

}  // namespace

TEST_CASE("Euclidean metrics have identity fundamental tensor") {
  for (int n : testing::kDims) {
    for (const FinslerMetric& m : {minkowski_metric(n), spaceform_metric(n, 0.0)}) {
      for (const PointPair& pair : metric_pairs(m, 10, 1)) {
        CHECK(max_abs(fundamental_tensor(m, pair, fd_engine).g - Mat::Identity(n, n)) <= 1e-8);
        CHECK(max_abs(fundamental_tensor(m, pair, dual_engine).g - Mat::Identity(n, n)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("Funk fundamental tensor is positive definite at the origin") {
  const FinslerMetric funk = funk_metric(3);
  for (const PointPair& pair : testing::ball_pairs(3, 50, 2)) {
    const FundamentalTensor t = fundamental_tensor(funk, {Vec::Zero(3), pair.y}, fd_engine);
    CHECK(t.positive_definite);
    CHECK(Eigen::SelfAdjointEigenSolver<Mat>(t.g).eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("fundamental tensors are symmetric, invertible and satisfy Euler's identity") {
  for (int n : testing::kDims) {
    for (const FinslerMetric& m : builtin_metrics(n)) {
      for (const PointPair& pair : metric_pairs(m, 100, 3)) {
        const FundamentalTensor t = fundamental_tensor(m, pair, fd_engine);
        const double f = m(pair.x, pair.y);
        INFO(m.name, " n=", n);
        CHECK(max_abs(t.g - t.g.transpose()) <= 1e-10);
        CHECK(max_abs(t.g * t.g_inv - Mat::Identity(n, n)) <= 1e-8);
        CHECK(std::abs(pair.y.dot(t.g * pair.y) - f * f) <= 1e-8 * f * f);
        CHECK(t.positive_definite);
      }
    }
  }
}

TEST_CASE("metrics are 1-homogeneous") {
  for (const FinslerMetric& m : builtin_metrics(3)) {
    for (const PointPair& pair : metric_pairs(m, 20, 4)) {
      CHECK(m(pair.x, 2.5 * pair.y) == doctest::Approx(2.5 * m(pair.x, pair.y)).epsilon(1e-14));
    }
  }
}

TEST_CASE("induced sprays of the catalogued metrics") {
  for (int n : testing::kDims) {
    const FinslerMetric mink = minkowski_metric(n);
    for (const PointPair& pair : metric_pairs(mink, 5, 5)) CHECK(induced_spray(mink, pair, fd_engine).norm() == 0.0);

    for (double mu : {1.0, -0.5}) {
      const FinslerMetric alpha = spaceform_metric(n, mu);
      const SphericalProfile sf = spaceform_spray(mu);
      double worst = 0.0;
      for (const PointPair& pair : metric_pairs(alpha, 100, 6)) {
        const Vec want = eval_spherical(sf, pair);
        worst = std::max(worst, (induced_spray(alpha, pair, fd_engine) - want).norm() / (1.0 + want.norm()));
      }
      INFO("mu=", mu, " n=", n);
      CHECK(worst <= 1e-6);
    }

    for (double c : {1.0, 4.0}) {
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        const FinslerMetric m = berwald_metric(n, c, b == Branch::Plus);
        const ProjectiveProfile p = zero_curvature_profile({c, b});
        double worst = 0.0;
        for (const PointPair& pair : metric_pairs(m, 100, 7)) {
          const Vec want = eval_projective(p, pair);
          worst = std::max(worst, (induced_spray(m, pair, fd_engine) - want).norm() / (1.0 + want.norm()));
        }
        INFO("c=", c, " n=", n);
        CHECK(worst <= 1e-6);
      }
    }
  }
}

TEST_CASE("induced sprays are 2-homogeneous") {
  for (const FinslerMetric& m : builtin_metrics(3)) {
    for (const PointPair& pair : metric_pairs(m, 20, 8)) {
      const Vec g = induced_spray(m, pair, fd_engine);
      const Vec g2 = induced_spray(m, {pair.x, 2.0 * pair.y}, fd_engine);
      CHECK((g2 - 4.0 * g).norm() / (1.0 + 4.0 * g.norm()) <= 1e-8);
    }
  }
}

TEST_CASE("flag curvature of constant-curvature metrics") {
  std::mt19937_64 rng(9);
  for (int n : testing::kDims) {
    const std::vector<std::pair<FinslerMetric, double>> cases = {
        {minkowski_metric(n), 0.0}, {spaceform_metric(n, 1.0), 1.0}, {funk_metric(n), -0.25}};
    for (const auto& [m, k] : cases) {
      for (const PointPair& pair : metric_pairs(m, 50, 10)) {
        const Vec u = random_orthogonal_direction(pair.y, rng);
        INFO(m.name, " n=", n);
        CHECK(std::abs(flag_curvature(m, pair, u, dual_engine) - k) <= 1e-5);
      }
    }
  }
}

TEST_CASE("flag curvature depends only on the flag") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(-2.0, 2.0);
  // Berwald's metric is flat, so use a non-constant spray: a metric with varying curvature.
  const FinslerMetric m = make_metric("warped", 3, [](const auto& x, const auto& y) {
    auto yy = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    auto w = 1.0 + 0.3 * x[0] * x[0] + 0.2 * x[1] * x[2];
    return sqrt(yy) * w;
  });
  for (const PointPair& pair : testing::ball_pairs(3, 20, 12, 0.8)) {
    const Vec u = random_orthogonal_direction(pair.y, rng);
    const double k = flag_curvature(m, pair, u, dual_engine);
    const double shifted = flag_curvature(m, pair, u + t(rng) * pair.y, dual_engine);
    const double scaled = flag_curvature(m, pair, (0.1 + std::abs(t(rng))) * (t(rng) < 0 ? -u : u), dual_engine);
    CHECK(std::abs(shifted - k) <= 1e-6 * std::max(1.0, std::abs(k)));
    CHECK(std::abs(scaled - k) <= 1e-6 * std::max(1.0, std::abs(k)));
  }
}

TEST_CASE("flags along the flagpole are degenerate") {
  const FinslerMetric m = funk_metric(3);
  const PointPair pair = metric_pairs(m, 1, 13)[0];
  try {
    flag_curvature(m, pair, 2.0 * pair.y, dual_engine);
    FAIL("expected DegenerateFlag");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateFlag);
  }
}

TEST_CASE("metrizability scalar check") {
  for (int n : {3, 5}) {
    const FamilyInstance funk = make_family("funk", Json::object(), n);
    const auto pairs = testing::family_pairs(funk, 50, 14);
    const MetrizabilityReport rf = metrizability_scalar_check(funk.spray, funk_metric(n), pairs, dual_engine);
    CHECK(rf.constancy_meaningful);
    CHECK(rf.constancy_residual <= 1e-5);
    CHECK(std::abs(rf.lambda + 0.25) <= 1e-4);

    const FamilyInstance flat = make_family("flat", Json::object(), n);
    const MetrizabilityReport r0 =
        metrizability_scalar_check(flat.spray, minkowski_metric(n), testing::family_pairs(flat, 20, 15), fd_engine);
    CHECK(r0.lambda == 0.0);
    CHECK(r0.constancy_residual == 0.0);

    const FamilyInstance sf = make_family("spaceform", {{"mu", 1.0}}, n);
    const MetrizabilityReport r1 =
        metrizability_scalar_check(sf.spray, spaceform_metric(n, 1.0), testing::family_pairs(sf, 50, 16), dual_engine);
    CHECK(std::abs(r1.lambda - 1.0) <= 1e-5);
    CHECK(r1.constancy_residual <= 1e-5);

    // The induced spray of the metric itself, not the family's closed form.
    const FinslerMetric fm = funk_metric(n);
    const SprayField induced = induced_spray_field(fm, std::make_shared<DualNumberEngine>());
    const MetrizabilityReport ri = metrizability_scalar_check(induced, fm, metric_pairs(fm, 20, 17), dual_engine);
    CHECK(std::abs(ri.lambda + 0.25) <= 1e-5);
    CHECK(ri.constancy_residual <= 1e-5);
  }
  const FamilyInstance funk2 = make_family("funk", Json::object(), 2);
  CHECK(!metrizability_scalar_check(funk2.spray, funk_metric(2), testing::family_pairs(funk2, 5, 18), dual_engine)
             .constancy_meaningful);
}

TEST_CASE("projective lambda of the Funk metric") {
  const FinslerMetric m = funk_metric(3);
  for (const PointPair& pair : metric_pairs(m, 50, 19)) {
    CHECK(projective_lambda(funk_profile(0.0), m, pair) == doctest::Approx(-0.25).epsilon(1e-10));
  }
}

TEST_CASE("named metrics come from the catalog") {
  CHECK(make_named_metric("funk", Json::object(), 3).constant_flag_curvature == -0.25);
  try {
    make_named_metric("randers", Json::object(), 3);
    FAIL("expected UnknownFamily");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownFamily);
  }
}
