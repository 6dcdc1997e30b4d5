#include "spraylab/curvature.hpp"
#include "spraylab/engine.hpp"
#include "spraylab/families.hpp"
#include "spraylab/finsler.hpp"
#include "support.hpp"

#include <doctest.h>

#include <array>

using namespace spraylab;
using spraylab::testing::vec;

namespace {

const FiniteDifferenceEngine fd_engine;
const DualNumberEngine dual_engine;
const ProjectiveJetEngine analytic_engine;

double tensor_error(const Mat& a, const Mat& b, const Vec& y) { return relative_max_error(a, b, y.squaredNorm()); }

}  // namespace

TEST_CASE("hand-computed curvature of a small non-symmetric spray") {
  // G = (x1·y2², 0): R row 1 = (2y2², −2y1y2), row 2 = 0.
  const SprayField g = make_spray("hand", 2, [](const auto& x, const auto& y) {
    auto out = y;
    out[0] = x[0] * y[1] * y[1];
    out[1] = 0.0 * y[1];
    return out;
  });
  const PointPair pair{vec({0.4, -0.7}), vec({1.3, 0.6})};
  Mat want(2, 2);
  want << 2 * 0.36, -2 * 1.3 * 0.6, 0, 0;
  CHECK(max_abs(riemann_generic(g, pair, dual_engine).R - want) <= 1e-14);
  CHECK(max_abs(riemann_generic(g, pair, fd_engine).R - want) <= 1e-8);
}

TEST_CASE("flat spray has zero curvature") {
  const FamilyInstance fam = make_family("flat", Json::object(), 3);
  for (const PointPair& pair : testing::family_pairs(fam, 5, 1)) {
    CHECK(max_abs(riemann_generic(fam.spray, pair, fd_engine).R) == 0.0);
    CHECK(max_abs(riemann_projective_closed(flat_profile(), pair).R) == 0.0);
  }
}

TEST_CASE("space-form curvature at the origin") {
  for (int n : testing::kDims) {
    const SprayField g = make_spherical_spray("spaceform", n, spaceform_spray(1.0));
    const Vec y = testing::ball_pairs(n, 1, 3)[0].y;
    const PointPair pair{Vec::Zero(n), y};
    const Mat want = y.squaredNorm() * Mat::Identity(n, n) - y * y.transpose();
    CHECK(tensor_error(riemann_generic(g, pair, dual_engine).R, want, y) <= 1e-14);
    CHECK(tensor_error(riemann_generic(g, pair, fd_engine).R, want, y) <= 1e-6);
    CHECK(tensor_error(riemann_projective_closed(spaceform_projective(1.0), pair).R, want, y) <= 1e-14);
  }
}

TEST_CASE("closed form agrees with the defining formula on every projective family") {
  for (int n : testing::kDims) {
    for (const auto& [name, params] : testing::projective_catalog()) {
      const FamilyInstance fam = make_family(name, params, n);
      double fd = 0.0, dual = 0.0, analytic = 0.0;
      for (const PointPair& pair : testing::family_pairs(fam, 100, 71)) {
        const Mat closed = riemann_projective_closed(*fam.projective, pair).R;
        fd = std::max(fd, tensor_error(riemann_generic(fam.spray, pair, fd_engine).R, closed, pair.y));
        dual = std::max(dual, tensor_error(riemann_generic(fam.spray, pair, dual_engine).R, closed, pair.y));
        analytic =
            std::max(analytic, tensor_error(riemann_generic(fam.spray, pair, analytic_engine).R, closed, pair.y));
      }
      INFO(name, " n=", n, " fd=", fd, " dual=", dual, " analytic=", analytic);
      CHECK(fd <= 1e-6);
      CHECK(dual <= 1e-10);
      CHECK(analytic <= 1e-10);
    }
  }
}

TEST_CASE("every computed tensor annihilates the flagpole") {
  for (int n : testing::kDims) {
    for (const auto& [name, params] : testing::projective_catalog()) {
      const FamilyInstance fam = make_family(name, params, n);
      for (const PointPair& pair : testing::family_pairs(fam, 30, 72)) {
        INFO(name, " n=", n);
        CHECK(flagpole_residual(riemann_projective_closed(*fam.projective, pair).R, pair.y) <= 1e-8);
        CHECK(flagpole_residual(riemann_generic(fam.spray, pair, fd_engine).R, pair.y) <= 1e-8);
        CHECK(flagpole_residual(riemann_generic(fam.spray, pair, dual_engine).R, pair.y) <= 1e-8);
      }
    }
  }
}

TEST_CASE("zero-curvature family has vanishing closed-form tensor") {
  for (const char* sign : {"+", "-"}) {
    const FamilyInstance fam = make_family("zero_curvature", {{"c", 1.0}, {"sign", sign}}, 3);
    for (const PointPair& pair : testing::family_pairs(fam, 100, 73)) {
      CHECK(max_abs(riemann_projective_closed(*fam.projective, pair).R) / pair.y.squaredNorm() <= 1e-8);
    }
  }
}

TEST_CASE("quadratic example: isotropic form with nonzero trace") {
  const ProjectiveProfile p = quadratic_profile(1.0, 0.5);
  double trace_max = 0.0;
  for (const PointPair& pair : testing::ball_pairs(3, 50, 74)) {
    const Jet2RS j = p.p.jet(invariants(pair).r, invariants(pair).s);
    const Mat r = riemann_generic(make_projective_spray("q", 3, p), pair, dual_engine).R;
    const Mat rebuilt = isotropic_form(ricci_trace(j, pair), pair.y);
    CHECK(tensor_error(rebuilt, r, pair.y) <= 1e-10);
    trace_max = std::max(trace_max, std::abs(r.trace()) / pair.y.squaredNorm());
  }
  CHECK(trace_max > 1e-2);
}

TEST_CASE("scalar data") {
  const PointPair pair{vec({0.1, 0.2}), vec({1, -1})};
  const ScalarData zero = scalar_data(flat_profile(), pair);
  CHECK(zero.R == 0.0);
  CHECK(zero.tau.norm() == 0.0);

  const FinslerMetric funk = funk_metric(3);
  const ProjectiveProfile fp = funk_profile(0.0);
  for (const PointPair& q : testing::ball_pairs(3, 50, 75, 0.9)) {
    const double f = funk(q.x, q.y);
    CHECK(scalar_data(fp, q).R == doctest::Approx(-0.25 * f * f).epsilon(1e-12));
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ProjectiveProfile p = testing::random_polynomial(seed);
    for (const PointPair& q : testing::ball_pairs(4, 20, 100 + seed)) {
      const ScalarData d = scalar_data(p, q);
      CHECK(d.contraction_residual <= 1e-9 * (1.0 + std::abs(d.R)));
    }
  }
}

TEST_CASE("isotropic residual on hand-checked profiles") {
  const Jet2RS linear_s{0.3, 0, 1, 0, 0, 0};
  CHECK(isotropic_residual(linear_s, 0.3) == 0.0);
  const Jet2RS p_r{0.5, 1, 0, 0, 0, 0};
  CHECK(isotropic_residual(p_r, 0.2) == -1.0);
  const ProjectiveProfile q = quadratic_profile(0.7, -0.2);
  for (const PointPair& pair : testing::ball_pairs(3, 20, 76)) {
    const auto rs = invariants(pair);
    CHECK(std::abs(isotropic_residual(q.p.jet(rs.r, rs.s), rs.s)) <= 1e-14);
  }
}

TEST_CASE("defect tensor for p = r at a hand-checked pair") {
  const ProjectiveProfile p{Profile::from_expression("r", [](auto r, auto) { return r; })};
  const Mat d = isotropic_defect_tensor(p, {vec({1, 0}), vec({0, 1})});
  Mat want = Mat::Zero(2, 2);
  want(1, 0) = 3.0;
  CHECK(max_abs(d - want) <= 1e-14);
}

TEST_CASE("defect tensor equals three times the isotropy residual times (s y - |y| x) y") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProjectiveProfile p = testing::random_polynomial(seed);
    for (int n : testing::kDims) {
      for (const PointPair& pair : testing::ball_pairs(n, 100, 200 + seed)) {
        const auto rs = invariants(pair);
        const Jet2RS j = p.p.jet(rs.r, rs.s);
        const double ny = pair.y.norm();
        const Vec w = rs.s * pair.y - ny * pair.x;
        const Mat rhs = 3.0 * isotropic_residual(j, rs.s) * pair.y * w.transpose();
        const double scale = pair.y.squaredNorm() * jet_scale(j) * jet_scale(j);
        CHECK(max_abs(isotropic_defect_from_jet(j, pair) - rhs) <= 1e-8 * scale);
      }
    }
  }
}

TEST_CASE("trace gradient matches a differenced trace of the defining formula") {
  const double h = 1e-5;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const ProjectiveProfile p = testing::random_polynomial(seed);
    const SprayField g = make_projective_spray("poly", 3, p);
    for (const PointPair& pair : testing::ball_pairs(3, 10, 300 + seed)) {
      const auto rs = invariants(pair);
      const TraceData t = ricci_trace(p.p.jet(rs.r, rs.s), pair);
      CHECK(t.trace == doctest::Approx(riemann_generic(g, pair, dual_engine).R.trace()).epsilon(1e-12));
      for (int k = 0; k < 3; ++k) {
        const Vec e = Vec::Unit(3, k) * h;
        const double hi = riemann_generic(g, {pair.x, pair.y + e}, dual_engine).R.trace();
        const double lo = riemann_generic(g, {pair.x, pair.y - e}, dual_engine).R.trace();
        CHECK(t.gradient(k) == doctest::Approx((hi - lo) / (2 * h)).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("zero residuals and their dependency") {
  const ZeroResiduals z = zero_residuals(Jet2RS{}, 0.4);
  CHECK(z.c8 == 0.0);
  CHECK(z.c9 == 0.0);
  CHECK(z.c10 == 0.0);

  const ProjectiveProfile cubic{Profile::from_expression("r+s^3", [](auto r, auto s) { return r + s * s * s; })};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double r = u(rng) + 1.0, s = u(rng);
    CHECK(zero_residuals(cubic.p.jet(r, s), s).dependency <= 1e-12);
    const Jet2RS arbitrary{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    CHECK(zero_residuals(arbitrary, s).dependency <= 1e-12);
  }
}

TEST_CASE("classification verdicts") {
  SamplePlan plan;
  plan.count = 200;
  plan.radius = 0.9;
  CHECK(classify(flat_profile(), plan).verdict == Verdict::Zero);
  CHECK(classify(zero_curvature_profile({1.0, Branch::Minus}), plan).verdict == Verdict::Zero);
  CHECK(classify(funk_profile(0.0), plan).verdict == Verdict::IsotropicNonzero);
  CHECK(classify(quadratic_profile(1.0, 0.0), plan).verdict == Verdict::IsotropicNonzero);
  const ProjectiveProfile rs2{Profile::from_expression("r s^2", [](auto r, auto s) { return r * s * s; })};
  const ResidualReport rep = classify(rs2, plan);
  CHECK(rep.verdict == Verdict::ScalarOnly);
  CHECK(rep.residual_c5.max > 1e-3);
  CHECK(rep.dependency_max <= 1e-12);
  CHECK(rep.samples == 200);
}
