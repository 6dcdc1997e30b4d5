#pragma once

#include "spraylab/catalog.hpp"
#include "spraylab/curvature.hpp"
#include "spraylab/families.hpp"
#include "spraylab/invariants.hpp"
#include "spraylab/sampling.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace spraylab::testing {

inline constexpr int kDims[] = {2, 3, 5};

// Families with default parameters that every property test sweeps.
inline std::vector<std::pair<std::string, Json>> projective_catalog() {
  return {
      {"flat", Json::object()},
      {"spaceform", {{"mu", 1.0}}},
      {"spaceform", {{"mu", -0.5}}},
      {"quadratic_example", {{"C1", 1.0}, {"C2", 0.5}}},
      {"funk", {{"C", 0.0}}},
      {"funk", {{"C", 0.7}}},
      {"zero_curvature", {{"c", 1.0}, {"sign", "+"}}},
      {"zero_curvature", {{"c", 1.0}, {"sign", "-"}}},
      {"weakiso1", {{"mu", 1.0}, {"eps", 1.0}}},
      {"weakiso2", {{"b", 1.0}, {"c", 1.0}}},
      {"isotropic_uv", {{"u", {{"kind", "exp"}}}, {"v", {{"kind", "affine"}, {"b", 1.0}}}}},
  };
}

// Seeded pairs inside a family's sampling ball and domain.
inline std::vector<PointPair> family_pairs(const FamilyInstance& fam, int count, std::uint64_t seed) {
  SamplePlan plan;
  plan.dim = fam.dim;
  plan.count = count;
  plan.seed = seed;
  plan.radius = fam.sample_radius;
  return sample_pairs(plan, [&](const PointPair& pair) {
    return fam.spray.in_domain(pair) && std::abs(pair.x.dot(pair.y)) >= fam.min_abs_s * pair.y.norm();
  });
}

inline std::vector<PointPair> ball_pairs(int dim, int count, std::uint64_t seed, double radius = 1.0) {
  SamplePlan plan;
  plan.dim = dim;
  plan.count = count;
  plan.seed = seed;
  plan.radius = radius;
  return sample_pairs(plan);
}

// (r, s) with 0 < s ≤ √r and r < r_max; `negative` mirrors s.
inline std::vector<std::pair<double, double>> rs_samples(int count, std::uint64_t seed, double r_max, bool negative = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> out;
  while (static_cast<int>(out.size()) < count) {
    const double r = r_max * u(rng);
    const double s = std::sqrt(r) * u(rng);
    if (s <= 0.0) continue;
    out.emplace_back(r, negative ? -s : s);
  }
  return out;
}

inline Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Jet of a profile through an independent plain central-difference stencil.
template <class Fn>
Jet2RS stencil_jet(const Fn& f, double r, double s, double h = 1e-4) {
  Jet2RS j;
  j.v = f(r, s);
  j.d_r = (f(r + h, s) - f(r - h, s)) / (2 * h);
  j.d_s = (f(r, s + h) - f(r, s - h)) / (2 * h);
  j.d_rr = (f(r + h, s) - 2 * j.v + f(r - h, s)) / (h * h);
  j.d_ss = (f(r, s + h) - 2 * j.v + f(r, s - h)) / (h * h);
  j.d_rs = (f(r + h, s + h) - f(r + h, s - h) - f(r - h, s + h) + f(r - h, s - h)) / (4 * h * h);
  return j;
}

inline double jet_distance(const Jet2RS& a, const Jet2RS& b) {
  return std::max({std::abs(a.v - b.v), std::abs(a.d_r - b.d_r), std::abs(a.d_s - b.d_s),
                   std::abs(a.d_rr - b.d_rr), std::abs(a.d_rs - b.d_rs), std::abs(a.d_ss - b.d_ss)});
}

struct NamedSpec {
  const char* name;
  IsotropicFamilySpec spec;
};

// Five (u, v) pairs, three of them with non-polynomial u and one relying on differenced derivatives.
inline std::vector<NamedSpec> isotropic_specs() {
  std::vector<NamedSpec> out;
  {
    IsotropicFamilySpec s;
    s.u = [](double t) { return t; };
    s.du = [](double) { return 1.0; };
    s.d2u = [](double) { return 0.0; };
    s.v = [](double r) { return r; };
    s.dv = [](double) { return 1.0; };
    out.push_back({"u=t", s});
  }
  {
    IsotropicFamilySpec s;
    s.u = [](double t) { return std::exp(t); };
    s.du = s.u;
    s.d2u = s.u;
    s.v = [](double r) { return r; };
    s.dv = [](double) { return 1.0; };
    out.push_back({"u=exp", s});
  }
  {
    IsotropicFamilySpec s;
    s.u = [](double t) { return -0.5 / std::sqrt(t + 1.0); };
    s.du = [](double t) { return 0.25 / std::pow(t + 1.0, 1.5); };
    s.d2u = [](double t) { return -0.375 / std::pow(t + 1.0, 2.5); };
    s.v = [](double) { return 0.0; };
    s.dv = [](double) { return 0.0; };
    s.u_domain = [](double t) { return t > -1.0; };
    out.push_back({"u=-1/(2sqrt(t+1))", s});
  }
  {
    IsotropicFamilySpec s;
    s.u = [](double t) { return std::cos(3.0 * t); };
    s.du = [](double t) { return -3.0 * std::sin(3.0 * t); };
    s.d2u = [](double t) { return -9.0 * std::cos(3.0 * t); };
    s.v = [](double r) { return std::exp(r); };
    s.dv = s.v;
    out.push_back({"u=cos(3t)", s});
  }
  {
    IsotropicFamilySpec s;
    s.u = [](double t) { return t * t - 0.5; };
    s.v = [](double r) { return r * r; };
    out.push_back({"u=t^2-1/2, differenced", s});
  }
  return out;
}

// p = Σ c_ij r^i s^j with i, j ≤ 3.
inline ProjectiveProfile random_polynomial(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 16> c;
  for (double& v : c) v = u(rng);
  return {Profile::from_expression("poly", [c](auto r, auto s) {
    auto acc = 0.0 * r;
    auto ri = 1.0 + 0.0 * r;
    for (int i = 0; i < 4; ++i) {
      auto sj = 1.0 + 0.0 * s;
      for (int j = 0; j < 4; ++j) {
        acc = acc + c[4 * i + j] * ri * sj;
        sj = sj * s;
      }
      ri = ri * r;
    }
    return acc;
  })};
}

// Geodesics of this spray bend away from straight lines.
inline SprayField beta_one_spray(int n) {
  return make_spherical_spray("beta_one", n, {Profile::constant(0.0), Profile::constant(1.0)});
}

}  // namespace spraylab::testing
