#pragma once

#include "spraylab/spray.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace spraylab {

using ScalarFn = std::function<double(double)>;

/// p(r,s) = s·(∫_{s0}^{s} u(r−σ²)/σ² dσ + v(r)).
struct IsotropicFamilySpec {
  ScalarFn u;
  ScalarFn du;   // u′; central-differenced when empty
  ScalarFn d2u;  // u″, used only near σ = 0 in the r-derivative; differenced when empty
  // A differenced u′ or u″ caps the quadrature tolerance at 1e-9.
  ScalarFn v;
  ScalarFn dv;   // v′; central-differenced when empty
  // Basepoint magnitude as a function of r (default √r/2) and its derivative.
  // The sign follows s, so each evaluation stays in one sign region.
  ScalarFn s0;
  ScalarFn ds0;
  std::function<bool(double t)> u_domain;  // where u may be evaluated; empty means everywhere
  double quad_tol = 1e-13;
};

/// Throws SignCrossing when the path [s0, s] would contain σ = 0.
Jet2RS isotropic_p(const IsotropicFamilySpec& spec, double r, double s);
ProjectiveProfile isotropic_profile(const IsotropicFamilySpec& spec);

enum class Branch { Plus, Minus };

/// p(r,s) = (s ± √(s² − r + c)) / (c − r), c > 0, on r ≤ c(1 − 1e-9).
struct ZeroCurvatureSpec {
  double c = 1.0;
  Branch sign = Branch::Plus;
};

ProjectiveProfile zero_curvature_profile(const ZeroCurvatureSpec& spec);
Jet2RS zero_curvature_p(const ZeroCurvatureSpec& spec, double r, double s);

/// max over an s-grid of |p(r,s) − s·(∫_{s0}^{s} u/σ² dσ + ṽ)|, where ṽ matches
/// the two sides at s0. Zero means p and the (u, v) form differ only by the v(r) freedom.
/// Without `du` the integral is only resolved to ~1e-9.
double isotropic_equivalence(const std::function<double(double r, double s)>& p, const ScalarFn& u, double r,
                             double s_lo, double s_hi, double s0, int grid = 64, const ScalarFn& du = {});

/// The equivalence above with u(t) = ∓1/√(c − t). `u_branch` defaults to the
/// spec's own sign; passing the other sign gives a mismatched pairing.
double remark4_equivalence(const ZeroCurvatureSpec& spec, double r, double s_lo, double s_hi,
                           std::optional<Branch> u_branch = {});

/// p(r,s) = (√(s² − r + 1) + s) / (2(1 − r)) + C s
ProjectiveProfile funk_profile(double C);
Jet2RS funk_p(double C, double r, double s);

/// p(r,s) = s² + (r + C̃₂) s + r − C₁
ProjectiveProfile quadratic_profile(double c1, double c2_tilde);

/// Γ = |y|·γ(r,s), θ = a(r)⟨x,y⟩.
struct WeakIsoWitness {
  Profile gamma;
  ScalarFn a;
};

/// p = μ/√(ε − r) + 2s/(ε − r); γ ≡ 1, a = μ/(ε − r)^{3/2}.
std::pair<ProjectiveProfile, WeakIsoWitness> weakiso_example1(double mu, double eps);

/// γ = √(1 + c(r − s²))/(1 + cr); p = (2b(1 + cr)^{1/4}/c)·γ; a = b/(1 + cr)^{3/4}.
std::pair<ProjectiveProfile, WeakIsoWitness> weakiso_example2(double b, double c);

/// α = −μs/(1 + μr), β ≡ 0.
SphericalProfile spaceform_spray(double mu);
ProjectiveProfile spaceform_projective(double mu);

ProjectiveProfile flat_profile();
SphericalProfile flat_spherical();

/// Cubic B-spline tensor interpolation of p on a uniform (r, s) grid.
/// values[i][j] = p(r0 + i·dr, s0 + j·ds); at least 5 nodes per axis.
ProjectiveProfile tabulated_profile(double r0, double dr, double s0, double ds,
                                    std::vector<std::vector<double>> values);

}  // namespace spraylab
