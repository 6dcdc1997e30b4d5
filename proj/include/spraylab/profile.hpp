#pragma once

#include "spraylab/jet.hpp"

#include <memory>
#include <string>

namespace spraylab {

/// A scalar function of the invariant coordinates (r, s) with jet access.
///
/// Profiles built from an expression carry exact jets through hyper-dual
/// evaluation. Profiles built from a jet function (quadrature families,
/// tabulated data) are lifted to hyper-duals by second-order Taylor composition.
class Profile {
 public:
  using JetFn = std::function<Jet2RS(double r, double s)>;
  using DualFn = std::function<Dual1(const Dual1& r, const Dual1& s)>;

  Profile() = default;

  template <class Fn>
  static Profile from_expression(std::string name, Fn fn, RSDomain domain = {}) {
    Profile p;
    p.name_ = std::move(name);
    p.domain_ = std::move(domain);
    p.value_ = [fn](double r, double s) { return fn(r, s); };
    p.jet_ = [fn](double r, double s) { return jet_from_expression(fn, r, s); };
    p.dual_ = [fn](const Dual1& r, const Dual1& s) { return fn(r, s); };
    return p;
  }

  /// `value` may be omitted, in which case the jet's value is used.
  static Profile from_jet(std::string name, JetFn jet, RSDomain domain = {}, RSFunction value = {});

  static Profile constant(double c);

  const std::string& name() const { return name_; }
  bool in_domain(double r, double s) const { return !domain_ || domain_(r, s); }
  const RSDomain& domain() const { return domain_; }

  /// All evaluators throw DomainExit outside the declared domain.
  double value(double r, double s) const;
  Jet2RS jet(double r, double s) const;
  Dual1 dual(const Dual1& r, const Dual1& s) const;

 private:
  void require_domain(double r, double s) const;

  std::string name_;
  RSDomain domain_;
  RSFunction value_;
  JetFn jet_;
  DualFn dual_;
};

}  // namespace spraylab
