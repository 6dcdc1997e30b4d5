#include "spraylab/profile.hpp"

#include <cmath>
#include <sstream>

namespace spraylab {

Profile Profile::from_jet(std::string name, JetFn jet, RSDomain domain, RSFunction value) {
  Profile p;
  p.name_ = std::move(name);
  p.domain_ = std::move(domain);
  p.jet_ = std::move(jet);
  if (value) {
    p.value_ = std::move(value);
  } else {
    p.value_ = [j = p.jet_](double r, double s) { return j(r, s).v; };
  }
  p.dual_ = [j = p.jet_](const Dual1& r, const Dual1& s) { return lift_jet(j(r.a, s.a), r, s); };
  return p;
}

Profile Profile::constant(double c) {
  return from_expression("constant", [c](auto r, auto) { return 0.0 * r + c; });
}

void Profile::require_domain(double r, double s) const {
  if (!std::isfinite(r) || !std::isfinite(s) || !in_domain(r, s)) {
    std::ostringstream os;
    os << "profile '" << name_ << "' evaluated outside its domain at (r=" << r << ", s=" << s << ")";
    throw Error(ErrorCode::DomainExit, os.str());
  }
}

double Profile::value(double r, double s) const {
  require_domain(r, s);
  return value_(r, s);
}

Jet2RS Profile::jet(double r, double s) const {
  require_domain(r, s);
  return jet_(r, s);
}

Dual1 Profile::dual(const Dual1& r, const Dual1& s) const {
  require_domain(r.a, s.a);
  return dual_(r, s);
}

}  // namespace spraylab
