#include "spraylab/catalog.hpp"

#include <cmath>

namespace spraylab {

Params::Params(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {
  if (!j.is_object() && !j.is_null()) throw Error(ErrorCode::SchemaError, path_ + ": expected an object");
}

void Params::fail(const std::string& key, const std::string& what) const {
  throw Error(ErrorCode::SchemaError, path_ + "." + key + ": " + what);
}

bool Params::has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

const Json& Params::raw(const std::string& key) const {
  if (!has(key)) fail(key, "missing");
  return j_->at(key);
}

double Params::number(const std::string& key, std::optional<double> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
    fail(key, "missing");
  }
  const Json& v = j_->at(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(key, "must be finite");
  return d;
}

long Params::integer(const std::string& key, std::optional<long> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
    fail(key, "missing");
  }
  const Json& v = j_->at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<long>();
}

bool Params::boolean(const std::string& key, std::optional<bool> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
    fail(key, "missing");
  }
  const Json& v = j_->at(key);
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string Params::string(const std::string& key, std::optional<std::string> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
    fail(key, "missing");
  }
  const Json& v = j_->at(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> Params::numbers(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

Params Params::object(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_object()) fail(key, "expected an object");
  return Params(v, path_ + "." + key);
}

void Params::only(std::initializer_list<const char*> allowed) const {
  if (!j_->is_object()) return;
  for (const auto& item : j_->items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) fail(item.key(), "unknown field");
  }
}

namespace {

struct ScalarKind {
  ScalarFn f, df, d2f;
  std::function<bool(double)> domain;
};

ScalarKind u_kind(const Params& p) {
  p.only({"kind", "a", "b"});
  const std::string kind = p.string("kind", "affine");
  const double a = p.number("a", kind == "affine" ? 0.0 : 1.0);
  const double b = p.number("b", 1.0);
  if (kind == "affine") {
    return {[a, b](double t) { return a + b * t; }, [b](double) { return b; }, [](double) { return 0.0; }, {}};
  }
  if (kind == "exp") {
    return {[a, b](double t) { return a * std::exp(b * t); }, [a, b](double t) { return a * b * std::exp(b * t); },
            [a, b](double t) { return a * b * b * std::exp(b * t); }, {}};
  }
  if (kind == "inv_sqrt") {
    return {[a, b](double t) { return a / std::sqrt(t + b); },
            [a, b](double t) { return -0.5 * a / ((t + b) * std::sqrt(t + b)); },
            [a, b](double t) { return 0.75 * a / ((t + b) * (t + b) * std::sqrt(t + b)); },
            [b](double t) { return t + b > 0.0; }};
  }
  if (kind == "cos") {
    return {[a, b](double t) { return a * std::cos(b * t); }, [a, b](double t) { return -a * b * std::sin(b * t); },
            [a, b](double t) { return -a * b * b * std::cos(b * t); }, {}};
  }
  p.fail("kind", "unknown kind '" + kind + "' (affine, exp, inv_sqrt, cos)");
}

ScalarKind v_kind(const Params& p) {
  p.only({"kind", "a", "b"});
  const std::string kind = p.string("kind", "affine");
  const double a = p.number("a", kind == "affine" ? 0.0 : 1.0);
  const double b = p.number("b", kind == "affine" ? 0.0 : 1.0);
  if (kind == "affine") return {[a, b](double r) { return a + b * r; }, [b](double) { return b; }, {}, {}};
  if (kind == "exp") {
    return {[a, b](double r) { return a * std::exp(b * r); }, [a, b](double r) { return a * b * std::exp(b * r); },
            {}, {}};
  }
  p.fail("kind", "unknown kind '" + kind + "' (affine, exp)");
}

Branch branch(const Params& p, const std::string& key) {
  const std::string s = p.string(key, "+");
  if (s == "+" || s == "plus") return Branch::Plus;
  if (s == "-" || s == "minus") return Branch::Minus;
  p.fail(key, "expected \"+\" or \"-\"");
}

// "config.spray.params" -> "config.spray.<key>"
std::string sibling(const std::string& path, const std::string& key) {
  const auto dot = path.rfind('.');
  return dot == std::string::npos ? key : path.substr(0, dot + 1) + key;
}

double positive(const Params& p, const std::string& key, std::optional<double> fallback) {
  const double v = p.number(key, fallback);
  if (!(v > 0.0)) p.fail(key, "must be positive");
  return v;
}

void set_projective(FamilyInstance& fam, const std::string& name, ProjectiveProfile profile) {
  fam.spray = make_projective_spray(name, fam.dim, profile);
  fam.projective = std::move(profile);
}

}  // namespace

std::vector<std::string> family_names() {
  return {"flat", "spaceform", "isotropic_uv", "zero_curvature", "quadratic_example",
          "funk", "weakiso1", "weakiso2", "custom_tabulated"};
}

std::vector<std::string> metric_names() { return {"minkowski", "spaceform_alpha", "funk", "berwald"}; }

FamilyInstance make_family(const std::string& name, const Json& params, int dim, const std::string& path) {
  if (dim < 2) throw Error(ErrorCode::SchemaError, "spray.dim: must be at least 2");
  const Params p(params, path);
  FamilyInstance fam;
  fam.family = name;
  fam.dim = dim;

  if (name == "flat") {
    p.only({"radius"});
    set_projective(fam, name, flat_profile());
    fam.metric = minkowski_metric(dim);
    fam.expected = Verdict::Zero;
  } else if (name == "spaceform") {
    p.only({"mu", "radius"});
    const double mu = p.number("mu", 1.0);
    set_projective(fam, name, spaceform_projective(mu));
    fam.metric = spaceform_metric(dim, mu);
    fam.expected = mu == 0.0 ? Verdict::Zero : Verdict::IsotropicNonzero;
    if (mu < 0.0) fam.sample_radius = 0.9 / std::sqrt(-mu);
  } else if (name == "isotropic_uv") {
    p.only({"u", "v", "radius"});
    const ScalarKind u = p.has("u") ? u_kind(p.object("u")) : u_kind(Params(Json::object(), path + ".u"));
    const ScalarKind v = p.has("v") ? v_kind(p.object("v")) : v_kind(Params(Json::object(), path + ".v"));
    IsotropicFamilySpec spec;
    spec.u = u.f;
    spec.du = u.df;
    spec.d2u = u.d2f;
    spec.u_domain = u.domain;
    spec.v = v.f;
    spec.dv = v.df;
    set_projective(fam, name, isotropic_profile(spec));
    fam.isotropic_family = true;
    fam.min_abs_s = 0.1;
  } else if (name == "zero_curvature") {
    p.only({"c", "sign", "radius"});
    const double c = positive(p, "c", 1.0);
    const Branch b = branch(p, "sign");
    set_projective(fam, name, zero_curvature_profile({c, b}));
    fam.metric = berwald_metric(dim, c, b == Branch::Plus);
    fam.expected = Verdict::Zero;
    fam.zero_family = true;
    fam.sample_radius = 0.9 * std::sqrt(c);
  } else if (name == "quadratic_example") {
    p.only({"C1", "C2", "radius"});
    set_projective(fam, name, quadratic_profile(p.number("C1", 1.0), p.number("C2", 0.0)));
    fam.isotropic_family = true;
  } else if (name == "funk") {
    p.only({"C", "radius"});
    const double c = p.number("C", 0.0);
    set_projective(fam, name, funk_profile(c));
    if (c == 0.0) {
      fam.metric = funk_metric(dim);
      fam.expected = Verdict::IsotropicNonzero;
    }
    fam.sample_radius = 0.9;
  } else if (name == "weakiso1") {
    p.only({"mu", "eps", "radius"});
    const double eps = positive(p, "eps", 1.0);
    auto [prof, w] = weakiso_example1(positive(p, "mu", 1.0), eps);
    set_projective(fam, name, prof);
    fam.witness = w;
    fam.sample_radius = 0.9 * std::sqrt(eps);
  } else if (name == "weakiso2") {
    p.only({"b", "c", "radius"});
    const double c = p.number("c", 1.0);
    if (c == 0.0) p.fail("c", "must be nonzero");
    auto [prof, w] = weakiso_example2(p.number("b", 1.0), c);
    set_projective(fam, name, prof);
    fam.witness = w;
    if (c < 0.0) fam.sample_radius = 0.9 / std::sqrt(-c);
  } else if (name == "custom_tabulated") {
    p.only({"r0", "dr", "s0", "ds", "values", "radius"});
    const Json& values = p.raw("values");
    if (!values.is_array()) p.fail("values", "expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const Json& row = values[i];
      if (!row.is_array()) p.fail("values[" + std::to_string(i) + "]", "expected an array of numbers");
      rows.emplace_back();
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (!row[k].is_number()) {
          p.fail("values[" + std::to_string(i) + "][" + std::to_string(k) + "]", "expected a number");
        }
        rows.back().push_back(row[k].get<double>());
      }
    }
    const double r0 = p.number("r0"), dr = p.number("dr");
    try {
      set_projective(fam, name, tabulated_profile(r0, dr, p.number("s0"), p.number("ds"), rows));
    } catch (const Error& e) {
      throw Error(ErrorCode::SchemaError, path + ": " + e.what());
    }
    fam.sample_radius = std::sqrt(std::max(0.0, r0 + dr * static_cast<double>(rows.size() - 1)));
  } else {
    throw Error(ErrorCode::UnknownFamily, sibling(path, "family") + ": unknown family '" + name + "'");
  }
  if (p.has("radius")) fam.sample_radius = positive(p, "radius", {});
  return fam;
}

FinslerMetric make_named_metric(const std::string& name, const Json& params, int dim, const std::string& path) {
  if (dim < 2) throw Error(ErrorCode::SchemaError, "spray.dim: must be at least 2");
  const Params p(params, path);
  FinslerMetric m;
  if (name == "minkowski") {
    p.only({"radius"});
    m = minkowski_metric(dim);
  } else if (name == "spaceform_alpha") {
    p.only({"mu", "radius"});
    m = spaceform_metric(dim, p.number("mu", 1.0));
  } else if (name == "funk") {
    p.only({"radius"});
    m = funk_metric(dim);
  } else if (name == "berwald") {
    p.only({"c", "sign", "radius"});
    m = berwald_metric(dim, positive(p, "c", 1.0), branch(p, "sign") == Branch::Plus);
  } else {
    throw Error(ErrorCode::UnknownFamily, sibling(path, "metric") + ": unknown metric '" + name + "'");
  }
  if (p.has("radius")) m.sample_radius = positive(p, "radius", {});
  return m;
}

}  // namespace spraylab
