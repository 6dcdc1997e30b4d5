#pragma once

#include "spraylab/curvature.hpp"
#include "spraylab/families.hpp"
#include "spraylab/finsler.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace spraylab {

using Json = nlohmann::ordered_json;

/// Typed access to a JSON object with errors that name the offending field.
class Params {
 public:
  Params(const Json& j, std::string path);

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const;
  double number(const std::string& key, std::optional<double> fallback = {}) const;
  long integer(const std::string& key, std::optional<long> fallback = {}) const;
  bool boolean(const std::string& key, std::optional<bool> fallback = {}) const;
  std::string string(const std::string& key, std::optional<std::string> fallback = {}) const;
  std::vector<double> numbers(const std::string& key) const;
  Params object(const std::string& key) const;
  const Json& raw(const std::string& key) const;

  /// SchemaError for keys outside `allowed`.
  void only(std::initializer_list<const char*> allowed) const;

  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const Json* j_;
  std::string path_;
};

/// A catalog family instantiated in a fixed dimension, with whatever side data
/// the checks need.
struct FamilyInstance {
  std::string family;
  int dim = 0;
  SprayField spray;
  std::optional<ProjectiveProfile> projective;
  std::optional<WeakIsoWitness> witness;
  std::optional<FinslerMetric> metric;  // a metric known to induce this spray
  std::optional<Verdict> expected;      // known classification
  bool isotropic_family = false;        // C5 must vanish
  bool zero_family = false;             // C8, C9 must vanish
  double sample_radius = 1.0;
  // Samples keep |s| ≥ min_abs_s. The isotropic family is only piecewise smooth
  // across s = 0, and difference stencils must not straddle that seam.
  double min_abs_s = 0.0;
};

std::vector<std::string> family_names();
std::vector<std::string> metric_names();

/// Throws UnknownFamily or SchemaError (with the field path).
FamilyInstance make_family(const std::string& name, const Json& params, int dim,
                           const std::string& path = "config.spray.params");
FinslerMetric make_named_metric(const std::string& name, const Json& params, int dim,
                                const std::string& path = "config.spray.params");

}  // namespace spraylab
