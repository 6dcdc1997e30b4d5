#pragma once

#include "spraylab/catalog.hpp"

#include <string>

namespace spraylab {

/// Flat report document: insertion-ordered keys and a `checks` array of
/// {name, value, threshold, pass}. A check passes when value ≤ threshold.
class Report {
 public:
  Report();

  template <class T>
  void set(const std::string& key, T&& value) {
    doc_[key] = std::forward<T>(value);
  }

  bool add_check(const std::string& name, double value, double threshold);
  bool all_pass() const { return failures_ == 0; }
  int failures() const { return failures_; }

  const Json& doc() const { return doc_; }
  std::string dump() const;

 private:
  Json doc_;
  Json checks_;
  int failures_ = 0;
};

/// JSON text with two-space indentation, numbers at 17 significant digits and
/// non-finite numbers as null.
std::string dump_json(const Json& j);

}  // namespace spraylab
