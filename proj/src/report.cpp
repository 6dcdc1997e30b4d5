#include "spraylab/report.hpp"

#include <cmath>
#include <cstdio>

namespace spraylab {

Report::Report() : doc_(Json::object()), checks_(Json::array()) {}

bool Report::add_check(const std::string& name, double value, double threshold) {
  const bool pass = std::isfinite(value) && value <= threshold;
  if (!pass) ++failures_;
  Json c = Json::object();
  c["name"] = name;
  c["value"] = value;
  c["threshold"] = threshold;
  c["pass"] = pass;
  checks_.push_back(std::move(c));
  return pass;
}

std::string Report::dump() const {
  Json full = doc_;
  full["checks_passed"] = static_cast<int>(checks_.size()) - failures_;
  full["checks_failed"] = failures_;
  full["checks"] = checks_;
  return dump_json(full) + "\n";
}

namespace {

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(item.key()).dump() + ": ";
        write(out, item.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(out, j[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  write(out, j, 0);
  return out;
}

}  // namespace spraylab
