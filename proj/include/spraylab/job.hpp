#pragma once

#include "spraylab/catalog.hpp"
#include "spraylab/geodesic.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace spraylab {

enum class Task { Classify, Curvature, Geodesic, Verify, Flagcurv };

std::optional<Task> parse_task(std::string_view name);
std::string_view to_string(Task task);

struct GeodesicJob {
  std::optional<Vec> x0, y0;  // first sample pair when absent
  double t_end = 1.0;
  GeodesicOptions options;
};

/// A parsed config document. Exactly one of `family` / `metric` is set.
struct JobSpec {
  Task task = Task::Classify;
  std::string family;
  std::string metric;
  Json params = Json::object();
  int dim = 3;
  int samples = 0;  // 0 picks the task's default
  std::uint64_t seed = 1;
  ToleranceConfig tol;
  std::string engine;  // empty picks the task's default
  GeodesicJob geodesic;
  std::string output_path;
  std::string format;  // "json-doc" or "csv"; empty picks the task's default
};

struct JobOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> tol;
  std::optional<std::string> out;
};

/// Throws SchemaError / UnknownFamily naming the offending field.
JobSpec parse_job(const Json& config, std::optional<Task> cli_task, const JobOverrides& overrides = {});

struct JobResult {
  int exit_code = 0;     // 0 pass, 1 usage or domain error, 2 check failure
  std::string document;  // report or CSV; may be partial when exit_code is 1
  std::string error;
};

/// Never throws; library errors become exit code 1 with a message.
JobResult run_job(const JobSpec& job);

}  // namespace spraylab
