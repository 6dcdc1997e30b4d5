// spraylab <task> --config <file> [--seed N] [--samples N] [--tol X] [--out PATH]

#include "spraylab/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  using namespace spraylab;

  CLI::App app{"Curvature, classification and verification of spherically symmetric sprays"};
  std::string task_name, config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> tol;
  std::optional<std::string> out;
  app.add_option("task", task_name, "classify | curvature | geodesic | verify | flagcurv")->required();
  app.add_option("--config", config_path, "JobSpec JSON file")->required();
  app.add_option("--seed", seed, "sampling seed (overrides the config)");
  app.add_option("--samples", samples, "sample count (overrides the config)");
  app.add_option("--tol", tol, "absolute tolerance (overrides the config)");
  app.add_option("--out", out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const std::optional<Task> task = parse_task(task_name);
  if (!task) {
    std::cerr << "error: task: unknown task '" << task_name << "'\n";
    return 1;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: --config: cannot read '" << config_path << "'\n";
    return 1;
  }
  JobSpec job;
  try {
    const Json config = Json::parse(in);
    job = parse_job(config, task, {seed, samples, tol, out});
  } catch (const Json::parse_error& e) {
    std::cerr << "error: config: invalid JSON (" << e.what() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const JobResult result = run_job(job);
  if (!result.document.empty()) {
    if (job.output_path.empty()) {
      std::cout << result.document;
    } else {
      std::ofstream os(job.output_path, std::ios::binary);
      os << result.document;
      if (!os) {
        std::cerr << "error: --out: cannot write '" << job.output_path << "'\n";
        return 1;
      }
    }
  }
  if (!result.error.empty()) std::cerr << (result.exit_code == 2 ? "fail: " : "error: ") << result.error << "\n";
  return result.exit_code;
}
