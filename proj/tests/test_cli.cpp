#include "spraylab/job.hpp"
#include "spraylab/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace spraylab;

namespace {

JobResult run(const std::string& text, std::optional<Task> task = {}, const JobOverrides& o = {}) {
  return run_job(parse_job(Json::parse(text), task, o));
}

std::string parse_error(const std::string& text, std::optional<Task> task = {}) {
  try {
    parse_job(Json::parse(text), task);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Json check(const Json& doc, const std::string& name) {
  for (const Json& c : doc.at("checks")) {
    if (c.at("name") == name) return c;
  }
  return Json();
}

}  // namespace

TEST_CASE("classify the zero-curvature family") {
  const JobResult r = run(R"({"task": "classify", "spray": {"family": "zero_curvature", "params": {"c": 1, "sign": "+"},
                              "dim": 3}, "samples": 200, "seed": 42})");
  REQUIRE(r.exit_code == 0);
  const Json doc = Json::parse(r.document);
  CHECK(doc.at("verdict") == "zero");
  CHECK(doc.at("samples") == 200);
}

TEST_CASE("flag curvature of the Funk family") {
  const JobResult r = run(R"({"task": "flagcurv", "spray": {"family": "funk", "params": {"C": 0}, "dim": 3}})");
  REQUIRE(r.exit_code == 0);
  const Json doc = Json::parse(r.document);
  CHECK(check(doc, "K_mean_error").at("value").get<double>() <= 1e-5);
  CHECK(check(doc, "K_mean_error").at("pass") == true);
}

TEST_CASE("flat geodesic CSV is a straight line") {
  const JobResult r = run(R"({"task": "geodesic", "spray": {"family": "flat", "dim": 2},
                              "geodesic": {"x0": [0, 0], "y0": [1, 0.5], "T": 1, "step": 0.01}})");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.document);
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,x1,x2,y1,y2");
  int rows = 0;
  while (std::getline(is, line)) {
    double t, x1, x2, y1, y2;
    char c;
    std::istringstream row(line);
    row >> t >> c >> x1 >> c >> x2 >> c >> y1 >> c >> y2;
    CHECK(std::abs(x1 - t) <= 1e-12);
    CHECK(std::abs(x2 - 0.5 * t) <= 1e-12);
    ++rows;
  }
  CHECK(rows == 101);
}

TEST_CASE("verify and curvature reports pass on catalog data") {
  CHECK(run(R"({"task": "verify", "spray": {"family": "weakiso1", "dim": 3}, "samples": 20})").exit_code == 0);
  CHECK(run(R"({"task": "verify", "spray": {"metric": "funk", "dim": 3}, "samples": 10})").exit_code == 0);
  const JobResult c = run(R"({"task": "curvature", "spray": {"family": "funk", "dim": 2}, "samples": 3})");
  REQUIRE(c.exit_code == 0);
  const Json doc = Json::parse(c.document);
  CHECK(doc.at("tensors").size() == 3);
}

TEST_CASE("identical jobs produce identical documents") {
  const std::string text = R"({"task": "verify", "spray": {"family": "funk", "dim": 3}, "samples": 15, "seed": 8})";
  CHECK(run(text).document == run(text).document);
  JobOverrides o;
  o.seed = 9;
  CHECK(run(text).document != run(text, {}, o).document);
}

TEST_CASE("check failures exit with 2") {
  // A loose tolerance calls the Funk family flat, which contradicts its known verdict.
  const JobResult r = run(R"({"task": "classify", "spray": {"family": "funk", "dim": 3}, "samples": 20,
                              "tol": {"abs_tol": 100}})");
  CHECK(r.exit_code == 2);
  const Json doc = Json::parse(r.document);
  CHECK(doc.at("verdict") == "zero");
  CHECK(check(doc, "verdict_mismatch").at("pass") == false);
}

TEST_CASE("input errors name the offending field") {
  CHECK(parse_error(R"([1, 2])").find("config") != std::string::npos);
  CHECK(parse_error(R"({"spray": {"family": "flat"}})").find("config.task") != std::string::npos);
  CHECK(parse_error(R"({"task": "bake", "spray": {"family": "flat"}})").find("config.task") != std::string::npos);
  CHECK(parse_error(R"({"task": "classify", "spray": {"family": "flat", "dim": 1}})").find("config.spray.dim") !=
        std::string::npos);
  CHECK(parse_error(R"({"task": "classify", "spray": {"family": "flat"}, "samples": 0})").find("config.samples") !=
        std::string::npos);
  CHECK(parse_error(R"({"task": "classify", "spray": {"family": "flat"}, "colour": 1})").find("colour") !=
        std::string::npos);
  CHECK(parse_error(R"({"task": "classify", "spray": {"family": "flat"}})", Task::Verify).find("config.task") !=
        std::string::npos);
  CHECK(parse_error(R"({"task": "classify", "spray": {"family": "flat", "metric": "funk"}})")
            .find("config.spray") != std::string::npos);

  JobResult r = run(R"({"task": "classify", "spray": {"family": "randers"}})");
  CHECK(r.exit_code == 1);
  CHECK(r.error.find("UnknownFamily") != std::string::npos);
  CHECK(r.error.find("config.spray.family") != std::string::npos);

  r = run(R"({"task": "classify", "spray": {"family": "zero_curvature", "params": {"c": -1}}})");
  CHECK(r.exit_code == 1);
  CHECK(r.error.find("config.spray.params.c") != std::string::npos);

  r = run(R"({"task": "classify", "spray": {"family": "isotropic_uv", "params": {"u": {"kind": "sinh"}}}})");
  CHECK(r.exit_code == 1);
  CHECK(r.error.find("config.spray.params.u.kind") != std::string::npos);

  r = run(R"({"task": "geodesic", "spray": {"family": "funk", "dim": 2}, "geodesic": {"x0": [2, 0], "y0": [1, 0]}})");
  CHECK(r.exit_code == 1);
  CHECK(r.error.find("DomainExit") != std::string::npos);
}

TEST_CASE("report documents serialize deterministically") {
  Report rep;
  rep.set("name", "x");
  rep.set("values", Json::array({0.1, 1.0 / 3.0}));
  CHECK(rep.add_check("ok", 1e-9, 1e-8));
  CHECK(!rep.add_check("bad", 1.0, 1e-8));
  CHECK(!rep.add_check("nan", std::nan(""), 1.0));
  const std::string text = rep.dump();
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  CHECK(text.find("null") != std::string::npos);
  const Json doc = Json::parse(text);
  CHECK(doc.at("checks_failed") == 2);
}
