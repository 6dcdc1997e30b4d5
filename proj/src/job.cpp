#include "spraylab/job.hpp"

#include "spraylab/invariants.hpp"
#include "spraylab/report.hpp"
#include "spraylab/weakiso.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace spraylab {

std::optional<Task> parse_task(std::string_view name) {
  if (name == "classify") return Task::Classify;
  if (name == "curvature") return Task::Curvature;
  if (name == "geodesic") return Task::Geodesic;
  if (name == "verify") return Task::Verify;
  if (name == "flagcurv") return Task::Flagcurv;
  return std::nullopt;
}

std::string_view to_string(Task task) {
  switch (task) {
    case Task::Classify: return "classify";
    case Task::Curvature: return "curvature";
    case Task::Geodesic: return "geodesic";
    case Task::Verify: return "verify";
    case Task::Flagcurv: return "flagcurv";
  }
  return "unknown";
}

namespace {

Vec vec_field(const Params& p, const std::string& key, int dim) {
  const std::vector<double> v = p.numbers(key);
  if (static_cast<int>(v.size()) != dim) p.fail(key, "expected " + std::to_string(dim) + " entries");
  return Eigen::Map<const Vec>(v.data(), dim);
}

}  // namespace

JobSpec parse_job(const Json& config, std::optional<Task> cli_task, const JobOverrides& overrides) {
  if (!config.is_object()) throw Error(ErrorCode::SchemaError, "config: expected a JSON object");
  const Params root(config, "config");
  root.only({"task", "spray", "samples", "seed", "tol", "engine", "geodesic", "output"});
  JobSpec job;

  std::optional<Task> file_task;
  if (root.has("task")) {
    const std::string name = root.string("task");
    file_task = parse_task(name);
    if (!file_task) root.fail("task", "unknown task '" + name + "'");
  }
  if (cli_task && file_task && *cli_task != *file_task) {
    root.fail("task", "config says '" + std::string(to_string(*file_task)) + "' but the command line says '" +
                          std::string(to_string(*cli_task)) + "'");
  }
  if (!cli_task && !file_task) root.fail("task", "missing");
  job.task = cli_task ? *cli_task : *file_task;

  const Params spray = root.object("spray");
  spray.only({"family", "metric", "params", "dim"});
  if (spray.has("family") == spray.has("metric")) {
    spray.fail("family", "exactly one of 'family' and 'metric' is required");
  }
  if (spray.has("family")) job.family = spray.string("family");
  if (spray.has("metric")) job.metric = spray.string("metric");
  if (spray.has("params")) {
    job.params = spray.raw("params");
    if (!job.params.is_object()) spray.fail("params", "expected an object");
  }
  const long dim = spray.integer("dim", 3);
  if (dim < 2 || dim > 64) spray.fail("dim", "must lie in [2, 64]");
  job.dim = static_cast<int>(dim);

  const long samples = overrides.samples ? *overrides.samples : root.integer("samples", 0);
  if (samples < 0 || samples > 1000000 || (samples == 0 && (overrides.samples || root.has("samples")))) {
    root.fail("samples", "must lie in [1, 1000000]");
  }
  job.samples = static_cast<int>(samples);

  if (overrides.seed) {
    job.seed = *overrides.seed;
  } else {
    const long seed = root.integer("seed", 1);
    if (seed < 0) root.fail("seed", "must be non-negative");
    job.seed = static_cast<std::uint64_t>(seed);
  }

  if (root.has("tol")) {
    if (root.raw("tol").is_number()) {
      job.tol.abs_tol = root.number("tol");
    } else {
      const Params tol = root.object("tol");
      tol.only({"abs_tol", "rel_tol", "fd_step", "fd_levels"});
      job.tol.abs_tol = tol.number("abs_tol", job.tol.abs_tol);
      job.tol.rel_tol = tol.number("rel_tol", job.tol.rel_tol);
      job.tol.fd_step = tol.number("fd_step", job.tol.fd_step);
      job.tol.fd_levels = static_cast<int>(tol.integer("fd_levels", job.tol.fd_levels));
    }
  }
  if (overrides.tol) job.tol.abs_tol = *overrides.tol;
  try {
    job.tol.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, std::string("config.tol: ") + e.what());
  }

  job.engine = root.string("engine", "");
  if (!job.engine.empty() && job.engine != "finite_difference" && job.engine != "dual" && job.engine != "analytic") {
    root.fail("engine", "expected finite_difference, dual or analytic");
  }

  if (root.has("geodesic")) {
    const Params g = root.object("geodesic");
    g.only({"x0", "y0", "T", "step", "error_control", "error_tol"});
    if (g.has("x0")) job.geodesic.x0 = vec_field(g, "x0", job.dim);
    if (g.has("y0")) job.geodesic.y0 = vec_field(g, "y0", job.dim);
    if (job.geodesic.x0.has_value() != job.geodesic.y0.has_value()) g.fail("y0", "x0 and y0 go together");
    job.geodesic.t_end = g.number("T", 1.0);
    if (!(job.geodesic.t_end > 0.0)) g.fail("T", "must be positive");
    job.geodesic.options.step = g.number("step", 1e-3);
    if (!(job.geodesic.options.step > 0.0)) g.fail("step", "must be positive");
    job.geodesic.options.error_control = g.boolean("error_control", false);
    job.geodesic.options.error_tol = g.number("error_tol", 1e-10);
  }

  if (root.has("output")) {
    const Params out = root.object("output");
    out.only({"path", "format"});
    job.output_path = out.string("path", "");
    job.format = out.string("format", "");
    if (!job.format.empty() && job.format != "json-doc" && job.format != "csv") {
      out.fail("format", "expected json-doc or csv");
    }
    if (job.format == "csv" && job.task != Task::Geodesic) out.fail("format", "csv output is only for geodesic");
  }
  if (overrides.out) job.output_path = *overrides.out;
  return job;
}

namespace {

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json to_json(const Mat& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Vec(m.row(i).transpose())));
  return a;
}

// The spray of a job plus what the checks need from its origin.
struct Setup {
  FamilyInstance fam;
  std::string label;
};

Setup make_setup(const JobSpec& job) {
  Setup s;
  if (!job.family.empty()) {
    s.fam = make_family(job.family, job.params, job.dim);
    s.label = job.family;
  } else {
    FinslerMetric m = make_named_metric(job.metric, job.params, job.dim);
    s.fam.family = "metric:" + job.metric;
    s.fam.dim = job.dim;
    s.fam.spray = induced_spray_field(m, std::make_shared<DualNumberEngine>());
    s.fam.sample_radius = m.sample_radius;
    s.fam.metric = std::move(m);
    s.label = s.fam.family;
  }
  return s;
}

std::vector<PointPair> draw(const Setup& s, int count, std::uint64_t seed) {
  SamplePlan plan;
  plan.dim = s.fam.dim;
  plan.count = count;
  plan.seed = seed;
  plan.radius = s.fam.sample_radius;
  const FamilyInstance& fam = s.fam;
  return sample_pairs(plan, [&fam](const PointPair& pair) {
    return fam.spray.in_domain(pair) && (!fam.metric || fam.metric->in_domain(pair.x)) &&
           std::abs(pair.x.dot(pair.y)) >= fam.min_abs_s * pair.y.norm();
  });
}

std::unique_ptr<DerivativeEngine> make_engine(const std::string& name, const ToleranceConfig& cfg) {
  if (name == "dual") return std::make_unique<DualNumberEngine>();
  if (name == "analytic") return std::make_unique<ProjectiveJetEngine>();
  return std::make_unique<FiniteDifferenceEngine>(cfg);
}

void header(Report& rep, const JobSpec& job, const Setup& s, int samples) {
  rep.set("task", std::string(to_string(job.task)));
  rep.set("spray", s.label);
  rep.set("dim", job.dim);
  rep.set("seed", job.seed);
  rep.set("samples", samples);
}

const ProjectiveProfile& require_projective(const Setup& s, const char* task) {
  if (!s.fam.projective) {
    throw Error(ErrorCode::SchemaError,
                std::string("spray: task '") + task + "' needs a projectively flat family (spray.family)");
  }
  return *s.fam.projective;
}

// Relative error with the |y|² floor used throughout.
double tensor_error(const Mat& a, const Mat& b, const Vec& y) { return relative_max_error(a, b, y.squaredNorm()); }

int run_classify(const JobSpec& job, const Setup& s, Report& rep) {
  const ProjectiveProfile& prof = require_projective(s, "classify");
  const int n = job.samples ? job.samples : 200;
  const ResidualReport r = classify(prof, draw(s, n, job.seed), job.tol);
  header(rep, job, s, n);
  rep.set("abs_tol", r.abs_tol);
  rep.set("verdict", std::string(to_string(r.verdict)));
  if (s.fam.expected) rep.set("expected", std::string(to_string(*s.fam.expected)));
  rep.set("residual_c5_max", r.residual_c5.max);
  rep.set("residual_c5_mean", r.residual_c5.mean);
  rep.set("residual_c8_max", r.residual_c8.max);
  rep.set("residual_c8_mean", r.residual_c8.mean);
  rep.set("residual_c9_max", r.residual_c9.max);
  rep.set("residual_c9_mean", r.residual_c9.mean);
  rep.set("residual_c10_max", r.residual_c10.max);
  rep.set("residual_c10_mean", r.residual_c10.mean);
  rep.set("trace_max", r.trace.max);
  rep.set("trace_mean", r.trace.mean);
  rep.set("dependency_max", r.dependency_max);
  rep.add_check("c10_dependency", r.dependency_max, 1e-12);
  if (s.fam.expected) rep.add_check("verdict_mismatch", r.verdict == *s.fam.expected ? 0.0 : 1.0, 0.0);
  if (s.fam.isotropic_family) rep.add_check("isotropic_residual", r.residual_c5.max, job.tol.abs_tol);
  return 0;
}

int run_curvature(const JobSpec& job, const Setup& s, Report& rep) {
  const int n = job.samples ? job.samples : 10;
  const std::string engine_name = job.engine.empty() ? "finite_difference" : job.engine;
  const auto engine = make_engine(engine_name, job.tol);
  const bool exact = engine_name != "finite_difference";
  header(rep, job, s, n);
  rep.set("engine", engine_name);
  Json rows = Json::array();
  double flag_max = 0.0, closed_max = 0.0;
  for (const PointPair& pair : draw(s, n, job.seed)) {
    const Mat r = riemann_generic(s.fam.spray, pair, *engine).R;
    Json row = Json::object();
    row["x"] = to_json(pair.x);
    row["y"] = to_json(pair.y);
    row["R"] = to_json(r);
    const double fp = flagpole_residual(r, pair.y);
    row["flagpole"] = fp;
    flag_max = std::max(flag_max, fp);
    if (s.fam.projective) {
      const double e = tensor_error(r, riemann_projective_closed(*s.fam.projective, pair).R, pair.y);
      row["closed_form_error"] = e;
      closed_max = std::max(closed_max, e);
    }
    rows.push_back(std::move(row));
  }
  rep.set("tensors", std::move(rows));
  rep.add_check("flagpole_max", flag_max, exact ? 1e-8 : 1e-6);
  if (s.fam.projective) rep.add_check("closed_form_error_max", closed_max, exact ? 1e-10 : 1e-6);
  return 0;
}

int run_geodesic(const JobSpec& job, const Setup& s, Report& rep, std::string& csv, std::string& stop_message) {
  Vec x0, y0;
  if (job.geodesic.x0) {
    x0 = *job.geodesic.x0;
    y0 = *job.geodesic.y0;
    if (!s.fam.spray.in_domain({x0, y0})) {
      throw Error(ErrorCode::DomainExit, "config.geodesic.x0: start lies outside the spray's domain");
    }
  } else {
    const PointPair start = draw(s, 1, job.seed).front();
    x0 = start.x;
    y0 = start.y;
  }
  const GeodesicTrace trace = geodesic_integrate(s.fam.spray, x0, y0, job.geodesic.t_end, job.geodesic.options);
  std::ostringstream os;
  write_trace_csv(trace, os);
  csv = os.str();

  header(rep, job, s, 1);
  rep.set("x0", to_json(x0));
  rep.set("y0", to_json(y0));
  rep.set("T", job.geodesic.t_end);
  rep.set("step", job.geodesic.options.step);
  rep.set("steps", static_cast<int>(trace.size()) - 1);
  rep.set("terminated_reason", std::string(to_string(trace.terminated_reason)));
  rep.set("x_final", to_json(trace.positions.back()));
  rep.set("y_final", to_json(trace.velocities.back()));
  const double dev = straightness_deviation(trace);
  rep.set("straightness_deviation", dev);
  if (s.fam.projective) rep.add_check("straightness", dev, 1e-6);
  if (trace.terminated_reason != TerminationReason::Completed) {
    rep.set("message", trace.message);
    stop_message = trace.message;
    return 1;
  }
  return 0;
}

struct Flags {
  std::vector<double> k;
  double mean = 0.0, min = 0.0, max = 0.0, stddev = 0.0;
};

Flags flag_values(const FinslerMetric& metric, const std::vector<PointPair>& pairs, std::uint64_t seed,
                  const DerivativeEngine& engine) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Flags f;
  for (const PointPair& pair : pairs) f.k.push_back(flag_curvature(metric, pair, random_orthogonal_direction(pair.y, rng), engine));
  double sum = 0.0;
  f.min = f.max = f.k.front();
  for (double v : f.k) {
    sum += v;
    f.min = std::min(f.min, v);
    f.max = std::max(f.max, v);
  }
  f.mean = sum / static_cast<double>(f.k.size());
  double var = 0.0;
  for (double v : f.k) var += (v - f.mean) * (v - f.mean);
  f.stddev = std::sqrt(var / static_cast<double>(f.k.size()));
  return f;
}

const FinslerMetric& require_metric(const Setup& s) {
  if (!s.fam.metric) {
    throw Error(ErrorCode::SchemaError, "spray.family: family '" + s.fam.family + "' with these parameters has no known inducing metric");
  }
  return *s.fam.metric;
}

int run_flagcurv(const JobSpec& job, const Setup& s, Report& rep) {
  const FinslerMetric& metric = require_metric(s);
  const int n = job.samples ? job.samples : 50;
  const std::string engine_name = job.engine.empty() ? "dual" : job.engine;
  if (engine_name == "analytic") throw Error(ErrorCode::SchemaError, "config.engine: flagcurv needs dual or finite_difference");
  const auto engine = make_engine(engine_name, job.tol);
  const Flags f = flag_values(metric, draw(s, n, job.seed), job.seed, *engine);
  header(rep, job, s, n);
  rep.set("metric", metric.name);
  rep.set("engine", engine_name);
  rep.set("K", f.k);
  rep.set("K_mean", f.mean);
  rep.set("K_min", f.min);
  rep.set("K_max", f.max);
  rep.set("K_stddev", f.stddev);
  if (metric.constant_flag_curvature) {
    const double k0 = *metric.constant_flag_curvature;
    rep.set("K_expected", k0);
    rep.add_check("K_mean_error", std::abs(f.mean - k0), 1e-5);
    rep.add_check("K_max_error", std::max(std::abs(f.max - k0), std::abs(f.min - k0)), 1e-5);
  }
  return 0;
}

void verify_spray(const JobSpec& job, const Setup& s, const std::vector<PointPair>& pairs, Report& rep) {
  const SprayField& g = s.fam.spray;
  const bool induced = !s.fam.projective && s.fam.metric;
  const double sym_tol = induced ? 1e-8 : 1e-10;
  double hom = 0.0, eq = 0.0;
  for (const PointPair& pair : pairs) {
    for (double lambda : {0.5, 2.0, 7.0}) hom = std::max(hom, check_homogeneity(g, pair, lambda));
  }
  std::mt19937_64 rng(job.seed + 17);
  for (int k = 0; k < 10; ++k) {
    const Mat u = random_orthogonal(job.dim, rng);
    for (const PointPair& pair : pairs) eq = std::max(eq, check_equivariance(g, pair, u));
  }
  rep.set("homogeneity_max", hom);
  rep.set("equivariance_max", eq);
  rep.add_check("homogeneity", hom, sym_tol);
  rep.add_check("equivariance", eq, sym_tol);

  // Straight geodesics for projectively flat sprays.
  if (s.fam.projective) {
    double dev = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(5, pairs.size()); ++i) {
      dev = std::max(dev, straightness_deviation(geodesic_integrate(g, pairs[i].x, pairs[i].y.normalized(), 1.0)));
    }
    rep.set("straightness_max", dev);
    rep.add_check("straightness", dev, 1e-6);
  }
}

void verify_projective(const JobSpec& job, const Setup& s, const std::vector<PointPair>& pairs, Report& rep) {
  const ProjectiveProfile& prof = *s.fam.projective;
  const FiniteDifferenceEngine fd(job.tol);
  const ProjectiveJetEngine analytic;
  double e_fd = 0.0, e_an = 0.0, flag = 0.0, contraction = 0.0, c5 = 0.0, defect = 0.0, c89 = 0.0, zero_r = 0.0;
  for (const PointPair& pair : pairs) {
    const Mat closed = riemann_projective_closed(prof, pair).R;
    e_fd = std::max(e_fd, tensor_error(riemann_generic(s.fam.spray, pair, fd).R, closed, pair.y));
    const Mat r_an = riemann_generic(s.fam.spray, pair, analytic).R;
    e_an = std::max(e_an, tensor_error(r_an, closed, pair.y));
    flag = std::max({flag, flagpole_residual(closed, pair.y), flagpole_residual(r_an, pair.y)});
    const InvariantCoords rs = invariants(pair);
    const Jet2RS jet = prof.p.jet(rs.r, rs.s);
    const double scale = jet_scale(jet);
    const double yy = pair.y.squaredNorm();
    contraction = std::max(contraction, scalar_data_from_jet(jet, pair).contraction_residual / (yy * scale * scale));
    if (s.fam.isotropic_family) {
      c5 = std::max(c5, std::abs(isotropic_residual(jet, rs.s)) / scale);
      defect = std::max(defect, max_abs(isotropic_defect_from_jet(jet, pair)) / (yy * scale * scale));
    }
    if (s.fam.zero_family) {
      const ZeroResiduals z = zero_residuals(jet, rs.s);
      c89 = std::max({c89, std::abs(z.c8) / scale, std::abs(z.c9) / scale});
      zero_r = std::max(zero_r, max_abs(closed) / yy);
    }
  }
  rep.add_check("closed_vs_generic_fd", e_fd, 1e-6);
  rep.add_check("closed_vs_generic_analytic", e_an, 1e-10);
  rep.add_check("flagpole", flag, 1e-8);
  rep.add_check("tau_contraction", contraction, 1e-9);
  if (s.fam.isotropic_family) {
    rep.add_check("isotropic_residual", c5, 1e-9);
    rep.add_check("isotropic_defect", defect, 1e-8);
  }
  if (s.fam.zero_family) {
    rep.add_check("zero_residuals_c8_c9", c89, 1e-9);
    rep.add_check("zero_curvature_tensor", zero_r, 1e-8);
  }

  ToleranceConfig cls = job.tol;
  const ResidualReport r = classify(prof, pairs, cls);
  rep.set("verdict", std::string(to_string(r.verdict)));
  rep.add_check("c10_dependency", r.dependency_max, 1e-12);
  if (s.fam.expected) {
    rep.set("expected", std::string(to_string(*s.fam.expected)));
    rep.add_check("verdict_mismatch", r.verdict == *s.fam.expected ? 0.0 : 1.0, 0.0);
  }

  if (s.fam.witness) {
    double res1 = 0.0, res2 = 0.0, a9 = 0.0, a10 = 0.0;
    std::vector<RSPoint> fit_points;
    for (const PointPair& pair : pairs) {
      const InvariantCoords rs = invariants(pair);
      const WeakIsoResiduals w = weak_iso_residuals(prof.p.jet(rs.r, rs.s), s.fam.witness->gamma.jet(rs.r, rs.s),
                                                    s.fam.witness->a(rs.r), rs.s);
      res1 = std::max(res1, std::abs(w.res1));
      res2 = std::max(res2, std::abs(w.res2));
      const AmbientWeakIso amb = ambient_weakiso_check(prof, *s.fam.witness, pair);
      a9 = std::max(a9, amb.normalized_a9());
      a10 = std::max(a10, amb.normalized_a10());
    }
    std::vector<double> levels;
    for (std::size_t i = 0; i < std::min<std::size_t>(5, pairs.size()); ++i) levels.push_back(invariants(pairs[i]).r);
    const AFit fit = solve_a_given_gamma(prof, s.fam.witness->gamma, a_fit_grid(levels, 16, prof.p, s.fam.witness->gamma));
    double a_err = 0.0;
    for (const ALevel& lv : fit.levels) {
      const double exact = s.fam.witness->a(lv.r);
      a_err = std::max(a_err, std::abs(lv.a - exact) / std::max(1.0, std::abs(exact)));
    }
    rep.add_check("weakiso_res1", res1, 1e-7);
    rep.add_check("weakiso_res2", res2, 1e-7);
    rep.add_check("weakiso_ambient_a9", a9, 1e-6);
    rep.add_check("weakiso_ambient_a10", a10, 1e-6);
    rep.add_check("weakiso_a_fit", a_err, 1e-5);
  }
}

void verify_metric(const JobSpec& job, const Setup& s, const std::vector<PointPair>& pairs, Report& rep) {
  const FinslerMetric& m = *s.fam.metric;
  const FiniteDifferenceEngine fd(job.tol);
  const DualNumberEngine dual;
  double euler = 0.0, not_pd = 0.0, induced_err = 0.0;
  for (const PointPair& pair : pairs) {
    const FundamentalTensor t = fundamental_tensor(m, pair, dual);
    const double f = m(pair.x, pair.y);
    euler = std::max(euler, std::abs(pair.y.dot(t.g * pair.y) - f * f) / (f * f));
    if (!t.positive_definite) not_pd += 1.0;
    if (s.fam.projective) {
      const Vec g_fd = induced_spray(m, pair, fd);
      const Vec g_family = eval_projective(*s.fam.projective, pair);
      induced_err = std::max(induced_err, tensor_error(g_fd, g_family, pair.y));
    }
  }
  rep.set("metric", m.name);
  rep.add_check("euler_gyy", euler, 1e-8);
  rep.add_check("not_positive_definite", not_pd, 0.0);
  if (s.fam.projective) rep.add_check("induced_vs_family", induced_err, 1e-6);
  if (m.constant_flag_curvature) {
    const std::size_t nf = std::min<std::size_t>(20, pairs.size());
    const std::vector<PointPair> sub(pairs.begin(), pairs.begin() + static_cast<long>(nf));
    const Flags f = flag_values(m, sub, job.seed, dual);
    const double k0 = *m.constant_flag_curvature;
    rep.set("K_mean", f.mean);
    rep.add_check("flag_curvature", std::max(std::abs(f.max - k0), std::abs(f.min - k0)), 1e-5);
    if (job.dim >= 3) {
      const SprayField spray = s.fam.projective ? s.fam.spray : induced_spray_field(m, std::make_shared<DualNumberEngine>());
      const ProjectiveJetEngine analytic;
      const DerivativeEngine& eng =
          s.fam.projective ? static_cast<const DerivativeEngine&>(analytic) : static_cast<const DerivativeEngine&>(dual);
      const MetrizabilityReport mr = metrizability_scalar_check(spray, m, sub, eng);
      rep.set("lambda", mr.lambda);
      rep.add_check("metrizability_constancy", mr.constancy_residual, 1e-5);
      rep.add_check("metrizability_lambda", std::abs(mr.lambda - k0), 1e-4);
    }
  }
}

int run_verify(const JobSpec& job, const Setup& s, Report& rep) {
  const int n = job.samples ? job.samples : 50;
  const std::vector<PointPair> pairs = draw(s, n, job.seed);
  header(rep, job, s, n);
  verify_spray(job, s, pairs, rep);
  if (s.fam.projective) verify_projective(job, s, pairs, rep);
  if (s.fam.metric) verify_metric(job, s, pairs, rep);
  return 0;
}

}  // namespace

JobResult run_job(const JobSpec& job) {
  JobResult out;
  Report rep;
  std::string csv, stop;
  try {
    const Setup s = make_setup(job);
    switch (job.task) {
      case Task::Classify: out.exit_code = run_classify(job, s, rep); break;
      case Task::Curvature: out.exit_code = run_curvature(job, s, rep); break;
      case Task::Geodesic: out.exit_code = run_geodesic(job, s, rep, csv, stop); break;
      case Task::Verify: out.exit_code = run_verify(job, s, rep); break;
      case Task::Flagcurv: out.exit_code = run_flagcurv(job, s, rep); break;
    }
  } catch (const Error& e) {
    out.exit_code = 1;
    out.error = e.what();
    return out;
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.error = std::string("internal error: ") + e.what();
    return out;
  }
  const bool want_csv = job.task == Task::Geodesic && job.format != "json-doc";
  out.document = want_csv ? csv : rep.dump();
  if (out.exit_code == 1) {
    out.error = "geodesic stopped early (" + stop + "); partial trace written";
  } else if (!rep.all_pass()) {
    out.exit_code = 2;
    out.error = std::to_string(rep.failures()) + " check(s) failed";
  }
  return out;
}

}  // namespace spraylab
