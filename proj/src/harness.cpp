#include "meshfree/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <set>

#include "meshfree/bkm.hpp"
#include "meshfree/bpm.hpp"
#include "meshfree/errors.hpp"
#include "meshfree/problems.hpp"

namespace meshfree::harness {

using nlohmann::json;

std::string to_string(SolverId id) {
  switch (id) {
    case SolverId::BkmUnsymmetric: return "bkm-unsym";
    case SolverId::BkmSymmetric: return "bkm-sym";
    case SolverId::Bpm: return "bpm";
    case SolverId::BpmSymmetric: return "bpm-sym";
  }
  return "bkm-unsym";
}

SolverId solver_from_string(const std::string& name) {
  for (SolverId id : {SolverId::BkmUnsymmetric, SolverId::BkmSymmetric, SolverId::Bpm, SolverId::BpmSymmetric}) {
    if (to_string(id) == name) return id;
  }
  throw ConfigError("unknown solver '" + name + "' (expected bkm-unsym, bkm-sym, bpm or bpm-sym)");
}

namespace {

bool is_bpm(SolverId id) { return id == SolverId::Bpm || id == SolverId::BpmSymmetric; }

bool is_symmetric(SolverId id) { return id == SolverId::BkmSymmetric || id == SolverId::BpmSymmetric; }

int shape_dim(geometry::Shape s) {
  return s == geometry::Shape::SquareWithNotch || s == geometry::Shape::Disk ? 2 : 3;
}

std::string norm_name(Norm n) { return n == Norm::Rms ? "rms" : "sum"; }

Norm norm_from_string(const std::string& s) {
  if (s == "rms") return Norm::Rms;
  if (s == "sum") return Norm::Sum;
  throw ConfigError("unknown norm '" + s + "' (expected rms or sum)");
}

template <std::size_t N>
json array_json(const std::array<double, N>& a) {
  return json(std::vector<double>(a.begin(), a.end()));
}

template <std::size_t N>
std::array<double, N> array_from(const json& j, const char* key) {
  if (!j.is_array() || j.size() != N) {
    throw ConfigError(std::string("geometry.") + key + " must be an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = j[i].get<double>();
  return a;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

json point_json(const Point& p) {
  json a = json::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
  return a;
}

}  // namespace

json geometry_to_json(const geometry::GeometryConfig& g) {
  json j;
  j["shape"] = geometry::to_string(g.shape);
  j["size"] = g.size;
  switch (g.shape) {
    case geometry::Shape::SquareWithNotch:
      j["notch_left"] = array_json(g.notch_left);
      j["notch_right"] = array_json(g.notch_right);
      j["notch_apex"] = array_json(g.notch_apex);
      j["interior_box"] = array_json(g.interior_box);
      j["boundary_count"] = g.boundary_count;
      j["interior_count"] = g.interior_count;
      break;
    case geometry::Shape::CubeWithTwoBallCavity:
      j["ball_radius"] = g.ball_radius;
      j["ball_center_a"] = array_json(g.ball_center_a);
      j["ball_center_b"] = array_json(g.ball_center_b);
      j["face_grid"] = g.face_grid;
      j["cavity_count"] = g.cavity_count;
      j["interior_count"] = g.interior_count;
      break;
    case geometry::Shape::Disk:
    case geometry::Shape::Sphere:
      j["boundary_count"] = g.boundary_count;
      j["interior_count"] = g.interior_count;
      break;
  }
  j["neumann_surfaces"] = g.neumann_surfaces;
  j["eval_count"] = g.eval_count;
  return j;
}

geometry::GeometryConfig geometry_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("geometry must be a JSON object");
  reject_unknown(j,
                 {"shape", "size", "notch_left", "notch_right", "notch_apex", "interior_box", "ball_radius",
                  "ball_center_a", "ball_center_b", "face_grid", "cavity_count", "neumann_surfaces", "boundary_count",
                  "interior_count", "eval_count"},
                 "geometry");
  const auto shape = geometry::shape_from_string(j.value("shape", std::string("square_notch")));
  geometry::GeometryConfig g = geometry::GeometryConfig::defaults_for(shape);
  if (j.contains("size")) g.size = j["size"].get<double>();
  if (j.contains("notch_left")) g.notch_left = array_from<2>(j["notch_left"], "notch_left");
  if (j.contains("notch_right")) g.notch_right = array_from<2>(j["notch_right"], "notch_right");
  if (j.contains("notch_apex")) g.notch_apex = array_from<2>(j["notch_apex"], "notch_apex");
  if (j.contains("interior_box")) g.interior_box = array_from<4>(j["interior_box"], "interior_box");
  if (j.contains("ball_radius")) g.ball_radius = j["ball_radius"].get<double>();
  if (j.contains("ball_center_a")) g.ball_center_a = array_from<3>(j["ball_center_a"], "ball_center_a");
  if (j.contains("ball_center_b")) g.ball_center_b = array_from<3>(j["ball_center_b"], "ball_center_b");
  if (j.contains("face_grid")) g.face_grid = j["face_grid"].get<int>();
  if (j.contains("cavity_count")) g.cavity_count = j["cavity_count"].get<int>();
  if (j.contains("neumann_surfaces")) g.neumann_surfaces = j["neumann_surfaces"].get<std::vector<std::string>>();
  if (j.contains("boundary_count")) g.boundary_count = j["boundary_count"].get<int>();
  if (j.contains("interior_count")) g.interior_count = j["interior_count"].get<int>();
  if (j.contains("eval_count")) g.eval_count = j["eval_count"].get<int>();
  return g;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["problem"] = c.problem;
  if (c.problem == "convdiff3d") j["sigma"] = c.sigma;
  j["solver"] = to_string(c.solver);
  j["geometry"] = geometry_to_json(c.geometry);
  j["counts"] = c.counts;
  j["truncation_order"] = c.truncation_order;
  j["drm_order"] = c.drm_order;
  j["norm"] = norm_name(c.norm);
  j["seed"] = c.seed;
  if (!c.csv_path.empty()) j["csv"] = c.csv_path;
  if (!c.json_path.empty()) j["json"] = c.json_path;
  if (!c.dump_prefix.empty()) j["dump_prefix"] = c.dump_prefix;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  reject_unknown(j,
                 {"name", "problem", "sigma", "solver", "geometry", "counts", "truncation_order", "drm_order", "norm",
                  "seed", "csv", "json", "dump_prefix"},
                 "experiment config");
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    c.problem = j.value("problem", c.problem);
    c.sigma = j.value("sigma", c.sigma);
    if (j.contains("solver")) c.solver = solver_from_string(j["solver"].get<std::string>());
    if (j.contains("geometry")) c.geometry = geometry_from_json(j["geometry"]);
    if (j.contains("counts")) c.counts = j["counts"].get<std::vector<int>>();
    c.truncation_order = j.value("truncation_order", c.truncation_order);
    c.drm_order = j.value("drm_order", c.drm_order);
    if (j.contains("norm")) c.norm = norm_from_string(j["norm"].get<std::string>());
    c.seed = j.value("seed", c.seed);
    c.csv_path = j.value("csv", c.csv_path);
    c.json_path = j.value("json", c.json_path);
    c.dump_prefix = j.value("dump_prefix", c.dump_prefix);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void ExperimentConfig::validate() const {
  const problems::AnalyticCase c = problems::case_by_id(problem, sigma);
  if (c.op.dim() != shape_dim(geometry.shape)) {
    throw ConfigError("problem '" + problem + "' is " + std::to_string(c.op.dim()) + "D but shape '" +
                      geometry::to_string(geometry.shape) + "' is " + std::to_string(shape_dim(geometry.shape)) + "D");
  }
  for (int n : counts) {
    if (n < 1) throw ConfigError("node counts must be positive");
  }
  if (truncation_order < 0 || truncation_order > bpm::kMaxTruncationOrder) {
    throw ConfigError("truncation_order must lie in [0, " + std::to_string(bpm::kMaxTruncationOrder) + "]");
  }
  if (drm_order < 0 || drm_order + 1 > kernels::kMaxKernelOrder) {
    throw ConfigError("drm_order must lie in [0, " + std::to_string(kernels::kMaxKernelOrder - 1) + "]");
  }
  if (is_symmetric(solver) && !c.op.self_adjoint()) {
    throw UnsupportedOperatorError("solver " + to_string(solver) + " needs a self-adjoint operator; problem '" +
                                   problem + "' is " + meshfree::to_string(c.op.kind()));
  }
}

geometry::GeometryConfig with_boundary_count(geometry::GeometryConfig g, int count) {
  if (count < 1) throw ConfigError("boundary node count must be positive");
  if (g.shape != geometry::Shape::CubeWithTwoBallCavity) {
    g.boundary_count = count;
    return g;
  }
  const int room = std::max(count - g.cavity_count, 6);
  int k = static_cast<int>(std::sqrt(room / 6.0));
  while (6 * (k + 1) * (k + 1) <= room) ++k;
  while (k > 1 && 6 * k * k > room) --k;
  g.face_grid = k;
  g.cavity_count = count - 6 * k * k;
  if (g.cavity_count < 0) throw ConfigError("cube needs at least 6 boundary nodes");
  return g;
}

double pointwise_error(double numeric, double exact) {
  const double diff = std::abs(numeric - exact);
  return std::abs(exact) < 1e-3 ? diff : diff / std::abs(exact);
}

double error_metric(const std::vector<double>& numeric, const std::vector<double>& exact, Norm norm) {
  if (numeric.empty()) throw std::invalid_argument("error_metric: no evaluation points");
  if (numeric.size() != exact.size()) throw std::invalid_argument("error_metric: length mismatch");
  std::vector<double> sq(numeric.size());
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const double e = pointwise_error(numeric[i], exact[i]);
    sq[i] = e * e;
  }
  // Sorted summation keeps the result independent of point order.
  std::sort(sq.begin(), sq.end());
  double s = 0.0;
  for (double v : sq) s += v;
  return norm == Norm::Rms ? std::sqrt(s / static_cast<double>(sq.size())) : std::sqrt(s);
}

ExperimentError::ExperimentError(std::string kind, const std::string& message, json context)
    : std::runtime_error(message + " [config: " + context.dump() + "]"),
      kind_(std::move(kind)),
      context_(std::move(context)) {}

json ExperimentError::to_json() const {
  return json{{"error", kind_}, {"message", std::string(what())}, {"config", context_}};
}

double peclet_number(const ExperimentConfig& config) {
  if (config.problem != "convdiff3d") return 0.0;
  const problems::AnalyticCase c = problems::case_by_id(config.problem, config.sigma);
  const double speed = norm(c.op.velocity());
  double diameter = 0.0;
  switch (config.geometry.shape) {
    case geometry::Shape::CubeWithTwoBallCavity: diameter = config.geometry.size * std::sqrt(3.0); break;
    case geometry::Shape::SquareWithNotch: diameter = config.geometry.size * std::sqrt(2.0); break;
    case geometry::Shape::Disk:
    case geometry::Shape::Sphere: diameter = 2.0 * config.geometry.size; break;
  }
  return speed * diameter / c.op.diffusivity();
}

namespace {

struct Solved {
  std::function<double(const Point&)> evaluate;
  double condition = 0.0;
  bool near_singular = false;
  json details;
};

Solved solve_with(const ExperimentConfig& config, const geometry::NodeSet& nodes,
                  const problems::AnalyticCase& problem) {
  const bkm::Scheme scheme = is_symmetric(config.solver) ? bkm::Scheme::Symmetric : bkm::Scheme::Unsymmetric;
  Solved out;
  if (is_bpm(config.solver)) {
    bpm::BpmOptions opts;
    opts.truncation_order = config.truncation_order;
    opts.scheme = scheme;
    auto sol = std::make_shared<bpm::BpmSolution>(bpm::solve(nodes, problem, opts));
    out.condition = sol->condition();
    out.near_singular = sol->near_singular();
    json norms = json::array();
    for (const auto& beta : sol->betas()) {
      double s = 0.0;
      for (double b : beta) s = std::max(s, std::abs(b));
      norms.push_back(s);
    }
    out.details["beta_max_abs"] = norms;
    out.evaluate = [sol](const Point& x) { return sol->evaluate(x); };
  } else {
    bkm::BkmOptions opts;
    opts.scheme = scheme;
    opts.drm_order = config.drm_order;
    auto sol = std::make_shared<bkm::BkmSolution>(bkm::solve(nodes, problem, opts));
    out.condition = sol->condition();
    out.near_singular = sol->near_singular();
    if (sol->drm_fit()) {
      out.details["drm_condition"] = sol->drm_fit()->condition();
      out.details["drm_residual"] = sol->drm_fit()->interpolation_residual();
      out.details["drm_boundary_only"] = sol->drm_fit()->boundary_only();
    }
    out.evaluate = [sol](const Point& x) { return sol->evaluate(x); };
  }
  return out;
}

void write_dump(const std::string& path, const geometry::NodeSet& nodes, const std::vector<double>& numeric,
                const std::vector<double>& exact) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write error dump '" + path + "'");
  out << (nodes.dim == 2 ? "x,y" : "x,y,z") << ",numeric,exact,error\n";
  char buf[128];
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const Point& p = nodes.eval_points[i];
    for (int d = 0; d < nodes.dim; ++d) {
      std::snprintf(buf, sizeof buf, "%.17g,", p[d]);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", numeric[i], exact[i], pointwise_error(numeric[i], exact[i]));
    out << buf;
  }
}

}  // namespace

ErrorReport run_on_nodes(const ExperimentConfig& config, const geometry::NodeSet& nodes) {
  const json context = to_json(config);
  try {
    config.validate();
    nodes.validate();
    const problems::AnalyticCase problem = problems::case_by_id(config.problem, config.sigma);
    if (nodes.dim != problem.op.dim()) throw ConfigError("node set dimension does not match the problem");

    const auto start = std::chrono::steady_clock::now();
    const Solved solved = solve_with(config, nodes, problem);
    std::vector<double> numeric, exact;
    numeric.reserve(nodes.eval_count());
    exact.reserve(nodes.eval_count());
    double worst = 0.0;
    for (const Point& p : nodes.eval_points) {
      numeric.push_back(solved.evaluate(p));
      exact.push_back(problem.exact_u(p));
      worst = std::max(worst, pointwise_error(numeric.back(), exact.back()));
    }
    const double l2 = error_metric(numeric, exact, config.norm);
    const auto stop = std::chrono::steady_clock::now();

    ErrorReport r;
    r.label = config.name;
    r.solver = to_string(config.solver);
    r.problem = config.problem;
    r.boundary_nodes = static_cast<int>(nodes.boundary_count());
    r.interior_nodes = is_bpm(config.solver) ? 0 : static_cast<int>(nodes.interior_count());
    r.truncation_order = is_bpm(config.solver) ? config.truncation_order : -1;
    r.drm_order = !is_bpm(config.solver) && !problem.homogeneous ? config.drm_order : -1;
    r.eval_points = static_cast<int>(nodes.eval_count());
    r.l2_relative = l2;
    r.max_pointwise = worst;
    r.condition = solved.condition;
    r.near_singular = solved.near_singular;
    r.wall_seconds = std::chrono::duration<double>(stop - start).count();
    if (!config.dump_prefix.empty()) {
      r.dump_path = config.dump_prefix + "_L" + std::to_string(r.boundary_nodes) + ".csv";
      write_dump(*r.dump_path, nodes, numeric, exact);
    }

    json prov;
    prov["config"] = context;
    prov["dirichlet_nodes"] = nodes.dirichlet_count();
    prov["neumann_nodes"] = nodes.neumann_count();
    json interior = json::array();
    for (const Point& p : nodes.interior) interior.push_back(point_json(p));
    prov["interior_positions"] = interior;
    if (config.problem == "convdiff3d") prov["peclet"] = peclet_number(config);
    prov["solver_details"] = solved.details;
    if (!std::isfinite(l2)) prov["warning"] = "non-finite error; the system is numerically singular";
    r.provenance = prov;
    return r;
  } catch (const ExperimentError&) {
    throw;
  } catch (const SingularMatrixError& e) {
    throw ExperimentError("singular_matrix", e.what(), context);
  } catch (const UnsupportedOperatorError& e) {
    throw ExperimentError("unsupported_operator", e.what(), context);
  } catch (const ConfigError& e) {
    throw ExperimentError("config_error", e.what(), context);
  } catch (const std::exception& e) {
    throw ExperimentError("solver_error", e.what(), context);
  }
}

std::vector<ErrorReport> run_experiment(const ExperimentConfig& config) {
  std::vector<ErrorReport> reports;
  const std::vector<int> counts = config.counts.empty() ? std::vector<int>{0} : config.counts;
  for (int count : counts) {
    ExperimentConfig one = config;
    one.geometry.seed = config.seed;
    if (count > 0) one.geometry = with_boundary_count(one.geometry, count);
    one.counts = count > 0 ? std::vector<int>{count} : std::vector<int>{};
    geometry::NodeSet nodes;
    try {
      one.validate();
      nodes = geometry::generate(one.geometry);
    } catch (const std::exception& e) {
      throw ExperimentError("config_error", e.what(), to_json(one));
    }
    reports.push_back(run_on_nodes(one, nodes));
  }
  return reports;
}

SweepResult convergence_sweep(const ExperimentConfig& config) {
  if (config.counts.size() < 2) {
    throw ExperimentError("config_error", "convergence sweep needs at least two node counts", to_json(config));
  }
  SweepResult out;
  out.reports = run_experiment(config);
  for (std::size_t i = 0; i + 1 < out.reports.size(); ++i) {
    const double e0 = out.reports[i].l2_relative;
    const double e1 = out.reports[i + 1].l2_relative;
    const double l0 = out.reports[i].boundary_nodes;
    const double l1 = out.reports[i + 1].boundary_nodes;
    const double ratio = std::log(e0 / e1);
    out.exponential_rates.push_back(l1 != l0 ? ratio / (l1 - l0) : 0.0);
    out.algebraic_orders.push_back(l1 != l0 ? ratio / std::log(l1 / l0) : 0.0);
  }
  return out;
}

ExperimentConfig disk_sweep_config() {
  ExperimentConfig c;
  c.name = "disk-sweep";
  c.problem = "disk_helmholtz";
  c.geometry = geometry::GeometryConfig::disk_defaults();
  c.counts = {8, 16, 32};
  return c;
}

std::vector<TableEntry> table1_entries() {
  std::vector<TableEntry> t;
  auto add = [&t](SolverId solver, int count, double reference, const std::string& label) {
    ExperimentConfig c;
    c.name = label;
    c.problem = "helmholtz2d";
    c.solver = solver;
    c.geometry = geometry::GeometryConfig::square_with_notch_defaults();
    c.counts = {count};
    c.truncation_order = 2;
    t.push_back({c, label, reference});
  };
  add(SolverId::BkmUnsymmetric, 26, 1.9e-3, "BKM (26+9)");
  add(SolverId::BkmUnsymmetric, 33, 9.3e-5, "BKM (33+9)");
  add(SolverId::Bpm, 26, 2.7e-3, "BPM (26)");
  add(SolverId::Bpm, 33, 6.8e-4, "BPM (33)");
  return t;
}

std::vector<TableEntry> table2_entries() {
  std::vector<TableEntry> t;
  auto add = [&t](const std::string& problem, double sigma, int count, double reference, const std::string& label) {
    ExperimentConfig c;
    c.name = label;
    c.problem = problem;
    c.sigma = sigma;
    c.solver = SolverId::BkmUnsymmetric;
    c.geometry = geometry::GeometryConfig::cube_with_two_ball_cavity_defaults();
    c.counts = {count};
    t.push_back({c, label, reference});
  };
  add("helmholtz3d", 1.0, 298, 4.6e-3, "Helmholtz (298)");
  add("helmholtz3d", 1.0, 466, 1.7e-4, "Helmholtz (466)");
  add("convdiff3d", 1.0, 136, 9.0e-3, "CD sigma=1 (136)");
  add("convdiff3d", 1.0, 298, 2.2e-3, "CD sigma=1 (298)");
  add("convdiff3d", 20.0, 136, 8.8e-15, "CD sigma=20 (136)");
  add("convdiff3d", 20.0, 178, 6.8e-15, "CD sigma=20 (178)");
  return t;
}

std::vector<ErrorReport> run_table(const std::vector<TableEntry>& entries) {
  std::vector<ErrorReport> out;
  for (const auto& e : entries) {
    ErrorReport r = run_experiment(e.config).front();
    r.label = e.label;
    r.reference_value = e.reference_value;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ErrorReport>& reports) {
  out << "label,solver,problem,L,N,M,drm_order,T,l2_relative,max_pointwise,condition,near_singular,reference_value\n";
  for (const auto& r : reports) {
    out << csv_field(r.label) << ',' << r.solver << ',' << r.problem << ',' << r.boundary_nodes << ','
        << r.interior_nodes << ',' << r.truncation_order << ',' << r.drm_order << ',' << r.eval_points << ','
        << fmt(r.l2_relative) << ',' << fmt(r.max_pointwise) << ',' << fmt(r.condition) << ','
        << (r.near_singular ? 1 : 0) << ',' << (r.reference_value ? fmt(*r.reference_value) : std::string()) << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<ErrorReport>& reports) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write CSV report '" + path + "'");
  write_csv(out, reports);
}

json report_to_json(const ErrorReport& r) {
  json j;
  j["label"] = r.label;
  j["solver"] = r.solver;
  j["problem"] = r.problem;
  j["L"] = r.boundary_nodes;
  j["N"] = r.interior_nodes;
  j["M"] = r.truncation_order;
  j["drm_order"] = r.drm_order;
  j["T"] = r.eval_points;
  j["l2_relative"] = std::isfinite(r.l2_relative) ? json(r.l2_relative) : json(nullptr);
  j["max_pointwise"] = std::isfinite(r.max_pointwise) ? json(r.max_pointwise) : json(nullptr);
  j["condition"] = std::isfinite(r.condition) ? json(r.condition) : json(nullptr);
  j["near_singular"] = r.near_singular;
  j["wall_seconds"] = r.wall_seconds;
  if (r.dump_path) j["dump_path"] = *r.dump_path;
  if (r.reference_value) j["reference_value"] = *r.reference_value;
  j["provenance"] = r.provenance;
  return j;
}

json reports_to_json(const std::vector<ErrorReport>& reports) {
  json a = json::array();
  for (const auto& r : reports) a.push_back(report_to_json(r));
  return json{{"reports", a}};
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write JSON report '" + path + "'");
  out << doc.dump(2) << '\n';
}

void print_table(std::ostream& out, const std::vector<ErrorReport>& reports) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-20s %-10s %12s %12s %5s %4s %3s %10s\n", "case", "solver", "measured", "reference",
                "L", "N", "M", "cond");
  out << buf;
  for (const auto& r : reports) {
    char ref[32] = "-";
    if (r.reference_value) std::snprintf(ref, sizeof ref, "%.1e", *r.reference_value);
    std::snprintf(buf, sizeof buf, "%-20s %-10s %12.3e %12s %5d %4d %3s %10.2e\n", r.label.c_str(), r.solver.c_str(),
                  r.l2_relative, ref, r.boundary_nodes, r.interior_nodes,
                  r.truncation_order >= 0 ? std::to_string(r.truncation_order).c_str() : "-", r.condition);
    out << buf;
  }
}

}  // namespace meshfree::harness
