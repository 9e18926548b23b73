// Command-line front end: solves, table presets, sweeps, kernel audit and
// node-set CSV exchange.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meshfree/errors.hpp"
#include "meshfree/geometry.hpp"
#include "meshfree/harness.hpp"
#include "meshfree/kernels.hpp"

namespace mh = meshfree::harness;
namespace mg = meshfree::geometry;
using nlohmann::json;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> name, problem, solver, shape, norm, csv, json_out, dump, nodes;
  std::optional<double> sigma, size;
  std::optional<int> count, interior, eval, truncation, drm_order;
  std::vector<int> counts;
  std::vector<std::string> neumann;
  std::optional<std::uint64_t> seed;
};

void add_experiment_flags(CLI::App* app, Overrides& o, bool with_counts) {
  app->add_option("-c,--config", o.config_path, "JSON experiment config; flags override its fields");
  app->add_option("--name", o.name, "label written to reports");
  app->add_option("--problem", o.problem, "helmholtz2d | helmholtz3d | convdiff3d | disk_helmholtz");
  app->add_option("--sigma", o.sigma, "convection speed for convdiff3d");
  app->add_option("--solver", o.solver, "bkm-unsym | bkm-sym | bpm | bpm-sym");
  app->add_option("--shape", o.shape, "square_notch | cube_two_ball | disk | sphere");
  app->add_option("--size", o.size, "square/cube side or disk/sphere radius");
  app->add_option("--interior", o.interior, "interior node count");
  app->add_option("--eval", o.eval, "evaluation point count");
  app->add_option("--neumann", o.neumann, "surfaces carrying Neumann data");
  app->add_option("-M,--truncation-order", o.truncation, "BPM truncation order (0..8)");
  app->add_option("--drm-order", o.drm_order, "order of the general solution interpolating f");
  app->add_option("--norm", o.norm, "rms | sum");
  app->add_option("--seed", o.seed, "random seed for node placement");
  app->add_option("--csv", o.csv, "CSV report path");
  app->add_option("--json", o.json_out, "JSON report path");
  if (with_counts) {
    app->add_option("-L,--count", o.count, "boundary node count");
    app->add_option("--counts", o.counts, "boundary node counts")->delimiter(',');
    app->add_option("--dump", o.dump, "prefix for per-point error dumps");
  }
}

mh::ExperimentConfig build_config(const Overrides& o, mh::ExperimentConfig base) {
  mh::ExperimentConfig c = o.config_path.empty() ? std::move(base) : mh::load_config(o.config_path);
  if (o.shape) {
    const auto shape = mg::shape_from_string(*o.shape);
    if (shape != c.geometry.shape) c.geometry = mg::GeometryConfig::defaults_for(shape);
  }
  if (o.name) c.name = *o.name;
  if (o.problem) c.problem = *o.problem;
  if (o.sigma) c.sigma = *o.sigma;
  if (o.solver) c.solver = mh::solver_from_string(*o.solver);
  if (o.size) c.geometry.size = *o.size;
  if (o.interior) c.geometry.interior_count = *o.interior;
  if (o.eval) c.geometry.eval_count = *o.eval;
  if (!o.neumann.empty()) c.geometry.neumann_surfaces = o.neumann;
  if (o.truncation) c.truncation_order = *o.truncation;
  if (o.drm_order) c.drm_order = *o.drm_order;
  if (o.norm) {
    if (*o.norm != "rms" && *o.norm != "sum") throw meshfree::ConfigError("unknown norm '" + *o.norm + "'");
    c.norm = *o.norm == "sum" ? mh::Norm::Sum : mh::Norm::Rms;
  }
  if (o.seed) c.seed = *o.seed;
  if (o.csv) c.csv_path = *o.csv;
  if (o.json_out) c.json_path = *o.json_out;
  if (o.dump) c.dump_prefix = *o.dump;
  if (o.count) c.counts = {*o.count};
  if (!o.counts.empty()) c.counts = o.counts;
  return c;
}

void emit(const std::vector<mh::ErrorReport>& reports, const std::string& csv, const std::string& json_path,
          const json& extra = json::object()) {
  mh::print_table(std::cout, reports);
  if (!csv.empty()) mh::write_csv_file(csv, reports);
  if (!json_path.empty()) {
    json doc = mh::reports_to_json(reports);
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
    mh::write_json_file(json_path, doc);
  }
}

int fail(const std::string& kind, const std::string& message, const json& context = json::object()) {
  std::cerr << json{{"error", kind}, {"message", message}, {"config", context}}.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary knot and boundary particle solvers for Helmholtz, diffusion-reaction and "
               "convection-diffusion problems"};
  app.require_subcommand(1);

  Overrides solve_o, sweep_o, export_o;
  auto* solve = app.add_subcommand("solve", "run one experiment");
  add_experiment_flags(solve, solve_o, true);
  solve->add_option("--nodes", solve_o.nodes, "solve on a node set read from CSV instead of generating one");

  std::string t1_csv, t1_json, t2_csv, t2_json;
  auto* table1 = app.add_subcommand("table1", "2D inhomogeneous Helmholtz on the notched square");
  table1->add_option("--csv", t1_csv, "CSV report path");
  table1->add_option("--json", t1_json, "JSON report path");
  auto* table2 = app.add_subcommand("table2", "3D Helmholtz and convection-diffusion on the cube with cavity");
  table2->add_option("--csv", t2_csv, "CSV report path");
  table2->add_option("--json", t2_json, "JSON report path");

  auto* sweep = app.add_subcommand("sweep", "convergence sweep over boundary node counts (default: disk, 8,16,32)");
  add_experiment_flags(sweep, sweep_o, true);

  std::uint64_t audit_seed = 7;
  int audit_samples = 100;
  int audit_order = 3;
  double audit_tol = 1e-6;
  auto* check = app.add_subcommand("check-kernels", "homogeneity and lowering audit of the general solutions");
  check->add_option("--seed", audit_seed, "random seed for sample points");
  check->add_option("--samples", audit_samples, "point pairs per family and order");
  check->add_option("--max-order", audit_order, "highest order checked");
  check->add_option("--tolerance", audit_tol, "pass threshold on the relative residual");

  std::string export_path;
  auto* exp = app.add_subcommand("export-nodes", "write a generated node set as CSV");
  add_experiment_flags(exp, export_o, true);
  exp->add_option("-o,--out", export_path, "output CSV path (stdout if omitted)");

  std::string import_path;
  auto* imp = app.add_subcommand("import-nodes", "read and validate a node-set CSV, print a JSON summary");
  imp->add_option("path", import_path, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage_error", e.what());
  }

  try {
    if (*solve) {
      const mh::ExperimentConfig c = build_config(solve_o, mh::ExperimentConfig{});
      std::vector<mh::ErrorReport> reports;
      if (solve_o.nodes) {
        reports.push_back(mh::run_on_nodes(c, mg::read_csv_file(*solve_o.nodes)));
      } else {
        reports = mh::run_experiment(c);
      }
      emit(reports, c.csv_path, c.json_path);
    } else if (*table1) {
      emit(mh::run_table(mh::table1_entries()), t1_csv, t1_json);
    } else if (*table2) {
      emit(mh::run_table(mh::table2_entries()), t2_csv, t2_json);
    } else if (*sweep) {
      const mh::ExperimentConfig c = build_config(sweep_o, mh::disk_sweep_config());
      const mh::SweepResult s = mh::convergence_sweep(c);
      emit(s.reports, c.csv_path, c.json_path,
           json{{"exponential_rates", s.exponential_rates}, {"algebraic_orders", s.algebraic_orders}});
      for (std::size_t i = 0; i < s.exponential_rates.size(); ++i) {
        std::printf("L %d -> %d: exponential rate %.4f per node, algebraic order %.3f\n",
                    s.reports[i].boundary_nodes, s.reports[i + 1].boundary_nodes, s.exponential_rates[i],
                    s.algebraic_orders[i]);
      }
    } else if (*check) {
      const auto audit = meshfree::kernels::audit_kernels(audit_seed, audit_samples, audit_order);
      std::printf("%-40s %3s %5s %8s %14s\n", "family", "dim", "order", "samples", "max_rel_resid");
      for (const auto& e : audit.entries) {
        std::printf("%-40s %3d %5d %8d %14.3e\n", e.family.c_str(), e.dim, e.order, e.samples,
                    e.max_relative_residual);
      }
      const bool ok = audit.passed(audit_tol);
      std::printf("worst %.3e, tolerance %.1e: %s\n", audit.worst(), audit_tol, ok ? "PASS" : "FAIL");
      if (!ok) return fail("audit_failed", "kernel audit residual above tolerance");
    } else if (*exp) {
      mh::ExperimentConfig c = build_config(export_o, mh::ExperimentConfig{});
      mg::GeometryConfig g = c.geometry;
      g.seed = c.seed;
      if (!c.counts.empty()) g = mh::with_boundary_count(g, c.counts.front());
      const mg::NodeSet nodes = mg::generate(g);
      if (export_path.empty()) {
        mg::write_csv(std::cout, nodes);
      } else {
        mg::write_csv_file(export_path, nodes);
      }
    } else if (*imp) {
      const mg::NodeSet nodes = mg::read_csv_file(import_path);
      const json summary{{"path", import_path},
                         {"dim", nodes.dim},
                         {"boundary", nodes.boundary_count()},
                         {"dirichlet", nodes.dirichlet_count()},
                         {"neumann", nodes.neumann_count()},
                         {"interior", nodes.interior_count()},
                         {"eval", nodes.eval_count()}};
      std::cout << summary.dump(2) << '\n';
    }
  } catch (const mh::ExperimentError& e) {
    std::cerr << e.to_json().dump() << '\n';
    return 1;
  } catch (const meshfree::ConfigError& e) {
    return fail("config_error", e.what());
  } catch (const std::exception& e) {
    return fail("error", e.what());
  }
  return 0;
}
