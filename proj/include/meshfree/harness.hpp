#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "meshfree/geometry.hpp"

namespace meshfree::harness {

enum class SolverId { BkmUnsymmetric, BkmSymmetric, Bpm, BpmSymmetric };

std::string to_string(SolverId id);  // bkm-unsym, bkm-sym, bpm, bpm-sym
SolverId solver_from_string(const std::string& name);

/// How pointwise errors are combined: root mean square (default) or the
/// unnormalized square root of the sum.
enum class Norm { Rms, Sum };

struct ExperimentConfig {
  std::string name = "experiment";
  std::string problem = "helmholtz2d";
  double sigma = 1.0;  // convdiff3d only
  geometry::GeometryConfig geometry = geometry::GeometryConfig::square_with_notch_defaults();
  SolverId solver = SolverId::BkmUnsymmetric;
  /// Boundary node counts to run; empty means the geometry's own count.
  std::vector<int> counts;
  int truncation_order = 2;
  int drm_order = 1;
  Norm norm = Norm::Rms;
  std::uint64_t seed = 2001;
  std::string csv_path;
  std::string json_path;
  /// Prefix for per-point error dumps ("<prefix>_L<count>.csv"); empty disables.
  std::string dump_prefix;

  /// Throws ConfigError on unknown ids, dimension mismatch or bad counts.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
/// Missing keys keep their defaults (geometry defaults follow its shape);
/// unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

nlohmann::json geometry_to_json(const geometry::GeometryConfig& g);
geometry::GeometryConfig geometry_from_json(const nlohmann::json& j);

/// Sets the boundary node total. The cube keeps its cavity count and puts the
/// largest k with 6 k^2 <= count - cavity on the faces; the remainder moves to
/// the cavity.
geometry::GeometryConfig with_boundary_count(geometry::GeometryConfig g, int count);

struct ErrorReport {
  std::string label;
  std::string solver;
  std::string problem;
  int boundary_nodes = 0;  // L
  int interior_nodes = 0;  // N
  int truncation_order = -1;  // M, BPM only
  int drm_order = -1;  // BKM on inhomogeneous problems only
  int eval_points = 0;
  double l2_relative = 0.0;
  double max_pointwise = 0.0;
  double condition = 0.0;
  bool near_singular = false;
  double wall_seconds = 0.0;
  std::optional<std::string> dump_path;
  std::optional<double> reference_value;
  nlohmann::json provenance;
};

/// Pointwise error |num - ex| / |ex|, or |num - ex| when |ex| < 0.001.
double pointwise_error(double numeric, double exact);

/// L2 relative error over T >= 1 points. Throws std::invalid_argument on empty
/// or mismatched input.
double error_metric(const std::vector<double>& numeric, const std::vector<double>& exact, Norm norm = Norm::Rms);

/// Raised by run_experiment; what() carries the config context.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(std::string kind, const std::string& message, nlohmann::json context);
  const std::string& kind() const { return kind_; }
  const nlohmann::json& context() const { return context_; }
  nlohmann::json to_json() const;

 private:
  std::string kind_;
  nlohmann::json context_;
};

/// Solves on an explicit node set.
ErrorReport run_on_nodes(const ExperimentConfig& config, const geometry::NodeSet& nodes);

/// One report per entry of config.counts (or a single report).
std::vector<ErrorReport> run_experiment(const ExperimentConfig& config);

struct SweepResult {
  std::vector<ErrorReport> reports;
  /// Between consecutive counts: ln(e_i / e_{i+1}) / (L_{i+1} - L_i).
  std::vector<double> exponential_rates;
  /// Between consecutive counts: ln(e_i / e_{i+1}) / ln(L_{i+1} / L_i).
  std::vector<double> algebraic_orders;
};

/// Requires at least two counts.
SweepResult convergence_sweep(const ExperimentConfig& config);

/// Disk validation problem over L = 8, 16, 32.
ExperimentConfig disk_sweep_config();

struct TableEntry {
  ExperimentConfig config;  // exactly one count
  std::string label;
  double reference_value = 0.0;
};

/// BKM (26+9), BKM (33+9), BPM (26), BPM (33) on the notched square.
std::vector<TableEntry> table1_entries();
/// Helmholtz (298, 466), convection-diffusion sigma=1 (136, 298) and
/// sigma=20 (136, 178) on the cube with the two-ball cavity, BKM.
std::vector<TableEntry> table2_entries();

std::vector<ErrorReport> run_table(const std::vector<TableEntry>& entries);

/// Peclet number |v| * diameter / D of the configured domain (0 unless the
/// problem is convection-diffusion).
double peclet_number(const ExperimentConfig& config);

/// Stable column order, no timing columns, so identical runs give identical
/// bytes.
void write_csv(std::ostream& out, const std::vector<ErrorReport>& reports);
void write_csv_file(const std::string& path, const std::vector<ErrorReport>& reports);

nlohmann::json report_to_json(const ErrorReport& report);
nlohmann::json reports_to_json(const std::vector<ErrorReport>& reports);
void write_json_file(const std::string& path, const nlohmann::json& doc);

/// Fixed-width side-by-side listing (label, measured, reference value, L, N, M,
/// condition).
void print_table(std::ostream& out, const std::vector<ErrorReport>& reports);

}  // namespace meshfree::harness
