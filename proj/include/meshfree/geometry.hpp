#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "meshfree/point.hpp"

namespace meshfree::geometry {

enum class BcKind { Dirichlet, Neumann };

struct BoundaryNode {
  Point point;
  Vector normal;  // unit, pointing out of the domain
  BcKind bc = BcKind::Dirichlet;
};

/// Boundary knots (Dirichlet block first, then Neumann), interior knots and
/// points used only for error measurement.
struct NodeSet {
  int dim = 2;
  std::vector<BoundaryNode> boundary;
  std::vector<Point> interior;
  std::vector<Point> eval_points;

  std::size_t boundary_count() const { return boundary.size(); }
  std::size_t dirichlet_count() const;
  std::size_t neumann_count() const { return boundary_count() - dirichlet_count(); }
  std::size_t interior_count() const { return interior.size(); }
  std::size_t eval_count() const { return eval_points.size(); }

  bool is_neumann(std::size_t k) const { return boundary[k].bc == BcKind::Neumann; }

  /// Throws ConfigError if the ordering, normalization, dimension or
  /// distinctness invariants are violated.
  void validate() const;
};

/// Point-in-domain predicate (strict interior).
using InsideTest = std::function<bool(const Point&)>;

enum class Shape { SquareWithNotch, CubeWithTwoBallCavity, Disk, Sphere };

std::string to_string(Shape shape);
Shape shape_from_string(const std::string& name);

struct GeometryConfig {
  Shape shape = Shape::SquareWithNotch;
  /// Square/cube side length, or disk/sphere radius.
  double size = 2.0;

  // Square with a triangular notch cut into the top edge y = size.
  std::array<double, 2> notch_left{0.8, 2.0};
  std::array<double, 2> notch_right{1.2, 2.0};
  std::array<double, 2> notch_apex{1.0, 1.5};
  /// Box {x0, x1, y0, y1} holding the interior grid when interior_count is a
  /// perfect square.
  std::array<double, 4> interior_box{0.5, 1.5, 0.4, 1.2};

  // Cube [0, size]^3 with two overlapping balls removed.
  double ball_radius = 1.0;
  std::array<double, 3> ball_center_a{0.0, 0.0, 0.0};
  std::array<double, 3> ball_center_b{0.0, 0.0, 0.0};
  int face_grid = 6;      // k x k cell-centred nodes per face
  int cavity_count = 82;  // random nodes on the cavity surface

  /// Surfaces carrying Neumann data. Square: bottom, right, top, left, notch.
  /// Cube: x0, x1, y0, y1, z0, z1, cavity. Disk/sphere: left (x < 0 half).
  std::vector<std::string> neumann_surfaces;

  int boundary_count = 26;  // square, disk, sphere
  int interior_count = 9;
  int eval_count = 364;
  std::uint64_t seed = 2001;

  static GeometryConfig square_with_notch_defaults();
  static GeometryConfig cube_with_two_ball_cavity_defaults();
  static GeometryConfig disk_defaults();
  static GeometryConfig sphere_defaults();
  static GeometryConfig defaults_for(Shape shape);
};

NodeSet square_with_notch(const GeometryConfig& config);
NodeSet cube_with_two_ball_cavity(const GeometryConfig& config);
NodeSet validation_shape(const GeometryConfig& config);

/// Dispatches on config.shape.
NodeSet generate(const GeometryConfig& config);

/// Strict-interior predicate of the domain described by `config`.
InsideTest inside_test(const GeometryConfig& config);

/// Vertices (counter-clockwise) of the notched square, notch omitted when it
/// has zero area.
std::vector<Point> notched_square_polygon(const GeometryConfig& config);

/// Even-odd point-in-polygon test.
bool point_in_polygon(const std::vector<Point>& polygon, const Point& p);

// CSV exchange format: header "x,y[,z],nx,ny[,nz],kind", one row per node,
// kind in {D, N, I, E}. Interior and eval rows carry zero normals.
void write_csv(std::ostream& out, const NodeSet& nodes);
NodeSet read_csv(std::istream& in);
void write_csv_file(const std::string& path, const NodeSet& nodes);
NodeSet read_csv_file(const std::string& path);

}  // namespace meshfree::geometry
