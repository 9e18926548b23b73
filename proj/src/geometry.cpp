#include "meshfree/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "meshfree/errors.hpp"
#include "meshfree/random.hpp"

namespace meshfree::geometry {
namespace {

// Independent random streams per generator stage.
constexpr std::uint64_t kInteriorStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kEvalStream = 0xbf58476d1ce4e5b9ULL;
constexpr std::uint64_t kCavityStream = 0x94d049bb133111ebULL;

constexpr int kMaxRejections = 1000000;

bool has_surface(const GeometryConfig& config, const std::string& name) {
  return std::find(config.neumann_surfaces.begin(), config.neumann_surfaces.end(), name) !=
         config.neumann_surfaces.end();
}

void check_surfaces(const GeometryConfig& config, std::initializer_list<const char*> allowed) {
  for (const auto& s : config.neumann_surfaces) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return s == a; });
    if (!ok) throw ConfigError("unknown surface '" + s + "' for shape " + to_string(config.shape));
  }
}

void check_counts(const GeometryConfig& config) {
  if (config.interior_count < 0) throw ConfigError("interior_count must be non-negative");
  if (config.eval_count < 1) throw ConfigError("eval_count must be at least 1");
  if (!(config.size > 0.0)) throw ConfigError("size must be positive");
}

// Stable partition: Dirichlet block first.
void order_dirichlet_first(std::vector<BoundaryNode>& nodes) {
  std::stable_partition(nodes.begin(), nodes.end(), [](const BoundaryNode& n) { return n.bc == BcKind::Dirichlet; });
}

Point random_in_box(Rng& rng, const Point& lo, const Point& hi) {
  Point p = Point::zero(lo.dim());
  for (int i = 0; i < lo.dim(); ++i) p[i] = rng.uniform(lo[i], hi[i]);
  return p;
}

std::vector<Point> rejection_sample(std::uint64_t seed, int count, const Point& lo, const Point& hi,
                                    const InsideTest& inside) {
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  int attempts = 0;
  while (static_cast<int>(pts.size()) < count) {
    if (++attempts > kMaxRejections) throw ConfigError("rejection sampling failed: domain too small");
    Point p = random_in_box(rng, lo, hi);
    if (inside(p)) pts.push_back(p);
  }
  return pts;
}

double cross2(const Point& o, const Point& a, const Point& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double d1 = cross2(c, d, a);
  const double d2 = cross2(c, d, b);
  const double d3 = cross2(a, b, c);
  const double d4 = cross2(a, b, d);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const Vector ab = b - a;
  const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return distance(p, a + t * ab);
}

struct LabelledPolygon {
  std::vector<Point> vertices;
  std::vector<std::string> edge_labels;  // edge i joins vertex i and i+1
};

LabelledPolygon build_notched_square(const GeometryConfig& c) {
  const double s = c.size;
  const Point left(c.notch_left[0], c.notch_left[1]);
  const Point right(c.notch_right[0], c.notch_right[1]);
  const Point apex(c.notch_apex[0], c.notch_apex[1]);
  if (left.y() != s || right.y() != s) throw ConfigError("notch base must lie on the top edge y = size");

  const bool zero_area = left.x() == right.x() || apex.y() == s ||
                         std::abs(cross2(left, right, apex)) == 0.0;
  LabelledPolygon poly;
  poly.vertices = {Point(0.0, 0.0), Point(s, 0.0), Point(s, s)};
  poly.edge_labels = {"bottom", "right"};
  if (zero_area) {
    poly.edge_labels.push_back("top");
  } else {
    if (!(left.x() > 0.0 && right.x() < s && left.x() < right.x())) {
      throw ConfigError("notch base must satisfy 0 < left.x < right.x < size");
    }
    if (!(apex.x() > 0.0 && apex.x() < s && apex.y() > 0.0 && apex.y() < s)) {
      throw ConfigError("notch apex must lie strictly inside the square");
    }
    poly.vertices.push_back(right);
    poly.vertices.push_back(apex);
    poly.vertices.push_back(left);
    poly.edge_labels.insert(poly.edge_labels.end(), {"top", "notch", "notch", "top"});
  }
  poly.vertices.push_back(Point(0.0, s));
  poly.edge_labels.push_back("left");

  // Reject self-intersecting outlines (non-adjacent edges crossing).
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(poly.vertices[i], poly.vertices[(i + 1) % n], poly.vertices[j], poly.vertices[(j + 1) % n])) {
        throw ConfigError("notched square outline self-intersects");
      }
    }
  }
  return poly;
}

bool inside_polygon_strict(const std::vector<Point>& poly, const Point& p, double margin) {
  if (!point_in_polygon(poly, p)) return false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (segment_distance(p, poly[i], poly[(i + 1) % n]) <= margin) return false;
  }
  return true;
}

Point to_point(const std::array<double, 3>& a) { return Point(a[0], a[1], a[2]); }

std::vector<Point> interior_points(const GeometryConfig& c, const InsideTest& inside, const Point& lo,
                                   const Point& hi) {
  return rejection_sample(c.seed ^ kInteriorStream, c.interior_count, lo, hi, inside);
}

}  // namespace

std::size_t NodeSet::dirichlet_count() const {
  return static_cast<std::size_t>(std::count_if(boundary.begin(), boundary.end(),
                                                [](const BoundaryNode& n) { return n.bc == BcKind::Dirichlet; }));
}

void NodeSet::validate() const {
  if (dim != 2 && dim != 3) throw ConfigError("NodeSet: dimension must be 2 or 3");
  bool seen_neumann = false;
  for (const auto& node : boundary) {
    if (node.point.dim() != dim || node.normal.dim() != dim) throw ConfigError("NodeSet: boundary node dimension mismatch");
    if (std::abs(norm(node.normal) - 1.0) > 1e-12) throw ConfigError("NodeSet: boundary normal is not unit length");
    if (node.bc == BcKind::Neumann) seen_neumann = true;
    if (node.bc == BcKind::Dirichlet && seen_neumann) {
      throw ConfigError("NodeSet: Dirichlet nodes must precede Neumann nodes");
    }
  }
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    for (std::size_t j = i + 1; j < boundary.size(); ++j) {
      if (distance(boundary[i].point, boundary[j].point) <= 1e-8) {
        throw ConfigError("NodeSet: boundary nodes " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
  for (const auto& p : interior)
    if (p.dim() != dim) throw ConfigError("NodeSet: interior point dimension mismatch");
  for (const auto& p : eval_points)
    if (p.dim() != dim) throw ConfigError("NodeSet: eval point dimension mismatch");
}

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::SquareWithNotch: return "square_notch";
    case Shape::CubeWithTwoBallCavity: return "cube_two_ball";
    case Shape::Disk: return "disk";
    case Shape::Sphere: return "sphere";
  }
  return "unknown";
}

Shape shape_from_string(const std::string& name) {
  for (Shape s : {Shape::SquareWithNotch, Shape::CubeWithTwoBallCavity, Shape::Disk, Shape::Sphere}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown shape '" + name + "'");
}

GeometryConfig GeometryConfig::square_with_notch_defaults() {
  GeometryConfig c;
  c.shape = Shape::SquareWithNotch;
  c.neumann_surfaces = {"bottom"};
  return c;
}

GeometryConfig GeometryConfig::cube_with_two_ball_cavity_defaults() {
  GeometryConfig c;
  c.shape = Shape::CubeWithTwoBallCavity;
  c.size = 4.0;
  const double half = 0.5 * std::numbers::sqrt2;
  c.ball_center_a = {2.0 - half, 2.0, 2.0};
  c.ball_center_b = {2.0 + half, 2.0, 2.0};
  c.neumann_surfaces = {"x0"};
  c.interior_count = 0;
  c.eval_count = 500;
  return c;
}

GeometryConfig GeometryConfig::disk_defaults() {
  GeometryConfig c;
  c.shape = Shape::Disk;
  c.size = 1.0;
  c.boundary_count = 16;
  c.interior_count = 0;
  c.eval_count = 200;
  return c;
}

GeometryConfig GeometryConfig::sphere_defaults() {
  GeometryConfig c = disk_defaults();
  c.shape = Shape::Sphere;
  c.boundary_count = 100;
  return c;
}

GeometryConfig GeometryConfig::defaults_for(Shape shape) {
  switch (shape) {
    case Shape::SquareWithNotch: return square_with_notch_defaults();
    case Shape::CubeWithTwoBallCavity: return cube_with_two_ball_cavity_defaults();
    case Shape::Disk: return disk_defaults();
    case Shape::Sphere: return sphere_defaults();
  }
  return square_with_notch_defaults();
}

bool point_in_polygon(const std::vector<Point>& polygon, const Point& p) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = polygon[i];
    const Point& b = polygon[j];
    if ((a.y() > p.y()) != (b.y() > p.y()) && p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x()) {
      inside = !inside;
    }
  }
  return inside;
}

std::vector<Point> notched_square_polygon(const GeometryConfig& config) {
  return build_notched_square(config).vertices;
}

InsideTest inside_test(const GeometryConfig& c) {
  switch (c.shape) {
    case Shape::SquareWithNotch: {
      auto poly = build_notched_square(c).vertices;
      return [poly](const Point& p) { return p.dim() == 2 && inside_polygon_strict(poly, p, 1e-9); };
    }
    case Shape::CubeWithTwoBallCavity: {
      const Point ca = to_point(c.ball_center_a);
      const Point cb = to_point(c.ball_center_b);
      const double s = c.size;
      const double r = c.ball_radius;
      const bool cavity = c.cavity_count > 0;
      return [=](const Point& p) {
        if (p.dim() != 3) return false;
        for (int i = 0; i < 3; ++i)
          if (!(p[i] > 1e-9 && p[i] < s - 1e-9)) return false;
        if (!cavity) return true;
        return distance(p, ca) > r + 1e-9 && distance(p, cb) > r + 1e-9;
      };
    }
    case Shape::Disk:
    case Shape::Sphere: {
      const int dim = c.shape == Shape::Disk ? 2 : 3;
      const double r = c.size;
      return [=](const Point& p) { return p.dim() == dim && norm(p) < r * (1.0 - 1e-9); };
    }
  }
  return [](const Point&) { return false; };
}

NodeSet square_with_notch(const GeometryConfig& c) {
  if (c.shape != Shape::SquareWithNotch) throw ConfigError("square_with_notch: wrong shape in config");
  check_counts(c);
  check_surfaces(c, {"bottom", "right", "top", "left", "notch"});
  if (c.boundary_count < 1) throw ConfigError("boundary_count must be at least 1");

  const LabelledPolygon poly = build_notched_square(c);
  const std::size_t nv = poly.vertices.size();
  std::vector<double> cumulative(nv + 1, 0.0);
  for (std::size_t i = 0; i < nv; ++i) {
    cumulative[i + 1] = cumulative[i] + distance(poly.vertices[i], poly.vertices[(i + 1) % nv]);
  }
  const double perimeter = cumulative[nv];
  const double spacing = perimeter / c.boundary_count;

  NodeSet nodes;
  nodes.dim = 2;
  std::size_t edge = 0;
  for (int k = 0; k < c.boundary_count; ++k) {
    const double s = (k + 0.5) * spacing;
    while (edge + 1 < nv && s > cumulative[edge + 1]) ++edge;
    const Point& a = poly.vertices[edge];
    const Point& b = poly.vertices[(edge + 1) % nv];
    const double t = (s - cumulative[edge]) / (cumulative[edge + 1] - cumulative[edge]);
    const Vector tangent = b - a;
    BoundaryNode node;
    node.point = a + t * tangent;
    node.normal = normalized(Vector(tangent.y(), -tangent.x()));  // outward for a CCW outline
    node.bc = has_surface(c, poly.edge_labels[edge]) ? BcKind::Neumann : BcKind::Dirichlet;
    nodes.boundary.push_back(node);
  }
  order_dirichlet_first(nodes.boundary);

  const InsideTest inside = inside_test(c);
  const int grid = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.interior_count))));
  if (c.interior_count > 0 && grid * grid == c.interior_count) {
    const auto& box = c.interior_box;
    for (int j = 0; j < grid; ++j) {
      for (int i = 0; i < grid; ++i) {
        const double fx = grid == 1 ? 0.5 : static_cast<double>(i) / (grid - 1);
        const double fy = grid == 1 ? 0.5 : static_cast<double>(j) / (grid - 1);
        nodes.interior.emplace_back(box[0] + fx * (box[1] - box[0]), box[2] + fy * (box[3] - box[2]));
      }
    }
  } else {
    nodes.interior = interior_points(c, inside, Point(0.0, 0.0), Point(c.size, c.size));
  }
  for (const auto& p : nodes.interior) {
    if (!inside(p)) throw ConfigError("interior grid point lies outside the notched square");
  }
  nodes.eval_points = rejection_sample(c.seed ^ kEvalStream, c.eval_count, Point(0.0, 0.0), Point(c.size, c.size), inside);
  nodes.validate();
  return nodes;
}

NodeSet cube_with_two_ball_cavity(const GeometryConfig& c) {
  if (c.shape != Shape::CubeWithTwoBallCavity) throw ConfigError("cube_with_two_ball_cavity: wrong shape in config");
  check_counts(c);
  check_surfaces(c, {"x0", "x1", "y0", "y1", "z0", "z1", "cavity"});
  if (c.face_grid < 1) throw ConfigError("face_grid must be at least 1");
  if (c.cavity_count < 0) throw ConfigError("cavity_count must be non-negative");

  const double s = c.size;
  const double r = c.ball_radius;
  const Point centers[2] = {to_point(c.ball_center_a), to_point(c.ball_center_b)};
  if (c.cavity_count > 0) {
    if (!(r > 0.0)) throw ConfigError("ball_radius must be positive");
    for (const Point& ctr : centers) {
      for (int i = 0; i < 3; ++i) {
        if (!(ctr[i] - r > 0.0 && ctr[i] + r < s)) throw ConfigError("cavity ball protrudes from the cube");
      }
    }
  }

  NodeSet nodes;
  nodes.dim = 3;
  const int k = c.face_grid;
  const char* labels[3][2] = {{"x0", "x1"}, {"y0", "y1"}, {"z0", "z1"}};
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      const bool neumann = has_surface(c, labels[axis][side]);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          BoundaryNode node;
          node.point = Point::zero(3);
          node.point[axis] = side * s;
          node.point[u] = (i + 0.5) * s / k;
          node.point[v] = (j + 0.5) * s / k;
          node.normal = Vector::zero(3);
          node.normal[axis] = side == 0 ? -1.0 : 1.0;
          node.bc = neumann ? BcKind::Neumann : BcKind::Dirichlet;
          nodes.boundary.push_back(node);
        }
      }
    }
  }

  const bool cavity_neumann = has_surface(c, "cavity");
  Rng rng(c.seed ^ kCavityStream);
  for (int n = 0; n < c.cavity_count; ++n) {
    const Point& own = centers[n % 2];
    const Point& other = centers[(n + 1) % 2];
    int attempts = 0;
    while (true) {
      if (++attempts > kMaxRejections) throw ConfigError("cavity sampling failed: one ball hides the other");
      const double zc = rng.uniform(-1.0, 1.0);
      const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double rho = std::sqrt(std::max(0.0, 1.0 - zc * zc));
      const Vector dir(rho * std::cos(phi), rho * std::sin(phi), zc);
      const Point p = own + r * dir;
      if (distance(p, other) < r) continue;
      BoundaryNode node;
      node.point = p;
      node.normal = normalized(-dir);  // out of the domain, into the cavity
      node.bc = cavity_neumann ? BcKind::Neumann : BcKind::Dirichlet;
      nodes.boundary.push_back(node);
      break;
    }
  }
  order_dirichlet_first(nodes.boundary);

  const InsideTest inside = inside_test(c);
  const Point lo(0.0, 0.0, 0.0);
  const Point hi(s, s, s);
  nodes.interior = interior_points(c, inside, lo, hi);
  nodes.eval_points = rejection_sample(c.seed ^ kEvalStream, c.eval_count, lo, hi, inside);
  nodes.validate();
  return nodes;
}

NodeSet validation_shape(const GeometryConfig& c) {
  if (c.shape != Shape::Disk && c.shape != Shape::Sphere) throw ConfigError("validation_shape: shape must be disk or sphere");
  check_counts(c);
  check_surfaces(c, {"left"});
  if (c.boundary_count < 1) throw ConfigError("boundary_count must be at least 1");

  const bool left_neumann = has_surface(c, "left");
  const double radius = c.size;
  const int count = c.boundary_count;
  NodeSet nodes;
  nodes.dim = c.shape == Shape::Disk ? 2 : 3;
  for (int k = 0; k < count; ++k) {
    Vector dir;
    if (c.shape == Shape::Disk) {
      const double theta = 2.0 * std::numbers::pi * k / count;
      dir = Vector(std::cos(theta), std::sin(theta));
    } else {
      // Fibonacci lattice.
      const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
      const double zc = 1.0 - (2.0 * k + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - zc * zc));
      dir = Vector(rho * std::cos(golden * k), rho * std::sin(golden * k), zc);
    }
    dir = normalized(dir);
    BoundaryNode node;
    node.point = radius * dir;
    node.normal = dir;
    node.bc = left_neumann && node.point.x() < 0.0 ? BcKind::Neumann : BcKind::Dirichlet;
    nodes.boundary.push_back(node);
  }
  order_dirichlet_first(nodes.boundary);

  const InsideTest inside = inside_test(c);
  const Point lo = nodes.dim == 2 ? Point(-radius, -radius) : Point(-radius, -radius, -radius);
  const Point hi = -1.0 * lo;
  nodes.interior = interior_points(c, inside, lo, hi);
  nodes.eval_points = rejection_sample(c.seed ^ kEvalStream, c.eval_count, lo, hi, inside);
  nodes.validate();
  return nodes;
}

NodeSet generate(const GeometryConfig& config) {
  switch (config.shape) {
    case Shape::SquareWithNotch: return square_with_notch(config);
    case Shape::CubeWithTwoBallCavity: return cube_with_two_ball_cavity(config);
    case Shape::Disk:
    case Shape::Sphere: return validation_shape(config);
  }
  throw ConfigError("unknown shape");
}

}  // namespace meshfree::geometry
