#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "meshfree/errors.hpp"
#include "meshfree/geometry.hpp"

namespace meshfree::geometry {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_row(std::ostream& out, const Point& p, const Vector& n, char kind) {
  for (int i = 0; i < p.dim(); ++i) out << format_double(p[i]) << ',';
  for (int i = 0; i < p.dim(); ++i) out << format_double(n[i]) << ',';
  out << kind << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    fields.push_back(field);
  }
  return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("node CSV line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const NodeSet& nodes) {
  out << (nodes.dim == 2 ? "x,y,nx,ny,kind\n" : "x,y,z,nx,ny,nz,kind\n");
  for (const auto& b : nodes.boundary) write_row(out, b.point, b.normal, b.bc == BcKind::Dirichlet ? 'D' : 'N');
  const Vector zero = Vector::zero(nodes.dim);
  for (const auto& p : nodes.interior) write_row(out, p, zero, 'I');
  for (const auto& p : nodes.eval_points) write_row(out, p, zero, 'E');
}

NodeSet read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("node CSV: missing header row");
  const auto header = split(line);
  NodeSet nodes;
  if (header == std::vector<std::string>{"x", "y", "nx", "ny", "kind"}) {
    nodes.dim = 2;
  } else if (header == std::vector<std::string>{"x", "y", "z", "nx", "ny", "nz", "kind"}) {
    nodes.dim = 3;
  } else {
    throw ConfigError("node CSV: unrecognized header '" + line + "'");
  }
  const std::size_t width = 2 * static_cast<std::size_t>(nodes.dim) + 1;

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line);
    if (fields.size() != width) throw ConfigError("node CSV line " + std::to_string(line_no) + ": wrong column count");
    Point p = Point::zero(nodes.dim);
    Vector n = Vector::zero(nodes.dim);
    for (int i = 0; i < nodes.dim; ++i) {
      p[i] = parse_double(fields[static_cast<std::size_t>(i)], line_no);
      n[i] = parse_double(fields[static_cast<std::size_t>(nodes.dim + i)], line_no);
    }
    const std::string& kind = fields.back();
    if (kind == "D" || kind == "N") {
      nodes.boundary.push_back({p, n, kind == "D" ? BcKind::Dirichlet : BcKind::Neumann});
    } else if (kind == "I") {
      nodes.interior.push_back(p);
    } else if (kind == "E") {
      nodes.eval_points.push_back(p);
    } else {
      throw ConfigError("node CSV line " + std::to_string(line_no) + ": unknown kind '" + kind + "'");
    }
  }
  nodes.validate();
  return nodes;
}

void write_csv_file(const std::string& path, const NodeSet& nodes) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_csv(out, nodes);
}

NodeSet read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace meshfree::geometry
