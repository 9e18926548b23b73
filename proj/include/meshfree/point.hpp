#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace meshfree {

/// Fixed-capacity coordinate vector carrying its own dimension (2 or 3).
/// Used for points, displacements and unit normals alike.
class Point {
 public:
  Point() = default;
  Point(double x, double y) : dim_(2), c_{x, y, 0.0} {}
  Point(double x, double y, double z) : dim_(3), c_{x, y, z} {}

  static Point zero(int dim) {
    if (dim != 2 && dim != 3) throw std::domain_error("Point: dimension must be 2 or 3");
    Point p;
    p.dim_ = dim;
    return p;
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  double x() const { return c_[0]; }
  double y() const { return c_[1]; }
  double z() const { return c_[2]; }

  Point& operator+=(const Point& o) {
    for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Point& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend bool operator==(const Point& a, const Point& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

 private:
  int dim_ = 3;
  std::array<double, 3> c_{};
};

using Vector = Point;

inline Point operator+(Point a, const Point& b) { return a += b; }
inline Point operator-(Point a, const Point& b) { return a -= b; }
inline Point operator*(double s, Point a) { return a *= s; }
inline Point operator*(Point a, double s) { return a *= s; }
inline Point operator-(Point a) { return a *= -1.0; }

inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }

inline Point normalized(Point a) {
  const double len = norm(a);
  if (len == 0.0) throw std::domain_error("normalized: zero-length vector");
  return a *= (1.0 / len);
}

inline void require_same_dim(const Point& a, const Point& b, const char* where) {
  if (a.dim() != b.dim()) throw std::domain_error(std::string(where) + ": dimension mismatch");
}

}  // namespace meshfree
