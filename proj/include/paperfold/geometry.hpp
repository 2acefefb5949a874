#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "paperfold/errors.hpp"

namespace paperfold {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double t, Point p) { return {t * p.x, t * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::sqrt(p.x * p.x + p.y * p.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

// Cyclic boundary arc, measured in arc length CCW from vertex 0.
struct Arc {
  double start = 0.0;
  double length = 0.0;
};

// Simple closed CCW polygon with arc-length boundary coordinates and the
// intrinsic (shortest-path-inside) metric.
class Polygon {
 public:
  // Checks simplicity, orientation and vertex non-degeneracy; throws
  // NotSimple / WrongOrientation / DegenerateVertex.
  static Polygon validate(std::vector<Point> vertices);

  std::size_t size() const { return vs_.size(); }
  const std::vector<Point>& vertices() const { return vs_; }
  const Point& vertex(std::size_t i) const { return vs_[i]; }
  double perimeter() const { return perimeter_; }
  bool convex() const { return convex_; }
  double side_length(std::size_t i) const;
  // Arc-length coordinate of vertex i (vertex 0 sits at 0).
  double vertex_coord(std::size_t i) const { return vcoord_[i]; }
  double interior_angle_vertex(std::size_t i) const { return angles_[i]; }

  // Comparison tolerance for boundary coordinates.
  double tol() const { return 1e-9 * perimeter_; }

  // Reduces s modulo the perimeter into [0, perimeter).
  double canonical(double s) const;
  // Cyclic forward offset from a to b in [0, perimeter).
  double cyclic_delta(double a, double b) const { return canonical(b - a); }

  Point boundary_point(double s) const;
  std::optional<std::size_t> vertex_at(double s, double tolerance) const;
  std::optional<std::size_t> vertex_at(double s) const { return vertex_at(s, tol()); }
  // pi away from vertices, the vertex interior angle otherwise.
  double interior_angle_at(double s) const;

  double boundary_distance(const Point& p) const;
  bool contains(const Point& p) const { return contains(p, 1e-12 * perimeter_); }
  bool contains(const Point& p, double tolerance) const;
  // True iff the closed segment [a, b] stays inside the closed polygon.
  bool segment_inside(const Point& a, const Point& b) const;

  // Length of a shortest path between p and q inside the closed polygon.
  // Throws PointOutside.
  double intrinsic_distance(const Point& p, const Point& q) const;

  // Diameter of a boundary arc in the intrinsic metric.
  double arc_diameter(Arc arc) const;

  // Indices of vertices whose coordinate lies strictly inside the open arc.
  std::vector<std::size_t> vertices_in_arc(Arc arc) const;

  bool arc_contains(Arc arc, double s, bool open) const;

 private:
  std::vector<Point> vs_;
  std::vector<double> vcoord_;  // size n+1, vcoord_[n] == perimeter
  std::vector<double> angles_;
  double perimeter_ = 0.0;
  bool convex_ = true;
};

// Pairwise intrinsic distances between the given points (all inside P).
// Convex polygons short-circuit to the Euclidean metric.
std::vector<double> pairwise_intrinsic(const Polygon& poly, const std::vector<Point>& pts);

}  // namespace paperfold
