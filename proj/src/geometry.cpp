#include "paperfold/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

namespace paperfold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_pt(const Point& p) {
  std::ostringstream os;
  os << "(" << p.x << "," << p.y << ")";
  return os.str();
}

// Appends to `ts` the parameters along [a,b] where it meets segment [u,v].
// Collinear overlaps contribute both overlap endpoints.
void segment_contact_params(Point a, Point b, Point u, Point v, double scale,
                            std::vector<double>& ts) {
  const Point r = b - a;
  const Point s = v - u;
  const double rxs = cross(r, s);
  const double eps = 1e-14 * scale * scale;
  if (std::abs(rxs) > eps) {
    const double t = cross(u - a, s) / rxs;
    const double w = cross(u - a, r) / rxs;
    const double tolp = 1e-12;
    if (t >= -tolp && t <= 1.0 + tolp && w >= -tolp && w <= 1.0 + tolp) {
      ts.push_back(std::clamp(t, 0.0, 1.0));
    }
    return;
  }
  if (std::abs(cross(u - a, r)) > eps) return;  // parallel, not collinear
  const double rr = dot(r, r);
  if (rr <= 0.0) return;
  double t0 = dot(u - a, r) / rr;
  double t1 = dot(v - a, r) / rr;
  if (t0 > t1) std::swap(t0, t1);
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, 1.0);
  if (t0 <= t1) {
    ts.push_back(t0);
    ts.push_back(t1);
  }
}

// True iff [a,b] and [u,v] share at least one point.
bool segments_touch(Point a, Point b, Point u, Point v, double scale) {
  auto orient = [&](Point p, Point q, Point r) {
    const double c = cross(q - p, r - p);
    const double eps = 1e-14 * scale * scale;
    if (c > eps) return 1;
    if (c < -eps) return -1;
    return 0;
  };
  const int o1 = orient(a, b, u);
  const int o2 = orient(a, b, v);
  const int o3 = orient(u, v, a);
  const int o4 = orient(u, v, b);
  if (o1 != o2 && o3 != o4) return true;
  auto on_seg = [&](Point p, Point q, Point r) {
    return orient(p, q, r) == 0 && std::min(p.x, q.x) - 1e-12 * scale <= r.x &&
           r.x <= std::max(p.x, q.x) + 1e-12 * scale &&
           std::min(p.y, q.y) - 1e-12 * scale <= r.y &&
           r.y <= std::max(p.y, q.y) + 1e-12 * scale;
  };
  return on_seg(a, b, u) || on_seg(a, b, v) || on_seg(u, v, a) || on_seg(u, v, b);
}

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return dist(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return dist(p, a + t * ab);
}

}  // namespace

Polygon Polygon::validate(std::vector<Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) fail(ErrorKind::DegenerateVertex, "polygon needs at least 3 vertices");
  for (const Point& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      fail(ErrorKind::DegenerateVertex, "non-finite vertex coordinate");
    }
  }

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max(scale, dist(vertices[i], vertices[(i + 1) % n]));
  }
  if (scale <= 0.0) fail(ErrorKind::DegenerateVertex, "all vertices coincide");

  for (std::size_t i = 0; i < n; ++i) {
    if (dist(vertices[i], vertices[(i + 1) % n]) <= 1e-12 * scale) {
      fail(ErrorKind::DegenerateVertex,
           "zero-length side at vertex " + std::to_string(i));
    }
  }

  // Simplicity: no two non-adjacent edges may touch, and adjacent edges may
  // meet only at their shared vertex.
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i];
    const Point b = vertices[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Point u = vertices[j];
      const Point v = vertices[(j + 1) % n];
      if (adjacent) continue;
      if (segments_touch(a, b, u, v, scale)) {
        fail(ErrorKind::NotSimple,
             "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  // A fold-back onto the previous edge is a boundary self-touch.
  for (std::size_t i = 0; i < n; ++i) {
    const Point prev = vertices[(i + n - 1) % n] - vertices[i];
    const Point next = vertices[(i + 1) % n] - vertices[i];
    if (std::abs(cross(prev, next)) <= 1e-12 * scale * scale && dot(prev, next) > 0.0) {
      fail(ErrorKind::NotSimple, "boundary folds back at vertex " + std::to_string(i));
    }
  }

  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    area2 += cross(vertices[i], vertices[(i + 1) % n]);
  }
  if (area2 <= 1e-12 * scale * scale) {
    fail(ErrorKind::WrongOrientation, "signed area must be positive (CCW)");
  }

  Polygon poly;
  poly.vs_ = std::move(vertices);
  poly.vcoord_.resize(n + 1);
  poly.vcoord_[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    poly.vcoord_[i + 1] = poly.vcoord_[i] + dist(poly.vs_[i], poly.vs_[(i + 1) % n]);
  }
  poly.perimeter_ = poly.vcoord_[n];

  poly.angles_.resize(n);
  poly.convex_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly.vs_[(i + n - 1) % n] - poly.vs_[i];
    const Point b = poly.vs_[(i + 1) % n] - poly.vs_[i];
    double ang = std::atan2(cross(b, a), dot(b, a));
    if (ang <= 0.0) ang += 2.0 * kPi;
    poly.angles_[i] = ang;
    if (ang > kPi) poly.convex_ = false;
    if (std::abs(ang - kPi) <= 1e-9) {
      fail(ErrorKind::DegenerateVertex,
           "interior angle pi at vertex " + std::to_string(i));
    }
  }
  return poly;
}

double Polygon::side_length(std::size_t i) const {
  return vcoord_[i + 1] - vcoord_[i];
}

double Polygon::canonical(double s) const {
  double r = std::fmod(s, perimeter_);
  if (r < 0.0) r += perimeter_;
  if (r >= perimeter_) r = 0.0;
  return r;
}

Point Polygon::boundary_point(double s) const {
  const double c = canonical(s);
  const auto it = std::upper_bound(vcoord_.begin(), vcoord_.end(), c);
  std::size_t i = static_cast<std::size_t>(it - vcoord_.begin());
  i = (i == 0) ? 0 : i - 1;
  if (i >= vs_.size()) i = vs_.size() - 1;
  const double t = (c - vcoord_[i]) / side_length(i);
  return vs_[i] + t * (vs_[(i + 1) % vs_.size()] - vs_[i]);
}

std::optional<std::size_t> Polygon::vertex_at(double s, double tolerance) const {
  const double c = canonical(s);
  for (std::size_t i = 0; i < vs_.size(); ++i) {
    double d = std::abs(c - vcoord_[i]);
    d = std::min(d, perimeter_ - d);
    if (d <= tolerance) return i;
  }
  return std::nullopt;
}

double Polygon::interior_angle_at(double s) const {
  if (auto v = vertex_at(s)) return angles_[*v];
  return kPi;
}

double Polygon::boundary_distance(const Point& p) const {
  double best = kInf;
  for (std::size_t i = 0; i < vs_.size(); ++i) {
    best = std::min(best, point_segment_distance(p, vs_[i], vs_[(i + 1) % vs_.size()]));
  }
  return best;
}

bool Polygon::contains(const Point& p, double tolerance) const {
  if (boundary_distance(p) <= tolerance) return true;
  // Even-odd crossing count with the half-open edge rule.
  bool inside = false;
  const std::size_t n = vs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vs_[i];
    const Point& b = vs_[(i + 1) % n];
    if ((a.y <= p.y) != (b.y <= p.y)) {
      const double xing = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xing) inside = !inside;
    }
  }
  return inside;
}

bool Polygon::segment_inside(const Point& a, const Point& b) const {
  const double tolerance = 1e-9 * perimeter_;
  if (!contains(a, tolerance) || !contains(b, tolerance)) return false;
  std::vector<double> ts = {0.0, 1.0};
  const std::size_t n = vs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    segment_contact_params(a, b, vs_[i], vs_[(i + 1) % n], perimeter_, ts);
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= 1e-12) continue;
    const double m = 0.5 * (ts[i] + ts[i + 1]);
    if (!contains(a + m * (b - a), tolerance)) return false;
  }
  return true;
}

double Polygon::intrinsic_distance(const Point& a, const Point& b) const {
  const double tolerance = 1e-9 * perimeter_;
  if (!contains(a, tolerance)) fail(ErrorKind::PointOutside, "point " + fmt_pt(a));
  if (!contains(b, tolerance)) fail(ErrorKind::PointOutside, "point " + fmt_pt(b));
  if (a.x == b.x && a.y == b.y) return 0.0;
  if (convex_ || segment_inside(a, b)) return dist(a, b);

  // Canonical argument order keeps the value exactly symmetric.
  Point p = a, q = b;
  if (q.x < p.x || (q.x == p.x && q.y < p.y)) std::swap(p, q);

  // Shortest paths bend only at vertices; run Dijkstra on the visibility
  // graph over {p, q} and the polygon vertices.
  std::vector<Point> nodes = {p, q};
  nodes.insert(nodes.end(), vs_.begin(), vs_.end());
  const std::size_t k = nodes.size();
  std::vector<double> d(k, kInf);
  std::vector<bool> done(k, false);
  d[0] = 0.0;
  for (std::size_t it = 0; it < k; ++it) {
    std::size_t u = k;
    double best = kInf;
    for (std::size_t i = 0; i < k; ++i) {
      if (!done[i] && d[i] < best) {
        best = d[i];
        u = i;
      }
    }
    if (u == k) break;
    done[u] = true;
    if (u == 1) break;
    for (std::size_t v = 0; v < k; ++v) {
      if (done[v]) continue;
      if (!segment_inside(nodes[u], nodes[v])) continue;
      const double nd = d[u] + dist(nodes[u], nodes[v]);
      if (nd < d[v]) d[v] = nd;
    }
  }
  return d[1];
}

std::vector<std::size_t> Polygon::vertices_in_arc(Arc arc) const {
  std::vector<std::size_t> out;
  const double t = tol();
  for (std::size_t i = 0; i < vs_.size(); ++i) {
    const double off = cyclic_delta(arc.start, vcoord_[i]);
    if (off > t && off < arc.length - t) out.push_back(i);
  }
  return out;
}

bool Polygon::arc_contains(Arc arc, double s, bool open) const {
  double off = cyclic_delta(arc.start, s);
  const double t = tol();
  if (off >= perimeter_ - t) off = 0.0;
  if (open) return off > t && off < arc.length - t;
  return off <= arc.length + t;
}

double Polygon::arc_diameter(Arc arc) const {
  const double t = tol();
  double len = arc.length;
  if (len <= t) return 0.0;
  len = std::min(len, perimeter_);

  const auto inner = vertices_in_arc(arc);
  bool has_convex = false;
  for (std::size_t v : inner) {
    if (angles_[v] < kPi) has_convex = true;
  }
  // An arc turning only at reflex vertices is geodesic, so its diameter is
  // realized along the arc itself.
  if (!has_convex) return len;

  if (inner.size() == 1) {
    const Point x1 = boundary_point(arc.start);
    const Point x2 = boundary_point(arc.start + len);
    const double a = cyclic_delta(arc.start, vcoord_[inner[0]]);
    const double b = len - a;
    if (segment_inside(x1, x2)) {
      return std::max({a, b, dist(x1, x2)});
    }
  }

  // General arc: max pairwise intrinsic distance over endpoint/vertex
  // samples, refined by midpoint insertion.
  std::vector<double> offs = {0.0};
  for (std::size_t v : inner) offs.push_back(cyclic_delta(arc.start, vcoord_[v]));
  offs.push_back(len);
  std::sort(offs.begin(), offs.end());

  double best = 0.0;
  for (int iter = 0; iter < 8; ++iter) {
    std::vector<Point> pts;
    pts.reserve(offs.size());
    for (double o : offs) pts.push_back(boundary_point(arc.start + o));
    const auto mat = pairwise_intrinsic(*this, pts);
    double cur = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        cur = std::max(cur, mat[i * pts.size() + j]);
      }
    }
    if (iter > 0 && cur - best < t) {
      best = std::max(best, cur);
      break;
    }
    best = std::max(best, cur);
    if (offs.size() > 200) break;
    std::vector<double> next;
    next.reserve(offs.size() * 2);
    for (std::size_t i = 0; i + 1 < offs.size(); ++i) {
      next.push_back(offs[i]);
      next.push_back(0.5 * (offs[i] + offs[i + 1]));
    }
    next.push_back(offs.back());
    offs = std::move(next);
  }
  return best;
}

std::vector<double> pairwise_intrinsic(const Polygon& poly, const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  std::vector<double> mat(n * n, 0.0);
  if (poly.convex()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        mat[i * n + j] = mat[j * n + i] = dist(pts[i], pts[j]);
      }
    }
    return mat;
  }

  // Visibility graph over pts plus the polygon vertices.
  std::vector<Point> nodes = pts;
  nodes.insert(nodes.end(), poly.vertices().begin(), poly.vertices().end());
  const std::size_t k = nodes.size();
  std::vector<char> vis(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const char v = poly.segment_inside(nodes[i], nodes[j]) ? 1 : 0;
      vis[i * k + j] = vis[j * k + i] = v;
    }
  }
  std::vector<double> d(k);
  std::vector<bool> done(k);
  for (std::size_t src = 0; src < n; ++src) {
    std::fill(d.begin(), d.end(), kInf);
    std::fill(done.begin(), done.end(), false);
    d[src] = 0.0;
    for (std::size_t it = 0; it < k; ++it) {
      std::size_t u = k;
      double best = kInf;
      for (std::size_t i = 0; i < k; ++i) {
        if (!done[i] && d[i] < best) {
          best = d[i];
          u = i;
        }
      }
      if (u == k) break;
      done[u] = true;
      for (std::size_t v = 0; v < k; ++v) {
        if (done[v] || !vis[u * k + v]) continue;
        const double nd = d[u] + dist(nodes[u], nodes[v]);
        if (nd < d[v]) d[v] = nd;
      }
    }
    for (std::size_t j = 0; j < n; ++j) mat[src * n + j] = d[j];
  }
  // Keep the matrix exactly symmetric.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::min(mat[i * n + j], mat[j * n + i]);
      mat[i * n + j] = mat[j * n + i] = v;
    }
  }
  return mat;
}

}  // namespace paperfold
