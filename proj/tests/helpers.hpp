#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <queue>
#include <random>
#include <vector>

#include "paperfold/approx.hpp"
#include "paperfold/scheme.hpp"

namespace paperfold::testing {

inline constexpr double kPi = std::numbers::pi;

// Deterministic uniform doubles independent of the standard library's
// distribution implementations.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline Polygon make_square() {
  return Polygon::validate({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline Polygon make_l_shape() {
  return Polygon::validate({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

// Square pillow: bottom+right folded shut, top+left folded shut.
inline Scheme sq2_scheme() {
  return Scheme::validate(make_square(), {{{0, 1}, {1, 1}}, {{2, 1}, {3, 1}}});
}

// Opposite sides glued; quotient is a flat torus.
inline Scheme torus_scheme() {
  return Scheme::validate(make_square(), {{{0, 1}, {2, 1}}, {{1, 1}, {3, 1}}});
}

inline InfiniteScheme canon1_square() {
  PatternSpec p{PatternKind::Canon1, 0.0, 0.5, 0.5};
  return InfiniteScheme::validate(make_square(), {{{1, 1}, {2, 1}}}, {p});
}

inline InfiniteScheme canon2_square() {
  PatternSpec p{PatternKind::Canon2, 0.0, 0.5, 0.5};
  return InfiniteScheme::validate(make_square(),
                                  {{{1, 1}, {2, 1}}, {{3, 0.5}, {3.5, 0.5}}}, {p});
}

inline InfiniteScheme singular1_square() {
  PatternSpec p{PatternKind::Singular1, 0.0, 0.5, 0.5};
  return InfiniteScheme::validate(make_square(),
                                  {{{0.5, 0.25}, {0.75, 0.25}}, {{1, 1}, {2, 1}}}, {p});
}

inline InfiniteScheme repeat2_square() {
  PatternSpec p1{PatternKind::Canon1, 0.0, 0.5, 0.5};
  PatternSpec p2{PatternKind::Canon1, 2.0, 0.5, 0.5};
  return InfiniteScheme::validate(make_square(), {}, {p1, p2});
}

inline Polygon random_convex_polygon(Rng& rng, int min_vertices = 4, int max_vertices = 8) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const int n = rng.uniform_int(min_vertices, max_vertices);
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back(rng.uniform(0.0, 2.0 * kPi));
    std::sort(angles.begin(), angles.end());
    bool spaced = true;
    for (int i = 0; i < n; ++i) {
      const double gap = (i + 1 < n) ? angles[i + 1] - angles[i]
                                     : angles[0] + 2.0 * kPi - angles[n - 1];
      if (gap < 0.25) spaced = false;
    }
    if (!spaced) continue;
    const double r = rng.uniform(0.5, 2.0);
    std::vector<Point> vs;
    for (double a : angles) vs.push_back({r * std::cos(a), r * std::sin(a)});
    try {
      return Polygon::validate(vs);
    } catch (const Error&) {
      continue;
    }
  }
  return make_square();
}

namespace detail {

// Distance from `start` to the first vertex strictly inside the arc.
inline double first_free_run(const Polygon& poly, double start, double len) {
  double best = len;
  for (std::size_t v = 0; v < poly.size(); ++v) {
    const double off = poly.cyclic_delta(start, poly.vertex_coord(v));
    if (off > poly.tol() && off < len - poly.tol()) best = std::min(best, off);
  }
  return best;
}

inline void cover_with_folds(const Polygon& poly, double start, double len,
                             std::vector<PairingSpec>& out) {
  while (len > poly.tol()) {
    const double run = first_free_run(poly, start, len);
    out.push_back({{poly.canonical(start), run / 2.0},
                   {poly.canonical(start + run / 2.0), run / 2.0}});
    start = poly.canonical(start + run);
    len -= run;
  }
}

inline void fill_plain(const Polygon& poly, Rng& rng, double start, double len, int depth,
                       std::vector<PairingSpec>& out) {
  const double min_len = 0.04 * poly.perimeter();
  if (len <= poly.tol()) return;
  if (len < min_len || depth > 6) {
    cover_with_folds(poly, start, len, out);
    return;
  }
  const int choice = rng.uniform_int(0, 2);
  if (choice == 0) {
    // Wrapping pairing: carve equal intervals off both ends, recurse inside.
    const double head = first_free_run(poly, start, len);
    double tail = len;
    for (std::size_t v = 0; v < poly.size(); ++v) {
      const double off = poly.cyclic_delta(start, poly.vertex_coord(v));
      if (off > poly.tol() && off < len - poly.tol()) tail = std::min(tail, len - off);
    }
    const double cap = std::min({head, tail, len / 2.0});
    if (cap > min_len / 2.0) {
      const double l = rng.uniform(0.4, 0.95) * cap;
      out.push_back({{poly.canonical(start), l}, {poly.canonical(start + len - l), l}});
      fill_plain(poly, rng, poly.canonical(start + l), len - 2.0 * l, depth + 1, out);
      return;
    }
  }
  if (choice == 1) {
    // Leading fold, then the rest.
    const double head = first_free_run(poly, start, len);
    if (head > min_len / 2.0) {
      const double l = rng.uniform(0.3, 0.9) * head;
      out.push_back({{poly.canonical(start), l / 2.0}, {poly.canonical(start + l / 2.0), l / 2.0}});
      fill_plain(poly, rng, poly.canonical(start + l), len - l, depth + 1, out);
      return;
    }
  }
  // Split into two independently filled sub-arcs; snap the split point to a
  // nearby vertex so no microscopic run can appear next to one.
  double w = len * rng.uniform(0.3, 0.7);
  for (std::size_t v = 0; v < poly.size(); ++v) {
    const double off = poly.cyclic_delta(start, poly.vertex_coord(v));
    if (off > poly.tol() && off < len - poly.tol() && std::abs(off - w) < 0.02 * poly.perimeter()) {
      w = off;
      break;
    }
  }
  fill_plain(poly, rng, start, w, depth + 1, out);
  fill_plain(poly, rng, poly.canonical(start + w), len - w, depth + 1, out);
}

}  // namespace detail

inline Scheme random_plain_scheme(Rng& rng) {
  const Polygon poly = random_convex_polygon(rng);
  std::vector<PairingSpec> specs;
  detail::fill_plain(poly, rng, 0.0, poly.perimeter(), 0, specs);
  return Scheme::validate(poly, specs);
}

// Convex polygon inscribed in a circle whose sides are pairing intervals with
// a random (possibly linked) matching.
inline Scheme random_full_scheme(Rng& rng) {
  const int pairs = rng.uniform_int(3, 6);
  std::vector<double> lens;
  for (int i = 0; i < pairs; ++i) lens.push_back(rng.uniform(0.5, 1.5));
  std::vector<int> order;
  for (int i = 0; i < pairs; ++i) {
    order.push_back(i);
    order.push_back(i);
  }
  std::shuffle(order.begin(), order.end(), rng.gen);

  std::vector<double> sides;
  for (int id : order) sides.push_back(lens[id]);
  const double maxside = *std::max_element(sides.begin(), sides.end());
  const auto angle_sum = [&](double r) {
    double sum = 0.0;
    for (double s : sides) sum += 2.0 * std::asin(std::min(1.0, s / (2.0 * r)));
    return sum;
  };
  double lo = maxside / 2.0 * (1.0 + 1e-12), hi = 100.0 * pairs;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (angle_sum(mid) > 2.0 * kPi ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  std::vector<Point> vs;
  double theta = 0.0;
  for (double s : sides) {
    vs.push_back({r * std::cos(theta), r * std::sin(theta)});
    theta += 2.0 * std::asin(s / (2.0 * r));
  }
  const Polygon poly = Polygon::validate(vs);

  std::vector<PairingSpec> specs(pairs);
  std::vector<int> seen(pairs, -1);
  for (std::size_t side = 0; side < order.size(); ++side) {
    const int id = order[side];
    const BoundaryInterval iv{poly.vertex_coord(side), poly.side_length(side)};
    if (seen[id] < 0) {
      seen[id] = static_cast<int>(side);
      specs[id].a = iv;
    } else {
      // Lengths of the two sides agree to rounding; reuse a's length exactly.
      specs[id].b = {iv.start, specs[id].a.length};
    }
  }
  return Scheme::validate(poly, specs);
}

// Independent upper-bound oracle for quotient distances: a flat Dijkstra over
// uniformly spaced boundary samples (plus their partners) with Euclidean
// steps. Convex polygons only.
inline double naive_quotient_upper(const Scheme& sch, const Point& x, const Point& y, double h) {
  const Polygon& poly = sch.polygon();
  std::vector<double> coords;
  const int m = static_cast<int>(std::ceil(poly.perimeter() / h));
  for (int k = 0; k < m; ++k) coords.push_back(poly.perimeter() * k / m);
  for (double c : sch.boundary_classes().cut_points) coords.push_back(c);

  std::vector<Point> nodes = {x, y};
  std::vector<std::pair<int, int>> zeros;
  const std::size_t base = nodes.size();
  std::vector<double> scoord;
  for (double c : coords) {
    scoord.push_back(c);
    nodes.push_back(poly.boundary_point(c));
  }
  const std::size_t original = scoord.size();
  for (std::size_t i = 0; i < original; ++i) {
    if (auto loc = sch.locate(scoord[i])) {
      const double partner = sch.pair_point(loc->pairing, scoord[i]);
      scoord.push_back(partner);
      nodes.push_back(poly.boundary_point(partner));
      zeros.emplace_back(static_cast<int>(base + i), static_cast<int>(nodes.size() - 1));
    }
  }
  const ClassTable& table = sch.boundary_classes();
  std::vector<int> cut_node(table.cut_points.size(), -1);
  for (std::size_t i = 0; i < scoord.size(); ++i) {
    if (auto cut = table.find_cut(poly.canonical(scoord[i]), poly.perimeter(), poly.tol())) {
      if (cut_node[*cut] < 0) cut_node[*cut] = static_cast<int>(base + i);
    }
  }
  for (const auto& members : table.classes) {
    for (std::size_t j = 1; j < members.size(); ++j) {
      if (cut_node[members[0]] >= 0 && cut_node[members[j]] >= 0) {
        zeros.emplace_back(cut_node[members[0]], cut_node[members[j]]);
      }
    }
  }

  const std::size_t n = nodes.size();
  std::vector<std::vector<int>> zadj(n);
  for (auto [u, v] : zeros) {
    zadj[u].push_back(v);
    zadj[v].push_back(u);
  }
  std::vector<double> d(n, 1e100);
  std::vector<bool> done(n, false);
  d[0] = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    double best = 1e100;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && d[i] < best) {
        best = d[i];
        u = i;
      }
    }
    if (u == n || u == 1) break;
    done[u] = true;
    for (int w : zadj[u]) d[w] = std::min(d[w], d[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v]) d[v] = std::min(d[v], d[u] + dist(nodes[u], nodes[v]));
    }
  }
  return d[1];
}

// Grid-graph oracle for the intrinsic metric of a (possibly non-convex)
// polygon: 16-neighborhood lattice Dijkstra.
inline double grid_intrinsic_oracle(const Polygon& poly, const Point& a, const Point& b,
                                    double h) {
  double minx = 1e100, maxx = -1e100, miny = 1e100, maxy = -1e100;
  for (const Point& v : poly.vertices()) {
    minx = std::min(minx, v.x);
    maxx = std::max(maxx, v.x);
    miny = std::min(miny, v.y);
    maxy = std::max(maxy, v.y);
  }
  const int nx = static_cast<int>((maxx - minx) / h) + 1;
  const int ny = static_cast<int>((maxy - miny) / h) + 1;
  std::vector<int> id(static_cast<std::size_t>(nx) * ny, -1);
  std::vector<Point> nodes = {a, b};
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Point p{minx + ix * h, miny + iy * h};
      if (poly.contains(p, 1e-12)) {
        id[static_cast<std::size_t>(iy) * nx + ix] = static_cast<int>(nodes.size());
        nodes.push_back(p);
      }
    }
  }
  const int offsets[8][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}};
  std::vector<std::vector<std::pair<int, double>>> adj(nodes.size());
  const auto add_edge = [&](int u, int v) {
    if (u < 0 || v < 0) return;
    if (!poly.segment_inside(nodes[u], nodes[v])) return;
    const double w = dist(nodes[u], nodes[v]);
    adj[u].push_back({v, w});
    adj[v].push_back({u, w});
  };
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int u = id[static_cast<std::size_t>(iy) * nx + ix];
      if (u < 0) continue;
      for (const auto& off : offsets) {
        const int jx = ix + off[0], jy = iy + off[1];
        if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
        add_edge(u, id[static_cast<std::size_t>(jy) * nx + jx]);
      }
    }
  }
  // Attach the endpoints to every lattice node within reach.
  for (int e = 0; e < 2; ++e) {
    for (std::size_t v = 2; v < nodes.size(); ++v) {
      if (dist(nodes[e], nodes[v]) < 2.5 * h && poly.segment_inside(nodes[e], nodes[v])) {
        const double w = dist(nodes[e], nodes[v]);
        adj[e].push_back({static_cast<int>(v), w});
        adj[v].push_back({e, w});
      }
    }
  }
  std::vector<double> d(nodes.size(), 1e100);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  d[0] = 0.0;
  heap.push({0.0, 0});
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > d[u]) continue;
    if (u == 1) break;
    for (const auto& [v, w] : adj[u]) {
      if (du + w < d[v]) {
        d[v] = du + w;
        heap.push({d[v], v});
      }
    }
  }
  return d[1];
}

}  // namespace paperfold::testing
