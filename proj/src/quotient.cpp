#include "paperfold/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <sstream>

namespace paperfold {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct NetBuildInput {
  const Polygon* poly;
  std::vector<const Scheme*> schemes;
  double delta;
  NetOptions opt;
  std::vector<double> extra_boundary;
};

// Boundary coordinate of p if it lies on the boundary, within tolerance.
std::optional<double> boundary_coord_of(const Polygon& poly, const Point& p,
                                        double tolerance) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly.vertex(i);
    const Point b = poly.vertex((i + 1) % n);
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    if (dist(p, a + t * ab) <= tolerance) {
      return poly.canonical(poly.vertex_coord(i) + t * std::sqrt(len2));
    }
  }
  return std::nullopt;
}

Net build_net_impl(const NetBuildInput& in) {
  const Polygon& poly = *in.poly;
  const double per = poly.perimeter();
  const double tolerance = poly.tol();
  const std::size_t budget =
      in.opt.node_budget ? in.opt.node_budget : default_node_budget();
  if (in.delta <= 0.0) fail(ErrorKind::MeshTooFine, "mesh must be positive");

  Net net;
  net.poly = poly;

  struct ExtraPair {
    double s, partner;
  };
  std::vector<std::vector<ExtraPair>> extra_pairs(in.schemes.size());

  std::vector<double> samples;
  std::vector<std::vector<int>> counts(in.schemes.size());
  double boundary_spacing = 0.0;
  for (std::size_t k = 0; k < in.schemes.size(); ++k) {
    const Scheme& sch = *in.schemes[k];
    counts[k].resize(sch.pairings().size());
    for (std::size_t i = 0; i < sch.pairings().size(); ++i) {
      const Pairing& p = sch.pairings()[i];
      int m;
      if (k < in.opt.sample_override.size() && i < in.opt.sample_override[k].size()) {
        m = in.opt.sample_override[k][i];
      } else {
        m = static_cast<int>(std::ceil(p.length / in.delta - 1e-12));
      }
      m = std::max(m, 1);
      counts[k][i] = m;
      boundary_spacing = std::max(boundary_spacing, p.length / m);
      for (int j = 0; j <= m; ++j) {
        const double t = p.length * j / m;
        samples.push_back(poly.canonical(p.a.start + t));
        samples.push_back(poly.canonical(p.b.start + (p.length - t)));
      }
    }
    for (double c : sch.boundary_classes().cut_points) samples.push_back(c);
  }
  for (std::size_t v = 0; v < poly.size(); ++v) samples.push_back(poly.vertex_coord(v));
  for (double s : in.extra_boundary) {
    const double c = poly.canonical(s);
    samples.push_back(c);
    for (std::size_t k = 0; k < in.schemes.size(); ++k) {
      if (auto loc = in.schemes[k]->locate(c)) {
        const double partner = in.schemes[k]->pair_point(loc->pairing, c);
        samples.push_back(partner);
        extra_pairs[k].push_back({c, partner});
      }
    }
  }

  std::sort(samples.begin(), samples.end());
  std::vector<double> bs;
  for (double s : samples) {
    if (bs.empty() || s - bs.back() > tolerance) bs.push_back(s);
  }
  if (bs.size() >= 2 && (bs.front() + per) - bs.back() <= tolerance) bs.pop_back();

  for (double s : bs) {
    net.pts.push_back(poly.boundary_point(s));
    net.bcoord.push_back(s);
  }
  net.jnodes.resize(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) net.jnodes[i] = static_cast<int>(i);

  net.grid_delta = in.delta;
  net.mesh = boundary_spacing;
  if (in.opt.interior) {
    net.mesh = std::max(net.mesh, in.delta);
    double minx = kInf, maxx = -kInf, miny = kInf, maxy = -kInf;
    for (const Point& v : poly.vertices()) {
      minx = std::min(minx, v.x);
      maxx = std::max(maxx, v.x);
      miny = std::min(miny, v.y);
      maxy = std::max(maxy, v.y);
    }
    const long ix0 = static_cast<long>(std::ceil(minx / in.delta - 1e-12));
    const long ix1 = static_cast<long>(std::floor(maxx / in.delta + 1e-12));
    const long iy0 = static_cast<long>(std::ceil(miny / in.delta - 1e-12));
    const long iy1 = static_cast<long>(std::floor(maxy / in.delta + 1e-12));
    for (long iy = iy0; iy <= iy1; ++iy) {
      for (long ix = ix0; ix <= ix1; ++ix) {
        const Point p{ix * in.delta, iy * in.delta};
        if (poly.boundary_distance(p) <= tolerance) continue;  // boundary covers it
        if (!poly.contains(p, 0.0)) continue;
        net.pts.push_back(p);
        net.bcoord.push_back(kNaN);
        ++net.interior_count;
        if (net.pts.size() > budget) {
          std::ostringstream os;
          os << "net exceeds node budget " << budget;
          fail(ErrorKind::MeshTooFine, os.str());
        }
      }
    }
  }
  if (net.pts.size() > budget) {
    std::ostringstream os;
    os << "net exceeds node budget " << budget;
    fail(ErrorKind::MeshTooFine, os.str());
  }

  // Per-scheme jump structure over the shared node set.
  for (std::size_t k = 0; k < in.schemes.size(); ++k) {
    const Scheme& sch = *in.schemes[k];
    Net::SchemeLink link;
    link.sample_counts = counts[k];
    link.alignment.resize(sch.pairings().size());
    for (std::size_t i = 0; i < sch.pairings().size(); ++i) {
      const Pairing& p = sch.pairings()[i];
      const int m = counts[k][i];
      for (int j = 0; j <= m; ++j) {
        const double t = p.length * j / m;
        const int ia = net.node_at(poly.canonical(p.a.start + t));
        const int ib = net.node_at(poly.canonical(p.b.start + (p.length - t)));
        link.alignment[i].emplace_back(ia, ib);
        if (ia != ib) link.zero_edges.emplace_back(ia, ib);
      }
    }
    const ClassTable& classes = sch.boundary_classes();
    link.cut_nodes.resize(classes.cut_points.size());
    for (std::size_t c = 0; c < classes.cut_points.size(); ++c) {
      link.cut_nodes[c] = net.node_at(classes.cut_points[c]);
    }
    for (const auto& members : classes.classes) {
      for (std::size_t j = 1; j < members.size(); ++j) {
        link.zero_edges.emplace_back(link.cut_nodes[members[0]],
                                     link.cut_nodes[members[j]]);
      }
    }
    for (const ExtraPair& e : extra_pairs[k]) {
      const int ia = net.node_at(e.s);
      const int ib = net.node_at(e.partner);
      if (ia != ib) link.zero_edges.emplace_back(ia, ib);
    }
    net.links.push_back(std::move(link));
  }
  return net;
}

}  // namespace

std::size_t default_node_budget() {
  if (const char* env = std::getenv("PAPERFOLD_NODE_BUDGET")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

bool Net::is_boundary(int node) const { return !std::isnan(bcoord[node]); }

int Net::node_at(double s) const {
  const double c = poly.canonical(s);
  const std::size_t b = jnodes.size();
  const auto it = std::lower_bound(bcoord.begin(), bcoord.begin() + b, c);
  const double tolerance = 2.0 * poly.tol();
  for (long cand : {static_cast<long>(it - bcoord.begin()) - 1,
                    static_cast<long>(it - bcoord.begin()),
                    static_cast<long>(it - bcoord.begin()) + 1, 0L,
                    static_cast<long>(b) - 1}) {
    if (cand < 0 || cand >= static_cast<long>(b)) continue;
    double d = std::abs(bcoord[cand] - c);
    d = std::min(d, poly.perimeter() - d);
    if (d <= tolerance) return static_cast<int>(cand);
  }
  fail(ErrorKind::MeshTooFine, "no net node at boundary coordinate");
}

Net build_net(const Scheme& sch, double delta, const NetOptions& opt) {
  NetBuildInput in;
  in.poly = &sch.polygon();
  in.schemes = {&sch};
  in.delta = delta;
  in.opt = opt;
  return build_net_impl(in);
}

Net build_shared_net(const Scheme& a, const Scheme& b, double delta, const NetOptions& opt) {
  if (!a.same_polygon(b)) fail(ErrorKind::PolygonMismatch, "schemes live on different polygons");
  NetBuildInput in;
  in.poly = &a.polygon();
  in.schemes = {&a, &b};
  in.delta = delta;
  in.opt = opt;
  return build_net_impl(in);
}

QuotientSolver::QuotientSolver(const Net& net, std::size_t link_index)
    : net_(&net), link_(link_index) {
  const std::size_t b = net.jnodes.size();
  const std::size_t n = net.pts.size();
  jpts_.reserve(b);
  for (std::size_t i = 0; i < b; ++i) jpts_.push_back(net.pts[net.jnodes[i]]);

  zero_adj_.assign(b, {});
  for (const auto& [u, v] : net.links.at(link_index).zero_edges) {
    zero_adj_[u].push_back(v);
    zero_adj_[v].push_back(u);
  }

  if (!net.poly.convex()) {
    dmat_ = pairwise_intrinsic(net.poly, net.pts);
  }
  djb_.resize(n * b);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t q = 0; q < b; ++q) {
      djb_[y * b + q] = dmat_.empty() ? dist(net.pts[y], jpts_[q])
                                      : dmat_[y * n + net.jnodes[q]];
    }
  }
  build_q();
}

double QuotientSolver::node_metric(int i, int j) const {
  if (!dmat_.empty()) return dmat_[static_cast<std::size_t>(i) * net_->pts.size() + j];
  return dist(net_->pts[i], net_->pts[j]);
}

double QuotientSolver::boundary_metric(int ji, int jj) const {
  return djb_[static_cast<std::size_t>(net_->jnodes[ji]) * jpts_.size() + jj];
}

void QuotientSolver::build_q() {
  const std::size_t b = jpts_.size();
  q_.assign(b * b, kInf);
  std::vector<double> d(b);
  std::vector<bool> done(b);
  for (std::size_t src = 0; src < b; ++src) {
    std::fill(d.begin(), d.end(), kInf);
    std::fill(done.begin(), done.end(), false);
    d[src] = 0.0;
    for (std::size_t it = 0; it < b; ++it) {
      std::size_t u = b;
      double best = kInf;
      for (std::size_t i = 0; i < b; ++i) {
        if (!done[i] && d[i] < best) {
          best = d[i];
          u = i;
        }
      }
      if (u == b) break;
      done[u] = true;
      for (int w : zero_adj_[u]) {
        if (d[u] < d[w]) d[w] = d[u];
      }
      for (std::size_t v = 0; v < b; ++v) {
        if (done[v]) continue;
        const double nd = d[u] + boundary_metric(static_cast<int>(u), static_cast<int>(v));
        if (nd < d[v]) d[v] = nd;
      }
    }
    for (std::size_t j = 0; j < b; ++j) q_[src * b + j] = d[j];
  }
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = i + 1; j < b; ++j) {
      const double v = std::min(q_[i * b + j], q_[j * b + i]);
      q_[i * b + j] = q_[j * b + i] = v;
    }
  }
}

std::vector<double> QuotientSolver::dist_to_boundary_nodes(const Point& p) const {
  const std::size_t b = jpts_.size();
  std::vector<double> d(b);
  if (net_->poly.convex()) {
    for (std::size_t i = 0; i < b; ++i) d[i] = dist(p, jpts_[i]);
    return d;
  }
  std::vector<Point> pts = {p};
  pts.insert(pts.end(), jpts_.begin(), jpts_.end());
  const auto mat = pairwise_intrinsic(net_->poly, pts);
  for (std::size_t i = 0; i < b; ++i) d[i] = mat[i + 1];
  return d;
}

void QuotientSolver::row(int x, std::vector<double>& row_out,
                         std::vector<double>& scratch) const {
  const std::size_t b = jpts_.size();
  const std::size_t n = net_->pts.size();
  row_out.resize(n);
  scratch.assign(b, kInf);
  // scratch[q] = min_p d_P(x, p) + Q(p, q)
  const double* dxj = &djb_[static_cast<std::size_t>(x) * b];
  for (std::size_t p = 0; p < b; ++p) {
    const double dp = dxj[p];
    const double* qrow = &q_[p * b];
    for (std::size_t qq = 0; qq < b; ++qq) {
      const double v = dp + qrow[qq];
      if (v < scratch[qq]) scratch[qq] = v;
    }
  }
  const double* r = scratch.data();
  for (std::size_t y = 0; y < n; ++y) {
    double best = node_metric(x, static_cast<int>(y));
    const double* dyj = &djb_[y * b];
    for (std::size_t qq = 0; qq < b; ++qq) {
      const double v = r[qq] + dyj[qq];
      if (v < best) best = v;
    }
    row_out[y] = best;
  }
}

double QuotientSolver::node_distance(int i, int j) const {
  const std::size_t b = jpts_.size();
  double best = node_metric(i, j);
  std::vector<double> r(b, kInf);
  const double* dij = &djb_[static_cast<std::size_t>(i) * b];
  for (std::size_t p = 0; p < b; ++p) {
    const double dp = dij[p];
    const double* qrow = &q_[p * b];
    for (std::size_t qq = 0; qq < b; ++qq) {
      const double v = dp + qrow[qq];
      if (v < r[qq]) r[qq] = v;
    }
  }
  const double* djj = &djb_[static_cast<std::size_t>(j) * b];
  for (std::size_t qq = 0; qq < b; ++qq) {
    const double v = r[qq] + djj[qq];
    if (v < best) best = v;
  }
  return best;
}

double QuotientSolver::point_distance(const Point& x, const Point& y) const {
  const std::size_t b = jpts_.size();
  const std::vector<double> dx = dist_to_boundary_nodes(x);
  const std::vector<double> dy = dist_to_boundary_nodes(y);
  double best;
  if (net_->poly.convex()) {
    best = dist(x, y);
  } else {
    std::vector<Point> pts = {x, y};
    best = pairwise_intrinsic(net_->poly, pts)[1];
  }
  std::vector<double> r(b, kInf);
  for (std::size_t p = 0; p < b; ++p) {
    const double* qrow = &q_[p * b];
    const double dp = dx[p];
    for (std::size_t qq = 0; qq < b; ++qq) {
      const double v = dp + qrow[qq];
      if (v < r[qq]) r[qq] = v;
    }
  }
  for (std::size_t qq = 0; qq < b; ++qq) {
    const double v = r[qq] + dy[qq];
    if (v < best) best = v;
  }
  return best;
}

namespace {

// Single-pair quotient value without materializing the boundary matrix:
// Dijkstra over the boundary nodes seeded with the distances from x.
double pair_value_direct(const Net& net, std::size_t link, const Point& x, const Point& y) {
  const std::size_t b = net.jnodes.size();
  std::vector<Point> jpts(b);
  for (std::size_t i = 0; i < b; ++i) jpts[i] = net.pts[net.jnodes[i]];

  std::vector<std::vector<int>> zero_adj(b);
  for (const auto& [u, v] : net.links.at(link).zero_edges) {
    zero_adj[u].push_back(v);
    zero_adj[v].push_back(u);
  }

  const bool convex = net.poly.convex();
  std::vector<double> jmat;
  std::vector<double> dx(b), dy(b);
  double direct;
  if (convex) {
    for (std::size_t i = 0; i < b; ++i) {
      dx[i] = dist(x, jpts[i]);
      dy[i] = dist(y, jpts[i]);
    }
    direct = dist(x, y);
  } else {
    std::vector<Point> pts = {x, y};
    pts.insert(pts.end(), jpts.begin(), jpts.end());
    const auto mat = pairwise_intrinsic(net.poly, pts);
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < b; ++i) {
      dx[i] = mat[i + 2];
      dy[i] = mat[n + i + 2];
    }
    direct = mat[1];
    jmat.resize(b * b);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) jmat[i * b + j] = mat[(i + 2) * n + (j + 2)];
    }
  }
  const auto step = [&](std::size_t i, std::size_t j) {
    return convex ? dist(jpts[i], jpts[j]) : jmat[i * b + j];
  };

  std::vector<double> d = dx;
  std::vector<bool> done(b, false);
  for (std::size_t it = 0; it < b; ++it) {
    std::size_t u = b;
    double best = kInf;
    for (std::size_t i = 0; i < b; ++i) {
      if (!done[i] && d[i] < best) {
        best = d[i];
        u = i;
      }
    }
    if (u == b) break;
    done[u] = true;
    for (int w : zero_adj[u]) {
      if (d[u] < d[w]) d[w] = d[u];
    }
    for (std::size_t v = 0; v < b; ++v) {
      if (done[v]) continue;
      const double nd = d[u] + step(u, v);
      if (nd < d[v]) d[v] = nd;
    }
  }
  double best = direct;
  for (std::size_t i = 0; i < b; ++i) {
    const double v = d[i] + dy[i];
    if (v < best) best = v;
  }
  return best;
}

void require_inside(const Scheme& sch, const Point& p) {
  if (!sch.polygon().contains(p, 1e-9 * sch.polygon().perimeter())) {
    std::ostringstream os;
    os << "(" << p.x << "," << p.y << ")";
    fail(ErrorKind::PointOutside, os.str());
  }
}

std::vector<double> query_extras(const Scheme& sch, const Point& x, const Point& y) {
  std::vector<double> extras;
  const double tolerance = 1e-9 * sch.polygon().perimeter();
  for (const Point& p : {x, y}) {
    if (auto s = boundary_coord_of(sch.polygon(), p, tolerance)) extras.push_back(*s);
  }
  return extras;
}

}  // namespace

QuotientMatrix all_pairs_quotient(const Scheme& sch, const Net& net, const NetOptions& opt) {
  if (net.links.empty() || net.poly.size() != sch.polygon().size() ||
      dist(net.poly.vertex(0), sch.polygon().vertex(0)) > sch.polygon().tol()) {
    fail(ErrorKind::PolygonMismatch, "net was not built for this scheme");
  }
  const std::size_t n = net.pts.size();
  QuotientMatrix m;
  m.n = n;
  m.mesh = net.mesh;
  m.d.assign(n * n, 0.0);

  if (n <= static_cast<std::size_t>(opt.complete_cap)) {
    QuotientSolver solver(net, 0);
    std::vector<double> row, scratch;
    for (std::size_t x = 0; x < n; ++x) {
      solver.row(static_cast<int>(x), row, scratch);
      for (std::size_t y = x; y < n; ++y) {
        m.d[x * n + y] = m.d[y * n + x] = row[y];
      }
    }
    return m;
  }

  // Sparsified mode: k-nearest step edges plus the boundary chain.
  m.sparsified = true;
  const int k = std::max(1, opt.sparse_neighbors);
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  const auto add_edge = [&](int u, int v, double w) {
    adj[u].emplace_back(v, w);
    adj[v].emplace_back(u, w);
  };
  std::vector<std::pair<double, int>> cand(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) cand[v] = {dist(net.pts[u], net.pts[v]), static_cast<int>(v)};
    std::partial_sort(cand.begin(), cand.begin() + std::min<std::size_t>(k + 1, n), cand.end());
    for (std::size_t i = 0; i < std::min<std::size_t>(k + 1, n); ++i) {
      if (cand[i].second == static_cast<int>(u)) continue;
      add_edge(static_cast<int>(u), cand[i].second, dist(net.pts[u], net.pts[cand[i].second]));
    }
  }
  const std::size_t b = net.jnodes.size();
  for (std::size_t i = 0; i < b; ++i) {
    const int u = net.jnodes[i];
    const int v = net.jnodes[(i + 1) % b];
    add_edge(u, v, dist(net.pts[u], net.pts[v]));
  }
  for (const auto& [u, v] : net.links.at(0).zero_edges) add_edge(u, v, 0.0);

  std::vector<double> d(n);
  using Item = std::pair<double, int>;
  for (std::size_t src = 0; src < n; ++src) {
    std::fill(d.begin(), d.end(), kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    d[src] = 0.0;
    heap.push({0.0, static_cast<int>(src)});
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > d[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        const double nd = du + w;
        if (nd < d[v]) {
          d[v] = nd;
          heap.push({nd, v});
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j) m.d[src * n + j] = d[j];
  }
  // The trivial one-step walk is always available.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = std::min(m.d[i * n + j], m.d[j * n + i]);
      v = std::min(v, dist(net.pts[i], net.pts[j]));
      m.d[i * n + j] = m.d[j * n + i] = v;
    }
  }
  return m;
}

QuotientDistanceResult quotient_distance(const Scheme& sch, const Point& x, const Point& y,
                                         double delta, const NetOptions& opt) {
  require_inside(sch, x);
  require_inside(sch, y);

  NetBuildInput in;
  in.poly = &sch.polygon();
  in.schemes = {&sch};
  in.delta = delta;
  in.opt = opt;
  in.opt.interior = false;  // interior nodes never shorten a walk
  in.extra_boundary = query_extras(sch, x, y);
  const Net net = build_net_impl(in);
  return {pair_value_direct(net, 0, x, y), net.mesh, true};
}

RefineTrace refine_trace(const Scheme& sch, const Point& x, const Point& y, double tol,
                         double delta0, int max_levels, const NetOptions& opt) {
  require_inside(sch, x);
  require_inside(sch, y);
  const Polygon& poly = sch.polygon();
  if (delta0 <= 0.0) delta0 = poly.perimeter() / 200.0;
  if (tol <= 0.0) tol = 1e-3 * poly.perimeter();
  const std::size_t budget = opt.node_budget ? opt.node_budget : default_node_budget();

  std::vector<int> m(sch.pairings().size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = std::max(1, static_cast<int>(std::ceil(sch.pairings()[i].length / delta0 - 1e-12)));
  }

  RefineTrace trace;
  for (int level = 0; level < max_levels; ++level) {
    std::size_t projected = 0;
    for (int mi : m) projected += 2 * (static_cast<std::size_t>(mi) + 1);
    if (projected > budget) {
      fail(ErrorKind::BudgetExceeded, "refinement exceeds the node budget");
    }
    NetBuildInput in;
    in.poly = &poly;
    in.schemes = {&sch};
    in.delta = delta0;
    in.opt = opt;
    in.opt.interior = false;
    in.opt.sample_override = {m};
    in.extra_boundary = query_extras(sch, x, y);
    const Net net = build_net_impl(in);
    const double v = pair_value_direct(net, 0, x, y);
    trace.values.push_back(v);
    trace.meshes.push_back(net.mesh);
    trace.result = {v, net.mesh, true};
    const std::size_t c = trace.values.size();
    if (c >= 2 && std::abs(trace.values[c - 2] - trace.values[c - 1]) < tol) {
      return trace;
    }
    for (int& mi : m) mi *= 2;
  }
  fail(ErrorKind::BudgetExceeded, "refinement did not converge within the level cap");
}

QuotientDistanceResult refine_until(const Scheme& sch, const Point& x, const Point& y,
                                    double tol, double delta0, const NetOptions& opt) {
  return refine_trace(sch, x, y, tol, delta0, 16, opt).result;
}

}  // namespace paperfold
