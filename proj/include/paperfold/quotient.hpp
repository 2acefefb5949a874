#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "paperfold/scheme.hpp"

namespace paperfold {

// Node cap for nets; overridden by the PAPERFOLD_NODE_BUDGET env var.
std::size_t default_node_budget();

struct NetOptions {
  std::size_t node_budget = 0;       // 0 = default_node_budget()
  bool interior = true;              // include the interior grid
  int complete_cap = 3000;           // beyond this, all-pairs sparsifies
  int sparse_neighbors = 16;
  // Per-scheme, per-pairing boundary sample counts; empty = ceil(len/delta).
  std::vector<std::vector<int>> sample_override;
};

// Pairing-aligned sample points of the polygon: boundary samples mirrored
// across every pairing, all vertices and cut points, plus an interior grid.
struct Net {
  Polygon poly;
  std::vector<Point> pts;
  std::vector<double> bcoord;   // boundary coordinate per node (NaN = interior)
  std::vector<int> jnodes;      // boundary node indices, ascending coordinate
  int interior_count = 0;
  double mesh = 0.0;            // max sample spacing actually used
  double grid_delta = 0.0;

  struct SchemeLink {
    std::vector<int> sample_counts;                              // per pairing
    std::vector<std::vector<std::pair<int, int>>> alignment;     // per pairing
    std::vector<std::pair<int, int>> zero_edges;                 // all jumps
    std::vector<int> cut_nodes;                                  // per cut point
  };
  std::vector<SchemeLink> links;  // one per scheme the net was built for

  bool is_boundary(int node) const;
  int node_at(double s) const;  // boundary node index at coordinate s
};

Net build_net(const Scheme& sch, double delta, const NetOptions& opt = {});
Net build_shared_net(const Scheme& a, const Scheme& b, double delta,
                     const NetOptions& opt = {});

struct QuotientMatrix {
  std::size_t n = 0;
  std::vector<double> d;
  bool sparsified = false;
  double mesh = 0.0;
  double at(std::size_t i, std::size_t j) const { return d[i * n + j]; }
};

struct QuotientDistanceResult {
  double value = 0.0;
  double mesh = 0.0;
  bool certified = true;  // always an upper bound for the quotient semi-metric
};

// Walk-graph distances between boundary nodes for one scheme on a net:
// complete step edges weighted by the polygon metric plus zero-weight jumps
// across pairings and same-class cut points. Because step weights satisfy the
// triangle inequality, interior net nodes never shorten a walk, so all
// distances factor through this boundary solver.
class QuotientSolver {
 public:
  QuotientSolver(const Net& net, std::size_t link_index);

  const Net& net() const { return *net_; }
  std::size_t boundary_count() const { return jpts_.size(); }

  // d_P between net nodes (cached for non-convex polygons).
  double node_metric(int i, int j) const;

  // Quotient distance between two net nodes.
  double node_distance(int i, int j) const;

  // Fills row[y] = d(x, y) for every net node y.
  void row(int x, std::vector<double>& row_out, std::vector<double>& scratch) const;

  // Distance between arbitrary points of P (not necessarily net nodes).
  double point_distance(const Point& x, const Point& y) const;

  const std::vector<double>& boundary_matrix() const { return q_; }
  double boundary_metric(int ji, int jj) const;

 private:
  void build_q();
  std::vector<double> dist_to_boundary_nodes(const Point& p) const;

  const Net* net_;
  std::size_t link_;
  std::vector<Point> jpts_;
  std::vector<std::vector<int>> zero_adj_;
  std::vector<double> q_;        // boundary-to-boundary quotient distances
  std::vector<double> djb_;      // node-to-boundary metric, row-major by node
  std::vector<double> dmat_;     // full node metric cache (non-convex only)
};

// Symmetric matrix of quotient distances over all net nodes. Nets larger
// than opt.complete_cap use k-nearest step edges instead of the complete
// graph and are flagged sparsified.
QuotientMatrix all_pairs_quotient(const Scheme& sch, const Net& net,
                                  const NetOptions& opt = {});

// Certified upper bound for the quotient semi-metric between x and y.
QuotientDistanceResult quotient_distance(const Scheme& sch, const Point& x, const Point& y,
                                         double delta, const NetOptions& opt = {});

struct RefineTrace {
  QuotientDistanceResult result;
  std::vector<double> values;  // one per refinement level, non-increasing
  std::vector<double> meshes;
};

// Halves the mesh on nested nets until successive values differ by < tol.
RefineTrace refine_trace(const Scheme& sch, const Point& x, const Point& y, double tol,
                         double delta0 = 0.0, int max_levels = 16,
                         const NetOptions& opt = {});
QuotientDistanceResult refine_until(const Scheme& sch, const Point& x, const Point& y,
                                    double tol, double delta0 = 0.0,
                                    const NetOptions& opt = {});

}  // namespace paperfold
