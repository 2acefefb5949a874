#include "paperfold/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "paperfold/approx.hpp"

namespace paperfold {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<ConePoint> all_classes(const Scheme& sch) {
  const Polygon& poly = sch.polygon();
  const ClassTable& table = sch.boundary_classes();
  std::vector<ConePoint> out;
  out.reserve(table.classes.size());
  for (std::size_t c = 0; c < table.classes.size(); ++c) {
    ConePoint cp;
    cp.class_id = static_cast<int>(c);
    double angle = 0.0;
    for (int cut : table.classes[c]) {
      const double s = table.cut_points[cut];
      cp.members.push_back(s);
      angle += poly.interior_angle_at(s);
    }
    cp.total_angle = angle;
    cp.curvature = 2.0 * kPi - angle;
    out.push_back(std::move(cp));
  }
  return out;
}

}  // namespace

std::vector<ConePoint> cone_points(const Scheme& sch, bool include_flat) {
  std::vector<ConePoint> cps = all_classes(sch);
  if (!include_flat) {
    cps.erase(std::remove_if(cps.begin(), cps.end(),
                             [](const ConePoint& c) { return std::abs(c.curvature) <= 1e-9; }),
              cps.end());
  }
  return cps;
}

int euler_characteristic(const Scheme& sch) {
  return static_cast<int>(sch.boundary_classes().classes.size()) -
         static_cast<int>(sch.pairings().size()) + 1;
}

double gauss_bonnet_residual(const Scheme& sch) {
  double total = 0.0;
  for (const ConePoint& c : all_classes(sch)) total += c.curvature;
  return total - 2.0 * kPi * euler_characteristic(sch);
}

double total_abs_curvature(const Scheme& sch) {
  double total = 0.0;
  for (const ConePoint& c : all_classes(sch)) total += std::abs(c.curvature);
  return total;
}

std::vector<SingularityRow> singularity_indicators(const InfiniteScheme& inf, int n_max,
                                                   std::size_t pattern) {
  const Polygon& poly = inf.polygon;
  const Arc g1 = gamma_n(inf, 1, pattern);
  std::vector<SingularityRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const Scheme sn = truncate(inf, n);
    SingularityRow row;
    row.n = n;
    row.total_abs_curv = total_abs_curvature(sn);
    for (const ConePoint& c : all_classes(sn)) {
      bool meets = false;
      for (double s : c.members) {
        if (poly.arc_contains(g1, s, /*open=*/false)) {
          meets = true;
          break;
        }
      }
      if (!meets) continue;
      row.max_total_angle = std::max(row.max_total_angle, c.total_angle);
      if (c.curvature >= kPi / 2.0 - 1e-9) ++row.cone_count_near_anchor;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace paperfold
