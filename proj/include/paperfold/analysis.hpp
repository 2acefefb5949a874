#pragma once

#include <vector>

#include "paperfold/scheme.hpp"

namespace paperfold {

struct InfiniteScheme;

// Identified boundary point of the quotient with its total surrounding angle.
struct ConePoint {
  int class_id = -1;
  std::vector<double> members;  // boundary coordinates
  double total_angle = 0.0;
  double curvature = 0.0;       // 2*pi - total_angle
};

// Cone points of a finite scheme, one per cut-point class. Flat classes
// (|curvature| <= 1e-9) are dropped unless include_flat is set; interior
// pairs are always flat and never reported.
std::vector<ConePoint> cone_points(const Scheme& sch, bool include_flat = false);

// V - E + F for the canonical cell structure: classes, pairings, one face.
int euler_characteristic(const Scheme& sch);

// sum(curvature) - 2*pi*chi; vanishes for every finite full scheme.
double gauss_bonnet_residual(const Scheme& sch);

double total_abs_curvature(const Scheme& sch);

struct SingularityRow {
  int n = 0;
  int cone_count_near_anchor = 0;  // cone points with curvature >= pi/2 meeting gamma_1
  double max_total_angle = 0.0;    // over classes meeting gamma_1
  double total_abs_curv = 0.0;
};

// Accumulation and angle-growth indicators along the truncation sequence.
std::vector<SingularityRow> singularity_indicators(const InfiniteScheme& inf, int n_max,
                                                   std::size_t pattern = 0);

}  // namespace paperfold
