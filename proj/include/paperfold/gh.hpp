#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paperfold/quotient.hpp"

namespace paperfold {

struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
};

// sup over pairs of pairs of |d1(x,x') - d2(y,y')|. Throws NotSurjective when
// the correspondence misses a node on either side.
double distortion(const Correspondence& r, const QuotientMatrix& d1, const QuotientMatrix& d2);
double gh_upper_from_correspondence(const Correspondence& r, const QuotientMatrix& d1,
                                    const QuotientMatrix& d2);

struct GHBound {
  double r = 0.0;            // net mesh used
  double sup_diff = 0.0;     // sup |d1 - d2| over the shared net
  double bound = 0.0;        // 5 * max(r, sup_diff) / 2
  double delta0 = 0.0;
  std::optional<double> collapse_diam;
};

GHBound gh_bound_lemma(double r, double sup_diff);

struct SupDiffResult {
  double sup_diff = 0.0;
  std::pair<int, int> argmax = {-1, -1};
  Net net;
};

// sup over shared-net node pairs of |d^A - d^B|; both quotient matrices are
// evaluated on an identical node set aligned for both schemes' pairings.
// Boundary nodes inside the open arc `exclude` are left out of the sup.
SupDiffResult sup_metric_diff(const Scheme& a, const Scheme& b, double delta,
                              const std::optional<Arc>& exclude = std::nullopt,
                              const NetOptions& opt = {});

struct CollapseWitness {
  Arc d;          // open collapsing arc
  int class_a;    // class id in scheme A containing an endpoint of d
  int class_b;    // class id in scheme B containing an endpoint of d
};

struct ConditionsReport {
  struct Counterexample {
    int condition;
    double s1, s2;
    std::string note;
  };
  bool cond1 = false, cond2 = false, cond3 = false;
  std::vector<Counterexample> counterexamples;
  bool all_pass() const { return cond1 && cond2 && cond3; }
};

// Checks, over cut points and pairing samples: (1) equivalence agreement
// outside d, (2) relations entering d land in the witness classes, and
// (3) each witness class reaches an endpoint of d.
ConditionsReport check_collapse_conditions(const Scheme& a, const Scheme& b,
                                           const CollapseWitness& witness,
                                           int samples_per_pairing = 5);

// Picks the witness classes holding the endpoints of d. Throws
// PreconditionViolated when an endpoint is not a cut point of both schemes.
CollapseWitness make_collapse_witness(const Scheme& a, const Scheme& b, Arc d);

// d(x,z) <= d(x,y) + diam D for x outside, y inside, z on the boundary of D.
// Throws PreconditionViolated when the membership preconditions fail.
bool prop_gh2_1_check(const Polygon& poly, Arc d, const Point& x, const Point& y,
                      const Point& z);

}  // namespace paperfold
