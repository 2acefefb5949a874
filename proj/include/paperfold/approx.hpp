#pragma once

#include <vector>

#include "paperfold/gh.hpp"
#include "paperfold/scheme.hpp"

namespace paperfold {

enum class PatternKind { Canon2, Canon1, Singular1 };

const char* to_string(PatternKind kind);

// Finitely described infinite block family shrinking geometrically into an
// anchor point of the boundary.
//
//   canon2    fold blocks approaching the anchor from one side
//   canon1    fold blocks approaching from both sides
//   singular1 non-fold blocks spanning the anchor, nested around it, with a
//             fold between consecutive ones on the approach side
struct PatternSpec {
  PatternKind kind = PatternKind::Canon1;
  double anchor = 0.0;      // boundary coordinate
  double ratio = 0.5;       // geometric decay of block lengths
  double first_len = 0.0;   // length of the outermost block (per side)

  // Arc length the pattern occupies before/after the anchor (CCW).
  double budget_before() const;
  double budget_after() const;
};

struct InfiniteScheme {
  Polygon polygon;
  std::vector<PairingSpec> base_pairings;
  std::vector<PatternSpec> patterns;

  // Throws PatternInvalid when the blocks do not fit inside the sides at the
  // anchor or the base plus pattern limit fails to tile half the boundary.
  static InfiniteScheme validate(Polygon polygon, std::vector<PairingSpec> base,
                                 std::vector<PatternSpec> patterns);
};

// Tail arc of pattern `pattern` holding the blocks of index > n.
Arc gamma_n(const InfiniteScheme& inf, int n, std::size_t pattern = 0);

// Pairings of blocks 1..n of one pattern.
std::vector<PairingSpec> pattern_blocks(const Polygon& poly, const PatternSpec& spec, int n);

// Plain cover of a vanishing arc: one fold inside a side, or one fold per
// sub-arc when the arc crosses a single vertex. Throws ArcNotPlain /
// ArcCrossesTwoVertices.
std::vector<PairingSpec> replace_with_folds(const Polygon& poly,
                                            const std::vector<PairingSpec>& kept, Arc gamma);

// Finite scheme keeping blocks of index <= n (every pattern) and folding the
// tail arcs shut.
Scheme truncate(const InfiniteScheme& inf, int n);
Scheme truncate_levels(const InfiniteScheme& inf, const std::vector<int>& levels);

struct ExperimentRow {
  int n = 0;
  double gamma_len = 0.0;
  double gamma_diam = 0.0;
  double sup_diff = 0.0;
  double gh_bound = 0.0;
  double theorem_bound = 0.0;  // 5 (1 + delta0) diam gamma_n
  double total_abs_curv = 0.0;
};

// Convergence experiment against the finest truncation as reference.
std::vector<ExperimentRow> approximation_sequence(const InfiniteScheme& inf, int n_max,
                                                  double delta, double delta0,
                                                  const NetOptions& opt = {});

struct SimplifyStage {
  std::size_t pattern = 0;
  double anchor = 0.0;
  int level = 0;
  double theorem_bound = 0.0;
  double empirical_gh_bound = -1.0;  // requires delta > 0
};

struct SimplifyResult {
  Scheme final_scheme;
  std::vector<SimplifyStage> stages;
  double bound_sum = 0.0;
};

// Stage-by-stage pattern replacement; each stage bound stays below
// epsilon / #patterns so the total stays below epsilon. A positive delta adds
// an empirical bound per stage, computed between staged truncations.
SimplifyResult repeat_simplify(const InfiniteScheme& inf, double epsilon, double delta = 0.0,
                               double delta0 = 0.01, int level_cap = 60,
                               const NetOptions& opt = {});

}  // namespace paperfold
