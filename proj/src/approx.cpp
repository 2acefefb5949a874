#include "paperfold/approx.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "paperfold/analysis.hpp"

namespace paperfold {

namespace {

double block_total(const PatternSpec& p) {
  const double t = p.first_len / (1.0 - p.ratio);
  switch (p.kind) {
    case PatternKind::Canon2:
      return t / 2.0;
    case PatternKind::Canon1:
      return t;
    case PatternKind::Singular1:
      return 3.0 * t / 4.0;
  }
  return 0.0;
}

// Fold covering the arc [start, start+len].
PairingSpec fold_on(double start, double len) {
  return {{start, len / 2.0}, {start + len / 2.0, len / 2.0}};
}

void append_blocks(const Polygon& poly, const PatternSpec& spec, int n,
                   std::vector<PairingSpec>& out) {
  const double a = poly.canonical(spec.anchor);
  const double t_before = spec.budget_before();
  const double t_after = spec.budget_after();
  const double rho = spec.ratio;

  for (int k = 1; k <= n; ++k) {
    const double hi = std::pow(rho, k - 1);
    const double lo = std::pow(rho, k);
    switch (spec.kind) {
      case PatternKind::Canon2: {
        out.push_back(fold_on(poly.canonical(a + t_after * lo), t_after * (hi - lo)));
        break;
      }
      case PatternKind::Canon1: {
        out.push_back(fold_on(poly.canonical(a + t_after * lo), t_after * (hi - lo)));
        out.push_back(fold_on(poly.canonical(a - t_before * hi), t_before * (hi - lo)));
        break;
      }
      case PatternKind::Singular1: {
        // Approach side: beta_k, then the alpha_{k+1} fold; the mirror
        // beta_k' nests around the anchor on the far side.
        const double lk = t_before * (hi - lo);
        const double beta_start = poly.canonical(a - t_before * hi);
        const BoundaryInterval beta{beta_start, lk / 2.0};
        const BoundaryInterval beta_mirror{poly.canonical(a + t_after * lo), lk / 2.0};
        out.push_back({beta, beta_mirror});
        out.push_back(fold_on(poly.canonical(a - t_before * hi + lk / 2.0), lk / 2.0));
        break;
      }
    }
  }
}

}  // namespace

const char* to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::Canon2: return "canon2";
    case PatternKind::Canon1: return "canon1";
    case PatternKind::Singular1: return "singular1";
  }
  return "pattern";
}

double PatternSpec::budget_before() const {
  const double t = first_len / (1.0 - ratio);
  return kind == PatternKind::Canon2 ? 0.0 : t;
}

double PatternSpec::budget_after() const {
  const double t = first_len / (1.0 - ratio);
  return kind == PatternKind::Singular1 ? t / 2.0 : t;
}

InfiniteScheme InfiniteScheme::validate(Polygon polygon, std::vector<PairingSpec> base,
                                        std::vector<PatternSpec> patterns) {
  const double tolerance = polygon.tol();
  if (patterns.empty()) fail(ErrorKind::PatternInvalid, "at least one pattern required");

  for (const PatternSpec& p : patterns) {
    if (!(p.first_len > tolerance)) fail(ErrorKind::PatternInvalid, "first_len must be positive");
    if (!(p.ratio > 1e-6 && p.ratio < 1.0 - 1e-6)) {
      fail(ErrorKind::PatternInvalid, "ratio must lie in (0,1)");
    }
    const double a = polygon.canonical(p.anchor);
    double room_before, room_after;
    if (auto v = polygon.vertex_at(a)) {
      const std::size_t i = *v;
      room_before = polygon.side_length((i + polygon.size() - 1) % polygon.size());
      room_after = polygon.side_length(i);
    } else {
      std::size_t i = 0;
      while (i + 1 < polygon.size() && polygon.vertex_coord(i + 1) < a) ++i;
      room_before = a - polygon.vertex_coord(i);
      room_after = polygon.vertex_coord(i + 1) - a;
    }
    if (p.budget_before() > room_before + tolerance || p.budget_after() > room_after + tolerance) {
      std::ostringstream os;
      os << to_string(p.kind) << " blocks at anchor " << a << " do not fit inside the sides";
      fail(ErrorKind::PatternInvalid, os.str());
    }
  }

  // Occupied arcs must not collide with each other or the base pairings.
  std::vector<Arc> occupied;
  for (const PatternSpec& p : patterns) {
    const double a = polygon.canonical(p.anchor);
    occupied.push_back({polygon.canonical(a - p.budget_before()),
                        p.budget_before() + p.budget_after()});
  }
  const auto arcs_overlap = [&](Arc u, Arc v) {
    const double off = polygon.cyclic_delta(u.start, v.start);
    return (off < u.length - tolerance) ||
           (polygon.cyclic_delta(v.start, u.start) < v.length - tolerance);
  };
  for (std::size_t i = 0; i < occupied.size(); ++i) {
    for (std::size_t j = i + 1; j < occupied.size(); ++j) {
      if (arcs_overlap(occupied[i], occupied[j])) {
        fail(ErrorKind::PatternInvalid, "pattern regions overlap");
      }
    }
    for (const PairingSpec& b : base) {
      for (const BoundaryInterval& iv : {b.a, b.b}) {
        const double off = polygon.cyclic_delta(occupied[i].start, polygon.canonical(iv.start));
        const bool outside = off >= occupied[i].length - tolerance &&
                             off + iv.length <= polygon.perimeter() + tolerance;
        if (!outside) fail(ErrorKind::PatternInvalid, "base pairing meets a pattern region");
      }
    }
  }

  double total = 0.0;
  for (const PairingSpec& b : base) total += b.a.length;
  for (const PatternSpec& p : patterns) total += block_total(p);
  if (std::abs(total - polygon.perimeter() / 2.0) > 100.0 * tolerance) {
    std::ostringstream os;
    os << "limit sum=" << total << " expected " << polygon.perimeter() / 2.0;
    fail(ErrorKind::PatternInvalid, os.str());
  }

  InfiniteScheme inf;
  inf.polygon = std::move(polygon);
  inf.base_pairings = std::move(base);
  inf.patterns = std::move(patterns);
  return inf;
}

Arc gamma_n(const InfiniteScheme& inf, int n, std::size_t pattern) {
  if (n < 1) fail(ErrorKind::PreconditionViolated, "gamma_n needs n >= 1");
  const PatternSpec& p = inf.patterns.at(pattern);
  const double rn = std::pow(p.ratio, n);
  const double a = inf.polygon.canonical(p.anchor);
  return {inf.polygon.canonical(a - p.budget_before() * rn),
          (p.budget_before() + p.budget_after()) * rn};
}

std::vector<PairingSpec> pattern_blocks(const Polygon& poly, const PatternSpec& spec, int n) {
  std::vector<PairingSpec> out;
  append_blocks(poly, spec, n, out);
  return out;
}

std::vector<PairingSpec> replace_with_folds(const Polygon& poly,
                                            const std::vector<PairingSpec>& kept, Arc gamma) {
  const double tolerance = poly.tol();
  if (gamma.length <= tolerance) return {};

  std::vector<Pairing> kept_pairings;
  kept_pairings.reserve(kept.size());
  for (const PairingSpec& spec : kept) kept_pairings.push_back(make_pairing(poly, spec));
  if (!is_plain_arc(poly, kept_pairings, gamma)) {
    fail(ErrorKind::ArcNotPlain, "arc cuts or links the remaining pairings");
  }

  const auto inner = poly.vertices_in_arc(gamma);
  if (inner.size() > 1) {
    fail(ErrorKind::ArcCrossesTwoVertices, "arc spans more than two sides");
  }
  std::vector<PairingSpec> out;
  if (inner.empty()) {
    out.push_back(fold_on(poly.canonical(gamma.start), gamma.length));
    return out;
  }
  const double split = poly.cyclic_delta(gamma.start, poly.vertex_coord(inner[0]));
  if (split > tolerance) {
    out.push_back(fold_on(poly.canonical(gamma.start), split));
  }
  if (gamma.length - split > tolerance) {
    out.push_back(fold_on(poly.vertex_coord(inner[0]), gamma.length - split));
  }
  return out;
}

Scheme truncate(const InfiniteScheme& inf, int n) {
  return truncate_levels(inf, std::vector<int>(inf.patterns.size(), n));
}

Scheme truncate_levels(const InfiniteScheme& inf, const std::vector<int>& levels) {
  if (levels.size() != inf.patterns.size()) {
    fail(ErrorKind::PatternInvalid, "one truncation level per pattern required");
  }
  std::vector<PairingSpec> specs = inf.base_pairings;
  for (std::size_t i = 0; i < inf.patterns.size(); ++i) {
    if (levels[i] < 1) fail(ErrorKind::PreconditionViolated, "truncation level must be >= 1");
    append_blocks(inf.polygon, inf.patterns[i], levels[i], specs);
  }
  for (std::size_t i = 0; i < inf.patterns.size(); ++i) {
    const Arc gamma = gamma_n(inf, levels[i], i);
    const auto folds = replace_with_folds(inf.polygon, specs, gamma);
    specs.insert(specs.end(), folds.begin(), folds.end());
  }
  return Scheme::validate(inf.polygon, specs);
}

std::vector<ExperimentRow> approximation_sequence(const InfiniteScheme& inf, int n_max,
                                                  double delta, double delta0,
                                                  const NetOptions& opt) {
  if (n_max < 1) fail(ErrorKind::PreconditionViolated, "n_max must be >= 1");
  const Scheme reference = truncate(inf, n_max);
  std::vector<ExperimentRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const Scheme sn = truncate(inf, n);
    const Arc gamma = gamma_n(inf, n, 0);
    ExperimentRow row;
    row.n = n;
    row.gamma_len = gamma.length;
    row.gamma_diam = inf.polygon.arc_diameter(gamma);
    row.sup_diff = sup_metric_diff(sn, reference, delta, std::nullopt, opt).sup_diff;
    row.gh_bound = gh_bound_lemma(delta, row.sup_diff).bound;
    row.theorem_bound = 5.0 * (1.0 + delta0) * row.gamma_diam;
    row.total_abs_curv = total_abs_curvature(sn);
    rows.push_back(row);
  }
  return rows;
}

SimplifyResult repeat_simplify(const InfiniteScheme& inf, double epsilon, double delta,
                               double delta0, int level_cap, const NetOptions& opt) {
  if (!(epsilon > 0.0)) fail(ErrorKind::PreconditionViolated, "epsilon must be positive");
  const std::size_t m = inf.patterns.size();
  const double target = epsilon / static_cast<double>(m);

  std::vector<int> levels(m, 1);
  std::vector<SimplifyStage> stages;
  for (std::size_t i = 0; i < m; ++i) {
    int n = 1;
    double bound = 0.0;
    for (;; ++n) {
      if (n > level_cap) {
        fail(ErrorKind::BudgetExceeded, "stage bound does not reach the target within the cap");
      }
      bound = 5.0 * (1.0 + delta0) * inf.polygon.arc_diameter(gamma_n(inf, n, i));
      if (bound < target) break;
    }
    levels[i] = n;
    SimplifyStage stage;
    stage.pattern = i;
    stage.anchor = inf.polygon.canonical(inf.patterns[i].anchor);
    stage.level = n;
    stage.theorem_bound = bound;
    stages.push_back(stage);
  }

  if (delta > 0.0) {
    const int reference = *std::max_element(levels.begin(), levels.end()) + 2;
    std::vector<int> prev(m, reference);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<int> cur = prev;
      cur[i] = levels[i];
      const Scheme sa = truncate_levels(inf, prev);
      const Scheme sb = truncate_levels(inf, cur);
      stages[i].empirical_gh_bound =
          gh_bound_lemma(delta, sup_metric_diff(sa, sb, delta, std::nullopt, opt).sup_diff).bound;
      prev = cur;
    }
  }

  double sum = 0.0;
  for (const SimplifyStage& s : stages) sum += s.theorem_bound;
  return {truncate_levels(inf, levels), std::move(stages), sum};
}

}  // namespace paperfold
