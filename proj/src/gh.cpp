#include "paperfold/gh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace paperfold {

namespace {

// Identification class of a boundary point, comparable across sample points
// of one scheme. Interior pairing points form two-point classes keyed by
// their pairing and offset; cut points carry their class id.
struct RelKey {
  enum Kind { Free, CutClass, InteriorPair } kind = Free;
  int id = -1;        // class id or pairing index
  double t = 0.0;     // offset along interval a for interior pairs
};

RelKey classify(const Scheme& sch, double s) {
  const Polygon& poly = sch.polygon();
  const ClassTable& classes = sch.boundary_classes();
  if (auto cut = classes.find_cut(poly.canonical(s), poly.perimeter(), poly.tol())) {
    return {RelKey::CutClass, classes.class_of[*cut], 0.0};
  }
  if (auto loc = sch.locate(s)) {
    const double len = sch.pairings()[loc->pairing].length;
    const double t = loc->on_a ? loc->t : len - loc->t;
    return {RelKey::InteriorPair, static_cast<int>(loc->pairing), t};
  }
  return {RelKey::Free, -1, poly.canonical(s)};
}

bool related(const Polygon& poly, const RelKey& x, const RelKey& y, double s1, double s2) {
  const double t = poly.tol();
  double d = std::abs(poly.canonical(s1) - poly.canonical(s2));
  d = std::min(d, poly.perimeter() - d);
  if (d <= t) return true;  // reflexive
  if (x.kind != y.kind) return false;
  if (x.kind == RelKey::CutClass) return x.id == y.id;
  if (x.kind == RelKey::InteriorPair) return x.id == y.id && std::abs(x.t - y.t) <= t;
  return false;
}

}  // namespace

double distortion(const Correspondence& r, const QuotientMatrix& d1, const QuotientMatrix& d2) {
  std::vector<char> hit1(d1.n, 0), hit2(d2.n, 0);
  for (const auto& [x, y] : r.pairs) {
    if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= d1.n ||
        static_cast<std::size_t>(y) >= d2.n) {
      fail(ErrorKind::NotSurjective, "correspondence pair out of range");
    }
    hit1[x] = hit2[y] = 1;
  }
  if (std::find(hit1.begin(), hit1.end(), 0) != hit1.end() ||
      std::find(hit2.begin(), hit2.end(), 0) != hit2.end()) {
    fail(ErrorKind::NotSurjective, "correspondence projections must cover both node sets");
  }
  double sup = 0.0;
  for (const auto& [x, y] : r.pairs) {
    for (const auto& [x2, y2] : r.pairs) {
      sup = std::max(sup, std::abs(d1.at(x, x2) - d2.at(y, y2)));
    }
  }
  return sup;
}

double gh_upper_from_correspondence(const Correspondence& r, const QuotientMatrix& d1,
                                    const QuotientMatrix& d2) {
  return distortion(r, d1, d2) / 2.0;
}

GHBound gh_bound_lemma(double r, double sup_diff) {
  GHBound b;
  b.r = r;
  b.sup_diff = sup_diff;
  b.bound = 5.0 * std::max(r, sup_diff) / 2.0;
  return b;
}

SupDiffResult sup_metric_diff(const Scheme& a, const Scheme& b, double delta,
                              const std::optional<Arc>& exclude, const NetOptions& opt) {
  SupDiffResult res;
  res.net = build_shared_net(a, b, delta, opt);
  const Net& net = res.net;
  const std::size_t n = net.pts.size();

  std::vector<char> skip(n, 0);
  if (exclude) {
    for (int j : net.jnodes) {
      if (net.poly.arc_contains(*exclude, net.bcoord[j], /*open=*/true)) skip[j] = 1;
    }
  }

  QuotientSolver sa(net, 0);
  QuotientSolver sb(net, 1);
  std::vector<double> ra, rb, scratch;
  for (std::size_t x = 0; x < n; ++x) {
    if (skip[x]) continue;
    sa.row(static_cast<int>(x), ra, scratch);
    sb.row(static_cast<int>(x), rb, scratch);
    for (std::size_t y = x + 1; y < n; ++y) {
      if (skip[y]) continue;
      const double diff = std::abs(ra[y] - rb[y]);
      if (diff > res.sup_diff) {
        res.sup_diff = diff;
        res.argmax = {static_cast<int>(x), static_cast<int>(y)};
      }
    }
  }
  return res;
}

CollapseWitness make_collapse_witness(const Scheme& a, const Scheme& b, Arc d) {
  const Polygon& poly = a.polygon();
  const double z = poly.canonical(d.start);
  CollapseWitness w;
  w.d = d;
  const auto pick = [&](const Scheme& sch) {
    const ClassTable& classes = sch.boundary_classes();
    const auto cut = classes.find_cut(z, poly.perimeter(), poly.tol());
    if (!cut) {
      fail(ErrorKind::PreconditionViolated, "collapse arc endpoint is not a cut point");
    }
    return classes.class_of[*cut];
  };
  w.class_a = pick(a);
  w.class_b = pick(b);
  return w;
}

ConditionsReport check_collapse_conditions(const Scheme& a, const Scheme& b,
                                           const CollapseWitness& witness,
                                           int samples_per_pairing) {
  const Polygon& poly = a.polygon();
  ConditionsReport rep;

  std::vector<double> samples;
  for (const Scheme* sch : {&a, &b}) {
    for (double c : sch->boundary_classes().cut_points) samples.push_back(c);
    for (const Pairing& p : sch->pairings()) {
      for (int j = 1; j <= samples_per_pairing; ++j) {
        const double t = p.length * j / (samples_per_pairing + 1);
        samples.push_back(poly.canonical(p.a.start + t));
        samples.push_back(poly.canonical(p.b.start + t));
      }
    }
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end(),
                            [&](double u, double v) { return std::abs(u - v) <= poly.tol(); }),
                samples.end());

  std::vector<RelKey> ka(samples.size()), kb(samples.size());
  std::vector<char> inside(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ka[i] = classify(a, samples[i]);
    kb[i] = classify(b, samples[i]);
    inside[i] = poly.arc_contains(witness.d, samples[i], /*open=*/true) ? 1 : 0;
  }

  rep.cond1 = rep.cond2 = rep.cond3 = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const bool rel_a = related(poly, ka[i], ka[j], samples[i], samples[j]);
      const bool rel_b = related(poly, kb[i], kb[j], samples[i], samples[j]);
      if (!inside[i] && !inside[j]) {
        if (rel_a != rel_b) {
          rep.cond1 = false;
          if (rep.counterexamples.size() < 16) {
            std::ostringstream os;
            os << (rel_a ? "related only in scheme A" : "related only in scheme B");
            rep.counterexamples.push_back({1, samples[i], samples[j], os.str()});
          }
        }
        continue;
      }
      if (inside[i] == inside[j]) continue;
      const std::size_t out = inside[i] ? j : i;
      const std::size_t in = inside[i] ? i : j;
      if (rel_a) {
        const bool ok = ka[out].kind == RelKey::CutClass && ka[out].id == witness.class_a &&
                        ka[in].kind == RelKey::CutClass && ka[in].id == witness.class_a;
        if (!ok) {
          rep.cond2 = false;
          if (rep.counterexamples.size() < 16) {
            rep.counterexamples.push_back(
                {2, samples[out], samples[in], "scheme A relation into the arc misses g"});
          }
        }
      }
      if (rel_b) {
        const bool ok = kb[out].kind == RelKey::CutClass && kb[out].id == witness.class_b &&
                        kb[in].kind == RelKey::CutClass && kb[in].id == witness.class_b;
        if (!ok) {
          rep.cond2 = false;
          if (rep.counterexamples.size() < 16) {
            rep.counterexamples.push_back(
                {2, samples[out], samples[in], "scheme B relation into the arc misses g"});
          }
        }
      }
    }
  }

  const double z = poly.canonical(witness.d.start);
  const double w = poly.canonical(witness.d.start + witness.d.length);
  const auto touches_endpoint = [&](const Scheme& sch, int cls) {
    const ClassTable& classes = sch.boundary_classes();
    if (cls < 0 || cls >= static_cast<int>(classes.classes.size())) return false;
    for (int cut : classes.classes[cls]) {
      const double s = classes.cut_points[cut];
      for (double e : {z, w}) {
        double d = std::abs(s - e);
        d = std::min(d, poly.perimeter() - d);
        if (d <= poly.tol()) return true;
      }
    }
    return false;
  };
  rep.cond3 = touches_endpoint(a, witness.class_a) && touches_endpoint(b, witness.class_b);
  if (!rep.cond3) {
    rep.counterexamples.push_back({3, z, w, "witness class misses both arc endpoints"});
  }
  return rep;
}

bool prop_gh2_1_check(const Polygon& poly, Arc d, const Point& x, const Point& y,
                      const Point& z) {
  const double tolerance = 1e-9 * poly.perimeter();
  const auto on_arc = [&](const Point& p, bool open) {
    // project p to the boundary and test the coordinate
    double best = 1e100;
    double best_s = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = poly.vertex(i);
      const Point b = poly.vertex((i + 1) % n);
      const Point ab = b - a;
      const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
      const double dd = dist(p, a + t * ab);
      if (dd < best) {
        best = dd;
        best_s = poly.vertex_coord(i) + t * norm(ab);
      }
    }
    if (best > tolerance) return false;
    const double off = poly.cyclic_delta(d.start, poly.canonical(best_s));
    if (open) return off > tolerance && off < d.length - tolerance;
    return off <= d.length + tolerance;
  };

  if (on_arc(x, /*open=*/false)) {
    fail(ErrorKind::PreconditionViolated, "x must lie outside the arc");
  }
  if (!on_arc(y, /*open=*/false)) {
    fail(ErrorKind::PreconditionViolated, "y must lie on the arc");
  }
  if (!on_arc(z, /*open=*/false)) {
    fail(ErrorKind::PreconditionViolated, "z must lie on the boundary of the arc");
  }
  const double lhs = poly.intrinsic_distance(x, z);
  const double rhs = poly.intrinsic_distance(x, y) + poly.arc_diameter(d);
  return lhs <= rhs + 1e-9 * poly.perimeter();
}

}  // namespace paperfold
