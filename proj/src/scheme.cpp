#include "paperfold/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace paperfold {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string fmt_interval(const BoundaryInterval& iv) {
  std::ostringstream os;
  os << "[" << iv.start << "," << iv.end() << "]";
  return os.str();
}

// Offset of s from the interval start if s lies in the closed interval.
std::optional<double> interval_offset(const Polygon& poly, const BoundaryInterval& iv,
                                      double s) {
  double off = poly.cyclic_delta(iv.start, s);
  if (off >= poly.perimeter() - poly.tol()) off = 0.0;  // rounding across the start
  if (off <= iv.length + poly.tol()) return std::min(off, iv.length);
  return std::nullopt;
}

double arc_offset(const Polygon& poly, Arc arc, double s) {
  double off = poly.cyclic_delta(arc.start, s);
  if (off >= poly.perimeter() - poly.tol()) off = 0.0;
  return off;
}

// Does the closed interval meet the open arc?
bool interval_meets_open_arc(const Polygon& poly, const BoundaryInterval& iv, Arc arc) {
  const double t = poly.tol();
  const double off = arc_offset(poly, arc, iv.start);
  // The interval occupies offsets [off, off + length]; it avoids the open
  // (0, arc.length) window only when fully inside [arc.length, perimeter].
  const bool in_complement =
      off >= arc.length - t && off + iv.length <= poly.perimeter() + t;
  return !in_complement;
}

bool interval_in_arc(const Polygon& poly, const BoundaryInterval& iv, Arc arc) {
  const double t = poly.tol();
  const double off = arc_offset(poly, arc, iv.start);
  return off <= arc.length + t && off + iv.length <= arc.length + t;
}

}  // namespace

std::optional<int> ClassTable::find_cut(double s, double perimeter, double tolerance) const {
  // cut_points is sorted; binary search with cyclic wrap.
  const auto it = std::lower_bound(cut_points.begin(), cut_points.end(), s);
  const auto idx_of = [&](std::size_t i) -> std::optional<int> {
    double d = std::abs(cut_points[i] - s);
    d = std::min(d, perimeter - d);
    if (d <= tolerance) return static_cast<int>(i);
    return std::nullopt;
  };
  if (cut_points.empty()) return std::nullopt;
  const std::size_t i = static_cast<std::size_t>(it - cut_points.begin());
  for (std::size_t cand : {i == 0 ? cut_points.size() - 1 : i - 1,
                           i % cut_points.size(),
                           (i + 1) % cut_points.size()}) {
    if (auto r = idx_of(cand)) return r;
  }
  return std::nullopt;
}

Pairing make_pairing(const Polygon& poly, const PairingSpec& spec) {
  const double t = poly.tol();
  if (spec.a.length <= t || spec.b.length <= t) {
    fail(ErrorKind::LengthMismatch,
         "pairing interval has non-positive length " + fmt_interval(spec.a));
  }
  if (std::abs(spec.a.length - spec.b.length) > t) {
    std::ostringstream os;
    os << "|a|=" << spec.a.length << " |b|=" << spec.b.length;
    fail(ErrorKind::LengthMismatch, os.str());
  }
  Pairing p;
  p.a = {poly.canonical(spec.a.start), spec.a.length};
  p.b = {poly.canonical(spec.b.start), spec.b.length};
  p.length = spec.a.length;

  // A fold shares one endpoint between the two intervals; the pairing map
  // fixes it.
  const auto close = [&](double u, double v) {
    double d = std::abs(poly.canonical(u) - poly.canonical(v));
    d = std::min(d, poly.perimeter() - d);
    return d <= t;
  };
  if (close(p.a.end(), p.b.start)) {
    p.is_fold = true;
    p.fold_point = poly.canonical(p.a.end());
  } else if (close(p.b.end(), p.a.start)) {
    p.is_fold = true;
    p.fold_point = poly.canonical(p.a.start);
  }
  return p;
}

Scheme Scheme::validate(Polygon polygon, const std::vector<PairingSpec>& specs) {
  Scheme sch;
  sch.poly_ = std::move(polygon);
  const Polygon& poly = sch.poly_;
  const double t = poly.tol();

  for (const PairingSpec& spec : specs) {
    sch.pairings_.push_back(make_pairing(poly, spec));
  }

  // No interval interior may cross a vertex: each segment lies in one side.
  for (const Pairing& p : sch.pairings_) {
    for (const BoundaryInterval* iv : {&p.a, &p.b}) {
      for (std::size_t v = 0; v < poly.size(); ++v) {
        const double off = poly.cyclic_delta(iv->start, poly.vertex_coord(v));
        if (off > t && off < iv->length - t) {
          std::ostringstream os;
          os << "vertex at s=" << poly.vertex_coord(v) << " interior to " << fmt_interval(*iv);
          fail(ErrorKind::VertexInInterval, os.str());
        }
      }
    }
  }

  // Pairwise disjoint interiors, checked on the sorted interval sequence.
  std::vector<BoundaryInterval> all;
  for (const Pairing& p : sch.pairings_) {
    all.push_back(p.a);
    all.push_back(p.b);
  }
  std::sort(all.begin(), all.end(),
            [](const BoundaryInterval& x, const BoundaryInterval& y) { return x.start < y.start; });
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    if (all[i + 1].start < all[i].end() - t) {
      fail(ErrorKind::Overlap, fmt_interval(all[i]) + " overlaps " + fmt_interval(all[i + 1]));
    }
  }
  if (all.size() >= 2) {
    const BoundaryInterval& last = all.back();
    if (all.front().start + poly.perimeter() < last.end() - t) {
      fail(ErrorKind::Overlap, fmt_interval(last) + " overlaps " + fmt_interval(all.front()));
    }
  }

  double total = 0.0;
  for (const Pairing& p : sch.pairings_) total += p.length;
  if (std::abs(total - poly.perimeter() / 2.0) > t) {
    std::ostringstream os;
    os << "sum=" << total << " expected " << poly.perimeter() / 2.0;
    fail(ErrorKind::NotFull, os.str());
  }

  sch.plain_ = true;
  for (std::size_t i = 0; i < sch.pairings_.size() && sch.plain_; ++i) {
    for (std::size_t j = i + 1; j < sch.pairings_.size(); ++j) {
      if (pairings_linked(poly, sch.pairings_[i], sch.pairings_[j])) {
        sch.plain_ = false;
        break;
      }
    }
  }

  // Cut points and their identification classes.
  std::vector<double> cuts;
  for (const BoundaryInterval& iv : all) {
    cuts.push_back(poly.canonical(iv.start));
    cuts.push_back(poly.canonical(iv.end()));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> dedup;
  for (double c : cuts) {
    if (dedup.empty() || c - dedup.back() > t) {
      dedup.push_back(c);
    }
  }
  if (dedup.size() >= 2 && (dedup.front() + poly.perimeter()) - dedup.back() <= t) {
    dedup.pop_back();
  }
  sch.classes_.cut_points = std::move(dedup);

  Dsu dsu(sch.classes_.cut_points.size());
  const auto cut_idx = [&](double s) {
    auto r = sch.classes_.find_cut(poly.canonical(s), poly.perimeter(), 2.0 * t);
    return r ? *r : -1;
  };
  for (const Pairing& p : sch.pairings_) {
    const int a0 = cut_idx(p.a.start);
    const int a1 = cut_idx(p.a.end());
    const int b0 = cut_idx(p.b.start);
    const int b1 = cut_idx(p.b.end());
    if (a0 >= 0 && b1 >= 0) dsu.unite(a0, b1);
    if (a1 >= 0 && b0 >= 0) dsu.unite(a1, b0);
  }
  std::vector<int> root_to_class(sch.classes_.cut_points.size(), -1);
  sch.classes_.class_of.resize(sch.classes_.cut_points.size());
  for (std::size_t i = 0; i < sch.classes_.cut_points.size(); ++i) {
    const int r = dsu.find(static_cast<int>(i));
    if (root_to_class[r] < 0) {
      root_to_class[r] = static_cast<int>(sch.classes_.classes.size());
      sch.classes_.classes.emplace_back();
    }
    sch.classes_.class_of[i] = root_to_class[r];
    sch.classes_.classes[root_to_class[r]].push_back(static_cast<int>(i));
  }
  return sch;
}

double Scheme::pair_point(std::size_t i, double s) const {
  const Pairing& p = pairings_.at(i);
  const double c = poly_.canonical(s);
  if (auto off = interval_offset(poly_, p.a, c)) {
    return poly_.canonical(p.b.start + (p.length - *off));
  }
  if (auto off = interval_offset(poly_, p.b, c)) {
    return poly_.canonical(p.a.start + (p.length - *off));
  }
  std::ostringstream os;
  os << "s=" << c << " not on pairing " << i;
  fail(ErrorKind::NotOnPairing, os.str());
}

std::optional<PairLocation> Scheme::locate(double s) const {
  const double c = poly_.canonical(s);
  for (std::size_t i = 0; i < pairings_.size(); ++i) {
    if (auto off = interval_offset(poly_, pairings_[i].a, c)) {
      return PairLocation{i, true, *off};
    }
    if (auto off = interval_offset(poly_, pairings_[i].b, c)) {
      return PairLocation{i, false, *off};
    }
  }
  return std::nullopt;
}

bool Scheme::is_interior_pair_point(double s) const {
  const double c = poly_.canonical(s);
  const double t = poly_.tol();
  for (const Pairing& p : pairings_) {
    for (const BoundaryInterval* iv : {&p.a, &p.b}) {
      const double off = poly_.cyclic_delta(iv->start, c);
      if (off > t && off < iv->length - t) return true;
    }
  }
  return false;
}

bool pairings_linked(const Polygon& poly, const Pairing& p, const Pairing& q) {
  // Orientation-reversing pairings sweep nested point pairs, so linkage is
  // decided by whether the four interval blocks alternate around the circle.
  struct Mid {
    double s;
    int owner;
  };
  Mid mids[4] = {
      {poly.canonical(p.a.start + p.a.length / 2.0), 0},
      {poly.canonical(p.b.start + p.b.length / 2.0), 0},
      {poly.canonical(q.a.start + q.a.length / 2.0), 1},
      {poly.canonical(q.b.start + q.b.length / 2.0), 1},
  };
  std::sort(std::begin(mids), std::end(mids),
            [](const Mid& x, const Mid& y) { return x.s < y.s; });
  return mids[0].owner != mids[1].owner && mids[1].owner != mids[2].owner &&
         mids[2].owner != mids[3].owner;
}

bool Scheme::linked(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  return pairings_linked(poly_, pairings_[i], pairings_[j]);
}

bool is_plain_arc(const Polygon& poly, const std::vector<Pairing>& pairings, Arc arc) {
  const double t = poly.tol();
  if (arc.length <= t) return true;
  std::vector<const Pairing*> restricted;
  for (const Pairing& p : pairings) {
    const bool meets =
        interval_meets_open_arc(poly, p.a, arc) || interval_meets_open_arc(poly, p.b, arc);
    const bool contained = interval_in_arc(poly, p.a, arc) && interval_in_arc(poly, p.b, arc);
    if (meets && !contained) return false;
    if (contained) restricted.push_back(&p);
  }
  for (std::size_t i = 0; i < restricted.size(); ++i) {
    for (std::size_t j = i + 1; j < restricted.size(); ++j) {
      if (pairings_linked(poly, *restricted[i], *restricted[j])) return false;
    }
  }
  return true;
}

bool Scheme::is_plain_arc(Arc arc) const { return paperfold::is_plain_arc(poly_, pairings_, arc); }

bool Scheme::equivalent_by_plain_arc(double s1, double s2) const {
  if (!plain_) fail(ErrorKind::SchemeNotPlain, "plain-arc test needs a plain scheme");
  const double c1 = poly_.canonical(s1);
  const double c2 = poly_.canonical(s2);
  if (is_interior_pair_point(c1) || is_interior_pair_point(c2)) {
    fail(ErrorKind::InteriorPairPoint, "query point lies in an interior pair");
  }
  const double d = poly_.cyclic_delta(c1, c2);
  if (d <= poly_.tol() || d >= poly_.perimeter() - poly_.tol()) return true;
  return is_plain_arc({c1, d}) || is_plain_arc({c2, poly_.perimeter() - d});
}

bool Scheme::same_polygon(const Scheme& other) const {
  if (poly_.size() != other.poly_.size()) return false;
  const double t = std::max(poly_.tol(), other.poly_.tol());
  for (std::size_t i = 0; i < poly_.size(); ++i) {
    if (dist(poly_.vertex(i), other.poly_.vertex(i)) > t) return false;
  }
  return true;
}

}  // namespace paperfold
