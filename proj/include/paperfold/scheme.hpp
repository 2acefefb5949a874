#pragma once

#include <optional>
#include <vector>

#include "paperfold/geometry.hpp"

namespace paperfold {

// Closed boundary interval [start, start+length], CCW. Pairing intervals
// never wrap: their interiors are vertex-free, and vertex 0 sits at s = 0.
struct BoundaryInterval {
  double start = 0.0;
  double length = 0.0;
  double end() const { return start + length; }
};

struct PairingSpec {
  BoundaryInterval a;
  BoundaryInterval b;
};

// Orientation-reversing isometric identification of two equal-length
// boundary intervals: a.start + t ~ b.start + (length - t).
struct Pairing {
  BoundaryInterval a;
  BoundaryInterval b;
  double length = 0.0;
  bool is_fold = false;
  std::optional<double> fold_point;
};

// Equivalence classes of the interval endpoints ("cut points") under the
// transitive closure of endpoint identifications.
struct ClassTable {
  std::vector<double> cut_points;          // sorted ascending
  std::vector<int> class_of;               // per cut point
  std::vector<std::vector<int>> classes;   // class -> member cut indices
  std::optional<int> find_cut(double s, double perimeter, double tolerance) const;
};

struct PairLocation {
  std::size_t pairing;
  bool on_a;        // s lies on interval a (otherwise b)
  double t;         // offset along that interval, in [0, length]
};

// Free-standing checks usable on partial pairing collections.
bool pairings_linked(const Polygon& poly, const Pairing& p, const Pairing& q);
bool is_plain_arc(const Polygon& poly, const std::vector<Pairing>& pairings, Arc arc);
Pairing make_pairing(const Polygon& poly, const PairingSpec& spec);

// A validated full, interior-disjoint collection of segment pairings on the
// boundary of a single polygon.
class Scheme {
 public:
  // Throws LengthMismatch / VertexInInterval / Overlap / NotFull.
  static Scheme validate(Polygon polygon, const std::vector<PairingSpec>& pairings);

  const Polygon& polygon() const { return poly_; }
  const std::vector<Pairing>& pairings() const { return pairings_; }
  bool interior_disjoint() const { return true; }
  bool full() const { return true; }
  bool plain() const { return plain_; }

  // Partner of s under pairing i; involutive. Throws NotOnPairing.
  double pair_point(std::size_t i, double s) const;

  // Innermost location of s on some pairing interval, if any.
  std::optional<PairLocation> locate(double s) const;
  bool is_interior_pair_point(double s) const;

  bool linked(std::size_t i, std::size_t j) const;
  bool is_plain_arc(Arc arc) const;

  const ClassTable& boundary_classes() const { return classes_; }

  // Theorem-of-plain-schemes test: s1 ~ s2 iff one of the two arcs they bound
  // is plain. Throws SchemeNotPlain / InteriorPairPoint.
  bool equivalent_by_plain_arc(double s1, double s2) const;

  // Same polygon up to coordinate tolerance.
  bool same_polygon(const Scheme& other) const;

 private:
  Polygon poly_;
  std::vector<Pairing> pairings_;
  bool plain_ = false;
  ClassTable classes_;
};

}  // namespace paperfold
