#include <doctest.h>

#include "helpers.hpp"
#include "paperfold/gh.hpp"

using namespace paperfold;
using namespace paperfold::testing;

namespace {

QuotientMatrix matrix_of(std::size_t n, std::initializer_list<double> values) {
  QuotientMatrix m;
  m.n = n;
  m.d.assign(values);
  return m;
}

}  // namespace

TEST_CASE("distortion and the induced GH upper bound") {
  const QuotientMatrix d2 = matrix_of(2, {0, 1, 1, 0});
  Correspondence identity{{{0, 0}, {1, 1}}};
  CHECK(distortion(identity, d2, d2) == 0.0);
  CHECK(gh_upper_from_correspondence(identity, d2, d2) == 0.0);

  const QuotientMatrix da = matrix_of(2, {0, 1, 1, 0});
  const QuotientMatrix db = matrix_of(2, {0, 0.4, 0.4, 0});
  CHECK(distortion(identity, da, db) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(gh_upper_from_correspondence(identity, da, db) == doctest::Approx(0.3).epsilon(1e-15));

  // doubling all distances distorts by the largest distance
  const QuotientMatrix d3 = matrix_of(3, {0, 1, 2, 1, 0, 1.5, 2, 1.5, 0});
  const QuotientMatrix d3x2 = matrix_of(3, {0, 2, 4, 2, 0, 3, 4, 3, 0});
  Correspondence id3{{{0, 0}, {1, 1}, {2, 2}}};
  CHECK(distortion(id3, d3, d3x2) == doctest::Approx(2.0).epsilon(1e-15));

  // point against a two-point space
  const QuotientMatrix one = matrix_of(1, {0});
  const QuotientMatrix two = matrix_of(2, {0, 0.8, 0.8, 0});
  Correspondence total{{{0, 0}, {0, 1}}};
  CHECK(gh_upper_from_correspondence(total, one, two) == doctest::Approx(0.4).epsilon(1e-15));

  Correspondence missing{{{0, 0}}};
  CHECK_THROWS_WITH_AS(distortion(missing, d2, d2), doctest::Contains("NotSurjective"), Error);
}

TEST_CASE("identity distortion equals the sup-norm difference") {
  const Scheme sq2 = sq2_scheme();
  const Scheme torus = torus_scheme();
  const Net net = build_shared_net(sq2, torus, 0.5);
  QuotientSolver sa(net, 0);
  QuotientSolver sb(net, 1);
  const std::size_t n = net.pts.size();
  QuotientMatrix ma, mb;
  ma.n = mb.n = n;
  ma.d.resize(n * n);
  mb.d.resize(n * n);
  std::vector<double> row, scratch;
  for (std::size_t x = 0; x < n; ++x) {
    sa.row(static_cast<int>(x), row, scratch);
    for (std::size_t y = 0; y < n; ++y) ma.d[x * n + y] = row[y];
    sb.row(static_cast<int>(x), row, scratch);
    for (std::size_t y = 0; y < n; ++y) mb.d[x * n + y] = row[y];
  }
  Correspondence identity;
  for (std::size_t i = 0; i < n; ++i) identity.pairs.emplace_back(i, i);
  double sup = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) sup = std::max(sup, std::abs(ma.d[i] - mb.d[i]));
  CHECK(distortion(identity, ma, mb) == sup);
  CHECK(sup > 0.0);
}

TEST_CASE("gh bound lemma arithmetic") {
  CHECK(gh_bound_lemma(0.1, 0.05).bound == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(gh_bound_lemma(0.1, 0.3).bound == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(gh_bound_lemma(0.2, 0.0).bound == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sup_metric_diff vanishes for identical relations") {
  const Scheme sq2 = sq2_scheme();
  CHECK(sup_metric_diff(sq2, sq2, 0.25).sup_diff == 0.0);

  // same pairings listed in swapped order
  const Scheme swapped = Scheme::validate(make_square(), {{{2, 1}, {3, 1}}, {{0, 1}, {1, 1}}});
  CHECK(sup_metric_diff(sq2, swapped, 0.25).sup_diff <= 1e-12);

  CHECK_THROWS_WITH_AS(sup_metric_diff(sq2, Scheme::validate(make_l_shape(), {{{0, 1}, {1, 1}},
                                                                              {{2, 0.5}, {2.5, 0.5}},
                                                                              {{3, 0.5}, {3.5, 0.5}},
                                                                              {{4, 0.5}, {4.5, 0.5}},
                                                                              {{5, 0.5}, {5.5, 0.5}},
                                                                              {{6, 0.5}, {6.5, 0.5}},
                                                                              {{7, 0.5}, {7.5, 0.5}}}),
                                       0.25),
                       doctest::Contains("PolygonMismatch"), Error);
}

TEST_CASE("consecutive truncations stay within the collapse bound") {
  const InfiniteScheme inf = canon1_square();
  const Scheme s3 = truncate(inf, 3);
  const Scheme s4 = truncate(inf, 4);
  const Arc g3 = gamma_n(inf, 3);
  const double delta = 0.02;
  const double sup =
      sup_metric_diff(s3, s4, delta, std::optional<Arc>(g3)).sup_diff;
  CHECK(sup <= 2.0 * inf.polygon.arc_diameter(g3) + 4.0 * delta);
}

TEST_CASE("collapse conditions hold for truncation pairs and fail across schemes") {
  const InfiniteScheme inf = canon1_square();
  const Scheme s2 = truncate(inf, 2);
  const Scheme s3 = truncate(inf, 3);
  const Arc g2 = gamma_n(inf, 2);
  const CollapseWitness w = make_collapse_witness(s2, s3, g2);
  const ConditionsReport rep = check_collapse_conditions(s2, s3, w);
  CHECK(rep.cond1);
  CHECK(rep.cond2);
  CHECK(rep.cond3);
  CHECK(rep.all_pass());

  const Scheme sq2 = sq2_scheme();
  const Scheme torus = torus_scheme();
  CollapseWitness tiny;
  tiny.d = {0.49, 0.02};
  tiny.class_a = 0;
  tiny.class_b = 0;
  const ConditionsReport bad = check_collapse_conditions(sq2, torus, tiny);
  CHECK_FALSE(bad.cond1);
  bool has_cond1_cex = false;
  for (const auto& cex : bad.counterexamples) {
    if (cex.condition == 1) has_cond1_cex = true;
  }
  CHECK(has_cond1_cex);

  // whole-boundary-minus-endpoints arc: condition three is immediate
  CollapseWitness wide = make_collapse_witness(s2, s2, {0.0, 3.999999});
  const ConditionsReport wr = check_collapse_conditions(s2, s2, wide);
  CHECK(wr.cond3);
}

TEST_CASE("diameter comparison inequality") {
  const Polygon sq = make_square();
  // y = z on the arc reduces to the triangle inequality
  CHECK(prop_gh2_1_check(sq, {0.0, 0.5}, {1, 1}, sq.boundary_point(0.25),
                         sq.boundary_point(0.25)));
  CHECK(prop_gh2_1_check(sq, {0.0, 0.5}, {1, 1}, {0.25, 0}, {0, 0}));
  CHECK_THROWS_WITH_AS(prop_gh2_1_check(sq, {0.0, 0.5}, {0.25, 0}, {0.3, 0}, {0, 0}),
                       doctest::Contains("PreconditionViolated"), Error);

  Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    const Polygon p = random_convex_polygon(rng);
    Arc d{rng.uniform(0, p.perimeter()), rng.uniform(0.05, 0.8) * p.perimeter()};
    const Point y = p.boundary_point(d.start + rng.uniform(0.01, 0.99) * d.length);
    const Point z = p.boundary_point(d.start + rng.uniform(0, 1) * d.length);
    Point x;
    for (;;) {
      const double s = rng.uniform(0, p.perimeter());
      if (p.cyclic_delta(d.start, s) > d.length + p.tol() * 10) {
        x = p.boundary_point(s);
        break;
      }
    }
    CHECK(prop_gh2_1_check(p, d, x, y, z));
  }
}
