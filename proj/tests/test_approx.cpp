#include <doctest.h>

#include "helpers.hpp"
#include "paperfold/analysis.hpp"
#include "paperfold/approx.hpp"

using namespace paperfold;
using namespace paperfold::testing;

TEST_CASE("gamma arcs of the halving construction") {
  const InfiniteScheme inf = canon1_square();
  for (int n = 1; n <= 6; ++n) {
    const Arc g = gamma_n(inf, n);
    CHECK(g.length == doctest::Approx(std::pow(2.0, -n + 1)).epsilon(1e-12));
    CHECK(g.start == doctest::Approx(4.0 - std::pow(2.0, -n)).epsilon(1e-12));
    CHECK(inf.polygon.arc_diameter(g) ==
          doctest::Approx(std::pow(2.0, -n) * std::sqrt(2.0)).epsilon(1e-12));
  }
  // one-sided pattern: straight tail arc, diameter equals length
  const InfiniteScheme c2 = canon2_square();
  for (int n = 1; n <= 5; ++n) {
    const Arc g = gamma_n(c2, n);
    CHECK(g.start == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(inf.polygon.arc_diameter(g) == doctest::Approx(g.length).epsilon(1e-12));
  }
}

TEST_CASE("truncation bookkeeping") {
  const InfiniteScheme inf = canon1_square();

  const Scheme s1 = truncate(inf, 1);
  CHECK(s1.pairings().size() == 5);  // base + 2 blocks + 2 tail folds
  CHECK(s1.plain());
  bool has_block_fold = false, has_tail_fold = false;
  for (const Pairing& p : s1.pairings()) {
    if (p.is_fold && p.fold_point) {
      if (std::abs(*p.fold_point - 0.75) < 1e-12) has_block_fold = true;
      if (std::abs(*p.fold_point - 0.25) < 1e-12) has_tail_fold = true;
    }
  }
  CHECK(has_block_fold);
  CHECK(has_tail_fold);

  for (int n = 1; n <= 8; ++n) {
    const Scheme sn = truncate(inf, n);
    CHECK(sn.pairings().size() == static_cast<std::size_t>(2 * n + 3));
    CHECK(sn.plain());
  }
}

TEST_CASE("consecutive truncations agree outside the tail arc") {
  const InfiniteScheme inf = canon1_square();
  for (int n = 1; n <= 4; ++n) {
    const Scheme a = truncate(inf, n);
    const Scheme b = truncate(inf, n + 1);
    const Arc g = gamma_n(inf, n);
    // every pairing of a with an interval outside the open arc appears in b
    for (const Pairing& p : a.pairings()) {
      const bool outside = !inf.polygon.arc_contains(g, p.a.start + p.a.length / 2, true);
      if (!outside) continue;
      bool found = false;
      for (const Pairing& q : b.pairings()) {
        if (std::abs(q.a.start - p.a.start) < 1e-9 && std::abs(q.b.start - p.b.start) < 1e-9 &&
            std::abs(q.length - p.length) < 1e-9) {
          found = true;
        }
      }
      CHECK(found);
    }
    // the tail arc is plain for both levels
    CHECK(a.is_plain_arc(g));
    CHECK(b.is_plain_arc(g));
  }
}

TEST_CASE("fold replacement on arcs") {
  const Polygon sq = make_square();
  const auto folds = replace_with_folds(sq, {}, {0.25, 0.5});
  REQUIRE(folds.size() == 1);
  CHECK(folds[0].a.start == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(folds[0].a.length == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(folds[0].b.start == doctest::Approx(0.5).epsilon(1e-15));

  const auto split = replace_with_folds(sq, {}, {3.75, 0.5});
  REQUIRE(split.size() == 2);
  CHECK(split[0].a.start == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(split[0].a.length == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(split[1].a.start == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(split[1].a.length == doctest::Approx(0.125).epsilon(1e-15));

  CHECK(replace_with_folds(sq, {}, {0.25, 0.0}).empty());
  CHECK_THROWS_WITH_AS(replace_with_folds(sq, {}, {3.5, 2.0}),
                       doctest::Contains("ArcCrossesTwoVertices"), Error);
  // a kept pairing reaching into the arc blocks the replacement
  CHECK_THROWS_WITH_AS(replace_with_folds(sq, {{{0.4, 0.2}, {2.0, 0.2}}}, {0.25, 0.5}),
                       doctest::Contains("ArcNotPlain"), Error);
}

TEST_CASE("pattern validation rejects bad specs") {
  const Polygon sq = make_square();
  PatternSpec too_big{PatternKind::Canon1, 0.0, 0.5, 0.8};  // budget 1.6 > side length
  CHECK_THROWS_WITH_AS(InfiniteScheme::validate(sq, {}, {too_big}),
                       doctest::Contains("PatternInvalid"), Error);

  PatternSpec ok{PatternKind::Canon1, 0.0, 0.5, 0.5};
  PatternSpec colliding{PatternKind::Canon1, 1.0, 0.5, 0.5};
  CHECK_THROWS_WITH_AS(InfiniteScheme::validate(sq, {}, {ok, colliding}),
                       doctest::Contains("PatternInvalid"), Error);

  // wrong base total
  CHECK_THROWS_WITH_AS(
      InfiniteScheme::validate(sq, {{{1, 0.5}, {1.5, 0.5}}}, {ok}),
      doctest::Contains("PatternInvalid"), Error);
}

TEST_CASE("singular1 truncations validate and stay plain") {
  const InfiniteScheme inf = singular1_square();
  for (int n = 1; n <= 6; ++n) {
    const Scheme sn = truncate(inf, n);
    CHECK(sn.plain());
    CHECK(sn.pairings().size() == static_cast<std::size_t>(2 * n + 4));
  }
}

TEST_CASE("approximation sequence columns") {
  const InfiniteScheme inf = canon1_square();
  const double delta = 0.05;
  const double delta0 = 0.01;
  const auto rows = approximation_sequence(inf, 4, delta, delta0);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int n = rows[i].n;
    CHECK(n == static_cast<int>(i) + 1);
    CHECK(rows[i].theorem_bound ==
          doctest::Approx(5.0 * 1.01 * std::sqrt(2.0) * std::pow(2.0, -n)).epsilon(1e-12));
    if (i > 0) {
      CHECK(rows[i].theorem_bound == doctest::Approx(rows[i - 1].theorem_bound / 2).epsilon(1e-12));
      CHECK(rows[i].total_abs_curv > rows[i - 1].total_abs_curv);
    }
    CHECK(rows[i].gh_bound <= rows[i].theorem_bound + 5.0 * delta);
  }
  CHECK(rows.back().sup_diff == 0.0);  // reference compared with itself
}

TEST_CASE("repeat simplification") {
  // single pattern: bound target epsilon directly
  const InfiniteScheme single = canon1_square();
  const SimplifyResult one = repeat_simplify(single, 0.2);
  REQUIRE(one.stages.size() == 1);
  CHECK(one.stages[0].theorem_bound < 0.2);
  CHECK(one.bound_sum < 0.2);
  CHECK(one.final_scheme.plain());

  // two anchors at opposite corners of the square
  const InfiniteScheme two = repeat2_square();
  const SimplifyResult res = repeat_simplify(two, 0.2);
  REQUIRE(res.stages.size() == 2);
  for (const SimplifyStage& s : res.stages) CHECK(s.theorem_bound < 0.1);
  CHECK(res.bound_sum < 0.2);
  CHECK(res.final_scheme.plain());
  CHECK(res.final_scheme.full());

  // a loose target is met at the first level everywhere
  const SimplifyResult loose = repeat_simplify(two, 100.0);
  for (const SimplifyStage& s : loose.stages) CHECK(s.level == 1);

  // empirical stage bounds when a mesh is supplied
  const SimplifyResult emp = repeat_simplify(two, 1.0, 0.05);
  for (const SimplifyStage& s : emp.stages) CHECK(s.empirical_gh_bound >= 0.0);
}
