#include <cmath>

#include "doctest.h"
#include "lpp/passage.hpp"
#include "oracles.hpp"

using namespace lpp;

namespace {

WeightField field_from_rows(std::vector<std::vector<double>> rows) {
  WeightField f;
  f.height = static_cast<int64_t>(rows.size());
  f.width = static_cast<int64_t>(rows[0].size());
  f.dist = WeightDistribution::exponential(1.0);
  for (const auto& r : rows)
    f.values.insert(f.values.end(), r.begin(), r.end());
  return f;
}

}  // namespace

TEST_CASE("G(source, source) = 0 and single-row convention") {
  const WeightField f = field_from_rows({{2, 5, 1}});
  const auto t = compute_passage_table(f, {0, 0}, f.rect());
  CHECK(t.at({0, 0}) == 0.0);
  // endpoint weight 1 excluded: 2 + 5
  CHECK(t.at({2, 0}) == 7.0);
}

TEST_CASE("DP equals brute force on pinned grids up to 6x6, both conventions") {
  for (uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    for (int64_t w = 2; w <= 6; ++w) {
      for (int64_t h = 2; h <= 6; ++h) {
        const WeightField f = oracle::pinned_integer_field(w, h, seed * 100 + w * 10 + h);
        for (const auto conv :
             {Convention::ExcludeLast, Convention::IncludeLastExcludeFirst}) {
          const auto t = compute_passage_table(f, {0, 0}, f.rect(), conv);
          for (int64_t y = 0; y < h; ++y)
            for (int64_t x = 0; x < w; ++x)
              CHECK(t.at({x, y}) == oracle::brute_G(f, {0, 0}, {x, y}, conv));
        }
      }
    }
  }
}

TEST_CASE("4x4 pinned grid has 20 paths and DP matches their max") {
  const WeightField f = oracle::pinned_integer_field(4, 4, 42);
  CHECK(oracle::all_paths({0, 0}, {3, 3}).size() == 20);
  const auto t = compute_passage_table(f, {0, 0}, f.rect());
  CHECK(t.at({3, 3}) == oracle::brute_G(f, {0, 0}, {3, 3}));
}

TEST_CASE("convention shift identity: G_incl = G_excl - w(start) + w(end)") {
  const WeightField f = oracle::pinned_integer_field(5, 5, 9);
  const auto excl = compute_passage_table(f, {0, 0}, f.rect(), Convention::ExcludeLast);
  const auto incl = compute_passage_table(f, {0, 0}, f.rect(),
                                          Convention::IncludeLastExcludeFirst);
  for (int64_t y = 0; y < 5; ++y)
    for (int64_t x = 0; x < 5; ++x)
      CHECK(incl.at({x, y}) ==
            doctest::Approx(excl.at({x, y}) - f.at(0, 0) + f.at(x, y)).epsilon(1e-15));
}

TEST_CASE("lean passage_value matches the table") {
  const auto dist = WeightDistribution::exponential(1.0);
  const WeightField f = sample_field(dist, 40, 30, 17);
  const auto t = compute_passage_table(f, {0, 0}, f.rect());
  const FieldView view = f.view();
  CHECK(passage_value(view, {0, 0}, {39, 29}) == t.at({39, 29}));
  CHECK(passage_value(view, {0, 0}, {12, 25}) == t.at({12, 25}));
  const auto off = compute_passage_table(f, {3, 4}, Rect{3, 4, 37, 26});
  CHECK(passage_value(view, {3, 4}, {20, 20}) == off.at({20, 20}));
}

TEST_CASE("superadditivity G_{0,x} + G_{x,y} <= G_{0,y} exactly") {
  const WeightField f = oracle::pinned_integer_field(6, 6, 5);
  const auto t = compute_passage_table(f, {0, 0}, f.rect());
  for (int64_t xy = 0; xy < 36; ++xy) {
    const Point x{xy % 6, xy / 6};
    const Point y{5, 5};
    if (!(x <= y)) continue;
    const auto tx = compute_passage_table(f, x, Rect{x.x, x.y, 6 - x.x, 6 - x.y});
    CHECK(t.at(x) + tx.at(y) <= t.at(y));
  }
}

TEST_CASE("monotonicity along e1/e2 for nonnegative weights") {
  const WeightField f = oracle::pinned_integer_field(6, 6, 8);
  const auto t = compute_passage_table(f, {0, 0}, f.rect());
  for (int64_t y = 0; y < 6; ++y)
    for (int64_t x = 0; x + 1 < 6; ++x) CHECK(t.at({x + 1, y}) >= t.at({x, y}));
  for (int64_t y = 0; y + 1 < 6; ++y)
    for (int64_t x = 0; x < 6; ++x) CHECK(t.at({x, y + 1}) >= t.at({x, y}));
}

TEST_CASE("transpose symmetry of G") {
  const auto dist = WeightDistribution::exponential(1.0);
  const WeightField f = sample_field(dist, 12, 9, 23);
  const WeightField ft = f.transposed();
  const auto t = compute_passage_table(f, {0, 0}, f.rect());
  const auto tt = compute_passage_table(ft, {0, 0}, ft.rect());
  for (int64_t y = 0; y < 9; ++y)
    for (int64_t x = 0; x < 12; ++x) CHECK(t.at({x, y}) == tt.at({y, x}));
}

TEST_CASE("errors: bad source and bad rect") {
  const WeightField f = oracle::pinned_integer_field(4, 4, 1);
  CHECK_THROWS_AS((void)compute_passage_table(f, {5, 0}, f.rect()), std::domain_error);
  CHECK_THROWS_AS((void)compute_passage_table(f, {0, 0}, Rect{0, 0, 10, 10}),
                  std::domain_error);
}

TEST_CASE("point-to-line equals brute force on a pinned 7x7 field at n=6") {
  const auto dist = WeightDistribution::geometric(2.0);
  const WeightField f = sample_field(dist, 8, 8, 77);
  const FieldView view = f.view();
  for (const Vec2 h : {Vec2{0, 0}, Vec2{1.5, -0.5}, Vec2{-2, 1}}) {
    CHECK(point_to_line(view, h, 6) == oracle::brute_point_to_line(f, h, 6));
  }
  // n=1 cases: w(0,0) and w(0,0) + 10
  CHECK(point_to_line(view, {0, 0}, 1) == f.at(0, 0));
  CHECK(point_to_line(view, {10, 0}, 1) == f.at(0, 0) + 10.0);
  CHECK_THROWS_AS((void)point_to_line(view, {0, 0}, 0), std::domain_error);
}

TEST_CASE("increments: constant field gives I = J = c") {
  WeightField f = field_from_rows({{3, 3, 3, 3}, {3, 3, 3, 3}, {3, 3, 3, 3}, {3, 3, 3, 3}});
  const auto inc = increments(f, {3, 3});
  for (int64_t y = 0; y <= 3; ++y)
    for (int64_t x = 0; x < 3; ++x) CHECK(inc.i_at({x, y}) == 3.0);
  for (int64_t y = 0; y < 3; ++y)
    for (int64_t x = 0; x <= 3; ++x) CHECK(inc.j_at({x, y}) == 3.0);
}

TEST_CASE("increment monotonicity in the target (pinned 6x6)") {
  for (uint64_t seed : {4ULL, 11ULL, 29ULL}) {
    const WeightField f = oracle::pinned_integer_field(7, 7, seed);
    const Point v{5, 5};
    const auto at_v = increments(f, v);
    const auto at_ve1 = increments(f, v + kE1);
    const auto at_ve2 = increments(f, v + kE2);
    for (int64_t y = 0; y <= v.y; ++y)
      for (int64_t x = 0; x < v.x; ++x) {
        const Point p{x, y};
        CHECK(at_ve2.i_at(p) >= at_v.i_at(p));
        CHECK(at_v.i_at(p) >= at_ve1.i_at(p));
      }
    for (int64_t y = 0; y < v.y; ++y)
      for (int64_t x = 0; x <= v.x; ++x) {
        const Point p{x, y};
        CHECK(at_ve2.j_at(p) <= at_v.j_at(p));
        CHECK(at_v.j_at(p) <= at_ve1.j_at(p));
      }
  }
}

TEST_CASE("crossing identity I + J = J + I around unit squares") {
  const WeightField f = oracle::pinned_integer_field(6, 6, 13);
  const Point v{5, 5};
  const auto inc = increments(f, v);
  // gradients of a single function: I_{x} + J_{x+e1} = J_{x} + I_{x+e2}
  for (int64_t y = 0; y + 1 <= v.y; ++y)
    for (int64_t x = 0; x + 1 <= v.x; ++x) {
      const Point p{x, y};
      CHECK(inc.i_at(p) + inc.j_at(p + kE1) ==
            doctest::Approx(inc.j_at(p) + inc.i_at(p + kE2)).epsilon(1e-12));
    }
}

TEST_CASE("recovery: w = min(I, J) toward any interior target") {
  const WeightField f = oracle::pinned_integer_field(6, 6, 3);
  const Point v{5, 5};
  const auto inc = increments(f, v);
  for (int64_t y = 0; y < v.y; ++y)
    for (int64_t x = 0; x < v.x; ++x) {
      const Point p{x, y};
      CHECK(std::min(inc.i_at(p), inc.j_at(p)) == f.at(p));
    }
}

TEST_CASE("backtracked geodesics: weight optimal, dominance vs enumerated optima") {
  for (uint64_t seed : {6ULL, 21ULL, 35ULL}) {
    const WeightField f = oracle::pinned_integer_field(5, 5, seed);
    const Point to{4, 4};
    const auto table = compute_passage_table(f, {0, 0}, f.rect());
    const auto left = backtrack_geodesic(table, to, TieBreak::Leftmost);
    const auto right = backtrack_geodesic(table, to, TieBreak::Rightmost);
    const double best = oracle::brute_G(f, {0, 0}, to);
    CHECK(path_weight(f, left) == best);
    CHECK(path_weight(f, right) == best);

    const auto optima = oracle::optimal_paths(f, {0, 0}, to);
    const auto lx = oracle::x_profile({0, 0}, left.steps_taken);
    const auto rx = oracle::x_profile({0, 0}, right.steps_taken);
    for (const auto& opt : optima) {
      const auto ox = oracle::x_profile({0, 0}, opt);
      for (size_t k = 0; k < ox.size(); ++k) {
        CHECK(lx[k] <= ox[k]);
        CHECK(rx[k] >= ox[k]);
      }
    }
  }
}

TEST_CASE("leftmost/rightmost coincide for continuous weights") {
  const auto dist = WeightDistribution::exponential(1.0);
  const WeightField f = sample_field(dist, 30, 30, 4);
  const auto table = compute_passage_table(f, {0, 0}, f.rect());
  const auto left = backtrack_geodesic(table, {29, 29}, TieBreak::Leftmost);
  const auto right = backtrack_geodesic(table, {29, 29}, TieBreak::Rightmost);
  CHECK(left.steps_taken == right.steps_taken);
}

TEST_CASE("constant field: leftmost is e2-first, rightmost e1-first") {
  const WeightField f = field_from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  const auto table = compute_passage_table(f, {0, 0}, f.rect());
  const auto left = backtrack_geodesic(table, {2, 2}, TieBreak::Leftmost);
  const auto right = backtrack_geodesic(table, {2, 2}, TieBreak::Rightmost);
  CHECK(left.steps_taken == std::vector<Point>{kE2, kE2, kE1, kE1});
  CHECK(right.steps_taken == std::vector<Point>{kE1, kE1, kE2, kE2});
  CHECK_THROWS_AS((void)backtrack_geodesic(f, {2, 2}, {0, 0}, TieBreak::Leftmost),
                  std::domain_error);
}

TEST_CASE("shape estimate hits the solvable targets at modest size") {
  // consistency + closed form; full-scale runs live in the acceptance suite
  const auto dist = WeightDistribution::exponential(1.0);
  const auto est = estimate_shape(dist, {Direction::of(1, 1)}, 200, 40, 19);
  CHECK(est.analytic[0] == 2.0);
  CHECK(est.means[0] == doctest::Approx(2.0).epsilon(0.03));

  const auto est2 = estimate_shape(dist, {Direction::of(1, 1)}, 400, 40, 20);
  // same limit at n and 2n: agreement within joint uncertainty plus O(1/n) bias
  CHECK(std::abs(est.means[0] - est2.means[0]) <=
        4 * (est.stderrs[0] + est2.stderrs[0]) + 20.0 / 200.0);
  CHECK_THROWS_AS(
      (void)estimate_shape(dist, {Direction::of(1, 0)}, 100, 2, 1),
      std::domain_error);
}

TEST_CASE("thread count does not change shape estimates") {
  const auto dist = WeightDistribution::geometric(2.0);
  const std::vector<Direction> dirs{Direction::of(1, 1), Direction::of(3, 1)};
  const auto a = estimate_shape(dist, dirs, 64, 12, 5, 1);
  const auto b = estimate_shape(dist, dirs, 64, 12, 5, 4);
  CHECK(a.means == b.means);
}
