#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lpp/geodesics.hpp"
#include "oracles.hpp"

using namespace lpp;

TEST_CASE("first step follows the smaller gradient; ties follow the rule") {
  // hand-built 3x3 cocycle field
  CocycleField cf;
  cf.width = 3;
  cf.height = 3;
  cf.b1 = {1, 5, 2, 5, 4, 4};  // (w-1) x h = 2 x 3
  cf.b2 = {4, 9, 9, 2, 9, 9};  // w x (h-1) = 3 x 2
  const auto p = cocycle_geodesic(cf, {0, 0}, TieRule::rightmost(), 1);
  CHECK(p.steps_taken[0] == kE1);  // b1(0,0)=1 < b2(0,0)=4

  CocycleField tie = cf;
  tie.b1[0] = 4;  // tie at the start
  CHECK(cocycle_geodesic(tie, {0, 0}, TieRule::leftmost(), 1).steps_taken[0] == kE2);
  CHECK(cocycle_geodesic(tie, {0, 0}, TieRule::rightmost(), 1).steps_taken[0] == kE1);
}

TEST_CASE("constant-tie field with rule e2 walks straight up") {
  CocycleField cf;
  cf.width = 4;
  cf.height = 4;
  cf.b1.assign(12, 3.0);
  cf.b2.assign(12, 3.0);
  const auto p = cocycle_geodesic(cf, {0, 0}, TieRule::leftmost(), 3);
  for (const auto& s : p.steps_taken) CHECK(s == kE2);
}

TEST_CASE("cocycle geodesic is a geodesic of the underlying weights") {
  const auto dist = WeightDistribution::exponential(1.0);
  const WeightField f = sample_field(dist, 64, 64, 3);
  const auto bd = sample_boundary(dist, Direction::of(1, 1), 64, 3);
  const auto cf = build_gne(f, bd);
  const auto path = cocycle_geodesic(cf, {0, 0}, TieRule::leftmost(), 1000);
  REQUIRE(path.truncated);  // exits the bulk before 1000 steps
  const Point end = path.end();
  const auto table = compute_passage_table(f, {0, 0}, f.rect());
  CHECK(path_weight(f, path) == doctest::Approx(table.at(end)).epsilon(1e-9));
}

TEST_CASE("ordering of cocycle geodesics under coupled boundaries") {
  const auto dist = WeightDistribution::exponential(1.0);
  const WeightField f = sample_field(dist, 128, 128, 9);
  const auto boundaries = sample_boundary_coupled(
      dist, {Direction::of(0.3, 0.7), Direction::of(0.7, 0.3)}, 128, 9);
  // xi left of zeta: horizontal increments dominate, vertical are dominated
  for (size_t i = 0; i < boundaries[0].horiz.size(); ++i) {
    CHECK(boundaries[0].horiz[i] >= boundaries[1].horiz[i]);
    CHECK(boundaries[0].vert[i] <= boundaries[1].vert[i]);
  }
  const auto cf_xi = build_gne(f, boundaries[0]);
  const auto cf_zeta = build_gne(f, boundaries[1]);
  const auto pl = cocycle_geodesic(cf_xi, {0, 0}, TieRule::leftmost(), 1000);
  const auto pr = cocycle_geodesic(cf_zeta, {0, 0}, TieRule::leftmost(), 1000);
  Point a{0, 0}, b{0, 0};
  const size_t common = std::min(pl.steps_taken.size(), pr.steps_taken.size());
  for (size_t k = 0; k < common; ++k) {
    a = a + pl.steps_taken[k];
    b = b + pr.steps_taken[k];
    CHECK(a.x <= b.x);
  }
}

TEST_CASE("coalescence: same start coalesces at step 0, fractions climb with L") {
  const auto dist = WeightDistribution::exponential(1.0);
  const auto zero = coalescence_experiment(dist, Direction::of(1, 1), {64}, 0, 10, 5);
  CHECK(zero.fractions[0] == 1.0);

  const auto rep =
      coalescence_experiment(dist, Direction::of(1, 1), {32, 64, 128}, 8, 60, 11);
  CHECK(rep.fractions[0] <= rep.fractions[1] + 0.15);
  CHECK(rep.fractions[1] <= rep.fractions[2] + 0.15);
  CHECK(rep.fractions[2] >= 0.6);
}

TEST_CASE("directedness of stationary cocycle geodesics") {
  const auto dist = WeightDistribution::exponential(1.0);
  SUBCASE("diagonal, replica-averaged at L=1024") {
    const auto est = direction_over_replicas(dist, Direction::of(1, 1), 1024, 32, 13);
    CHECK(std::abs(est.mean.x - 0.5) <= 0.05);
  }
  SUBCASE("xi = (3/4, 1/4)") {
    const auto est =
        direction_over_replicas(dist, Direction::of(0.75, 0.25), 512, 32, 17);
    CHECK(std::abs(est.mean.x - 0.75) <= 0.05);
  }
  SUBCASE("short path rejected") {
    GeodesicPath p;
    p.steps_taken.assign(50, kE1);
    CHECK_THROWS_AS((void)directedness(p), std::domain_error);
  }
  SUBCASE("all-e1 path points at e1") {
    GeodesicPath p;
    p.steps_taken.assign(200, kE1);
    const auto est = directedness(p);
    CHECK(est.terminal.x == 1.0);
    CHECK(est.terminal.y == 0.0);
  }
}

TEST_CASE("forced first split: a huge e2-side weight pins the interface to the e1 axis") {
  WeightField f;
  f.width = f.height = 4;
  f.dist = WeightDistribution::exponential(1.0);
  f.values = {0.3, 0.2,  0.25, 0.1, 100.0, 0.6, 0.5, 0.9,
              0.8, 0.7,  0.2,  0.3, 0.1,   0.5, 0.4, 0.6};
  // w(0,1) = 100 makes every interior site prefer the e2 subtree, so D > 0
  // until the -inf axis value and phi_1 = (3/2, 1/2)
  const auto tr = competition_interface(f, 3);
  CHECK(tr.k_right[1] == 1);
  CHECK(tr.phi_right(1).x == 1.5);
  CHECK(tr.phi_right(1).y == 0.5);
  CHECK_THROWS_AS((void)competition_interface(f, 1), std::domain_error);

  // mirrored: a huge e1-side weight pushes the interface up the e2 axis
  WeightField g = f;
  g.values[4] = 0.4;
  g.values[1] = 100.0;
  const auto trg = competition_interface(g, 3);
  CHECK(trg.k_right[1] == 0);
  CHECK(trg.phi_right(1).x == 0.5);
  CHECK(trg.phi_right(1).y == 1.5);
}

TEST_CASE("interface trace is an up-right dual path; D nonincreasing; lean = table") {
  const auto dist = WeightDistribution::exponential(1.0);
  const WeightField f = sample_field(dist, 41, 41, 19);
  const auto tr = competition_interface(f, 40);
  const auto lean = competition_interface(f.view(), 40);
  CHECK(tr.k_right == lean.k_right);
  CHECK(tr.k_left == lean.k_left);
  for (int64_t i = 0; i + 1 < tr.n; ++i) {
    const int64_t d = tr.k_right[i + 1] - tr.k_right[i];
    CHECK(d >= 0);
    CHECK(d <= 1);
  }
  // continuous law: both variants coincide
  CHECK(tr.k_right == tr.k_left);

  // D is nonincreasing along every antidiagonal; coalesced geodesics create
  // exact plateaus, so continuous weights get a rounding allowance and the
  // integer-field version below is checked exactly
  const auto tabs = cif_tables(f, 40);
  for (int64_t lvl = 1; lvl <= 40; ++lvl) {
    double prev = std::numeric_limits<double>::infinity();
    for (int64_t k = 0; k <= lvl; ++k) {
      const double d = tabs.d({k, lvl - k});
      CHECK(d <= prev + 1e-9 * std::max(1.0, std::abs(prev)));
      prev = std::min(prev, d);
    }
  }

  const WeightField fi = oracle::pinned_integer_field(41, 41, 3);
  const auto tabs_int = cif_tables(fi, 40);
  for (int64_t lvl = 1; lvl <= 40; ++lvl) {
    double prev = std::numeric_limits<double>::infinity();
    for (int64_t k = 0; k <= lvl; ++k) {
      const double d = tabs_int.d({k, lvl - k});
      CHECK(d <= prev);
      prev = d;
    }
  }
}

TEST_CASE("interface matches the exhaustive geodesic-tree oracle (pinned, discrete)") {
  for (uint64_t seed : {2ULL, 7ULL, 12ULL}) {
    const WeightField f = oracle::pinned_integer_field(7, 7, seed, 1, 3);
    const int64_t n = 6;
    const auto tr = competition_interface(f, n);
    for (int64_t lvl = 2; lvl <= n; ++lvl) {
      // first step of the leftmost/rightmost geodesic 0 -> v by enumeration
      int64_t kr_oracle = 0, kl_oracle = 0;
      for (int64_t k = 0; k <= lvl; ++k) {
        const Point v{k, lvl - k};
        const auto optima = oracle::optimal_paths(f, {0, 0}, v);
        // rightmost = max x-profile, leftmost = min x-profile
        std::vector<int64_t> best_r, best_l;
        for (const auto& path : optima) {
          const auto xs = oracle::x_profile({0, 0}, path);
          if (best_r.empty() || xs > best_r) best_r = xs;
          if (best_l.empty() || xs < best_l) best_l = xs;
        }
        const bool rightmost_starts_e2 = best_r[1] == 0;
        const bool leftmost_starts_e2 = best_l[1] == 0;
        if (rightmost_starts_e2 && k > kr_oracle) kr_oracle = k;
        if (leftmost_starts_e2 && k > kl_oracle) kl_oracle = k;
      }
      CHECK(tr.k_right[lvl - 1] == kr_oracle);
      CHECK(tr.k_left[lvl - 1] == kl_oracle);
      // discrete weights: right interface weakly left of the left one
      CHECK(tr.k_right[lvl - 1] <= tr.k_left[lvl - 1]);
    }
  }
}

TEST_CASE("geodesic-tree consistency: sign of D decides the side of phi") {
  const auto dist = WeightDistribution::exponential(1.0);
  const WeightField f = sample_field(dist, 33, 33, 23);
  const auto tabs = cif_tables(f, 32);
  const auto table = compute_passage_table(f, {0, 0}, f.rect());
  rng::Xoshiro256 gen(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int64_t x = 1 + static_cast<int64_t>(gen.uniform01() * 30);
    const int64_t y = 1 + static_cast<int64_t>(gen.uniform01() * 30);
    const Point v{x, y};
    const auto geo = backtrack_geodesic(table, v, TieBreak::Leftmost);
    const bool starts_e1 = geo.steps_taken[0] == kE1;
    CHECK(starts_e1 == (tabs.d(v) < 0));
  }
}

TEST_CASE("two geodesics split by the interface never meet again") {
  const auto dist = WeightDistribution::exponential(1.0);
  const WeightField f = sample_field(dist, 33, 33, 29);
  const int64_t n = 32;
  const auto tr = competition_interface(f, n);
  const auto table = compute_passage_table(f, {0, 0}, f.rect());
  const int64_t k = tr.k_right[n - 1];
  const Point right_of_phi{k + 1, n - k - 1};
  const Point left_of_phi{k, n - k};
  const auto g1 = backtrack_geodesic(table, right_of_phi, TieBreak::Leftmost);
  const auto g2 = backtrack_geodesic(table, left_of_phi, TieBreak::Leftmost);
  const auto s1 = g1.sites();
  const auto s2 = g2.sites();
  CHECK(s1[1] == Point{1, 0});
  CHECK(s2[1] == Point{0, 1});
  for (size_t i = 1; i < std::min(s1.size(), s2.size()); ++i)
    CHECK(!(s1[i] == s2[i]));
}

TEST_CASE("angle law closed forms at pi/4") {
  CHECK(cif_angle_cdf_exponential(M_PI / 4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cif_angle_cdf_geometric_right(M_PI / 4, 0.5) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  CHECK(cif_angle_cdf_geometric_left(M_PI / 4, 0.5) ==
        doctest::Approx(1.0 / (1.0 + std::sqrt(0.5))).epsilon(1e-12));
}

TEST_CASE("interface angle law: moderate-size empirical check") {
  const auto dist = WeightDistribution::exponential(1.0);
  const auto rep = cif_direction_law(dist, 400, 400, 37);
  CHECK(rep.ks_right <= 0.1);

  const auto geo = WeightDistribution::geometric(2.0);
  const auto repg = cif_direction_law(geo, 400, 400, 41);
  CHECK(repg.ks_right <= 0.1);
  CHECK(repg.ks_left <= 0.1);
  // the right interface sits weakly left of the left one
  for (int r = 0; r < repg.replicas; ++r)
    CHECK(repg.thetas_right[r] >= repg.thetas_left[r] - 1e-12);
  (void)0;
}
