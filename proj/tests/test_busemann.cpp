#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lpp/busemann.hpp"
#include "lpp/duality.hpp"
#include "lpp/passage.hpp"
#include "lpp/stationary.hpp"

using namespace lpp;

TEST_CASE("busemann window gradients: exact additivity and recovery") {
  const auto dist = WeightDistribution::exponential(1.0);
  const auto s = estimate_busemann(dist, 3, Direction::of(1, 1), 600, 20, 20);
  const FieldView view{dist, 3};
  for (int64_t y = 0; y < s.win_h; ++y)
    for (int64_t x = 0; x < s.win_w; ++x) {
      // gradients of a single function close exactly around unit squares
      CHECK(s.b1_at(x, y) + s.b2_at(x + 1, y) ==
            doctest::Approx(s.b2_at(x, y) + s.b1_at(x, y + 1)).epsilon(1e-9));
      // recovery w = min(B1, B2) is the DP recursion itself
      CHECK(std::min(s.b1_at(x, y), s.b2_at(x, y)) ==
            doctest::Approx(view.at(x, y)).epsilon(1e-12));
      // variational identity max_i (w - B_i) = 0
      CHECK(std::max(view.at(x, y) - s.b1_at(x, y), view.at(x, y) - s.b2_at(x, y)) ==
            doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("busemann gradients agree with the reversed table") {
  const auto dist = WeightDistribution::geometric(2.0);
  const auto s = estimate_busemann(dist, 5, Direction::of(1, 1), 200, 8, 8);
  const WeightField f = sample_field(dist, s.target.x + 1, s.target.y + 1, 5);
  const auto rt = compute_reversed_table(f, s.target);
  for (int64_t y = 0; y <= s.win_h; ++y)
    for (int64_t x = 0; x <= s.win_w; ++x)
      CHECK(s.g_at(x, y) == rt.at({x, y}));
}

TEST_CASE("proximity error when the window crowds the target") {
  const auto dist = WeightDistribution::exponential(1.0);
  CHECK_THROWS_AS((void)estimate_busemann(dist, 1, Direction::of(1, 1), 100, 40, 40),
                  std::domain_error);
}

TEST_CASE("window means approach the boundary-cocycle means (m=1, xi=(4/5,1/5))") {
  const auto dist = WeightDistribution::exponential(1.0);
  const auto wm = busemann_window_means(dist, Direction::of(0.8, 0.2), 4000, 100, 24, 7);
  CHECK(std::abs(wm.mean_b1 - 1.5) <= 0.1);
  CHECK(std::abs(wm.mean_b2 - 3.0) <= 0.1);
}

TEST_CASE("exact-law comparison: marginals and tilt (solvable cases)") {
  const auto dist = WeightDistribution::exponential(1.0);
  const auto rep = busemann_vs_exact(dist, 11,  Direction::of(1, 1), 2000, 50);
  CHECK(rep.mu1 == 2.0);
  CHECK(rep.b1_row.p_value > 0.01);
  CHECK(rep.b2_col.p_value > 0.01);
  CHECK(std::abs(rep.tilt_hat.x - (-2.0)) <= 0.1);
  CHECK(std::abs(rep.tilt_hat.y - (-2.0)) <= 0.1);
  CHECK(rep.tilt_exact.x == doctest::Approx(-2.0).epsilon(1e-12));

  const auto geo = WeightDistribution::geometric(2.0);
  // integer-valued gradients with replica-averaged mean 2 + sqrt(2)
  const auto wm = busemann_window_means(geo, Direction::of(1, 1), 2000, 50, 24, 13);
  CHECK(std::abs(wm.mean_b1 - (2.0 + std::sqrt(2.0))) <= 0.1);
  const auto s = estimate_busemann(geo, 13, Direction::of(1, 1), 2000, 50, 50);
  for (const double v : s.b1) CHECK(v == std::floor(v));

  CHECK_THROWS_AS(
      (void)busemann_vs_exact(WeightDistribution::bernoulli_max(0.9), 1,
                              Direction::of(1, 1), 500, 10),
      std::domain_error);
}

TEST_CASE("stability report: target at n vs 2n") {
  const auto dist = WeightDistribution::exponential(1.0);
  const auto rep = busemann_stability(dist, 17, Direction::of(1, 1), 4000, 50);
  CHECK(rep.sign_agreement >= 0.95);
  CHECK(rep.mean_abs_delta_b1 < 0.5);
}

TEST_CASE("constant weights: gradients identical for any diagonal target") {
  // degenerate laws are rejected by the sampler, so build the field by hand
  auto constant_field = [](int64_t n) {
    WeightField f;
    f.width = f.height = n + 1;
    f.dist = WeightDistribution::exponential(1.0);
    f.values.assign(static_cast<size_t>((n + 1) * (n + 1)), 2.0);
    return f;
  };
  const auto ta = compute_reversed_table(constant_field(40), {40, 40});
  const auto tb = compute_reversed_table(constant_field(80), {80, 80});
  for (int64_t y = 0; y < 10; ++y)
    for (int64_t x = 0; x < 10; ++x) {
      const double a1 = ta.at({x, y}) - ta.at({x + 1, y});
      const double b1 = tb.at({x, y}) - tb.at({x + 1, y});
      CHECK(a1 == 2.0);
      CHECK(b1 == 2.0);
    }
}

TEST_CASE("directional monotonicity of the window means") {
  // for xi.e1 < zeta.e1: mean B1(xi) >= mean B1(zeta), B2 reversed
  const auto dist = WeightDistribution::exponential(1.0);
  const auto left = estimate_busemann(dist, 19, Direction::of(0.3, 0.7), 3000, 60, 60);
  const auto right = estimate_busemann(dist, 19, Direction::of(0.7, 0.3), 3000, 60, 60);
  CHECK(left.mean_b1() >= right.mean_b1());
  CHECK(left.mean_b2() <= right.mean_b2());
}

TEST_CASE("flat-segment directions: gradient agreement reported, not asserted") {
  // inside the percolation cone of bernoulli-max weights the limits agree in
  // every cone direction; at finite n only the agreement fraction is reported
  const auto dist = WeightDistribution::bernoulli_max(0.95);
  const Direction dirs[] = {Direction::of(0.45, 0.55), Direction::of(0.5, 0.5),
                            Direction::of(0.55, 0.45)};
  const auto mid = estimate_busemann(dist, 31, dirs[1], 800, 20, 20);
  double agree_lo = 0, agree_hi = 0;
  const auto lo = estimate_busemann(dist, 31, dirs[0], 800, 20, 20);
  const auto hi = estimate_busemann(dist, 31, dirs[2], 800, 20, 20);
  int64_t total = 0;
  for (int64_t y = 0; y < 20; ++y)
    for (int64_t x = 0; x < 20; ++x, ++total) {
      agree_lo += lo.b1_at(x, y) == mid.b1_at(x, y);
      agree_hi += hi.b1_at(x, y) == mid.b1_at(x, y);
    }
  agree_lo /= total;
  agree_hi /= total;
  MESSAGE("cone-direction agreement fractions: ", agree_lo, " / ", agree_hi);
  CHECK(agree_lo >= 0.0);
  CHECK(agree_lo <= 1.0);
  CHECK(agree_hi >= 0.0);
  CHECK(agree_hi <= 1.0);
}

TEST_CASE("centered cocycle is sublinear on exact stationary fields") {
  // F(0,x) = mu1 x1 + mu2 x2 - B(0,x); max_{|x|_1 <= N} |F| / N must shrink
  const auto dist = WeightDistribution::exponential(1.0);
  const Direction xi = Direction::of(1, 1);
  std::vector<int64_t> sizes{200, 400, 800, 1600};
  std::vector<double> ratios;
  for (const int64_t N : sizes) {
    double acc = 0;
    const int seeds = 3;
    for (int s = 0; s < seeds; ++s) {
      const uint64_t rs = rng::derive_stream(23, static_cast<uint64_t>(s),
                                             static_cast<uint64_t>(N));
      const WeightField f = sample_field(dist, N + 1, N + 1, rs);
      const auto bd = sample_boundary(dist, xi, 2 * N + 2, rs);
      const auto t = build_gne_table(f, bd);
      // B(0,x) = G^NE_{0,v} - G^NE_{x,v}
      double worst = 0;
      for (int64_t y = 0; y <= N; ++y)
        for (int64_t x = 0; x + y <= N; ++x) {
          const double b0x = t.at(0, 0) - t.at(x, y);
          const double fval = bd.mu1 * x + bd.mu2 * y - b0x;
          worst = std::max(worst, std::abs(fval));
        }
      acc += worst / static_cast<double>(N);
    }
    ratios.push_back(acc / seeds);
  }
  CHECK(ratios.back() <= 0.7 * ratios.front());  // >= 30% drop from 200 to 1600
}
