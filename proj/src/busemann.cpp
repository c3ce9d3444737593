#include "lpp/busemann.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "lpp/duality.hpp"
#include "lpp/passage.hpp"
#include "lpp/weight_field.hpp"

namespace lpp {

double BusemannSample::mean_b1() const { return stats::mean(b1); }
double BusemannSample::mean_b2() const { return stats::mean(b2); }

BusemannSample estimate_busemann(const WeightDistribution& dist, uint64_t seed,
                                 Direction xi, int64_t n, int64_t win_w,
                                 int64_t win_h) {
  if (!xi.interior()) throw std::domain_error("direction must be interior");
  // aim the ray through the window center: the limit only constrains
  // v_n/|v_n| -> xi, and centering removes the O(window/n) direction skew
  // of the window-averaged gradients
  const Point target{
      static_cast<int64_t>(std::floor(n * xi.e1())) + win_w / 2,
      static_cast<int64_t>(std::floor(n * xi.e2())) + win_h / 2};
  if (win_w < 1 || win_h < 1) throw std::invalid_argument("window must be nonempty");
  if (win_w + win_h > n / 10)
    throw std::domain_error("window too close to the target (diameter > n/10)");
  if (win_w >= target.x || win_h >= target.y)
    throw std::domain_error("window too close to the target");

  BusemannSample out;
  out.xi = xi;
  out.n = n;
  out.target = target;
  out.win_w = win_w;
  out.win_h = win_h;

  // reversed DP from the target, one row of G at a time, field streamed
  const FieldView view{dist, seed};
  const int64_t w = target.x + 1;
  std::vector<double> g(static_cast<size_t>(w));   // current row y
  std::vector<double> up(static_cast<size_t>(w));  // row y+1
  std::vector<double> wt(static_cast<size_t>(w));
  out.g_window.assign(static_cast<size_t>((win_w + 1) * (win_h + 1)), 0.0);

  for (int64_t y = target.y; y >= 0; --y) {
    for (int64_t x = 0; x < w; ++x) wt[x] = view.at(x, y);
    for (int64_t x = target.x; x >= 0; --x) {
      if (y == target.y && x == target.x) {
        g[x] = 0.0;
        continue;
      }
      double best = kNegInf;
      if (x < target.x) best = std::max(best, g[x + 1]);
      if (y < target.y) best = std::max(best, up[x]);
      g[x] = wt[x] + best;
    }
    if (y <= win_h)
      for (int64_t x = 0; x <= win_w; ++x)
        out.g_window[y * (win_w + 1) + x] = g[x];
    std::swap(g, up);
  }

  out.b1.resize(static_cast<size_t>(win_w * (win_h + 1)));
  out.b2.resize(static_cast<size_t>((win_w + 1) * win_h));
  for (int64_t y = 0; y <= win_h; ++y)
    for (int64_t x = 0; x < win_w; ++x)
      out.b1[y * win_w + x] = out.g_at(x, y) - out.g_at(x + 1, y);
  for (int64_t y = 0; y < win_h; ++y)
    for (int64_t x = 0; x <= win_w; ++x)
      out.b2[y * (win_w + 1) + x] = out.g_at(x, y) - out.g_at(x, y + 1);
  return out;
}

WindowMeans busemann_window_means(const WeightDistribution& dist, Direction xi,
                                  int64_t n, int64_t win, int replicas,
                                  uint64_t seed, int threads) {
  std::vector<double> m1(replicas), m2(replicas);
  auto run = [&](int r) {
    const auto s = estimate_busemann(
        dist, rng::derive_stream(seed, static_cast<uint64_t>(r), 0), xi, n, win, win);
    m1[r] = s.mean_b1();
    m2[r] = s.mean_b2();
  };
  if (threads <= 1) {
    for (int r = 0; r < replicas; ++r) run(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < replicas; r = next.fetch_add(1)) run(r);
      });
    for (auto& t : pool) t.join();
  }
  WindowMeans out;
  out.replicas = replicas;
  out.mean_b1 = stats::mean(m1);
  out.mean_b2 = stats::mean(m2);
  out.se_b1 = replicas > 1 ? stats::stderr_of_mean(m1) : 0.0;
  out.se_b2 = replicas > 1 ? stats::stderr_of_mean(m2) : 0.0;
  return out;
}

StabilityReport busemann_stability(const WeightDistribution& dist, uint64_t seed,
                                   Direction xi, int64_t n, int64_t win) {
  const BusemannSample near = estimate_busemann(dist, seed, xi, n, win, win);
  const BusemannSample far = estimate_busemann(dist, seed, xi, 2 * n, win, win);

  StabilityReport rep;
  rep.n = n;
  rep.n2 = 2 * n;
  int64_t agree = 0, total = 0;
  for (int64_t y = 0; y < win; ++y)
    for (int64_t x = 0; x < win; ++x) {
      const double dn = near.b1_at(x, y) - near.b2_at(x, y);
      const double df = far.b1_at(x, y) - far.b2_at(x, y);
      agree += (dn < 0) == (df < 0);
      ++total;
    }
  rep.sign_agreement = static_cast<double>(agree) / static_cast<double>(total);

  double d1 = 0, d2 = 0;
  for (size_t i = 0; i < near.b1.size(); ++i) d1 += std::abs(near.b1[i] - far.b1[i]);
  for (size_t i = 0; i < near.b2.size(); ++i) d2 += std::abs(near.b2[i] - far.b2[i]);
  rep.mean_abs_delta_b1 = d1 / static_cast<double>(near.b1.size());
  rep.mean_abs_delta_b2 = d2 / static_cast<double>(near.b2.size());
  return rep;
}

ExactCompareReport busemann_vs_exact(const WeightDistribution& dist,
                                     uint64_t seed, Direction xi, int64_t n,
                                     int64_t win) {
  if (dist.kind != DistKind::Exponential && dist.kind != DistKind::Geometric)
    throw std::domain_error("exact cocycle laws exist only for solvable weights");
  const BusemannSample s = estimate_busemann(dist, seed, xi, n, win, win);

  ExactCompareReport rep;
  rep.mu1 = dist.mean + dist.sd() * std::sqrt(xi.e2() / xi.e1());
  rep.mu2 = dist.mean + dist.sd() * std::sqrt(xi.e1() / xi.e2());

  WeightDistribution law1 = dist, law2 = dist;
  law1.mean = rep.mu1;
  law2.mean = rep.mu2;
  stats::Law l1{[law1](double t) { return law1.cdf(t); },
                [law1](double t) { return law1.cdf_left(t); }};
  stats::Law l2{[law2](double t) { return law2.cdf(t); },
                [law2](double t) { return law2.cdf_left(t); }};

  std::vector<double> row;
  for (int64_t x = 0; x < s.win_w; ++x) row.push_back(s.b1_at(x, s.win_h / 2));
  std::vector<double> col;
  for (int64_t y = 0; y < s.win_h; ++y) col.push_back(s.b2_at(s.win_w / 2, y));
  std::sort(row.begin(), row.end());
  std::sort(col.begin(), col.end());
  rep.b1_row = stats::ks_test(row, l1);
  rep.b2_col = stats::ks_test(col, l2);

  rep.tilt_hat = Vec2{-s.mean_b1(), -s.mean_b2()};
  const GammaModel gm = GammaModel::solvable(dist.mean, dist.sd());
  const Vec2 grad = grad_gpp(gm, xi, Side::Plus);
  rep.tilt_exact = Vec2{-grad.x, -grad.y};
  return rep;
}

}  // namespace lpp
