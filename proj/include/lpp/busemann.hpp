#pragma once

#include <cstdint>
#include <vector>

#include "lpp/distribution.hpp"
#include "lpp/lattice.hpp"
#include "lpp/stats.hpp"

namespace lpp {

// Finite-n Busemann estimate: passage-time gradients toward a distant target
// v_n = floor(n xi), restricted to a window at the origin.
//   b1(x) = G_{x,v_n} - G_{x+e1,v_n}   on [0,win_w) x [0,win_h]
//   b2(x) = G_{x,v_n} - G_{x+e2,v_n}   on [0,win_w] x [0,win_h)
struct BusemannSample {
  Direction xi;
  int64_t n = 0;
  Point target;
  int64_t win_w = 0, win_h = 0;
  std::vector<double> b1;
  std::vector<double> b2;
  std::vector<double> g_window;  // G_{x,v_n} on [0,win_w] x [0,win_h]

  double b1_at(int64_t x, int64_t y) const { return b1[y * win_w + x]; }
  double b2_at(int64_t x, int64_t y) const { return b2[y * (win_w + 1) + x]; }
  double g_at(int64_t x, int64_t y) const { return g_window[y * (win_w + 1) + x]; }
  double mean_b1() const;
  double mean_b2() const;
};

// One reversed DP sweep from the target, streamed row by row; the window must
// stay far from the target (diameter <= n/10).
BusemannSample estimate_busemann(const WeightDistribution& dist, uint64_t seed,
                                 Direction xi, int64_t n, int64_t win_w,
                                 int64_t win_h);

struct StabilityReport {
  int64_t n = 0, n2 = 0;
  double sign_agreement = 0;    // fraction of window sites with matching
                                // sign(b1 - b2) between the two targets
  double mean_abs_delta_b1 = 0;
  double mean_abs_delta_b2 = 0;
};

// Convergence diagnostic: same window, targets at n and 2n.
StabilityReport busemann_stability(const WeightDistribution& dist, uint64_t seed,
                                   Direction xi, int64_t n, int64_t win);

struct WindowMeans {
  double mean_b1 = 0, mean_b2 = 0;
  double se_b1 = 0, se_b2 = 0;
  int replicas = 0;
};

// Replica-averaged window means; a single window's mean fluctuates on the
// 0.1-0.3 scale at desk sizes, so the estimator averages independent fields.
WindowMeans busemann_window_means(const WeightDistribution& dist, Direction xi,
                                  int64_t n, int64_t win, int replicas,
                                  uint64_t seed, int threads = 1);

struct ExactCompareReport {
  stats::KsResult b1_row;  // window row of b1 vs the exact solvable law
  stats::KsResult b2_col;
  Vec2 tilt_hat;           // -(mean b1, mean b2)
  Vec2 tilt_exact;         // -grad g_pp(xi)
  double mu1 = 0, mu2 = 0;
};

// Solvable-case comparison of the estimated gradients with the exact cocycle
// laws (exponential or geometric of means mu1, mu2).
ExactCompareReport busemann_vs_exact(const WeightDistribution& dist,
                                     uint64_t seed, Direction xi, int64_t n,
                                     int64_t win);

}  // namespace lpp
