#pragma once

#include <cstdint>
#include <vector>

#include "lpp/distribution.hpp"
#include "lpp/lattice.hpp"
#include "lpp/stats.hpp"
#include "lpp/weight_field.hpp"

namespace lpp {

// Sampled boundary cocycle increments along the NE rays of a corner v:
//   horiz[k] = B(v-(k+1)e1, v-k e1),  vert[k] = B(v-(k+1)e2, v-k e2).
// Exact product-form laws exist only for exponential/geometric weights.
struct BoundaryCocycle {
  WeightDistribution dist;
  Direction xi;
  uint64_t seed = 0;
  double mu1 = 0;  // E[horiz] = m + sd sqrt(xi2/xi1)
  double mu2 = 0;  // E[vert]  = m + sd sqrt(xi1/xi2)
  std::vector<double> horiz;
  std::vector<double> vert;
};

BoundaryCocycle sample_boundary(const WeightDistribution& dist, Direction xi,
                                int64_t length, uint64_t seed);

// Same-uniform coupling across directions: for xi.e1 < zeta.e1 the horizontal
// increments dominate pointwise and the vertical ones are dominated.
std::vector<BoundaryCocycle> sample_boundary_coupled(
    const WeightDistribution& dist, const std::vector<Direction>& xis,
    int64_t length, uint64_t seed);

// Increment field of the stationary model G^NE with corner v at the NE corner
// of the bulk rect [0,width) x [0,height):
//   b1(x) = G^NE_{x,v} - G^NE_{x+e1,v}   on [0,width-1) x [0,height)
//   b2(x) = G^NE_{x,v} - G^NE_{x+e2,v}   on [0,width)   x [0,height-1)
struct CocycleField {
  int64_t width = 0;
  int64_t height = 0;
  WeightDistribution dist;
  double mean_w = 0, mu1 = 0, mu2 = 0;
  std::vector<double> b1;
  std::vector<double> b2;

  double b1_at(int64_t x, int64_t y) const { return b1[y * (width - 1) + x]; }
  double b2_at(int64_t x, int64_t y) const { return b2[y * width + x]; }
  double b1_at(const Point& p) const { return b1_at(p.x, p.y); }
  double b2_at(const Point& p) const { return b2_at(p.x, p.y); }
  // empirical tilt h(B) = -(mean b1, mean b2)
  Vec2 tilt() const;
};

// Builds G^NE from the given boundary over the field's rect; the boundary
// must cover both rays (length >= width-1 and height-1).
CocycleField build_gne(const WeightField& field, const BoundaryCocycle& boundary);

// Same construction with explicit boundary arrays; used for consistency and
// queueing-equivalence checks.
CocycleField build_gne_raw(const WeightField& field,
                           const std::vector<double>& horiz,
                           const std::vector<double>& vert,
                           const WeightDistribution& dist, double mu1, double mu2);

// Full G^NE table (corner at (width-1, height-1)); g(x,y) = G^NE_{(x,y),v}.
struct GneTable {
  int64_t width = 0, height = 0;
  std::vector<double> g;
  double at(int64_t x, int64_t y) const { return g[y * width + x]; }
};
GneTable build_gne_table(const WeightField& field, const BoundaryCocycle& boundary);

struct BurkeReport {
  stats::KsResult y_marginal;   // min(B1(x-e1), B2(x-e2)) vs the weight law
  stats::KsResult b1_marginal;  // one row of b1 vs Exponential(mu1)
  stats::KsResult b2_marginal;  // one column of b2 vs Exponential(mu2)
  double mean_b1 = 0, mean_b2 = 0, mean_y = 0;
};

// Distributional stationarity checks; exact law known for exponential weights.
BurkeReport burke_check(const CocycleField& cf);

struct ExitPointReport {
  int replicas = 0;
  double north_fraction = 0;   // maximizer entered via the north boundary
  double mean_tau_hat = 0;     // entry offset / m_n, averaged over replicas
  double tau_star = 0;         // argmax of alpha tau + gamma(s - tau)
  double alpha = 0, r = 0, s = 0;
};

// Exit statistics of the maximizing path of G^NE_{0,v_n} for targets in
// direction (s,1)/(1+s) below the alpha-characteristic (s > r required when
// asserting north exits).
ExitPointReport exit_point(const WeightDistribution& dist, double alpha,
                           double s, int64_t n, int replicas, uint64_t seed);

}  // namespace lpp
