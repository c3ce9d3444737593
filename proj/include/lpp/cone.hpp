#pragma once

#include <cstdint>
#include <vector>

#include "lpp/distribution.hpp"
#include "lpp/lattice.hpp"

namespace lpp {

enum class ConeStart { Origin, HalfLine };

// Oriented site percolation front, swept level by level along antidiagonals.
// Positions are e1-coordinates; HalfLine starts from {... ,-1, 0} (truncated
// at -levels, which cannot influence the right edge within the run).
struct PercolationRun {
  double p1 = 0;
  int64_t levels = 0;
  ConeStart start = ConeStart::HalfLine;
  std::vector<int64_t> a_n;  // rightmost occupied position per level; INT64_MIN if dead
  double beta_hat = 0;       // mean a_n/n over the last quartile
  bool died = false;
  int64_t death_level = -1;
};

PercolationRun right_edge(double p1, int64_t levels, uint64_t seed, ConeStart start);

// Fraction of origin-start runs surviving to `levels`; the supercriticality
// pilot for the flat-edge check.
double survival_fraction(double p1, int64_t levels, int trials, uint64_t seed);

struct FlatEdgeReport {
  Direction xi;
  int64_t n = 0;
  int replicas = 0;
  double mean_normalized = 0;  // mean of G_{0,floor(n xi)} / n
  double stderr_normalized = 0;
  double survival_pilot = 0;   // origin-start survival fraction
  bool supercritical = true;
};

// Normalized passage times for BernoulliMax weights; inside the percolation
// cone the values sit at 1, outside they drop strictly below.
FlatEdgeReport flat_edge_check(double p1, SubLaw sub, Direction xi, int64_t n,
                               int replicas, uint64_t seed);

}  // namespace lpp
