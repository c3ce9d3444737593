#pragma once

#include <cstdint>
#include <vector>

#include "lpp/passage.hpp"
#include "lpp/stationary.hpp"

namespace lpp {

// Tie rule for cocycle geodesics: the step taken when B1(x) = B2(x).
// Leftmost rule is e2-on-ties, rightmost is e1-on-ties; a per-site table
// covers the general case.
struct TieRule {
  Point fixed = kE2;
  const std::vector<Point>* table = nullptr;  // optional, indexed y*width+x
  int64_t width = 0;

  static TieRule leftmost() { return TieRule{kE2, nullptr, 0}; }
  static TieRule rightmost() { return TieRule{kE1, nullptr, 0}; }
  Point at(const Point& p) const {
    return table ? (*table)[p.y * width + p.x] : fixed;
  }
};

// Follows minimal gradients of the cocycle from `start` until the walk leaves
// the bulk or reaches max_len; leaving early sets the truncation flag.
GeodesicPath cocycle_geodesic(const CocycleField& cf, Point start, TieRule rule,
                              int64_t max_len);

struct CoalescenceReport {
  std::vector<int64_t> box_sizes;
  std::vector<double> fractions;  // coalesced before exiting the box
  int replicas = 0;
};

// Cocycle geodesics from 0 and offset*e2 on a shared stationary field; counts
// how often they meet inside an L x L box, over a ladder of L values.
CoalescenceReport coalescence_experiment(const WeightDistribution& dist,
                                         Direction xi,
                                         const std::vector<int64_t>& box_sizes,
                                         int64_t offset, int replicas,
                                         uint64_t seed);

struct DirectionEstimate {
  Vec2 terminal;        // displacement / path length
  Vec2 tail;            // direction over the last half of the path
  double ci_halfwidth;  // 95% band for the tail e1-frequency
};

DirectionEstimate directedness(const GeodesicPath& path);

struct ReplicaDirection {
  Vec2 mean;   // average terminal direction over replicas
  double se;   // standard error of the e1 component
  int replicas = 0;
};

// A single path's direction fluctuates on the n^{2/3}/n transversal scale
// (about 0.1 at L ~ 1000), so directional assertions average over replicas.
ReplicaDirection direction_over_replicas(const WeightDistribution& dist,
                                         Direction xi, int64_t L, int replicas,
                                         uint64_t seed);

// Competition interface trace. Level index i = 0..n-1 holds the interface
// point phi_i = (k+1/2, (i+1)-k-1/2) with k = k_right[i] (rightmost-tree
// interface) or k_left[i]; the variants coincide for continuous weights.
struct InterfaceTrace {
  int64_t n = 0;
  bool discrete = false;
  std::vector<int64_t> k_right;  // last k on level i+1 with D > 0
  std::vector<int64_t> k_left;   // last k on level i+1 with D >= 0

  Vec2 phi_right(int64_t i) const {
    return Vec2{k_right[i] + 0.5, static_cast<double>(i + 1) - k_right[i] - 0.5};
  }
  Vec2 phi_left(int64_t i) const {
    return Vec2{k_left[i] + 0.5, static_cast<double>(i + 1) - k_left[i] - 0.5};
  }
  double theta_right() const;
  double theta_left() const;
};

// Traces the interface(s) between the e1- and e2-rooted geodesic subtrees via
// the sign change of D(v) = G_{e2,v} - G_{e1,v} along antidiagonals.
InterfaceTrace competition_interface(const WeightField& field, int64_t n);
InterfaceTrace competition_interface(const FieldView& field, int64_t n);

// Signed comparison field D(v) over a table pair, for tree-consistency tests.
struct CifTables {
  PassageTable from_e1;
  PassageTable from_e2;
  double d(const Point& v) const;  // G_{e2,v} - G_{e1,v}, +-inf on the axes
};
CifTables cif_tables(const WeightField& field, int64_t n);

struct CifLawReport {
  std::vector<double> thetas_right;  // sorted; equals thetas for continuous laws
  std::vector<double> thetas_left;
  double ks_right = 0;
  double ks_left = 0;
  int64_t n = 0;
  int replicas = 0;
};

// Empirical terminal-angle law of the interface against the closed forms of
// the solvable cases.
CifLawReport cif_direction_law(const WeightDistribution& dist, int64_t n,
                               int replicas, uint64_t seed, int threads = 1);

// Closed-form angle cdfs.
double cif_angle_cdf_exponential(double t);
double cif_angle_cdf_geometric_right(double t, double p0);
double cif_angle_cdf_geometric_left(double t, double p0);

}  // namespace lpp
