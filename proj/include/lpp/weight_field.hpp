#pragma once

#include <cstdint>
#include <vector>

#include "lpp/distribution.hpp"
#include "lpp/lattice.hpp"

namespace lpp {

// RNG stream tags; bulk weights and boundary rows never share a stream.
inline constexpr uint64_t kBulkTag = 0;
inline constexpr uint64_t kBoundaryHorizTag = 1;
inline constexpr uint64_t kBoundaryVertTag = 2;
inline constexpr uint64_t kArrivalTag = 3;
inline constexpr uint64_t kServiceTag = 4;

// Memory guard for materialized fields (~2 GB of doubles).
inline constexpr int64_t kMaxFieldSites = int64_t{1} << 28;

// Lazy view of an i.i.d. field: weight at (x,y) is a pure function of
// (dist, seed, x, y), so rows can be streamed without materializing storage.
struct FieldView {
  WeightDistribution dist;
  uint64_t seed = 0;

  double at(int64_t x, int64_t y) const {
    return dist.sample_site(rng::derive_stream(seed, 0, kBulkTag), x, y);
  }
};

// Materialized i.i.d. field over [0,width) x [0,height). Immutable after
// creation; at(x,y) agrees bit-exactly with FieldView{dist,seed}.at(x,y).
struct WeightField {
  int64_t width = 0;
  int64_t height = 0;
  uint64_t seed = 0;
  WeightDistribution dist;
  std::vector<double> values;  // row-major, y * width + x

  double at(int64_t x, int64_t y) const { return values[y * width + x]; }
  double at(const Point& p) const { return at(p.x, p.y); }
  Rect rect() const { return Rect{0, 0, width, height}; }
  FieldView view() const { return FieldView{dist, seed}; }

  // Transposed copy (x and y swapped), for the symmetry checks.
  WeightField transposed() const;
};

WeightField sample_field(const WeightDistribution& dist, int64_t width,
                         int64_t height, uint64_t seed);

}  // namespace lpp
