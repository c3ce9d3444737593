#pragma once

#include <cstdint>
#include <vector>

#include "lpp/rng.hpp"

namespace lpp {

enum class DistKind { Exponential, Geometric, BernoulliMax, CustomEmpirical };

// Sub-law of the non-maximal part of a BernoulliMax weight: Uniform(lo, hi).
struct SubLaw {
  double lo = 0.0;
  double hi = 0.5;
};

// Weight distribution of a single site, with analytic moments.
//   Exponential(mean m):        sigma^2 = m^2
//   Geometric on {1,2,...}:     success prob 1/m, sigma^2 = m(m-1)
//   BernoulliMax:               mass p1 at 1, else sub_law; all samples <= 1
//   CustomEmpirical:            finite atom law (atoms[i] with prob weights[i])
struct WeightDistribution {
  DistKind kind = DistKind::Exponential;
  double mean = 1.0;
  double p1 = 0.0;
  SubLaw sub_law;
  std::vector<double> atoms;
  std::vector<double> probs;

  static WeightDistribution exponential(double mean);
  static WeightDistribution geometric(double mean);
  static WeightDistribution bernoulli_max(double p1, SubLaw sub = SubLaw{});
  static WeightDistribution custom(std::vector<double> atoms, std::vector<double> probs);

  // Throws std::invalid_argument on bad parameters.
  void validate() const;

  double variance() const;
  double sd() const;
  double min_support() const;
  bool integer_valued() const { return kind == DistKind::Geometric; }

  // One draw from the per-site counter stream (pure in (stream, x, y)).
  double sample_site(uint64_t stream, int64_t x, int64_t y) const;
  // One draw from a sequential stream.
  double sample(rng::Xoshiro256& gen) const;

  // cdf / left limit of the cdf, used by goodness-of-fit checks.
  double cdf(double t) const;
  double cdf_left(double t) const;
};

// (m, sigma) of a valid distribution; the op form of the analytic moments.
struct MeanSd {
  double mean;
  double sd;
};
MeanSd distribution_constants(const WeightDistribution& dist);

// Inverse-cdf samplers on a shared uniform, monotone in the mean. Used for
// coupled boundary sampling and the percolation-cone couplings.
double exponential_icdf(double mean, double u);
double geometric_icdf(double mean, double u);

// Shift-by-constant preprocessing for finite atom laws, e.g. to lift a
// negative-support law into the queueing module's w >= 0 domain.
WeightDistribution shift_custom(const WeightDistribution& dist, double delta);

}  // namespace lpp
