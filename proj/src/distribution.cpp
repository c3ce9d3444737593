#include "lpp/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lpp {

WeightDistribution WeightDistribution::exponential(double mean) {
  WeightDistribution d;
  d.kind = DistKind::Exponential;
  d.mean = mean;
  d.validate();
  return d;
}

WeightDistribution WeightDistribution::geometric(double mean) {
  WeightDistribution d;
  d.kind = DistKind::Geometric;
  d.mean = mean;
  d.validate();
  return d;
}

WeightDistribution WeightDistribution::bernoulli_max(double p1, SubLaw sub) {
  WeightDistribution d;
  d.kind = DistKind::BernoulliMax;
  d.p1 = p1;
  d.sub_law = sub;
  d.mean = p1 * 1.0 + (1.0 - p1) * 0.5 * (sub.lo + sub.hi);
  d.validate();
  return d;
}

WeightDistribution WeightDistribution::custom(std::vector<double> atoms,
                                              std::vector<double> probs) {
  WeightDistribution d;
  d.kind = DistKind::CustomEmpirical;
  d.atoms = std::move(atoms);
  d.probs = std::move(probs);
  if (!d.atoms.empty()) {
    d.mean = 0;
    for (size_t i = 0; i < d.atoms.size(); ++i) d.mean += d.atoms[i] * d.probs[i];
  }
  d.validate();
  return d;
}

void WeightDistribution::validate() const {
  switch (kind) {
    case DistKind::Exponential:
      if (!(mean > 0)) throw std::invalid_argument("exponential weights need mean > 0");
      break;
    case DistKind::Geometric:
      if (!(mean > 1)) throw std::invalid_argument("geometric weights need mean > 1");
      break;
    case DistKind::BernoulliMax:
      if (!(p1 > 0 && p1 < 1))
        throw std::invalid_argument("bernoulli-max weights need 0 < p1 < 1");
      if (!(sub_law.lo >= 0 && sub_law.lo < sub_law.hi && sub_law.hi < 1))
        throw std::invalid_argument("bernoulli-max sub-law must sit inside [0,1)");
      break;
    case DistKind::CustomEmpirical: {
      if (atoms.empty())
        throw std::invalid_argument("custom weights need atoms (moments missing)");
      if (atoms.size() != probs.size())
        throw std::invalid_argument("custom weights: atoms/probs size mismatch");
      double total = std::accumulate(probs.begin(), probs.end(), 0.0);
      if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("custom weights: probabilities must sum to 1");
      for (double p : probs)
        if (!(p >= 0)) throw std::invalid_argument("custom weights: negative probability");
      if (variance() <= 0)
        throw std::invalid_argument("custom weights: degenerate law (zero variance)");
      break;
    }
  }
  if (variance() <= 0) throw std::invalid_argument("weight law must be nondegenerate");
}

double WeightDistribution::variance() const {
  switch (kind) {
    case DistKind::Exponential:
      return mean * mean;
    case DistKind::Geometric:
      return mean * (mean - 1.0);
    case DistKind::BernoulliMax: {
      const double a = sub_law.lo, b = sub_law.hi;
      const double m2 = p1 + (1.0 - p1) * (a * a + a * b + b * b) / 3.0;
      return m2 - mean * mean;
    }
    case DistKind::CustomEmpirical: {
      double m2 = 0;
      for (size_t i = 0; i < atoms.size(); ++i) m2 += atoms[i] * atoms[i] * probs[i];
      return m2 - mean * mean;
    }
  }
  return 0;
}

double WeightDistribution::sd() const { return std::sqrt(variance()); }

double WeightDistribution::min_support() const {
  switch (kind) {
    case DistKind::Exponential:
      return 0.0;
    case DistKind::Geometric:
      return 1.0;
    case DistKind::BernoulliMax:
      return sub_law.lo;
    case DistKind::CustomEmpirical:
      return *std::min_element(atoms.begin(), atoms.end());
  }
  return 0.0;
}

double exponential_icdf(double mean, double u) { return -mean * std::log1p(-u); }

double geometric_icdf(double mean, double u) {
  // success prob p = 1/mean on support {1,2,...}
  const double k = std::ceil(std::log1p(-u) / std::log1p(-1.0 / mean));
  return k < 1.0 ? 1.0 : k;
}

namespace {

double sample_from_u(const WeightDistribution& d, double u, double u2) {
  switch (d.kind) {
    case DistKind::Exponential:
      return exponential_icdf(d.mean, u);
    case DistKind::Geometric:
      return geometric_icdf(d.mean, u);
    case DistKind::BernoulliMax:
      // u decides the atom so the value is nondecreasing in p1 under a
      // shared-uniform coupling.
      if (u > 1.0 - d.p1) return 1.0;
      return d.sub_law.lo + (d.sub_law.hi - d.sub_law.lo) * u2;
    case DistKind::CustomEmpirical: {
      double acc = 0;
      for (size_t i = 0; i < d.atoms.size(); ++i) {
        acc += d.probs[i];
        if (u <= acc) return d.atoms[i];
      }
      return d.atoms.back();
    }
  }
  return 0;
}

}  // namespace

double WeightDistribution::sample_site(uint64_t stream, int64_t x, int64_t y) const {
  const uint64_t bits = rng::site_bits(stream, x, y);
  const double u2 =
      kind == DistKind::BernoulliMax
          ? rng::u01(rng::site_bits(stream ^ 0x632be59bd9b4e019ULL, x, y))
          : 0.0;
  return sample_from_u(*this, rng::u01(bits), u2);
}

double WeightDistribution::sample(rng::Xoshiro256& gen) const {
  const double u = gen.uniform01();
  const double u2 = (kind == DistKind::BernoulliMax) ? gen.uniform01() : 0.0;
  return sample_from_u(*this, u, u2);
}

double WeightDistribution::cdf(double t) const {
  switch (kind) {
    case DistKind::Exponential:
      return t <= 0 ? 0.0 : 1.0 - std::exp(-t / mean);
    case DistKind::Geometric: {
      if (t < 1) return 0.0;
      const double k = std::floor(t);
      return 1.0 - std::pow(1.0 - 1.0 / mean, k);
    }
    case DistKind::BernoulliMax: {
      if (t < sub_law.lo) return 0.0;
      if (t >= 1.0) return 1.0;
      const double in_sub =
          std::clamp((t - sub_law.lo) / (sub_law.hi - sub_law.lo), 0.0, 1.0);
      return (1.0 - p1) * in_sub;
    }
    case DistKind::CustomEmpirical: {
      double acc = 0;
      for (size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i] <= t) acc += probs[i];
      return acc;
    }
  }
  return 0;
}

double WeightDistribution::cdf_left(double t) const {
  switch (kind) {
    case DistKind::Geometric: {
      if (t <= 1) return 0.0;
      const double k = std::ceil(t) - 1.0;
      return 1.0 - std::pow(1.0 - 1.0 / mean, k);
    }
    case DistKind::BernoulliMax:
      if (t >= 1.0) return 1.0 - p1;
      return cdf(t);
    case DistKind::CustomEmpirical: {
      double acc = 0;
      for (size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i] < t) acc += probs[i];
      return acc;
    }
    default:
      return cdf(t);
  }
}

MeanSd distribution_constants(const WeightDistribution& dist) {
  dist.validate();
  return MeanSd{dist.mean, dist.sd()};
}

WeightDistribution shift_custom(const WeightDistribution& dist, double delta) {
  if (dist.kind != DistKind::CustomEmpirical)
    throw std::invalid_argument("constant shifts are supported for atom laws only");
  std::vector<double> atoms = dist.atoms;
  for (double& a : atoms) a += delta;
  return WeightDistribution::custom(std::move(atoms), dist.probs);
}

}  // namespace lpp
