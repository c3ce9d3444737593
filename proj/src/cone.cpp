#include "lpp/cone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpp/passage.hpp"
#include "lpp/stats.hpp"
#include "lpp/weight_field.hpp"

namespace lpp {

PercolationRun right_edge(double p1, int64_t levels, uint64_t seed,
                          ConeStart start) {
  if (!(p1 > 0 && p1 < 1)) throw std::invalid_argument("need 0 < p1 < 1");
  if (levels < 4) throw std::invalid_argument("need at least 4 levels");

  PercolationRun run;
  run.p1 = p1;
  run.levels = levels;
  run.start = start;
  run.a_n.reserve(levels);

  // occupied[j + levels] marks position j on the current level
  const int64_t span = 2 * levels + 1;
  std::vector<char> cur(span, 0), next(span, 0);
  if (start == ConeStart::Origin) {
    cur[levels] = 1;
  } else {
    for (int64_t j = -levels; j <= 0; ++j) cur[j + levels] = 1;
  }
  const uint64_t stream = rng::derive_stream(seed, 0, kBulkTag);

  for (int64_t n = 1; n <= levels; ++n) {
    std::fill(next.begin(), next.end(), 0);
    int64_t right = INT64_MIN;
    // position j at level n is reachable from j-1 or j at level n-1
    for (int64_t j = -levels; j <= n; ++j) {
      const int64_t idx = j + levels;
      const bool feed = cur[idx] || (idx > 0 && cur[idx - 1]);
      if (!feed) continue;
      const bool open = rng::u01(rng::site_bits(stream, j, n)) < p1;
      if (open) {
        next[idx] = 1;
        right = std::max(right, j);
      }
    }
    std::swap(cur, next);
    run.a_n.push_back(right);
    if (right == INT64_MIN) {
      run.died = true;
      run.death_level = n;
      break;
    }
  }

  if (!run.died) {
    double sum = 0;
    int64_t cnt = 0;
    const int64_t from = levels - levels / 4 + 1;
    for (int64_t n = from; n <= levels; ++n) {
      sum += static_cast<double>(run.a_n[n - 1]) / static_cast<double>(n);
      ++cnt;
    }
    run.beta_hat = sum / static_cast<double>(cnt);
  }
  return run;
}

double survival_fraction(double p1, int64_t levels, int trials, uint64_t seed) {
  int alive = 0;
  for (int t = 0; t < trials; ++t) {
    const PercolationRun r = right_edge(
        p1, levels, rng::derive_stream(seed, static_cast<uint64_t>(t), 7),
        ConeStart::Origin);
    alive += !r.died;
  }
  return static_cast<double>(alive) / trials;
}

FlatEdgeReport flat_edge_check(double p1, SubLaw sub, Direction xi, int64_t n,
                               int replicas, uint64_t seed) {
  if (!xi.interior()) throw std::domain_error("direction must be interior");
  const WeightDistribution dist = WeightDistribution::bernoulli_max(p1, sub);

  FlatEdgeReport rep;
  rep.xi = xi;
  rep.n = n;
  rep.replicas = replicas;
  rep.survival_pilot = survival_fraction(p1, 500, 100, seed ^ 0x5177ULL);
  rep.supercritical = rep.survival_pilot >= 0.5;

  std::vector<double> vals(replicas);
  const Point target{static_cast<int64_t>(std::floor(n * xi.e1())),
                     static_cast<int64_t>(std::floor(n * xi.e2()))};
  // normalize by |target|_1 so the exact bound G <= |v|_1 maps onto [0, 1]
  const double scale = static_cast<double>(target.l1());
  for (int r = 0; r < replicas; ++r) {
    const FieldView view{dist, rng::derive_stream(seed, static_cast<uint64_t>(r), 0)};
    vals[r] = passage_value(view, {0, 0}, target) / scale;
  }
  rep.mean_normalized = stats::mean(vals);
  rep.stderr_normalized = replicas > 1 ? stats::stderr_of_mean(vals) : 0.0;
  return rep;
}

}  // namespace lpp
