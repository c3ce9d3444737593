#include "lpp/passage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lpp/stats.hpp"

namespace lpp {

PassageTable compute_passage_table(const WeightField& field, Point source,
                                   Rect rect, Convention conv) {
  if (!rect.contains(source)) throw std::domain_error("source outside rect");
  if (rect.x0 < 0 || rect.y0 < 0 || rect.x0 + rect.width > field.width ||
      rect.y0 + rect.height > field.height)
    throw std::domain_error("rect not covered by field");

  PassageTable t;
  t.source = source;
  t.rect = rect;
  t.convention = conv;
  t.g.assign(static_cast<size_t>(rect.sites()), kNegInf);
  t.step.assign(static_cast<size_t>(rect.sites()), Step::None);

  auto idx = [&](int64_t x, int64_t y) {
    return (y - rect.y0) * rect.width + (x - rect.x0);
  };

  for (int64_t y = source.y; y < rect.y0 + rect.height; ++y) {
    for (int64_t x = source.x; x < rect.x0 + rect.width; ++x) {
      if (x == source.x && y == source.y) {
        t.g[idx(x, y)] = 0.0;
        t.step[idx(x, y)] = Step::Source;
        continue;
      }
      // value of extending a path ending at the predecessor u by one step:
      // ExcludeLast adds w(u), the other convention adds w(x,y).
      double from_e1 = kNegInf, from_e2 = kNegInf;
      if (x > source.x) {
        const double base = t.g[idx(x - 1, y)];
        from_e1 = conv == Convention::ExcludeLast ? base + field.at(x - 1, y)
                                                  : base + field.at(x, y);
      }
      if (y > source.y) {
        const double base = t.g[idx(x, y - 1)];
        from_e2 = conv == Convention::ExcludeLast ? base + field.at(x, y - 1)
                                                  : base + field.at(x, y);
      }
      if (from_e1 > from_e2) {
        t.g[idx(x, y)] = from_e1;
        t.step[idx(x, y)] = Step::E1;
      } else if (from_e2 > from_e1) {
        t.g[idx(x, y)] = from_e2;
        t.step[idx(x, y)] = Step::E2;
      } else {
        t.g[idx(x, y)] = from_e1;
        t.step[idx(x, y)] = Step::Tie;
      }
    }
  }
  return t;
}

double passage_value(const FieldView& field, Point source, Point target,
                     Convention conv) {
  if (!(source <= target)) throw std::domain_error("source must be <= target");
  const int64_t w = target.x - source.x + 1;
  std::vector<double> g(static_cast<size_t>(w));
  std::vector<double> w_prev(static_cast<size_t>(w));
  std::vector<double> w_cur(static_cast<size_t>(w));

  for (int64_t y = source.y; y <= target.y; ++y) {
    for (int64_t i = 0; i < w; ++i) w_cur[i] = field.at(source.x + i, y);
    for (int64_t i = 0; i < w; ++i) {
      if (y == source.y && i == 0) {
        g[0] = 0.0;
        continue;
      }
      double from_e1 = kNegInf, from_e2 = kNegInf;
      if (i > 0)
        from_e1 = conv == Convention::ExcludeLast ? g[i - 1] + w_cur[i - 1]
                                                  : g[i - 1] + w_cur[i];
      if (y > source.y)
        from_e2 = conv == Convention::ExcludeLast ? g[i] + w_prev[i]
                                                  : g[i] + w_cur[i];
      g[i] = std::max(from_e1, from_e2);
    }
    std::swap(w_prev, w_cur);
  }
  return g[w - 1];
}

double path_weight(const WeightField& field, const GeodesicPath& path,
                   Convention conv) {
  const auto sites = path.sites();
  double s = 0;
  if (conv == Convention::ExcludeLast) {
    for (size_t i = 0; i + 1 < sites.size(); ++i) s += field.at(sites[i]);
  } else {
    for (size_t i = 1; i < sites.size(); ++i) s += field.at(sites[i]);
  }
  return s;
}

double point_to_line(const FieldView& field, Vec2 h, int64_t n) {
  if (n < 1) throw std::domain_error("point_to_line needs n >= 1");
  // V[k][j] = best sum of the first k weights over paths ending at (j, k-j)
  std::vector<double> v(static_cast<size_t>(n) + 1, kNegInf);
  std::vector<double> next(static_cast<size_t>(n) + 1, kNegInf);
  std::vector<double> wt(static_cast<size_t>(n) + 1, 0.0);
  v[0] = 0.0;
  for (int64_t k = 0; k < n; ++k) {
    for (int64_t j = 0; j <= k; ++j) wt[j] = field.at(j, k - j);
    for (int64_t j = 0; j <= k + 1; ++j) {
      double best = kNegInf;
      if (j <= k && v[j] > kNegInf) best = std::max(best, v[j] + wt[j]);      // e2 step
      if (j > 0 && v[j - 1] > kNegInf) best = std::max(best, v[j - 1] + wt[j - 1]);  // e1 step
      next[j] = best;
    }
    std::swap(v, next);
  }
  double out = kNegInf;
  for (int64_t j = 0; j <= n; ++j)
    out = std::max(out, v[j] + h.x * static_cast<double>(j) +
                            h.y * static_cast<double>(n - j));
  return out;
}

ReversedTable compute_reversed_table(const WeightField& field, Point target) {
  if (target.x < 0 || target.y < 0 || target.x >= field.width ||
      target.y >= field.height)
    throw std::domain_error("target outside field");
  ReversedTable t;
  t.target = target;
  const int64_t w = target.x + 1, h = target.y + 1;
  t.g.assign(static_cast<size_t>(w * h), 0.0);
  for (int64_t y = target.y; y >= 0; --y) {
    for (int64_t x = target.x; x >= 0; --x) {
      if (x == target.x && y == target.y) continue;
      double best = kNegInf;
      if (x < target.x) best = std::max(best, t.g[y * w + x + 1]);
      if (y < target.y) best = std::max(best, t.g[(y + 1) * w + x]);
      t.g[y * w + x] = field.at(x, y) + best;
    }
  }
  return t;
}

IncrementField increments(const WeightField& field, Point target) {
  const ReversedTable t = compute_reversed_table(field, target);
  IncrementField f;
  f.target = target;
  f.width = target.x;
  f.height = target.y;
  f.I.resize(static_cast<size_t>(target.x * (target.y + 1)));
  f.J.resize(static_cast<size_t>((target.x + 1) * target.y));
  for (int64_t y = 0; y <= target.y; ++y)
    for (int64_t x = 0; x < target.x; ++x)
      f.I[y * target.x + x] = t.at({x, y}) - t.at({x + 1, y});
  for (int64_t y = 0; y < target.y; ++y)
    for (int64_t x = 0; x <= target.x; ++x)
      f.J[y * (target.x + 1) + x] = t.at({x, y}) - t.at({x, y + 1});
  return f;
}

GeodesicPath backtrack_geodesic(const PassageTable& table, Point to, TieBreak tb) {
  if (!(table.source <= to)) throw std::domain_error("backtrack needs source <= to");
  if (!table.rect.contains(to)) throw std::domain_error("endpoint outside table");

  // Walking backward, the e1-predecessor has the smaller e1-coordinate on its
  // antidiagonal, so preferring e1 on ties yields the leftmost geodesic.
  const Point from = table.source;
  std::vector<Point> rev;
  Point p = to;
  while (p != from) {
    Step chosen = table.step_at(p);
    if (chosen == Step::Tie)
      chosen = tb == TieBreak::Leftmost ? Step::E1 : Step::E2;
    rev.push_back(chosen == Step::E1 ? kE1 : kE2);
    p = chosen == Step::E1 ? p - kE1 : p - kE2;
  }
  GeodesicPath path;
  path.start = from;
  path.steps_taken.assign(rev.rbegin(), rev.rend());
  return path;
}

GeodesicPath backtrack_geodesic(const WeightField& field, Point from, Point to,
                                TieBreak tb, Convention conv) {
  if (!(from <= to)) throw std::domain_error("backtrack needs from <= to");
  const Rect sub{from.x, from.y, to.x - from.x + 1, to.y - from.y + 1};
  return backtrack_geodesic(compute_passage_table(field, from, sub, conv), to, tb);
}

double solvable_gpp(double mean, double sd, const Direction& xi) {
  return mean + 2.0 * sd * std::sqrt(xi.e1() * xi.e2());
}

ShapeEstimate estimate_shape(const WeightDistribution& dist,
                             const std::vector<Direction>& directions,
                             int64_t n, int replicas, uint64_t seed,
                             int threads, Convention conv) {
  if (n < 32) throw std::domain_error("estimate_shape needs n >= 32");
  for (const auto& d : directions)
    if (!d.interior()) throw std::domain_error("directions must be interior");

  ShapeEstimate est;
  est.directions = directions;
  est.n = n;
  est.replicas = replicas;

  const size_t nd = directions.size();
  std::vector<std::vector<double>> samples(nd, std::vector<double>(replicas));

  auto run_replica = [&](int r) {
    const uint64_t rs = rng::derive_stream(seed, static_cast<uint64_t>(r), 0);
    const FieldView view{dist, rs};
    for (size_t d = 0; d < nd; ++d) {
      const Point target{static_cast<int64_t>(std::floor(n * directions[d].e1())),
                         static_cast<int64_t>(std::floor(n * directions[d].e2()))};
      samples[d][r] =
          passage_value(view, {0, 0}, target, conv) / static_cast<double>(n);
    }
  };

  if (threads <= 1) {
    for (int r = 0; r < replicas; ++r) run_replica(r);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < replicas; r = next.fetch_add(1))
          run_replica(r);
      });
    for (auto& t : pool) t.join();
  }

  const bool solvable =
      dist.kind == DistKind::Exponential || dist.kind == DistKind::Geometric;
  for (size_t d = 0; d < nd; ++d) {
    est.means.push_back(stats::mean(samples[d]));
    est.stderrs.push_back(replicas > 1 ? stats::stderr_of_mean(samples[d]) : 0.0);
    est.analytic.push_back(solvable
                               ? solvable_gpp(dist.mean, dist.sd(), directions[d])
                               : std::numeric_limits<double>::quiet_NaN());
  }
  return est;
}

}  // namespace lpp
