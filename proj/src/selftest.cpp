#include "lpp/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "lpp/passage.hpp"
#include "lpp/queueing.hpp"
#include "lpp/stationary.hpp"

namespace lpp {

namespace {

// Local enumeration oracle, independent of the DP code path.
double enumerate_best(const WeightField& f, Point from, Point to,
                      std::vector<std::vector<Point>>* argmax = nullptr) {
  double best = kNegInf;
  std::vector<Point> cur;
  std::function<void(Point, double)> rec = [&](Point p, double acc) {
    if (p == to) {
      if (acc > best) {
        best = acc;
        if (argmax) argmax->assign(1, cur);
      } else if (argmax && acc == best) {
        argmax->push_back(cur);
      }
      return;
    }
    if (p.x < to.x) {
      cur.push_back(kE1);
      rec(p + kE1, acc + f.at(p));
      cur.pop_back();
    }
    if (p.y < to.y) {
      cur.push_back(kE2);
      rec(p + kE2, acc + f.at(p));
      cur.pop_back();
    }
  };
  rec(from, 0.0);
  return best;
}

WeightField small_integer_field(int64_t w, int64_t h, uint64_t seed) {
  WeightField f;
  f.width = w;
  f.height = h;
  f.seed = seed;
  f.dist = WeightDistribution::geometric(2.0);
  f.values.resize(static_cast<size_t>(w * h));
  uint64_t state = seed;
  for (auto& v : f.values)
    v = static_cast<double>(1 + static_cast<int>(rng::splitmix64(state) % 9));
  return f;
}

std::vector<int64_t> x_profile(Point from, const std::vector<Point>& steps) {
  std::vector<int64_t> xs{from.x};
  Point p = from;
  for (const auto& s : steps) {
    p = p + s;
    xs.push_back(p.x);
  }
  return xs;
}

}  // namespace

std::vector<ReportRow> run_exact_suite(uint64_t seed) {
  std::vector<ReportRow> rows;

  // 1. DP equals exhaustive enumeration on every grid up to 6x6
  {
    int64_t mismatches = 0, checked = 0;
    for (uint64_t s = 0; s < 3; ++s) {
      for (int64_t w = 2; w <= 6; ++w)
        for (int64_t h = 2; h <= 6; ++h) {
          const WeightField f = small_integer_field(w, h, seed + s * 100 + w * 10 + h);
          const auto t = compute_passage_table(f, {0, 0}, f.rect());
          for (int64_t y = 0; y < h; ++y)
            for (int64_t x = 0; x < w; ++x) {
              ++checked;
              if (t.at({x, y}) != enumerate_best(f, {0, 0}, {x, y})) ++mismatches;
            }
        }
    }
    auto r = ReportRow::asserted("dp_vs_enumeration_mismatches",
                                 static_cast<double>(mismatches), 0.0, 0.0,
                                 Provenance::DerivedOracle);
    r.std_error = static_cast<double>(checked);
    rows.push_back(r);
  }

  // 2. leftmost/rightmost dominance against all enumerated optima
  {
    int64_t violations = 0;
    for (uint64_t s = 0; s < 4; ++s) {
      const WeightField f = small_integer_field(5, 5, seed + 31 * s + 7);
      const Point to{4, 4};
      const auto table = compute_passage_table(f, {0, 0}, f.rect());
      const auto left = backtrack_geodesic(table, to, TieBreak::Leftmost);
      const auto right = backtrack_geodesic(table, to, TieBreak::Rightmost);
      std::vector<std::vector<Point>> optima;
      const double best = enumerate_best(f, {0, 0}, to, &optima);
      if (path_weight(f, left) != best || path_weight(f, right) != best) ++violations;
      const auto lx = x_profile({0, 0}, left.steps_taken);
      const auto rx = x_profile({0, 0}, right.steps_taken);
      for (const auto& opt : optima) {
        const auto ox = x_profile({0, 0}, opt);
        for (size_t k = 0; k < ox.size(); ++k)
          if (lx[k] > ox[k] || rx[k] < ox[k]) ++violations;
      }
    }
    rows.push_back(ReportRow::asserted("geodesic_dominance_violations",
                                       static_cast<double>(violations), 0.0, 0.0,
                                       Provenance::DerivedOracle));
  }

  // 3-4. stationary recovery (exact) and additivity (exact discrete /
  //      1e-9 relative continuous)
  for (const bool discrete : {true, false}) {
    const auto dist = discrete ? WeightDistribution::geometric(2.0)
                               : WeightDistribution::exponential(1.0);
    const WeightField f = sample_field(dist, 48, 48, seed + discrete);
    const auto bd = sample_boundary(dist, Direction::of(1, 1), 48, seed + discrete);
    const auto cf = build_gne(f, bd);
    int64_t recovery_bad = 0, additivity_bad = 0;
    for (int64_t y = 0; y + 1 < 48; ++y)
      for (int64_t x = 0; x + 1 < 48; ++x) {
        if (std::min(cf.b1_at(x, y), cf.b2_at(x, y)) != f.at(x, y)) ++recovery_bad;
        const double lhs = cf.b1_at(x, y) + cf.b2_at(x + 1, y);
        const double rhs = cf.b2_at(x, y) + cf.b1_at(x, y + 1);
        const double tol = discrete ? 0.0 : 1e-9 * std::max(1.0, std::abs(rhs));
        if (std::abs(lhs - rhs) > tol) ++additivity_bad;
      }
    const char* tag = discrete ? "geometric" : "exponential";
    rows.push_back(ReportRow::asserted(std::string("recovery_violations_") + tag,
                                       static_cast<double>(recovery_bad), 0.0, 0.0,
                                       Provenance::Property));
    rows.push_back(ReportRow::asserted(std::string("additivity_violations_") + tag,
                                       static_cast<double>(additivity_bad), 0.0, 0.0,
                                       Provenance::Property));
  }

  // 5. queueing conservation law, exact at every index
  {
    const auto geo = WeightDistribution::geometric(2.0);
    const auto t = run_tandem(ArrivalLaw::IidSolvable, 3.0, geo, 2000, 12, seed + 5);
    int64_t bad = 0;
    for (int64_t k = 0; k < t.n_stations; ++k)
      for (int64_t n = 0; n + 1 < t.n_customers; ++n)
        if (t.w(n + 1, k) + t.s(n + 1, k) + t.a(n, k) !=
            t.w(n, k) + t.s(n, k) + t.a(n, k + 1))
          ++bad;
    rows.push_back(ReportRow::asserted("conservation_violations",
                                       static_cast<double>(bad), 0.0, 0.0,
                                       Provenance::Property));
  }

  // 6. increment monotonicity toward shifted targets, exact on integer fields
  {
    int64_t bad = 0;
    for (uint64_t s = 0; s < 3; ++s) {
      const WeightField f = small_integer_field(7, 7, seed + 17 * s + 3);
      const Point v{5, 5};
      const auto at_v = increments(f, v);
      const auto at_e1 = increments(f, v + kE1);
      const auto at_e2 = increments(f, v + kE2);
      for (int64_t y = 0; y <= v.y; ++y)
        for (int64_t x = 0; x < v.x; ++x) {
          const Point p{x, y};
          if (!(at_e2.i_at(p) >= at_v.i_at(p) && at_v.i_at(p) >= at_e1.i_at(p)))
            ++bad;
        }
      for (int64_t y = 0; y < v.y; ++y)
        for (int64_t x = 0; x <= v.x; ++x) {
          const Point p{x, y};
          if (!(at_e2.j_at(p) <= at_v.j_at(p) && at_v.j_at(p) <= at_e1.j_at(p)))
            ++bad;
        }
    }
    rows.push_back(ReportRow::asserted("increment_monotonicity_violations",
                                       static_cast<double>(bad), 0.0, 0.0,
                                       Provenance::Property));
  }

  return rows;
}

}  // namespace lpp
