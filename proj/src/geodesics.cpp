#include "lpp/geodesics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace lpp {

GeodesicPath cocycle_geodesic(const CocycleField& cf, Point start, TieRule rule,
                              int64_t max_len) {
  if (start.x < 0 || start.y < 0 || start.x >= cf.width - 1 ||
      start.y >= cf.height - 1)
    throw std::domain_error("start must lie in the bulk of the cocycle field");
  GeodesicPath path;
  path.start = start;
  Point p = start;
  while (static_cast<int64_t>(path.steps_taken.size()) < max_len) {
    if (p.x >= cf.width - 1 || p.y >= cf.height - 1) {
      path.truncated = true;
      break;
    }
    const double g1 = cf.b1_at(p);
    const double g2 = cf.b2_at(p);
    Point step;
    if (g1 < g2)
      step = kE1;
    else if (g2 < g1)
      step = kE2;
    else
      step = rule.at(p);
    path.steps_taken.push_back(step);
    p = p + step;
  }
  return path;
}

CoalescenceReport coalescence_experiment(const WeightDistribution& dist,
                                         Direction xi,
                                         const std::vector<int64_t>& box_sizes,
                                         int64_t offset, int replicas,
                                         uint64_t seed) {
  CoalescenceReport rep;
  rep.box_sizes = box_sizes;
  rep.replicas = replicas;
  const TieRule rule = TieRule::leftmost();

  for (const int64_t L : box_sizes) {
    int coalesced = 0;
    for (int r = 0; r < replicas; ++r) {
      const uint64_t rs = rng::derive_stream(seed, static_cast<uint64_t>(r),
                                             static_cast<uint64_t>(L));
      const WeightField field = sample_field(dist, L, L, rs);
      const BoundaryCocycle bd = sample_boundary(dist, xi, L, rs);
      const CocycleField cf = build_gne(field, bd);

      // per antidiagonal level each path occupies a single site, so meeting
      // means equal e1-coordinates at the same level
      const GeodesicPath pa = cocycle_geodesic(cf, {0, 0}, rule, 4 * L);
      if (offset >= cf.height - 1) throw std::domain_error("offset outside bulk");
      const GeodesicPath pb = cocycle_geodesic(cf, {0, offset}, rule, 4 * L);

      auto x_by_level = [](const GeodesicPath& g) {
        std::vector<int64_t> xs{g.start.x};
        Point p = g.start;
        for (const auto& s : g.steps_taken) {
          p = p + s;
          xs.push_back(p.x);
        }
        return xs;
      };
      const std::vector<int64_t> ax = x_by_level(pa);
      const std::vector<int64_t> bx = x_by_level(pb);

      // path a occupies level l at ax[l], path b at bx[l - offset]
      int64_t met_level = -1;
      const int64_t hi = std::min<int64_t>(static_cast<int64_t>(ax.size()) - 1,
                                           offset + static_cast<int64_t>(bx.size()) - 1);
      for (int64_t l = offset; l <= hi; ++l) {
        if (ax[l] == bx[l - offset]) {
          met_level = l;
          break;
        }
      }
      if (met_level >= 0) {
        // once met the walks must agree forever after (same rule, same field)
        for (int64_t l = met_level; l <= hi; ++l)
          if (ax[l] != bx[l - offset])
            throw std::logic_error("coalesced geodesics separated again");
        ++coalesced;
      }
    }
    rep.fractions.push_back(static_cast<double>(coalesced) / replicas);
  }
  return rep;
}

DirectionEstimate directedness(const GeodesicPath& path) {
  const int64_t len = static_cast<int64_t>(path.steps_taken.size());
  if (len < 100) throw std::domain_error("path too short for a direction estimate");
  const Point disp = path.end() - path.start;
  DirectionEstimate est;
  est.terminal = Vec2{static_cast<double>(disp.x) / len,
                      static_cast<double>(disp.y) / len};
  int64_t tail_e1 = 0;
  const int64_t tail_start = len / 2;
  for (int64_t i = tail_start; i < len; ++i)
    tail_e1 += path.steps_taken[i] == kE1;
  const double n_tail = static_cast<double>(len - tail_start);
  const double p = tail_e1 / n_tail;
  est.tail = Vec2{p, 1.0 - p};
  est.ci_halfwidth = 1.96 * std::sqrt(std::max(p * (1 - p), 1e-12) / n_tail);
  return est;
}

ReplicaDirection direction_over_replicas(const WeightDistribution& dist,
                                         Direction xi, int64_t L, int replicas,
                                         uint64_t seed) {
  std::vector<double> comp;
  comp.reserve(replicas);
  for (int r = 0; r < replicas; ++r) {
    const uint64_t rs = rng::derive_stream(seed, static_cast<uint64_t>(r), 2);
    const int64_t w = std::max<int64_t>(8, static_cast<int64_t>(2.2 * L * xi.e1()));
    const int64_t h = std::max<int64_t>(8, static_cast<int64_t>(2.2 * L * xi.e2()));
    const WeightField f = sample_field(dist, w, h, rs);
    const auto bd = sample_boundary(dist, xi, std::max(w, h), rs);
    const auto cf = build_gne(f, bd);
    const auto path = cocycle_geodesic(cf, {0, 0}, TieRule::leftmost(), 8 * L);
    const auto est = directedness(path);
    comp.push_back(est.terminal.x / (est.terminal.x + est.terminal.y));
  }
  ReplicaDirection out;
  out.replicas = replicas;
  const double m = stats::mean(comp);
  out.mean = Vec2{m, 1.0 - m};
  out.se = replicas > 1 ? stats::stderr_of_mean(comp) : 0.0;
  return out;
}

double CifTables::d(const Point& v) const {
  const bool e1_ok = from_e1.source <= v;
  const bool e2_ok = from_e2.source <= v;
  if (e1_ok && e2_ok) return from_e2.at(v) - from_e1.at(v);
  return e2_ok ? std::numeric_limits<double>::infinity() : kNegInf;
}

CifTables cif_tables(const WeightField& field, int64_t n) {
  if (n < 2) throw std::domain_error("competition interface needs n >= 2");
  if (field.width <= n || field.height <= n)
    throw std::domain_error("field must cover [0,n]^2");
  const Rect rect{0, 0, n + 1, n + 1};
  CifTables t{compute_passage_table(field, {1, 0}, rect),
              compute_passage_table(field, {0, 1}, rect)};
  return t;
}

namespace {

InterfaceTrace trace_interface(const FieldView& field, int64_t n, bool discrete) {
  if (n < 2) throw std::domain_error("competition interface needs n >= 2");
  InterfaceTrace tr;
  tr.n = n;
  tr.discrete = discrete;
  tr.k_right.reserve(n);
  tr.k_left.reserve(n);

  // antidiagonal sweep of both source tables; level arrays indexed by k
  std::vector<double> g1(n + 2, kNegInf), g2(n + 2, kNegInf);
  std::vector<double> n1(n + 2, kNegInf), n2(n + 2, kNegInf);
  std::vector<double> wrow(n + 2, 0.0);
  g1[1] = 0.0;  // level 1: site (1,0) for the e1 tree
  g2[0] = 0.0;  //          site (0,1) for the e2 tree

  auto record = [&](int64_t level) {
    int64_t kr = 0, kl = 0;
    for (int64_t k = 0; k <= level; ++k) {
      const double a = g2[k], b = g1[k];
      if (a > b) kr = k;
      if (a >= b) kl = k;
    }
    tr.k_right.push_back(kr);
    tr.k_left.push_back(kl);
  };
  record(1);

  for (int64_t level = 1; level < n; ++level) {
    for (int64_t k = 0; k <= level; ++k) wrow[k] = field.at(k, level - k);
    for (int64_t k = level + 1; k >= 0; --k) {
      double b1 = kNegInf, b2 = kNegInf;
      if (k >= 1) {
        const double w = wrow[k - 1];
        if (g1[k - 1] > kNegInf) b1 = g1[k - 1] + w;
        if (g2[k - 1] > kNegInf) b2 = g2[k - 1] + w;
      }
      if (k <= level) {
        const double w = wrow[k];
        if (g1[k] > kNegInf) b1 = std::max(b1, g1[k] + w);
        if (g2[k] > kNegInf) b2 = std::max(b2, g2[k] + w);
      }
      n1[k] = b1;
      n2[k] = b2;
    }
    std::swap(g1, n1);
    std::swap(g2, n2);
    record(level + 1);
  }
  return tr;
}

}  // namespace

InterfaceTrace competition_interface(const FieldView& field, int64_t n) {
  return trace_interface(field, n, field.dist.integer_valued() ||
                                       field.dist.kind == DistKind::CustomEmpirical);
}

InterfaceTrace competition_interface(const WeightField& field, int64_t n) {
  if (field.width <= n || field.height <= n)
    throw std::domain_error("field must cover [0,n]^2");
  // materialized fields may carry arbitrary values; go through a view shim
  InterfaceTrace tr;
  tr.n = n;
  tr.discrete =
      field.dist.integer_valued() || field.dist.kind == DistKind::CustomEmpirical;
  const CifTables tabs = cif_tables(field, n);
  for (int64_t level = 1; level <= n; ++level) {
    int64_t kr = 0, kl = 0;
    for (int64_t k = 0; k <= level; ++k) {
      const double d = tabs.d({k, level - k});
      if (d > 0) kr = k;
      if (d >= 0) kl = k;
    }
    tr.k_right.push_back(kr);
    tr.k_left.push_back(kl);
  }
  return tr;
}

double InterfaceTrace::theta_right() const {
  const Vec2 p = phi_right(n - 1);
  return std::atan2(p.y, p.x);
}

double InterfaceTrace::theta_left() const {
  const Vec2 p = phi_left(n - 1);
  return std::atan2(p.y, p.x);
}

double cif_angle_cdf_exponential(double t) {
  const double ss = std::sqrt(std::sin(t)), cc = std::sqrt(std::cos(t));
  return ss / (ss + cc);
}

double cif_angle_cdf_geometric_right(double t, double p0) {
  const double ss = std::sqrt((1.0 - p0) * std::sin(t)), cc = std::sqrt(std::cos(t));
  return ss / (ss + cc);
}

double cif_angle_cdf_geometric_left(double t, double p0) {
  const double ss = std::sqrt(std::sin(t)), cc = std::sqrt((1.0 - p0) * std::cos(t));
  return ss / (ss + cc);
}

CifLawReport cif_direction_law(const WeightDistribution& dist, int64_t n,
                               int replicas, uint64_t seed, int threads) {
  if (dist.kind != DistKind::Exponential && dist.kind != DistKind::Geometric)
    throw std::domain_error("interface angle laws exist only for solvable weights");

  CifLawReport rep;
  rep.n = n;
  rep.replicas = replicas;
  rep.thetas_right.resize(replicas);
  rep.thetas_left.resize(replicas);

  auto run = [&](int r) {
    const FieldView view{dist, rng::derive_stream(seed, static_cast<uint64_t>(r), 0)};
    const InterfaceTrace tr = trace_interface(view, n, dist.integer_valued());
    rep.thetas_right[r] = tr.theta_right();
    rep.thetas_left[r] = tr.theta_left();
  };
  if (threads <= 1) {
    for (int r = 0; r < replicas; ++r) run(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < replicas; r = next.fetch_add(1)) run(r);
      });
    for (auto& t : pool) t.join();
  }

  std::sort(rep.thetas_right.begin(), rep.thetas_right.end());
  std::sort(rep.thetas_left.begin(), rep.thetas_left.end());
  const double p0 = dist.kind == DistKind::Geometric ? 1.0 / dist.mean : 0.0;
  stats::Law law_r{[&, p0](double t) {
                     return dist.kind == DistKind::Exponential
                                ? cif_angle_cdf_exponential(t)
                                : cif_angle_cdf_geometric_right(t, p0);
                   },
                   nullptr};
  stats::Law law_l{[&, p0](double t) {
                     return dist.kind == DistKind::Exponential
                                ? cif_angle_cdf_exponential(t)
                                : cif_angle_cdf_geometric_left(t, p0);
                   },
                   nullptr};
  rep.ks_right = stats::ks_statistic_sorted(rep.thetas_right, law_r);
  rep.ks_left = stats::ks_statistic_sorted(rep.thetas_left, law_l);
  return rep;
}

}  // namespace lpp
