#include "lpp/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpp/duality.hpp"

namespace lpp {

namespace {

void require_solvable(const WeightDistribution& dist) {
  if (dist.kind != DistKind::Exponential && dist.kind != DistKind::Geometric)
    throw std::domain_error(
        "exact boundary cocycles are only known for exponential/geometric weights");
}

double boundary_mean(const WeightDistribution& d, Direction xi, bool horizontal) {
  const double ratio = horizontal ? xi.e2() / xi.e1() : xi.e1() / xi.e2();
  return d.mean + d.sd() * std::sqrt(ratio);
}

double draw_mean(const WeightDistribution& d, double mean, double u) {
  return d.kind == DistKind::Exponential ? exponential_icdf(mean, u)
                                         : geometric_icdf(mean, u);
}

}  // namespace

BoundaryCocycle sample_boundary(const WeightDistribution& dist, Direction xi,
                                int64_t length, uint64_t seed) {
  require_solvable(dist);
  if (!xi.interior()) throw std::domain_error("boundary direction must be interior");
  if (length < 1) throw std::invalid_argument("boundary length must be >= 1");

  BoundaryCocycle b;
  b.dist = dist;
  b.xi = xi;
  b.seed = seed;
  b.mu1 = boundary_mean(dist, xi, true);
  b.mu2 = boundary_mean(dist, xi, false);
  b.horiz.resize(static_cast<size_t>(length));
  b.vert.resize(static_cast<size_t>(length));
  rng::Xoshiro256 gh(rng::derive_stream(seed, 0, kBoundaryHorizTag));
  rng::Xoshiro256 gv(rng::derive_stream(seed, 0, kBoundaryVertTag));
  for (auto& x : b.horiz) x = draw_mean(dist, b.mu1, gh.uniform01());
  for (auto& x : b.vert) x = draw_mean(dist, b.mu2, gv.uniform01());
  return b;
}

std::vector<BoundaryCocycle> sample_boundary_coupled(
    const WeightDistribution& dist, const std::vector<Direction>& xis,
    int64_t length, uint64_t seed) {
  require_solvable(dist);
  std::vector<double> uh(static_cast<size_t>(length)), uv(static_cast<size_t>(length));
  rng::Xoshiro256 gh(rng::derive_stream(seed, 0, kBoundaryHorizTag));
  rng::Xoshiro256 gv(rng::derive_stream(seed, 0, kBoundaryVertTag));
  for (auto& u : uh) u = gh.uniform01();
  for (auto& u : uv) u = gv.uniform01();

  std::vector<BoundaryCocycle> out;
  for (const Direction& xi : xis) {
    BoundaryCocycle b;
    b.dist = dist;
    b.xi = xi;
    b.seed = seed;
    b.mu1 = boundary_mean(dist, xi, true);
    b.mu2 = boundary_mean(dist, xi, false);
    b.horiz.resize(uh.size());
    b.vert.resize(uv.size());
    for (size_t i = 0; i < uh.size(); ++i) b.horiz[i] = draw_mean(dist, b.mu1, uh[i]);
    for (size_t i = 0; i < uv.size(); ++i) b.vert[i] = draw_mean(dist, b.mu2, uv[i]);
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

GneTable gne_from_raw(const WeightField& field, const std::vector<double>& horiz,
                      const std::vector<double>& vert) {
  const int64_t w = field.width, h = field.height;
  if (static_cast<int64_t>(horiz.size()) < w - 1 ||
      static_cast<int64_t>(vert.size()) < h - 1)
    throw std::invalid_argument("boundary shorter than the rect side");

  GneTable t;
  t.width = w;
  t.height = h;
  t.g.assign(static_cast<size_t>(w * h), 0.0);
  auto at = [&](int64_t x, int64_t y) -> double& { return t.g[y * w + x]; };

  // NE rays carry cocycle partial sums, the bulk runs the usual recursion
  at(w - 1, h - 1) = 0;
  for (int64_t k = 1; k < w; ++k) at(w - 1 - k, h - 1) = at(w - k, h - 1) + horiz[k - 1];
  for (int64_t k = 1; k < h; ++k) at(w - 1, h - 1 - k) = at(w - 1, h - k) + vert[k - 1];
  for (int64_t y = h - 2; y >= 0; --y)
    for (int64_t x = w - 2; x >= 0; --x)
      at(x, y) = field.at(x, y) + std::max(at(x + 1, y), at(x, y + 1));
  return t;
}

// Propagates the increments directly:
//   B1(x) = w(x) + (B1(x+e2) - B2(x+e1))^+
//   B2(x) = w(x) + (B2(x+e1) - B1(x+e2))^+
// This is algebraically the gradient of eq_Gnecorner but keeps recovery
// min(B1,B2) = w and additivity exact in floating point, with the boundary
// rays passed through verbatim.
CocycleField increments_of(const WeightField& field,
                           const std::vector<double>& horiz,
                           const std::vector<double>& vert) {
  const int64_t w = field.width, h = field.height;
  if (static_cast<int64_t>(horiz.size()) < w - 1 ||
      static_cast<int64_t>(vert.size()) < h - 1)
    throw std::invalid_argument("boundary shorter than the rect side");

  CocycleField cf;
  cf.width = w;
  cf.height = h;
  cf.dist = field.dist;
  cf.b1.resize(static_cast<size_t>((w - 1) * h));
  cf.b2.resize(static_cast<size_t>(w * (h - 1)));
  auto b1 = [&](int64_t x, int64_t y) -> double& { return cf.b1[y * (w - 1) + x]; };
  auto b2 = [&](int64_t x, int64_t y) -> double& { return cf.b2[y * w + x]; };

  for (int64_t x = 0; x + 1 < w; ++x) b1(x, h - 1) = horiz[w - 2 - x];
  for (int64_t y = 0; y + 1 < h; ++y) b2(w - 1, y) = vert[h - 2 - y];
  for (int64_t y = h - 2; y >= 0; --y) {
    for (int64_t x = w - 2; x >= 0; --x) {
      const double d = b1(x, y + 1) - b2(x + 1, y);
      const double wt = field.at(x, y);
      b1(x, y) = d > 0 ? wt + d : wt;
      b2(x, y) = d < 0 ? wt - d : wt;
    }
  }
  return cf;
}

}  // namespace

GneTable build_gne_table(const WeightField& field, const BoundaryCocycle& boundary) {
  return gne_from_raw(field, boundary.horiz, boundary.vert);
}

CocycleField build_gne(const WeightField& field, const BoundaryCocycle& boundary) {
  CocycleField cf = increments_of(field, boundary.horiz, boundary.vert);
  cf.mean_w = field.dist.mean;
  cf.mu1 = boundary.mu1;
  cf.mu2 = boundary.mu2;
  return cf;
}

CocycleField build_gne_raw(const WeightField& field,
                           const std::vector<double>& horiz,
                           const std::vector<double>& vert,
                           const WeightDistribution& dist, double mu1,
                           double mu2) {
  CocycleField cf = increments_of(field, horiz, vert);
  cf.dist = dist;
  cf.mean_w = dist.mean;
  cf.mu1 = mu1;
  cf.mu2 = mu2;
  return cf;
}

Vec2 CocycleField::tilt() const {
  return Vec2{-stats::mean(b1), -stats::mean(b2)};
}

BurkeReport burke_check(const CocycleField& cf) {
  if (cf.dist.kind != DistKind::Exponential)
    throw std::domain_error("burke check is asserted for exponential weights only");
  const double m = cf.mean_w;

  // Y over the whole bulk is i.i.d.; B1/B2 are i.i.d. along a single row or
  // column, so the marginals are sampled there.
  std::vector<double> y;
  y.reserve(static_cast<size_t>((cf.width - 1) * (cf.height - 1)));
  for (int64_t j = 1; j < cf.height; ++j)
    for (int64_t i = 1; i < cf.width; ++i)
      y.push_back(std::min(cf.b1_at(i - 1, j), cf.b2_at(i, j - 1)));

  std::vector<double> row;
  const int64_t mid_y = cf.height / 2;
  for (int64_t i = 0; i + 1 < cf.width; ++i) row.push_back(cf.b1_at(i, mid_y));
  std::vector<double> col;
  const int64_t mid_x = cf.width / 2;
  for (int64_t j = 0; j + 1 < cf.height; ++j) col.push_back(cf.b2_at(mid_x, j));

  auto exp_law = [](double mean) {
    return stats::Law{[mean](double t) {
                        return t <= 0 ? 0.0 : 1.0 - std::exp(-t / mean);
                      },
                      nullptr};
  };

  BurkeReport rep;
  rep.mean_y = stats::mean(y);
  rep.mean_b1 = stats::mean(row);
  rep.mean_b2 = stats::mean(col);
  std::sort(y.begin(), y.end());
  std::sort(row.begin(), row.end());
  std::sort(col.begin(), col.end());
  rep.y_marginal = stats::ks_test(y, exp_law(m));
  rep.b1_marginal = stats::ks_test(row, exp_law(cf.mu1));
  rep.b2_marginal = stats::ks_test(col, exp_law(cf.mu2));
  return rep;
}

ExitPointReport exit_point(const WeightDistribution& dist, double alpha,
                           double s, int64_t n, int replicas, uint64_t seed) {
  require_solvable(dist);
  const GammaModel gamma = GammaModel::solvable(dist.mean, dist.sd());
  if (!(alpha > dist.mean)) throw std::domain_error("alpha must exceed the weight mean");
  // characteristic slope r solves gamma'(r) = alpha
  const double sd = dist.sd();
  const double r = (sd / (alpha - dist.mean)) * (sd / (alpha - dist.mean));
  if (!(s > r))
    throw std::domain_error(
        "north-exit statistics need a target below the characteristic (s > r)");

  const double m_n = static_cast<double>(n) / (1.0 + s);
  const Point v{static_cast<int64_t>(std::llround(s * m_n)),
                static_cast<int64_t>(std::llround(m_n))};
  const Direction xi_char = Direction::from_slope(r);

  ExitPointReport rep;
  rep.replicas = replicas;
  rep.alpha = alpha;
  rep.r = r;
  rep.s = s;
  // tau* maximizes alpha tau + gamma(s - tau); for strictly concave gamma the
  // stationarity condition gamma'(s - tau) = alpha gives tau* = s - r
  rep.tau_star = s - r;

  int64_t north = 0;
  double tau_sum = 0;
  for (int rep_i = 0; rep_i < replicas; ++rep_i) {
    const uint64_t rs = rng::derive_stream(seed, static_cast<uint64_t>(rep_i), 0);
    const WeightField field = sample_field(dist, v.x + 1, v.y + 1, rs);
    const BoundaryCocycle bd =
        sample_boundary(dist, xi_char, std::max(v.x, v.y) + 1, rs);
    const GneTable t = build_gne_table(field, bd);

    Point p{0, 0};
    while (p.x < v.x && p.y < v.y) {
      const double g1 = t.at(p.x + 1, p.y);
      const double g2 = t.at(p.x, p.y + 1);
      p = g1 >= g2 ? p + kE1 : p + kE2;  // ties toward e1
    }
    if (p.y == v.y) {
      ++north;
      tau_sum += static_cast<double>(v.x - p.x) / m_n;
    }
  }
  rep.north_fraction = static_cast<double>(north) / replicas;
  rep.mean_tau_hat = north > 0 ? tau_sum / north : 0.0;
  return rep;
}

}  // namespace lpp
