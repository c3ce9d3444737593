#include "lpp/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) {
    // extend with the final slope; keeps the extension concave
    const size_t n = xs.size();
    const double sl = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
    return ys.back() + sl * (x - xs.back());
  }
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const size_t i = static_cast<size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}
}  // namespace

std::vector<double> least_concave_majorant(const std::vector<double>& s,
                                           const std::vector<double>& y) {
  const size_t n = s.size();
  if (n != y.size() || n < 2)
    throw std::invalid_argument("majorant needs matching grids, n >= 2");
  std::vector<size_t> hull;
  auto slope = [&](size_t a, size_t b) { return (y[b] - y[a]) / (s[b] - s[a]); };
  for (size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2 &&
           slope(hull[hull.size() - 2], i) >=
               slope(hull[hull.size() - 2], hull.back()))
      hull.pop_back();
    hull.push_back(i);
  }
  std::vector<double> out(n);
  size_t seg = 0;
  for (size_t i = 0; i < n; ++i) {
    while (seg + 1 < hull.size() && s[hull[seg + 1]] < s[i]) ++seg;
    if (hull[seg] == i) {
      out[i] = y[i];
    } else {
      const size_t a = hull[seg], b = hull[seg + 1];
      out[i] = y[a] + slope(a, b) * (s[i] - s[a]);
    }
  }
  return out;
}

GammaModel GammaModel::solvable(double mean, double sd) {
  if (!(sd > 0)) throw std::invalid_argument("solvable gamma needs sd > 0");
  GammaModel m;
  m.solvable_ = true;
  m.mean_ = mean;
  m.sd_ = sd;
  return m;
}

GammaModel GammaModel::empirical(std::vector<double> s_grid,
                                 std::vector<double> gamma_hat) {
  if (s_grid.size() < 3) throw std::invalid_argument("empirical gamma needs >= 3 points");
  if (s_grid.front() != 0.0)
    throw std::invalid_argument("empirical gamma grid must start at s = 0");
  for (size_t i = 1; i < s_grid.size(); ++i)
    if (!(s_grid[i] > s_grid[i - 1]))
      throw std::invalid_argument("empirical gamma grid must increase");
  GammaModel m;
  m.solvable_ = false;
  m.s_ = std::move(s_grid);
  m.g_ = least_concave_majorant(m.s_, gamma_hat);
  m.mean_ = m.g_.front();  // gamma(0) = m
  m.sd_ = 0;
  return m;
}

double GammaModel::value(double s) const {
  if (s < 0) throw std::domain_error("gamma defined on s >= 0");
  if (solvable_) return mean_ * (1.0 + s) + 2.0 * sd_ * std::sqrt(s);
  return interp(s_, g_, s);
}

double GammaModel::deriv(double s, Side side) const {
  if (s < 0 || (s == 0 && side == Side::Minus))
    throw std::domain_error("gamma derivative undefined");
  if (solvable_) return s == 0 ? kInf : mean_ + sd_ / std::sqrt(s);

  const size_t n = s_.size();
  auto slope = [&](size_t i) { return (g_[i + 1] - g_[i]) / (s_[i + 1] - s_[i]); };
  if (s >= s_.back()) return slope(n - 2);
  // index of the segment containing s
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  size_t i = static_cast<size_t>(it - s_.begin());  // s_[i-1] <= s < s_[i]
  if (s == s_[i - 1]) {
    if (side == Side::Plus) return slope(i - 1);
    return i >= 2 ? slope(i - 2) : slope(i - 1);
  }
  return slope(i - 1);
}

double GammaModel::gpp(const Direction& xi) const {
  if (xi.e2() == 0) return mean_ * xi.e1();
  return xi.e2() * value(xi.slope());
}

double GammaModel::max_alpha() const {
  if (solvable_) return kInf;
  return (g_[1] - g_[0]) / (s_[1] - s_[0]);
}

double conjugate_f(const GammaModel& model, double alpha) {
  const double m = model.mean();
  if (!(alpha > m))
    throw std::domain_error("conjugate diverges for alpha <= mean");
  if (model.is_solvable()) {
    const double sd = model.sd();
    return m + sd * sd / (alpha - m);
  }
  // piecewise-linear concave gamma: the supremum sits on a grid vertex
  const auto& s = model.grid();
  const auto& g = model.values();
  const size_t n = s.size();
  const double last_slope = (g[n - 1] - g[n - 2]) / (s[n - 1] - s[n - 2]);
  if (!(alpha >= last_slope))
    throw std::domain_error(
        "conjugate not bracketed by the tabulated grid (alpha too close to mean)");
  double best = -kInf;
  for (size_t i = 0; i < n; ++i) best = std::max(best, g[i] - s[i] * alpha);
  return best;
}

double gamma_from_f(const GammaModel& model, double s) {
  if (!(s >= 0)) throw std::domain_error("gamma defined on s >= 0");
  const double m = model.mean();
  if (model.is_solvable()) {
    // golden-section on a log-spaced bracket around the analytic minimizer
    const double sd = model.sd();
    double lo = s > 0 ? m + (sd / std::sqrt(s)) * 1e-4 : m + 1e-9 * std::max(1.0, m);
    double hi = s > 0 ? m + (sd / std::sqrt(s)) * 1e4 : m + 1e12;
    auto obj = [&](double a) { return conjugate_f(model, a) + s * a; };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = obj(c), fd = obj(d);
    for (int it = 0; it < 200; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = obj(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = obj(d);
      }
    }
    return obj(0.5 * (a + b));
  }
  // the infimum of a convex piecewise-linear f(alpha) + s alpha sits on a
  // breakpoint of f, i.e. on a slope of gamma
  const auto& sg = model.grid();
  const auto& g = model.values();
  double best = kInf;
  for (size_t i = 0; i + 1 < sg.size(); ++i) {
    const double a = (g[i + 1] - g[i]) / (sg[i + 1] - sg[i]);
    if (a > model.mean()) best = std::min(best, conjugate_f(model, a) + s * a);
  }
  return best;
}

Vec2 grad_gpp(const GammaModel& model, const Direction& xi, Side side) {
  if (!xi.interior())
    throw std::domain_error("gradient blows up on the boundary of U");
  const double a = model.deriv(xi.slope(), side);
  return Vec2{a, conjugate_f(model, a)};
}

DualityRecord tilt_velocity(const GammaModel& model, Vec2 h) {
  // reduce h = -(alpha, f(alpha)) + t(e1+e2) to the scalar equation
  // alpha - f(alpha) = h.e2 - h.e1 and bisect on the monotone left side
  const double target = h.y - h.x;
  const double m = model.mean();
  auto phi = [&](double a) { return a - conjugate_f(model, a); };

  double lo, hi;
  if (model.is_solvable()) {
    lo = m + 1e-18 * std::max(1.0, m);
    hi = m + std::max(1.0, model.sd());
    for (int i = 0; i < 200 && phi(hi) < target; ++i) hi = m + 2 * (hi - m);
  } else {
    const auto& sg = model.grid();
    const auto& g = model.values();
    const size_t n = sg.size();
    const double last_slope = (g[n - 1] - g[n - 2]) / (sg[n - 1] - sg[n - 2]);
    lo = last_slope + 1e-12 * std::max(1.0, std::abs(last_slope));
    hi = std::max(model.max_alpha() * 2.0, lo + 1.0);
    if (phi(lo) > target)
      throw std::domain_error("tilt outside the tabulated duality range");
    for (int i = 0; i < 200 && phi(hi) < target; ++i) hi *= 2;
  }
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * std::max(1.0, std::abs(hi))) break;
  }
  const double alpha = 0.5 * (lo + hi);
  const double fa = conjugate_f(model, alpha);

  DualityRecord rec;
  rec.alpha = alpha;
  rec.f_alpha = fa;
  rec.grad = Vec2{alpha, fa};
  rec.h = h;
  rec.t = h.x + alpha;

  if (model.is_solvable()) {
    const double sd = model.sd();
    rec.s = (sd / (alpha - m)) * (sd / (alpha - m));
    rec.xi = Direction::from_slope(rec.s);
    rec.seg_lo = rec.seg_hi = rec.xi;
  } else {
    // velocities dual to alpha: grid vertices attaining the conjugate sup
    const auto& sg = model.grid();
    const auto& g = model.values();
    double best = -kInf;
    for (size_t i = 0; i < sg.size(); ++i)
      best = std::max(best, g[i] - sg[i] * alpha);
    const double tol = 1e-9 * std::max(1.0, std::abs(best));
    double s_lo = kInf, s_hi = -kInf;
    for (size_t i = 0; i < sg.size(); ++i) {
      if (g[i] - sg[i] * alpha >= best - tol) {
        s_lo = std::min(s_lo, sg[i]);
        s_hi = std::max(s_hi, sg[i]);
      }
    }
    rec.s = 0.5 * (s_lo + s_hi);
    rec.xi = Direction::from_slope(rec.s);
    rec.seg_lo = Direction::from_slope(s_lo);
    rec.seg_hi = Direction::from_slope(s_hi);
  }
  return rec;
}

double point_to_line_limit(const GammaModel& model, Vec2 h) {
  return tilt_velocity(model, h).t;
}

}  // namespace lpp
