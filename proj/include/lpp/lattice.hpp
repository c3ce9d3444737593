#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>

namespace lpp {

struct Point {
  int64_t x = 0;
  int64_t y = 0;

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend Point operator+(const Point& a, const Point& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend Point operator-(const Point& a, const Point& b) {
    return {a.x - b.x, a.y - b.y};
  }
  // coordinatewise partial order
  friend bool operator<=(const Point& a, const Point& b) {
    return a.x <= b.x && a.y <= b.y;
  }
  int64_t l1() const { return std::abs(x) + std::abs(y); }
};

inline constexpr Point kE1{1, 0};
inline constexpr Point kE2{0, 1};

// Half-open rectangle [x0, x0+width) x [y0, y0+height).
struct Rect {
  int64_t x0 = 0;
  int64_t y0 = 0;
  int64_t width = 0;
  int64_t height = 0;

  bool contains(const Point& p) const {
    return p.x >= x0 && p.x < x0 + width && p.y >= y0 && p.y < y0 + height;
  }
  int64_t sites() const { return width * height; }
};

// Direction in the simplex U = {(a, 1-a) : a in [0,1]}, stored unnormalized.
struct Direction {
  double a = 0.5;  // xi . e1 after normalizing |xi|_1 = 1

  static Direction of(double xi1, double xi2) {
    if (xi1 < 0 || xi2 < 0 || xi1 + xi2 <= 0)
      throw std::domain_error("direction must lie in the closed first quadrant");
    return Direction{xi1 / (xi1 + xi2)};
  }
  double e1() const { return a; }
  double e2() const { return 1.0 - a; }
  bool interior() const { return a > 0.0 && a < 1.0; }
  // slope parameter s = xi.e1 / xi.e2
  double slope() const {
    if (!(a < 1.0)) throw std::domain_error("slope undefined at e1");
    return a / (1.0 - a);
  }
  static Direction from_slope(double s) {
    if (s < 0) throw std::domain_error("slope must be nonnegative");
    return Direction{s / (1.0 + s)};
  }
};

struct Vec2 {
  double x = 0;
  double y = 0;
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double c, const Vec2& v) { return {c * v.x, c * v.y}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
};

}  // namespace lpp
