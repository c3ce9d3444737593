#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "lpp/lattice.hpp"
#include "lpp/weight_field.hpp"

namespace lpp {

// Path-weight convention. ExcludeLast sums the weights of all path sites
// except the endpoint; the alternative excludes the first site and includes
// the endpoint. They differ by w(end) - w(start) on every path.
enum class Convention { ExcludeLast, IncludeLastExcludeFirst };

// Which predecessor attained the maximum at a site.
enum class Step : uint8_t { None, Source, E1, E2, Tie };

enum class TieBreak { Leftmost, Rightmost };  // leftmost takes e2 on ties

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct GeodesicPath {
  Point start;
  std::vector<Point> steps_taken;  // each entry is kE1 or kE2
  bool truncated = false;

  Point end() const {
    Point p = start;
    for (const auto& s : steps_taken) p = p + s;
    return p;
  }
  std::vector<Point> sites() const {
    std::vector<Point> v{start};
    for (const auto& s : steps_taken) v.push_back(v.back() + s);
    return v;
  }
};

// Last-passage values G(source -> v) for every v in rect, plus argmax steps.
struct PassageTable {
  Point source;
  Rect rect;
  Convention convention = Convention::ExcludeLast;
  std::vector<double> g;
  std::vector<Step> step;

  double at(const Point& p) const {
    return g[(p.y - rect.y0) * rect.width + (p.x - rect.x0)];
  }
  Step step_at(const Point& p) const {
    return step[(p.y - rect.y0) * rect.width + (p.x - rect.x0)];
  }
};

PassageTable compute_passage_table(const WeightField& field, Point source,
                                   Rect rect,
                                   Convention conv = Convention::ExcludeLast);

// G(source -> target) with O(row) memory and a streamed field.
double passage_value(const FieldView& field, Point source, Point target,
                     Convention conv = Convention::ExcludeLast);

// Weight of an explicit path under a convention.
double path_weight(const WeightField& field, const GeodesicPath& path,
                   Convention conv = Convention::ExcludeLast);

// n-step point-to-line value max over paths of sum w(x_k, k<n) + h.x_n.
double point_to_line(const FieldView& field, Vec2 h, int64_t n);

// G(x -> target) for all x <= target (ExcludeLast; gradient quantities only).
struct ReversedTable {
  Point target;
  std::vector<double> g;  // (target.x+1) x (target.y+1), row-major
  double at(const Point& p) const { return g[p.y * (target.x + 1) + p.x]; }
};

ReversedTable compute_reversed_table(const WeightField& field, Point target);

// Increments toward a fixed target: I(x) = G_{x,v} - G_{x+e1,v} and
// J(y) = G_{y,v} - G_{y+e2,v}.
struct IncrementField {
  Point target;
  int64_t width = 0;   // I defined on [0..target.x-1] x [0..target.y]
  int64_t height = 0;  // J defined on [0..target.x] x [0..target.y-1]
  std::vector<double> I;
  std::vector<double> J;
  double i_at(const Point& p) const { return I[p.y * (target.x) + p.x]; }
  double j_at(const Point& p) const { return J[p.y * (target.x + 1) + p.x]; }
};

IncrementField increments(const WeightField& field, Point target);

// Geodesic between table.source and `to`, leftmost or rightmost among all
// maximizers.
GeodesicPath backtrack_geodesic(const PassageTable& table, Point to, TieBreak tb);
GeodesicPath backtrack_geodesic(const WeightField& field, Point from, Point to,
                                TieBreak tb,
                                Convention conv = Convention::ExcludeLast);

struct ShapeEstimate {
  std::vector<Direction> directions;
  std::vector<double> means;
  std::vector<double> stderrs;
  std::vector<double> analytic;  // NaN when no closed form applies
  int64_t n = 0;
  int replicas = 0;
};

// Monte Carlo estimate of g_pp along the given directions; for exponential
// and geometric weights the closed-form target is attached.
ShapeEstimate estimate_shape(const WeightDistribution& dist,
                             const std::vector<Direction>& directions,
                             int64_t n, int replicas, uint64_t seed,
                             int threads = 1,
                             Convention conv = Convention::ExcludeLast);

// Closed-form g_pp for the solvable laws: m|xi|_1 + 2 sigma sqrt(xi1 xi2).
double solvable_gpp(double mean, double sd, const Direction& xi);

}  // namespace lpp
