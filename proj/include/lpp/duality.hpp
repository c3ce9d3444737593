#pragma once

#include <vector>

#include "lpp/lattice.hpp"

namespace lpp {

enum class Side { Minus, Plus };

// Single-variable shape function gamma(s) = g_pp(1, s), concave on [0, inf).
// Either the closed form m(1+s) + 2 sigma sqrt(s) of the solvable laws, or a
// tabulated estimate replaced by its least concave majorant.
class GammaModel {
 public:
  static GammaModel solvable(double mean, double sd);
  // Grid must be strictly increasing and start at s = 0.
  static GammaModel empirical(std::vector<double> s_grid,
                              std::vector<double> gamma_hat);

  bool is_solvable() const { return solvable_; }
  double mean() const { return mean_; }
  double sd() const { return sd_; }

  double value(double s) const;                  // gamma(s)
  double deriv(double s, Side side) const;       // gamma'(s+-)
  double gpp(const Direction& xi) const;         // homogeneous extension
  double max_alpha() const;                      // gamma'(0+) proxy for grids

  const std::vector<double>& grid() const { return s_; }
  const std::vector<double>& values() const { return g_; }

 private:
  bool solvable_ = true;
  double mean_ = 1;
  double sd_ = 1;
  std::vector<double> s_, g_;  // concave majorant tabulation
};

// Pool-adjacent-violators pass producing the least concave majorant of the
// points (s_i, y_i); returns adjusted y values on the same grid.
std::vector<double> least_concave_majorant(const std::vector<double>& s,
                                           const std::vector<double>& y);

// f(alpha) = sup_{s>=0} { gamma(s) - s alpha }, a decreasing convex involution
// of (m, inf). Throws std::domain_error for alpha <= m.
double conjugate_f(const GammaModel& model, double alpha);

// gamma(s) recovered from f by the dual formula inf_{alpha>m} {f(alpha)+s alpha}.
double gamma_from_f(const GammaModel& model, double s);

// One-sided gradient of g_pp at xi: (gamma'(s+-), f(gamma'(s+-))).
Vec2 grad_gpp(const GammaModel& model, const Direction& xi, Side side);

struct DualityRecord {
  Direction xi;
  double s = 0;
  double alpha = 0;
  double f_alpha = 0;
  Vec2 grad;
  Vec2 h;
  double t = 0;
  Direction seg_lo, seg_hi;  // endpoints of U_xi(h); equal when degenerate
};

// Unique (alpha, t) with h = -(alpha, f(alpha)) + t(e1+e2), and the dual
// velocity xi(alpha).
DualityRecord tilt_velocity(const GammaModel& model, Vec2 h);

// g_pl(h) = sup_xi { g_pp(xi) + h.xi } = t(h).
double point_to_line_limit(const GammaModel& model, Vec2 h);

}  // namespace lpp
