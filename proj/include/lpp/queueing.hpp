#pragma once

#include <cstdint>
#include <vector>

#include "lpp/distribution.hpp"
#include "lpp/stats.hpp"

namespace lpp {

enum class ArrivalLaw { IidSolvable, Deterministic };

// Per-station arrays of a tandem of ./G/1 FIFO queues.
// Customers n = 0..n_customers-1; stations k = 0..n_stations-1.
//   S(n,k): service times, i.i.d. across all (n,k)
//   W(n,k): waiting times, W(0,k) = 0
//   A(n,k): inter-arrival gap between customers n and n+1 at station k,
//           for n = 0..n_customers-2 and k = 0..n_stations
struct QueueTableau {
  int64_t n_customers = 0;
  int64_t n_stations = 0;
  int64_t warmup = 0;
  std::vector<double> A;  // (n_customers-1) x (n_stations+1)
  std::vector<double> S;  // n_customers x n_stations
  std::vector<double> W;  // n_customers x n_stations

  double a(int64_t n, int64_t k) const { return A[n * (n_stations + 1) + k]; }
  double s(int64_t n, int64_t k) const { return S[n * n_stations + k]; }
  double w(int64_t n, int64_t k) const { return W[n * n_stations + k]; }
};

// One Lindley pass: W[0] = w_init, W[n+1] = (W[n] + S[n] - A[n])^+.
std::vector<double> lindley_waits(const std::vector<double>& A,
                                  const std::vector<double>& S, double w_init);

// Inter-departure gaps A'[n] = (A[n] - S[n] - W[n])^+ + S[n+1].
std::vector<double> departures(const std::vector<double>& A,
                               const std::vector<double>& S,
                               const std::vector<double>& W);

// Full tableau, stored; suitable up to ~10^7 entries.
QueueTableau run_tandem(ArrivalLaw law, double alpha,
                        const WeightDistribution& service, int64_t n_customers,
                        int64_t n_stations, uint64_t seed,
                        int64_t warmup = -1);

struct StationStats {
  int64_t station = 0;
  double mean_arrival = 0;
  double ks_to_candidate = 0;
  double ks_pvalue = 0;
  double cesaro_ks = 0;  // pooled stations <= k against the candidate
};

struct TandemReport {
  QueueTableau tableau;
  std::vector<StationStats> stations;
};

// Pushes arrivals through the tandem and measures the per-station arrival
// marginal against the candidate fixed-point law (i.i.d. same-family law of
// mean alpha).
TandemReport iterate_tandem(ArrivalLaw law, double alpha,
                            const WeightDistribution& service,
                            int64_t n_customers, int64_t n_stations,
                            uint64_t seed);

double sojourn_mean(const QueueTableau& t, int64_t station);
double waiting_zero_fraction(const QueueTableau& t, int64_t station);

// Runs one system per alpha on shared service draws; A0 deterministic so the
// initial coupling A^alpha <= A^beta holds pointwise.
std::vector<QueueTableau> coupled_monotone(const std::vector<double>& alphas,
                                           const WeightDistribution& service,
                                           int64_t n_customers,
                                           int64_t n_stations, uint64_t seed);

struct CouplingCheck {
  bool arrivals_ordered = true;  // A^alpha <= A^beta everywhere
  bool waits_ordered = true;     // W^alpha >= W^beta everywhere
  int64_t violations = 0;
};
CouplingCheck check_coupling(const QueueTableau& lo_alpha,
                             const QueueTableau& hi_alpha);

struct TransposeReport {
  double max_lindley_residual = 0;
  double max_departure_residual = 0;
  bool service_transposed = true;
  double mean_a_tilde = 0;
  int64_t window_customers = 0;
  int64_t window_stations = 0;
};

// Builds the transposed system (A~, S~, W~) on the post-warmup window and
// verifies it satisfies the same queueing recursions.
TransposeReport transpose_system(const QueueTableau& t);

}  // namespace lpp
