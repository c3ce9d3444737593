#include "lpp/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpp/weight_field.hpp"

namespace lpp {

namespace {

void require_nonnegative(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!(x >= 0)) throw std::domain_error(std::string(what) + " must be >= 0");
}

double positive_part(double x) { return x > 0 ? x : 0.0; }

void validate_service(const WeightDistribution& service) {
  service.validate();
  if (service.min_support() < 0)
    throw std::domain_error("service times must be nonnegative");
}

}  // namespace

std::vector<double> lindley_waits(const std::vector<double>& A,
                                  const std::vector<double>& S, double w_init) {
  if (A.size() + 1 != S.size())
    throw std::invalid_argument("lindley_waits needs |A| = |S| - 1");
  if (!(w_init >= 0)) throw std::domain_error("initial wait must be >= 0");
  require_nonnegative(A, "inter-arrival gaps");
  require_nonnegative(S, "service times");
  std::vector<double> W(S.size());
  W[0] = w_init;
  for (size_t n = 0; n + 1 < S.size(); ++n)
    W[n + 1] = positive_part(W[n] + S[n] - A[n]);
  return W;
}

std::vector<double> departures(const std::vector<double>& A,
                               const std::vector<double>& S,
                               const std::vector<double>& W) {
  if (A.size() + 1 != S.size() || W.size() != S.size())
    throw std::invalid_argument("departures needs |A| = |S| - 1 = |W| - 1");
  std::vector<double> out(A.size());
  for (size_t n = 0; n < A.size(); ++n)
    out[n] = positive_part(A[n] - S[n] - W[n]) + S[n + 1];
  return out;
}

QueueTableau run_tandem(ArrivalLaw law, double alpha,
                        const WeightDistribution& service, int64_t n_customers,
                        int64_t n_stations, uint64_t seed, int64_t warmup) {
  validate_service(service);
  if (!(alpha > service.mean))
    throw std::domain_error("unstable tandem: need E[A0] > E[S]");
  if (n_customers < 2 || n_stations < 1)
    throw std::invalid_argument("tandem needs >= 2 customers and >= 1 station");

  QueueTableau t;
  t.n_customers = n_customers;
  t.n_stations = n_stations;
  t.warmup = warmup >= 0 ? warmup : std::min<int64_t>(1000, n_customers / 4);
  t.A.resize(static_cast<size_t>((n_customers - 1) * (n_stations + 1)));
  t.S.resize(static_cast<size_t>(n_customers * n_stations));
  t.W.resize(static_cast<size_t>(n_customers * n_stations));

  // service times from a counter stream, so coupled systems can share them
  const uint64_t s_stream = rng::derive_stream(seed, 0, kServiceTag);
  for (int64_t n = 0; n < n_customers; ++n)
    for (int64_t k = 0; k < n_stations; ++k)
      t.S[n * n_stations + k] = service.sample_site(s_stream, n, k);

  rng::Xoshiro256 arrivals(rng::derive_stream(seed, 0, kArrivalTag));
  for (int64_t n = 0; n + 1 < n_customers; ++n) {
    double a0;
    if (law == ArrivalLaw::Deterministic) {
      a0 = alpha;
    } else if (service.kind == DistKind::Exponential) {
      a0 = exponential_icdf(alpha, arrivals.uniform01());
    } else if (service.kind == DistKind::Geometric) {
      a0 = geometric_icdf(alpha, arrivals.uniform01());
    } else {
      throw std::domain_error("i.i.d. fixed-point arrivals exist only for solvable laws");
    }
    t.A[n * (n_stations + 1) + 0] = a0;
  }

  const int64_t astride = n_stations + 1;
  for (int64_t k = 0; k < n_stations; ++k) {
    t.W[0 * n_stations + k] = 0;
    for (int64_t n = 0; n + 1 < n_customers; ++n) {
      const double wn = t.W[n * n_stations + k];
      const double sn = t.S[n * n_stations + k];
      const double an = t.A[n * astride + k];
      t.W[(n + 1) * n_stations + k] = positive_part(wn + sn - an);
      t.A[n * astride + k + 1] =
          positive_part(an - sn - wn) + t.S[(n + 1) * n_stations + k];
    }
  }
  return t;
}

TandemReport iterate_tandem(ArrivalLaw law, double alpha,
                            const WeightDistribution& service,
                            int64_t n_customers, int64_t n_stations,
                            uint64_t seed) {
  TandemReport rep;
  rep.tableau = run_tandem(law, alpha, service, n_customers, n_stations, seed);
  const QueueTableau& t = rep.tableau;

  WeightDistribution candidate = service;
  candidate.mean = alpha;  // same family, fixed-point mean
  stats::Law law_cdf{[candidate](double x) { return candidate.cdf(x); },
                     [candidate](double x) { return candidate.cdf_left(x); }};

  std::vector<double> pooled;  // kept sorted across stations
  for (int64_t k = 0; k <= t.n_stations; ++k) {
    std::vector<double> col;
    col.reserve(static_cast<size_t>(t.n_customers - 1 - t.warmup));
    for (int64_t n = t.warmup; n + 1 < t.n_customers; ++n) col.push_back(t.a(n, k));
    std::sort(col.begin(), col.end());
    StationStats st;
    st.station = k;
    st.mean_arrival = stats::mean(col);
    st.ks_to_candidate = stats::ks_statistic_sorted(col, law_cdf);
    st.ks_pvalue = stats::ks_pvalue(col.size(), st.ks_to_candidate);
    const auto old_size = static_cast<std::ptrdiff_t>(pooled.size());
    pooled.insert(pooled.end(), col.begin(), col.end());
    std::inplace_merge(pooled.begin(), pooled.begin() + old_size, pooled.end());
    st.cesaro_ks = stats::ks_statistic_sorted(pooled, law_cdf);
    rep.stations.push_back(st);
  }
  return rep;
}

double sojourn_mean(const QueueTableau& t, int64_t station) {
  if (station < 0 || station >= t.n_stations)
    throw std::out_of_range("station index out of range");
  double s = 0;
  int64_t cnt = 0;
  for (int64_t n = t.warmup; n < t.n_customers; ++n, ++cnt)
    s += t.w(n, station) + t.s(n, station);
  return s / static_cast<double>(cnt);
}

double waiting_zero_fraction(const QueueTableau& t, int64_t station) {
  if (station < 0 || station >= t.n_stations)
    throw std::out_of_range("station index out of range");
  int64_t zero = 0, cnt = 0;
  for (int64_t n = t.warmup; n < t.n_customers; ++n, ++cnt)
    if (t.w(n, station) == 0) ++zero;
  return static_cast<double>(zero) / static_cast<double>(cnt);
}

std::vector<QueueTableau> coupled_monotone(const std::vector<double>& alphas,
                                           const WeightDistribution& service,
                                           int64_t n_customers,
                                           int64_t n_stations, uint64_t seed) {
  for (size_t i = 1; i < alphas.size(); ++i)
    if (!(alphas[i - 1] <= alphas[i]))
      throw std::invalid_argument("alphas must be sorted ascending");
  std::vector<QueueTableau> out;
  // deterministic A0 = alpha gives the pointwise initial coupling; the shared
  // seed reuses one service array across all systems
  for (double a : alphas)
    out.push_back(run_tandem(ArrivalLaw::Deterministic, a, service, n_customers,
                             n_stations, seed));
  return out;
}

CouplingCheck check_coupling(const QueueTableau& lo, const QueueTableau& hi) {
  if (lo.n_customers != hi.n_customers || lo.n_stations != hi.n_stations)
    throw std::invalid_argument("coupled tableaux must share dimensions");
  if (lo.S != hi.S) throw std::invalid_argument("coupling broken: differing services");
  CouplingCheck c;
  for (size_t i = 0; i < lo.A.size(); ++i)
    if (lo.A[i] > hi.A[i]) {
      c.arrivals_ordered = false;
      ++c.violations;
    }
  for (size_t i = 0; i < lo.W.size(); ++i)
    if (lo.W[i] < hi.W[i]) {
      c.waits_ordered = false;
      ++c.violations;
    }
  return c;
}

TransposeReport transpose_system(const QueueTableau& t) {
  // transposed variables on the window:
  //   A~(i,j) = W(j-1, i+1) + S(j-1, i+1)
  //   S~(i,j) = S(j, i)
  //   W~(i,j) = A(j-1, i+1) - S(j, i)
  // where i indexes stations of the original system and j customers.
  const int64_t i_max = t.n_stations - 2;   // need station i+1 <= n_stations-1
  const int64_t j_min = std::max<int64_t>(t.warmup, 1);
  const int64_t j_max = t.n_customers - 2;  // A(j-1, .) needs j-1 <= n-2
  if (i_max < 1 || j_max - j_min < 1)
    throw std::domain_error("window too small for the transposed system");

  auto At = [&](int64_t i, int64_t j) { return t.w(j - 1, i + 1) + t.s(j - 1, i + 1); };
  auto St = [&](int64_t i, int64_t j) { return t.s(j, i); };
  auto Wt = [&](int64_t i, int64_t j) { return t.a(j - 1, i + 1) - t.s(j, i); };

  TransposeReport rep;
  rep.window_customers = j_max - j_min + 1;
  rep.window_stations = i_max + 1;

  double sum_at = 0;
  int64_t cnt = 0;
  for (int64_t i = 0; i <= i_max; ++i) {
    for (int64_t j = j_min; j <= j_max; ++j) {
      sum_at += At(i, j);
      ++cnt;
      if (Wt(i, j) < 0) rep.max_lindley_residual = std::max(rep.max_lindley_residual, -Wt(i, j));
      if (i >= 1) {
        // W~(i,j) = (W~(i-1,j) + S~(i-1,j) - A~(i-1,j))^+
        const double lhs = Wt(i, j);
        const double rhs = positive_part(Wt(i - 1, j) + St(i - 1, j) - At(i - 1, j));
        rep.max_lindley_residual =
            std::max(rep.max_lindley_residual, std::abs(lhs - rhs));
      }
      if (j < j_max) {
        // A~(i,j+1) = (A~(i,j) - S~(i,j) - W~(i,j))^+ + S~(i+1,j)
        const double lhs = At(i, j + 1);
        const double rhs =
            positive_part(At(i, j) - St(i, j) - Wt(i, j)) + St(i + 1, j);
        rep.max_departure_residual =
            std::max(rep.max_departure_residual, std::abs(lhs - rhs));
      }
      rep.service_transposed = rep.service_transposed && St(i, j) == t.s(j, i);
    }
  }
  rep.mean_a_tilde = sum_at / static_cast<double>(cnt);
  return rep;
}

}  // namespace lpp
