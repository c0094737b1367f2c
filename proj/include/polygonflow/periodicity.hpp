#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polygonflow/polygon.hpp"

namespace polygonflow {

struct RationalApprox {
  std::int64_t p = 0;
  std::int64_t q = 1;
  double value = 0.0;
  /// |target - p / q|
  double error = 0.0;
};

/// Regular continued-fraction terms [a0; a1, a2, ...] of x. Stops after
/// max_terms terms or once the remaining fractional part drops below 1e-12.
std::vector<std::int64_t> continued_fraction(double x, std::size_t max_terms);

/// Convergents p/q of x (from its continued fraction) with q <= q_max.
std::vector<RationalApprox> convergents(double x, std::int64_t q_max,
                                        std::size_t max_terms = 64);

inline constexpr double kExactRationalTol = 1e-12;
inline constexpr double kEmpiricalPeriodTol = 1e-8;
inline constexpr std::int64_t kDefaultQMax = 1000;

/// Smallest-q convergent of phi / pi within tol, with q <= q_max.
std::optional<RationalApprox> rational_multiple_of_pi(double phi, std::int64_t q_max,
                                                       double tol = kExactRationalTol);

struct ExactPeriod {
  /// 2q
  std::int64_t period = 0;
  RationalApprox witness;
};

/// Period 2q of the closed-form normalized flow when arg z = (p/q) pi.
std::optional<ExactPeriod> exact_period(std::size_t n, double xi, std::int64_t q_max);

struct NearPeriod {
  std::int64_t period = 0;
  /// |2q |arg z| - 2 p pi|
  double deviation = 0.0;
  RationalApprox approx;
};

/// Candidate periods from the convergents of |arg z| / pi, sorted by q.
std::vector<NearPeriod> near_periods(std::size_t n, double xi, std::int64_t q_max);

struct EmpiricalPeriod {
  std::size_t period = 0;
  /// Largest vertex distance over the compared snapshot pairs.
  double distance = 0.0;
  /// Snapshot k + period has vertex i at snapshot k's vertex (i + offset) mod n.
  std::size_t offset = 0;
};

/// Max vertex distance between a and b after relabeling b[i] -> a[(i + offset) mod n].
double shifted_distance(const Polygon& a, const Polygon& b, std::size_t offset);

/// Smallest offset minimizing shifted_distance, with that distance.
std::pair<std::size_t, double> best_cyclic_match(const Polygon& a, const Polygon& b);

/// Smallest l >= 1 such that every snapshot in the trace's second half
/// reappears l steps later up to one fixed cyclic relabeling, within tol.
std::optional<EmpiricalPeriod> empirical_period(const IterationTrace& trace,
                                                double tol = kEmpiricalPeriodTol);

struct PeriodReport {
  std::optional<ExactPeriod> exact;
  std::vector<NearPeriod> near;
  std::optional<EmpiricalPeriod> empirical;
};

}  // namespace polygonflow
