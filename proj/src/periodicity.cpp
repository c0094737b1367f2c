#include "polygonflow/periodicity.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "polygonflow/harmonic.hpp"

namespace polygonflow {

namespace {

constexpr double kFractionFloor = 1e-12;
// Largest magnitude for which floor(x) converts to int64 without overflow.
constexpr double kTermLimit = 9.0e18;

}  // namespace

std::vector<std::int64_t> continued_fraction(double x, std::size_t max_terms) {
  std::vector<std::int64_t> terms;
  if (!std::isfinite(x) || max_terms == 0) return terms;
  double rest = x;
  while (terms.size() < max_terms) {
    const double whole = std::floor(rest);
    if (std::abs(whole) > kTermLimit) break;
    terms.push_back(static_cast<std::int64_t>(whole));
    const double frac = rest - whole;
    if (frac < kFractionFloor) break;
    rest = 1.0 / frac;
  }
  return terms;
}

std::vector<RationalApprox> convergents(double x, std::int64_t q_max, std::size_t max_terms) {
  std::vector<RationalApprox> out;
  std::int64_t p_prev = 1, p_prev2 = 0;
  std::int64_t q_prev = 0, q_prev2 = 1;
  for (std::int64_t a : continued_fraction(x, max_terms)) {
    std::int64_t p = 0, q = 0, ap = 0, aq = 0;
    if (__builtin_mul_overflow(a, p_prev, &ap) || __builtin_add_overflow(ap, p_prev2, &p) ||
        __builtin_mul_overflow(a, q_prev, &aq) || __builtin_add_overflow(aq, q_prev2, &q)) {
      break;
    }
    if (q > q_max) break;
    const double value = static_cast<double>(p) / static_cast<double>(q);
    out.push_back({p, q, value, std::abs(x - value)});
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
  }
  return out;
}

std::optional<RationalApprox> rational_multiple_of_pi(double phi, std::int64_t q_max,
                                                       double tol) {
  for (const RationalApprox& c : convergents(phi / std::numbers::pi, q_max)) {
    if (c.error <= tol) return c;
  }
  return std::nullopt;
}

std::optional<ExactPeriod> exact_period(std::size_t n, double xi, std::int64_t q_max) {
  const RotationNumber r = rotation_number(n, xi);
  const auto approx = rational_multiple_of_pi(r.phase, q_max, kExactRationalTol);
  if (!approx) return std::nullopt;
  return ExactPeriod{2 * approx->q, *approx};
}

std::vector<NearPeriod> near_periods(std::size_t n, double xi, std::int64_t q_max) {
  const double phase = std::abs(rotation_number(n, xi).phase);
  std::vector<NearPeriod> out;
  for (const RationalApprox& c : convergents(phase / std::numbers::pi, q_max)) {
    const double deviation = std::abs(2.0 * static_cast<double>(c.q) * phase -
                                      2.0 * static_cast<double>(c.p) * std::numbers::pi);
    out.push_back({2 * c.q, deviation, c});
    if (deviation < kExactRationalTol) break;
  }
  return out;
}

double shifted_distance(const Polygon& a, const Polygon& b, std::size_t offset) {
  const std::size_t n = a.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + offset) % n;
    worst = std::max(worst, std::hypot(b.xs()[i] - a.xs()[j], b.ys()[i] - a.ys()[j]));
  }
  return worst;
}

std::pair<std::size_t, double> best_cyclic_match(const Polygon& a, const Polygon& b) {
  std::size_t best_offset = 0;
  double best = std::numeric_limits<double>::infinity();
  if (a.size() != b.size()) return {best_offset, best};
  for (std::size_t s = 0; s < a.size(); ++s) {
    const double d = shifted_distance(a, b, s);
    if (d < best) {
      best = d;
      best_offset = s;
    }
  }
  return {best_offset, best};
}

std::optional<EmpiricalPeriod> empirical_period(const IterationTrace& trace, double tol) {
  const auto& snaps = trace.polygons;
  if (snaps.size() < 3) return std::nullopt;
  const std::size_t last = snaps.size() - 1;
  const std::size_t start = last / 2;
  for (std::size_t len = 1; start + len <= last; ++len) {
    const auto [offset, first] = best_cyclic_match(snaps[start], snaps[start + len]);
    if (!(first <= tol)) continue;
    double worst = first;
    for (std::size_t k = start + 1; k + len <= last && worst <= tol; ++k) {
      worst = std::max(worst, shifted_distance(snaps[k], snaps[k + len], offset));
    }
    if (worst <= tol) return EmpiricalPeriod{len, worst, offset};
  }
  return std::nullopt;
}

}  // namespace polygonflow
