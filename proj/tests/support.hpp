#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polygonflow/polygon.hpp"

namespace testsupport {

// Hand-rolled generators for property tests. Everything is driven by the
// library's seeded Rng so failures reproduce.
struct Gen {
  polygonflow::Rng rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double real(double lo, double hi) { return rng.uniform(lo, hi); }
  std::size_t count(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng.next_u64() % (hi - lo + 1));
  }
  // Division point kept away from the open-interval boundary.
  double xi() { return rng.uniform(0.02, 0.98); }
  std::vector<double> xis(std::size_t n) {
    std::vector<double> out(n);
    for (auto& v : out) v = xi();
    return out;
  }
  polygonflow::Polygon polygon(std::size_t n, double half_width = 1.0) {
    return polygonflow::random_polygon(n, rng.next_u64(), half_width);
  }
};

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Kahan-compensated mean, independent of the library's summation.
inline double kahan_mean(std::span<const double> v) {
  double sum = 0.0, c = 0.0;
  for (double x : v) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(v.size());
}

}  // namespace testsupport

// Evaluates expr and reports the ErrorCode it throws, if any.
#define PF_ERROR_CODE(expr)                                      \
  ([&]() -> std::optional<polygonflow::ErrorCode> {              \
    try {                                                        \
      (void)(expr);                                              \
    } catch (const polygonflow::Error& e) {                      \
      return e.code();                                           \
    }                                                            \
    return std::nullopt;                                         \
  }())
