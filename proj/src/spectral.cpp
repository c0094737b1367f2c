#include "polygonflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "polygonflow/error.hpp"
#include "polygonflow/polygon.hpp"

namespace polygonflow {

namespace {

// exp(2 pi i m / n). The angle is taken from min(m, n - m) and conjugated for
// the upper half, so omega_{n-m} is bit-for-bit the conjugate of omega_m.
Complex unit_root(std::size_t n, std::size_t m) {
  const std::size_t r = m % n;
  const std::size_t folded = std::min(r, n - r);
  if (2 * folded == n) return Complex(-1.0, 0.0);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(folded) / static_cast<double>(n);
  const Complex w = std::polar(1.0, angle);
  return r == folded ? w : std::conj(w);
}

Complex eigenvalue_at(double xi, double theta) {
  return Complex(1.0 - xi, 0.0) + xi * std::polar(1.0, theta);
}

void require_damping_domain(std::size_t n, double xi) {
  if (n < 5) {
    throw Error(ErrorCode::TooFewVertices,
                "damping factor needs n >= 5 for a fourth magnitude class, got " +
                    std::to_string(n));
  }
  check_division_point(xi);
}

}  // namespace

std::vector<Complex> roots_of_unity(std::size_t n) {
  std::vector<Complex> roots(n);
  for (std::size_t j = 0; j < n; ++j) roots[j] = unit_root(n, j);
  return roots;
}

EigenPair eigenpair(std::size_t n, double xi, std::size_t j) {
  if (n < 3) {
    throw Error(ErrorCode::TooFewVertices, "n must be at least 3, got " + std::to_string(n));
  }
  check_division_point(xi);
  if (j >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "eigen index " + std::to_string(j) + " out of range for n = " + std::to_string(n));
  }
  EigenPair pair;
  pair.index = j;
  pair.omega = unit_root(n, j);
  pair.lambda = Complex(1.0 - xi, 0.0) + xi * pair.omega;
  pair.vector.resize(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t m = 0; m < n; ++m) pair.vector[m] = scale * unit_root(n, j * m);
  return pair;
}

double eigenvalue_magnitude(std::size_t n, double xi, std::size_t j) {
  const std::size_t folded = std::min(j % n, n - j % n);
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(folded) / static_cast<double>(n);
  return std::abs(eigenvalue_at(xi, theta));
}

std::vector<std::size_t> eigen_magnitude_order(std::size_t n, double xi) {
  std::vector<std::size_t> order(n > 0 ? n - 1 : 0);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::vector<double> mags(n);
  for (std::size_t j = 1; j < n; ++j) mags[j] = eigenvalue_magnitude(n, xi, j);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mags[a] > mags[b]; });
  return order;
}

double damping_ratio(std::size_t n, double xi) {
  require_damping_domain(n, xi);
  return eigenvalue_magnitude(n, xi, 2) / eigenvalue_magnitude(n, xi, 1);
}

DampingReport damping_factor(std::size_t n, double xi) {
  require_damping_domain(n, xi);
  DampingReport report;
  report.n = n;
  report.xi = xi;
  for (std::size_t j : eigen_magnitude_order(n, xi)) {
    report.magnitudes.push_back(eigenvalue_magnitude(n, xi, j));
  }
  // The first two entries are the dominant conjugate pair, the next two the
  // second pair; the ratio is taken between those classes.
  report.rho = report.magnitudes[2] / report.magnitudes[0];

  const double nn = static_cast<double>(n);
  const double c = 4.0 * xi * (1.0 - xi);
  const double s1 = std::sin(std::numbers::pi / nn);
  const double s2 = std::sin(2.0 * std::numbers::pi / nn);
  const double s4 = std::sin(4.0 * std::numbers::pi / nn);
  report.rho_closed_form = std::sqrt((1.0 - c * s2 * s2) / (1.0 - c * s1 * s1));
  report.rho_literal_formula =
      std::sqrt((1.0 / xi - 4.0 * (1.0 - xi) * s2 * s2) / (1.0 / xi - 4.0 * (1.0 - xi) * s4 * s4));
  report.argmin_xi = damping_argmin_scan(n, kDefaultDampingGrid);
  return report;
}

double damping_argmin_scan(std::size_t n, std::size_t grid_points) {
  if (grid_points < 3) {
    throw Error(ErrorCode::ValidationError, "grid needs at least 3 points");
  }
  const double denom = static_cast<double>(grid_points + 1);
  double best_xi = 0.0;
  double best_rho = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= grid_points; ++i) {
    const double xi = static_cast<double>(i) / denom;
    const double rho = damping_ratio(n, xi);
    if (rho < best_rho) {
      best_rho = rho;
      best_xi = xi;
    }
  }
  return best_xi;
}

}  // namespace polygonflow
