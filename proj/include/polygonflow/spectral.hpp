#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace polygonflow {

using Complex = std::complex<double>;

/// omega_j = exp(2 pi i j / n), j = 0..n-1.
std::vector<Complex> roots_of_unity(std::size_t n);

struct EigenPair {
  std::size_t index = 0;
  Complex omega;
  Complex lambda;
  /// Entry m is omega^m / sqrt(n).
  std::vector<Complex> vector;
};

/// Closed-form eigenpair j of the uniform transform (1 - xi) I + xi S.
EigenPair eigenpair(std::size_t n, double xi, std::size_t j);

/// |lambda| for the eigenvalue at angle 2 pi j / n. Uses the folded index
/// min(j, n - j) so conjugate eigenvalues get bit-identical magnitudes.
double eigenvalue_magnitude(std::size_t n, double xi, std::size_t j);

/// Indices 1..n-1 sorted by descending |lambda|, ties by ascending index.
std::vector<std::size_t> eigen_magnitude_order(std::size_t n, double xi);

struct DampingReport {
  std::size_t n = 0;
  double xi = 0.0;
  /// |lambda| over indices 1..n-1 in eigen_magnitude_order.
  std::vector<double> magnitudes;
  /// |lambda_4| / |lambda_2| from the complex eigenvalues.
  double rho = 0.0;
  /// sqrt((1 - 4 xi (1 - xi) sin^2(2 pi / n)) / (1 - 4 xi (1 - xi) sin^2(pi / n))).
  double rho_closed_form = 0.0;
  /// (1/xi - 4 (1 - xi) sin^2(2 pi / n)) / (1/xi - 4 (1 - xi) sin^2(4 pi / n)), square-rooted.
  /// This is the widely quoted simplification; it does not agree with rho.
  double rho_literal_formula = 0.0;
  /// Minimizer of rho over the default 999-point grid.
  double argmin_xi = 0.0;
};

/// Throws TooFewVertices for n < 5 and DivisionPointOutOfRange for xi outside (0, 1).
DampingReport damping_factor(std::size_t n, double xi);

/// rho alone, without the grid scan.
double damping_ratio(std::size_t n, double xi);

/// Scans xi = i / (grid_points + 1), i = 1..grid_points, returning the first minimizer of rho.
double damping_argmin_scan(std::size_t n, std::size_t grid_points);

inline constexpr std::size_t kDefaultDampingGrid = 999;

}  // namespace polygonflow
