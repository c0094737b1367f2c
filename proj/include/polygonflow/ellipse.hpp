#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "polygonflow/polygon.hpp"

namespace polygonflow {

/// Row-major 2x2 matrix.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  Mat2 transpose() const { return {a11, a21, a12, a22}; }
  double det() const { return a11 * a22 - a12 * a21; }
  friend Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
            l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
  }
};

/// Frobenius norm of l - r.
double frobenius_distance(const Mat2& l, const Mat2& r);

/// Rows (cos a, sin a) and (cos b, sin b) with a = theta_u - k arg z and
/// b = theta_v - k arg z. The limit polygon's vertices are
/// sqrt(2/n) * A * (cos t_i, sin t_i) with t_i = tau_i + k pi / n.
struct CoefficientMatrix {
  double phase_u = 0.0;
  double phase_v = 0.0;
  Mat2 matrix;
};

CoefficientMatrix coefficient_matrix(double theta_u, double theta_v, std::size_t n, double xi,
                                     std::size_t k);
/// Coefficient matrix built directly from the two phases.
CoefficientMatrix coefficient_matrix_from_phases(double a, double b);

struct EllipseDecomposition {
  /// Rotation, det U = +1.
  Mat2 u;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  /// Orthogonal; may contain a reflection.
  Mat2 v;
  /// Principal-axis angle of U's first column in (-pi/2, pi/2]; empty when
  /// sigma1 - sigma2 is below kCircleThreshold.
  std::optional<double> orientation;

  Mat2 reconstruct() const;
  /// sqrt(2/n) * (sigma1, sigma2).
  std::pair<double, double> semi_axes(std::size_t n) const;
};

inline constexpr double kCircleThreshold = 1e-9;

/// Closed-form SVD A = U diag(sigma1, sigma2) V^T of an arbitrary 2x2 matrix.
EllipseDecomposition svd_2x2(const Mat2& a);

/// The semi-axis formula sqrt(2/n) sqrt(1 +- sin(theta_u + theta_v - 2 k arg z))
/// evaluated as written. Kept for comparison with svd_2x2; it does not match
/// the exact singular values in general.
std::pair<double, double> paper_sigma(double theta_u, double theta_v, std::size_t k, double arg_z,
                                      std::size_t n);

/// Throws CircleDegenerate when sigma1 - sigma2 < kCircleThreshold.
double orientation(const EllipseDecomposition& dec);

/// Folds an axis angle into (-pi/2, pi/2].
double canonical_axis_angle(double angle);

struct EllipseFit {
  Point center;
  /// (major, minor).
  std::pair<double, double> semi_axes;
  /// Major-axis angle in (-pi/2, pi/2].
  double angle = 0.0;
};

/// Direct least-squares ellipse fit (Fitzgibbon et al., in the numerically
/// stable Halir-Flusser form). Needs at least 6 points not all collinear.
EllipseFit fit_ellipse(std::span<const Point> points);

/// Vertices of p as points.
std::vector<Point> vertices(const Polygon& p);

}  // namespace polygonflow
