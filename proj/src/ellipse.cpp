#include "polygonflow/ellipse.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "polygonflow/error.hpp"
#include "polygonflow/harmonic.hpp"

namespace polygonflow {

namespace {

Mat2 rotation(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {c, -s, s, c};
}

}  // namespace

double frobenius_distance(const Mat2& l, const Mat2& r) {
  const double d11 = l.a11 - r.a11, d12 = l.a12 - r.a12;
  const double d21 = l.a21 - r.a21, d22 = l.a22 - r.a22;
  return std::sqrt(d11 * d11 + d12 * d12 + d21 * d21 + d22 * d22);
}

CoefficientMatrix coefficient_matrix_from_phases(double a, double b) {
  return {a, b, {std::cos(a), std::sin(a), std::cos(b), std::sin(b)}};
}

CoefficientMatrix coefficient_matrix(double theta_u, double theta_v, std::size_t n, double xi,
                                     std::size_t k) {
  const double drift = static_cast<double>(k) * rotation_number(n, xi).phase;
  return coefficient_matrix_from_phases(theta_u - drift, theta_v - drift);
}

Mat2 EllipseDecomposition::reconstruct() const {
  return u * Mat2{sigma1, 0.0, 0.0, sigma2} * v.transpose();
}

std::pair<double, double> EllipseDecomposition::semi_axes(std::size_t n) const {
  const double scale = std::sqrt(2.0 / static_cast<double>(n));
  return {scale * sigma1, scale * sigma2};
}

double canonical_axis_angle(double angle) {
  double a = std::remainder(angle, std::numbers::pi);  // [-pi/2, pi/2]
  if (a <= -std::numbers::pi / 2) a += std::numbers::pi;
  return a;
}

// A = R(phi) diag(q + r, q - r) R(theta). With
//   e = (a11 + a22) / 2, f = (a11 - a22) / 2, g = (a21 + a12) / 2, h = (a21 - a12) / 2
// one has q = |(e, h)|, r = |(f, g)|, phi + theta = atan2(h, e), phi - theta = atan2(g, f).
EllipseDecomposition svd_2x2(const Mat2& a) {
  const double e = 0.5 * (a.a11 + a.a22);
  const double f = 0.5 * (a.a11 - a.a22);
  const double g = 0.5 * (a.a21 + a.a12);
  const double h = 0.5 * (a.a21 - a.a12);
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  const double sum = std::atan2(h, e);
  const double diff = std::atan2(g, f);
  const double phi = 0.5 * (sum + diff);
  const double theta = 0.5 * (sum - diff);

  EllipseDecomposition dec;
  dec.u = rotation(phi);
  dec.v = rotation(theta).transpose();
  dec.sigma1 = q + r;
  const double second = q - r;
  if (second < 0.0) {
    dec.v.a12 = -dec.v.a12;
    dec.v.a22 = -dec.v.a22;
  }
  dec.sigma2 = std::abs(second);
  if (dec.sigma1 - dec.sigma2 >= kCircleThreshold) {
    dec.orientation = canonical_axis_angle(phi);
  }
  return dec;
}

std::pair<double, double> paper_sigma(double theta_u, double theta_v, std::size_t k, double arg_z,
                                      std::size_t n) {
  const double scale = std::sqrt(2.0 / static_cast<double>(n));
  const double s = std::sin(theta_u + theta_v - 2.0 * static_cast<double>(k) * arg_z);
  return {scale * std::sqrt(1.0 + s), scale * std::sqrt(std::max(0.0, 1.0 - s))};
}

double orientation(const EllipseDecomposition& dec) {
  if (!dec.orientation) {
    throw Error(ErrorCode::CircleDegenerate,
                "singular values coincide (sigma1 - sigma2 = " +
                    std::to_string(dec.sigma1 - dec.sigma2) + "); orientation undefined");
  }
  return *dec.orientation;
}

std::vector<Point> vertices(const Polygon& p) {
  std::vector<Point> pts(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) pts[i] = {p.xs()[i], p.ys()[i]};
  return pts;
}

EllipseFit fit_ellipse(std::span<const Point> points) {
  if (points.size() < 6) {
    throw Error(ErrorCode::DegenerateFit,
                "ellipse fit needs at least 6 points, got " + std::to_string(points.size()));
  }
  const auto m = static_cast<Eigen::Index>(points.size());

  // Work in centered, unit-RMS coordinates for conditioning.
  Eigen::Vector2d mu = Eigen::Vector2d::Zero();
  for (const Point& p : points) mu += Eigen::Vector2d(p.x, p.y);
  mu /= static_cast<double>(m);
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const Point& p : points) {
    const Eigen::Vector2d d(p.x - mu.x(), p.y - mu.y());
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(m);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> spread(cov);
  const double largest = spread.eigenvalues()(1);
  if (!(largest > 0.0) || spread.eigenvalues()(0) < 1e-12 * largest) {
    throw Error(ErrorCode::DegenerateFit, "points are collinear");
  }
  const double scale = std::sqrt(cov.trace());

  Eigen::MatrixXd quad(m, 3), lin(m, 3);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = (points[static_cast<std::size_t>(i)].x - mu.x()) / scale;
    const double y = (points[static_cast<std::size_t>(i)].y - mu.y()) / scale;
    quad.row(i) << x * x, x * y, y * y;
    lin.row(i) << x, y, 1.0;
  }
  // The constrained fit below always yields an ellipse, so ask the free
  // least-squares conic first whether the data is elliptic at all.
  {
    Eigen::MatrixXd design(m, 6);
    design << quad, lin;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> free_fit(design.transpose() * design);
    const Eigen::VectorXd c = free_fit.eigenvectors().col(0);
    if (4.0 * c(0) * c(2) - c(1) * c(1) <= 0.0) {
      throw Error(ErrorCode::DegenerateFit, "conic through the points is not an ellipse");
    }
  }
  const Eigen::Matrix3d s1 = quad.transpose() * quad;
  const Eigen::Matrix3d s2 = quad.transpose() * lin;
  const Eigen::Matrix3d s3 = lin.transpose() * lin;
  const Eigen::Matrix3d t = -s3.ldlt().solve(s2.transpose());
  const Eigen::Matrix3d reduced = s1 + s2 * t;
  Eigen::Matrix3d constrained;
  constrained.row(0) = reduced.row(2) / 2.0;
  constrained.row(1) = -reduced.row(1);
  constrained.row(2) = reduced.row(0) / 2.0;

  const Eigen::EigenSolver<Eigen::Matrix3d> solver(constrained);
  const Eigen::Matrix3d vecs = solver.eigenvectors().real();
  int pick = -1;
  double best = 0.0;
  for (int j = 0; j < 3; ++j) {
    const Eigen::Vector3d v = vecs.col(j);
    const double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
    if (cond > best) {
      best = cond;
      pick = j;
    }
  }
  if (pick < 0) throw Error(ErrorCode::DegenerateFit, "no elliptic solution");

  const Eigen::Vector3d a1 = vecs.col(pick);
  const Eigen::Vector3d a2 = t * a1;
  const double ca = a1(0), cb = a1(1), cc = a1(2), cd = a2(0), ce = a2(1), cf = a2(2);

  Eigen::Matrix2d lhs;
  lhs << 2.0 * ca, cb, cb, 2.0 * cc;
  const Eigen::Vector2d center = lhs.inverse() * Eigen::Vector2d(-cd, -ce);
  const double f0 = cf + 0.5 * (cd * center.x() + ce * center.y());

  Eigen::Matrix2d shape;
  shape << ca, cb / 2.0, cb / 2.0, cc;
  if (f0 > 0.0) {
    shape = -shape;
  }
  const double level = std::abs(f0);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> axes(shape);
  const Eigen::Vector2d lambdas = axes.eigenvalues();
  if (!(lambdas(0) > 0.0) || !(level > 0.0)) {
    throw Error(ErrorCode::DegenerateFit, "fitted conic is not a real ellipse");
  }
  const Eigen::Vector2d major = axes.eigenvectors().col(0);

  EllipseFit fit;
  fit.center = {mu.x() + scale * center.x(), mu.y() + scale * center.y()};
  fit.semi_axes = {scale * std::sqrt(level / lambdas(0)), scale * std::sqrt(level / lambdas(1))};
  fit.angle = canonical_axis_angle(std::atan2(major.y(), major.x()));
  return fit;
}

}  // namespace polygonflow
