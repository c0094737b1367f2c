#include "polygonflow/hetero.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace polygonflow {

std::vector<double> left_fixed_vector(const TransformMatrix& transform) {
  const auto n = static_cast<Eigen::Index>(transform.size());
  // (M^T - I) w = 0 with the last equation replaced by sum(w) = 1.
  Eigen::MatrixXd system = transform.dense().transpose() - Eigen::MatrixXd::Identity(n, n);
  system.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  const Eigen::VectorXd w = system.fullPivLu().solve(rhs);
  return {w.data(), w.data() + n};
}

double spectral_gap(const TransformMatrix& transform) {
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(transform.dense(), false);
  const Eigen::VectorXcd eig = solver.eigenvalues();
  // Drop the single eigenvalue closest to 1.
  Eigen::Index unit = 0;
  for (Eigen::Index i = 1; i < eig.size(); ++i) {
    if (std::abs(eig(i) - 1.0) < std::abs(eig(unit) - 1.0)) unit = i;
  }
  double gap = 0.0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (i != unit) gap = std::max(gap, std::abs(eig(i)));
  }
  return gap;
}

LimitPrediction predict_limit(const Polygon& p, const TransformMatrix& transform) {
  if (p.size() != transform.size()) {
    throw Error(ErrorCode::SizeMismatch, "polygon with " + std::to_string(p.size()) +
                                             " vertices, transform of size " +
                                             std::to_string(transform.size()));
  }
  LimitPrediction out;
  out.weights = left_fixed_vector(transform);
  out.point = {dot(out.weights, p.xs()), dot(out.weights, p.ys())};
  out.spectral_gap = spectral_gap(transform);
  return out;
}

Point predict_limit_point(const Polygon& p, const TransformMatrix& transform) {
  if (p.size() != transform.size()) {
    throw Error(ErrorCode::SizeMismatch, "polygon with " + std::to_string(p.size()) +
                                             " vertices, transform of size " +
                                             std::to_string(transform.size()));
  }
  const auto w = left_fixed_vector(transform);
  return {dot(w, p.xs()), dot(w, p.ys())};
}

std::int64_t hetero_period_lcm(std::span<const std::int64_t> periods) {
  if (periods.empty()) throw Error(ErrorCode::ValidationError, "no periods given");
  std::int64_t acc = 1;
  for (std::int64_t q : periods) {
    if (q < 1) {
      throw Error(ErrorCode::ValidationError, "periods must be positive, got " + std::to_string(q));
    }
    const std::int64_t g = std::gcd(acc, q);
    std::int64_t next = 0;
    if (__builtin_mul_overflow(acc / g, q, &next)) {
      throw Error(ErrorCode::Overflow, "least common multiple exceeds the 64-bit range");
    }
    acc = next;
  }
  return acc;
}

}  // namespace polygonflow
