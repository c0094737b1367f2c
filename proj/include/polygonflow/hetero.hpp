#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polygonflow/polygon.hpp"

namespace polygonflow {

/// Probability vector w with w^T M = w^T, from a dense linear solve.
std::vector<double> left_fixed_vector(const TransformMatrix& transform);

/// Largest |lambda| of M other than the eigenvalue 1 (dense eigensolve).
double spectral_gap(const TransformMatrix& transform);

struct LimitPrediction {
  std::vector<double> weights;
  Point point;
  double spectral_gap = 0.0;
};

/// Limit of the unnormalized iteration: the w-weighted barycenter of the
/// starting vertices. Coincides with the centroid only when every column of
/// M sums to one, i.e. for uniform schemes.
LimitPrediction predict_limit(const Polygon& p, const TransformMatrix& transform);
Point predict_limit_point(const Polygon& p, const TransformMatrix& transform);

/// Least common multiple; throws Overflow past the int64 range.
std::int64_t hetero_period_lcm(std::span<const std::int64_t> periods);

}  // namespace polygonflow
