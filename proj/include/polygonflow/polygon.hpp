#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polygonflow/error.hpp"

namespace polygonflow {

/// xoshiro256** seeded through splitmix64.
///
/// This is the only random source in the project. The mapping from a seed to
/// the output stream is fixed: the four state words are the first four
/// splitmix64 outputs of the seed, and doubles take the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double next_unit();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

 private:
  std::uint64_t s_[4];
};

/// A closed polygon given by its vertex coordinate vectors.
class Polygon {
 public:
  /// Validating constructor; see make_polygon.
  Polygon(std::vector<double> xs, std::vector<double> ys);

  std::size_t size() const noexcept { return xs_.size(); }
  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ys() const noexcept { return ys_; }

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Division points for every segment. Segment i joins vertex i to vertex
/// (i + 1) mod n and is divided at (1 - xi_i) v_i + xi_i v_{i+1}.
class DivisionScheme {
 public:
  static DivisionScheme uniform(double xi);
  static DivisionScheme per_segment(std::vector<double> xis);

  bool is_uniform() const noexcept { return uniform_; }
  /// True for uniform schemes and for per-segment schemes whose values are all equal.
  bool all_equal() const noexcept;
  double xi_at(std::size_t segment) const noexcept {
    return uniform_ ? xis_.front() : xis_[segment];
  }
  /// Uniform value; only meaningful when is_uniform().
  double xi() const noexcept { return xis_.front(); }
  std::span<const double> values() const noexcept { return xis_; }

  /// Throws SchemeLengthMismatch if a per-segment scheme does not have n values.
  void check_size(std::size_t n) const;

 private:
  DivisionScheme(bool uniform, std::vector<double> xis);

  bool uniform_;
  std::vector<double> xis_;
};

/// Throws DivisionPointOutOfRange unless 0 < xi < 1.
void check_division_point(double xi);

/// The cyclic two-diagonal averaging matrix, stored as (n, scheme).
class TransformMatrix {
 public:
  TransformMatrix(std::size_t n, DivisionScheme scheme);

  std::size_t size() const noexcept { return n_; }
  const DivisionScheme& scheme() const noexcept { return scheme_; }

  double diagonal(std::size_t row) const noexcept { return 1.0 - scheme_.xi_at(row); }
  double super_diagonal(std::size_t row) const noexcept { return scheme_.xi_at(row); }

  /// Dense n x n form. Intended for oracles and small solves.
  Eigen::MatrixXd dense() const;

  /// y = M x via the two-point stencil.
  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t n_;
  DivisionScheme scheme_;
};

enum class IterationMode { Normalized, Unnormalized };

struct CoordinateNorms {
  double x = 0.0;
  double y = 0.0;
};

/// Snapshots P^(0..K) of an iteration run.
///
/// norms[k] holds the 2-norms of the centered coordinate vectors of the k-th
/// raw iterate, i.e. before renormalization in normalized mode.
struct IterationTrace {
  std::vector<Polygon> polygons;
  std::vector<CoordinateNorms> norms;
  IterationMode mode = IterationMode::Normalized;
  /// Empty for traces synthesized from a closed form with a free phase.
  std::optional<DivisionScheme> scheme;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(const Interval& other) const noexcept {
    return lo <= other.lo && other.hi <= hi;
  }
};

struct BoundingBox {
  Interval x;
  Interval y;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Centered coordinate vectors with 2-norm below this are treated as degenerate.
inline constexpr double kDegenerateNorm = 1e-14;

Polygon make_polygon(std::vector<double> xs, std::vector<double> ys);

/// n vertices with coordinates uniform on [-half_width, half_width), drawn
/// x0, y0, x1, y1, ... from Rng(seed).
Polygon random_polygon(std::size_t n, std::uint64_t seed, double half_width = 1.0);

Point centroid(const Polygon& p);

/// Moves the centroid to the origin and scales xs and ys independently to unit 2-norm.
Polygon center_and_normalize(const Polygon& p);

TransformMatrix build_transform(std::size_t n, const DivisionScheme& scheme);

Polygon apply_transform(const TransformMatrix& transform, const Polygon& p);

IterationTrace iterate(const Polygon& p, const DivisionScheme& scheme, std::size_t steps,
                       IterationMode mode);

BoundingBox bounding_interval(const Polygon& p);

// Small vector helpers shared by the analysis modules.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double mean(std::span<const double> a);

}  // namespace polygonflow
