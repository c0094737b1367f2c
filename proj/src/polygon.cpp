#include "polygonflow/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace polygonflow {

// ---------------------------------------------------------------------------
// Rng

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

// ---------------------------------------------------------------------------
// Polygon

Polygon::Polygon(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) {
    throw Error(ErrorCode::LengthMismatch, "xs has " + std::to_string(xs_.size()) +
                                               " entries, ys has " + std::to_string(ys_.size()));
  }
  if (xs_.size() < 3) {
    throw Error(ErrorCode::TooFewVertices,
                "a polygon needs at least 3 vertices, got " + std::to_string(xs_.size()));
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
      throw Error(ErrorCode::NonFiniteCoordinate, "vertex " + std::to_string(i));
    }
  }
}

Polygon make_polygon(std::vector<double> xs, std::vector<double> ys) {
  return Polygon(std::move(xs), std::move(ys));
}

Polygon random_polygon(std::size_t n, std::uint64_t seed, double half_width) {
  if (n < 3) {
    throw Error(ErrorCode::TooFewVertices,
                "a polygon needs at least 3 vertices, got " + std::to_string(n));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error(ErrorCode::ValidationError, "half_width must be positive and finite");
  }
  Rng rng(seed);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = rng.uniform(-half_width, half_width);
    ys[i] = rng.uniform(-half_width, half_width);
  }
  return Polygon(std::move(xs), std::move(ys));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double mean(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s / static_cast<double>(a.size());
}

Point centroid(const Polygon& p) { return {mean(p.xs()), mean(p.ys())}; }

namespace {

std::vector<double> centered(std::span<const double> v) {
  const double m = mean(v);
  std::vector<double> out(v.begin(), v.end());
  for (double& e : out) e -= m;
  return out;
}

void normalize_in_place(std::vector<double>& v, const char* axis) {
  const double nrm = norm2(v);
  if (nrm < kDegenerateNorm) {
    throw Error(ErrorCode::DegeneratePolygon,
                std::string("centered ") + axis + " coordinates have (near) zero norm");
  }
  for (double& e : v) e /= nrm;
}

}  // namespace

Polygon center_and_normalize(const Polygon& p) {
  auto xs = centered(p.xs());
  auto ys = centered(p.ys());
  normalize_in_place(xs, "x");
  normalize_in_place(ys, "y");
  return Polygon(std::move(xs), std::move(ys));
}

BoundingBox bounding_interval(const Polygon& p) {
  const auto [xmin, xmax] = std::minmax_element(p.xs().begin(), p.xs().end());
  const auto [ymin, ymax] = std::minmax_element(p.ys().begin(), p.ys().end());
  return {{*xmin, *xmax}, {*ymin, *ymax}};
}

// ---------------------------------------------------------------------------
// DivisionScheme / TransformMatrix

void check_division_point(double xi) {
  if (!(xi > 0.0 && xi < 1.0)) {
    throw Error(ErrorCode::DivisionPointOutOfRange,
                "division point must lie in the open interval (0, 1), got " + std::to_string(xi));
  }
}

DivisionScheme::DivisionScheme(bool uniform, std::vector<double> xis)
    : uniform_(uniform), xis_(std::move(xis)) {
  for (double xi : xis_) check_division_point(xi);
}

DivisionScheme DivisionScheme::uniform(double xi) { return DivisionScheme(true, {xi}); }

DivisionScheme DivisionScheme::per_segment(std::vector<double> xis) {
  if (xis.empty()) {
    throw Error(ErrorCode::SchemeLengthMismatch, "per-segment scheme has no values");
  }
  return DivisionScheme(false, std::move(xis));
}

bool DivisionScheme::all_equal() const noexcept {
  return std::all_of(xis_.begin(), xis_.end(), [&](double v) { return v == xis_.front(); });
}

void DivisionScheme::check_size(std::size_t n) const {
  if (!uniform_ && xis_.size() != n) {
    throw Error(ErrorCode::SchemeLengthMismatch, "scheme has " + std::to_string(xis_.size()) +
                                                     " division points for " + std::to_string(n) +
                                                     " segments");
  }
}

TransformMatrix::TransformMatrix(std::size_t n, DivisionScheme scheme)
    : n_(n), scheme_(std::move(scheme)) {
  if (n_ < 3) {
    throw Error(ErrorCode::TooFewVertices, "transform needs n >= 3, got " + std::to_string(n_));
  }
  scheme_.check_size(n_);
}

Eigen::MatrixXd TransformMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = diagonal(static_cast<std::size_t>(i));
    m(i, (i + 1) % n) = super_diagonal(static_cast<std::size_t>(i));
  }
  return m;
}

std::vector<double> TransformMatrix::apply(std::span<const double> x) const {
  if (x.size() != n_) {
    throw Error(ErrorCode::SizeMismatch, "vector of length " + std::to_string(x.size()) +
                                             " applied to transform of size " +
                                             std::to_string(n_));
  }
  std::vector<double> y(n_);
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const double xi = scheme_.xi_at(i);
    y[i] = (1.0 - xi) * x[i] + xi * x[i + 1];
  }
  const double last = scheme_.xi_at(n_ - 1);
  y[n_ - 1] = (1.0 - last) * x[n_ - 1] + last * x[0];
  return y;
}

TransformMatrix build_transform(std::size_t n, const DivisionScheme& scheme) {
  return TransformMatrix(n, scheme);
}

Polygon apply_transform(const TransformMatrix& transform, const Polygon& p) {
  if (transform.size() != p.size()) {
    throw Error(ErrorCode::SizeMismatch, "transform of size " + std::to_string(transform.size()) +
                                             " applied to polygon with " +
                                             std::to_string(p.size()) + " vertices");
  }
  return Polygon(transform.apply(p.xs()), transform.apply(p.ys()));
}

// ---------------------------------------------------------------------------
// Iteration

namespace {

CoordinateNorms centered_norms(const Polygon& p) {
  return {norm2(centered(p.xs())), norm2(centered(p.ys()))};
}

}  // namespace

IterationTrace iterate(const Polygon& p, const DivisionScheme& scheme, std::size_t steps,
                       IterationMode mode) {
  const TransformMatrix transform = build_transform(p.size(), scheme);
  IterationTrace trace{{}, {}, mode, scheme};
  trace.polygons.reserve(steps + 1);
  trace.norms.reserve(steps + 1);

  trace.norms.push_back(centered_norms(p));
  trace.polygons.push_back(mode == IterationMode::Normalized ? center_and_normalize(p) : p);

  for (std::size_t k = 1; k <= steps; ++k) {
    Polygon next = apply_transform(transform, trace.polygons.back());
    trace.norms.push_back(centered_norms(next));
    if (mode == IterationMode::Normalized) next = center_and_normalize(next);
    trace.polygons.push_back(std::move(next));
  }
  return trace;
}

}  // namespace polygonflow
