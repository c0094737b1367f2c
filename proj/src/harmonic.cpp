#include "polygonflow/harmonic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polygonflow/error.hpp"

namespace polygonflow {

namespace {

void require_vertices(std::size_t n) {
  if (n < 3) {
    throw Error(ErrorCode::TooFewVertices, "n must be at least 3, got " + std::to_string(n));
  }
}

// Entry i sits at angle pi (2 i + half_steps) / n + delta. The integer part is
// reduced mod 2n before conversion so shifted bases are exact relabelings.
HarmonicBasis build_basis(std::size_t n, std::size_t half_steps, double delta) {
  require_vertices(n);
  HarmonicBasis basis{n, half_steps, delta, std::vector<double>(n), std::vector<double>(n)};
  const double scale = std::sqrt(2.0 / static_cast<double>(n));
  const std::size_t period = 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t slot = (2 * i + half_steps % period) % period;
    const double angle =
        std::numbers::pi * static_cast<double>(slot) / static_cast<double>(n) + delta;
    basis.cos_vec[i] = scale * std::cos(angle);
    basis.sin_vec[i] = scale * std::sin(angle);
  }
  return basis;
}

std::vector<double> combine(double a, std::span<const double> x, double b,
                            std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

}  // namespace

HarmonicBasis make_basis(std::size_t n, double shift) { return build_basis(n, 0, shift); }

HarmonicBasis make_shifted_basis(std::size_t n, std::size_t k, double delta) {
  return build_basis(n, k, delta);
}

RotationNumber rotation_number(std::size_t n, double xi) {
  require_vertices(n);
  check_division_point(xi);
  const double h = std::numbers::pi / static_cast<double>(n);
  RotationNumber r;
  r.n = n;
  r.xi = xi;
  r.alpha = (2.0 * xi - 1.0) * std::sin(h);
  r.beta = std::cos(h);
  r.z = {r.beta, r.alpha};
  r.modulus = std::hypot(r.beta, r.alpha);
  r.phase = std::atan2(r.alpha, r.beta);
  return r;
}

std::vector<double> closed_power_S(std::size_t n, double xi, std::size_t k) {
  const RotationNumber r = rotation_number(n, xi);
  const HarmonicBasis basis = make_shifted_basis(n, k);
  if (k == 0) return basis.sin_vec;
  const double scale = std::pow(r.modulus, static_cast<double>(k));
  const double angle = static_cast<double>(k) * r.phase;
  return combine(scale * std::cos(angle), basis.sin_vec, scale * std::sin(angle), basis.cos_vec);
}

std::vector<double> closed_power_C(std::size_t n, double xi, std::size_t k) {
  const RotationNumber r = rotation_number(n, xi);
  const HarmonicBasis basis = make_shifted_basis(n, k);
  if (k == 0) return basis.cos_vec;
  const double scale = std::pow(r.modulus, static_cast<double>(k));
  const double angle = static_cast<double>(k) * r.phase;
  return combine(scale * std::cos(angle), basis.cos_vec, -scale * std::sin(angle), basis.sin_vec);
}

D2Projection project_D2(std::span<const double> vec) {
  const HarmonicBasis basis = make_basis(vec.size(), 0.0);
  D2Projection proj;
  proj.zeta = dot(vec, basis.cos_vec);
  proj.eta = dot(vec, basis.sin_vec);
  if (proj.zeta * proj.zeta + proj.eta * proj.eta >= kZeroProjectionSq) {
    proj.theta = std::atan2(proj.eta, proj.zeta);
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    const double r = vec[i] - proj.zeta * basis.cos_vec[i] - proj.eta * basis.sin_vec[i];
    sq += r * r;
  }
  proj.residual = std::sqrt(sq);
  return proj;
}

std::pair<std::vector<double>, std::vector<double>> predict_vertex_vectors_with_phase(
    double theta_u, double theta_v, std::size_t n, double phase, std::size_t k) {
  const HarmonicBasis basis = make_shifted_basis(n, k);
  const double drift = static_cast<double>(k) * phase;
  const double a = theta_u - drift;
  const double b = theta_v - drift;
  return {combine(std::cos(a), basis.cos_vec, std::sin(a), basis.sin_vec),
          combine(std::cos(b), basis.cos_vec, std::sin(b), basis.sin_vec)};
}

std::pair<std::vector<double>, std::vector<double>> predict_vertex_vectors(
    double theta_u, double theta_v, std::size_t n, double xi, std::size_t k) {
  return predict_vertex_vectors_with_phase(theta_u, theta_v, n, rotation_number(n, xi).phase, k);
}

IterationTrace predicted_trace_with_phase(double theta_u, double theta_v, std::size_t n,
                                          double phase, std::size_t steps) {
  IterationTrace trace;
  trace.mode = IterationMode::Normalized;
  for (std::size_t k = 0; k <= steps; ++k) {
    auto [u, v] = predict_vertex_vectors_with_phase(theta_u, theta_v, n, phase, k);
    trace.polygons.emplace_back(std::move(u), std::move(v));
    trace.norms.push_back({1.0, 1.0});
  }
  return trace;
}

IterationTrace predicted_trace(double theta_u, double theta_v, std::size_t n, double xi,
                               std::size_t steps) {
  const RotationNumber r = rotation_number(n, xi);
  IterationTrace trace = predicted_trace_with_phase(theta_u, theta_v, n, r.phase, steps);
  trace.scheme = DivisionScheme::uniform(xi);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double nrm = std::pow(r.modulus, static_cast<double>(k));
    trace.norms[k] = {nrm, nrm};
  }
  return trace;
}

double predicted_norm(std::size_t n, double xi, std::size_t k) {
  return std::pow(rotation_number(n, xi).modulus, static_cast<double>(k));
}

std::vector<double> d2_decay_rate(std::span<const double> start, double xi, std::size_t steps) {
  const std::size_t n = start.size();
  const TransformMatrix transform = build_transform(n, DivisionScheme::uniform(xi));

  std::vector<double> w(start.begin(), start.end());
  const double m = mean(w);
  for (double& e : w) e -= m;

  std::vector<double> residuals;
  residuals.reserve(steps + 1);
  for (std::size_t k = 0;; ++k) {
    const double nrm = norm2(w);
    if (nrm < kDegenerateNorm) {
      throw Error(ErrorCode::DegeneratePolygon, "iterate collapsed to the zero vector");
    }
    for (double& e : w) e /= nrm;
    residuals.push_back(project_D2(w).residual);
    if (k == steps) break;
    w = transform.apply(w);
  }
  return residuals;
}

std::vector<double> d2_decay_rate(const Polygon& p, const DivisionScheme& scheme,
                                  std::size_t steps) {
  if (!scheme.is_uniform()) {
    throw Error(ErrorCode::ValidationError, "D2 decay is defined for uniform schemes only");
  }
  const IterationTrace trace = iterate(p, scheme, steps, IterationMode::Normalized);
  std::vector<double> residuals;
  residuals.reserve(trace.polygons.size());
  for (const Polygon& q : trace.polygons) {
    residuals.push_back(std::hypot(project_D2(q.xs()).residual, project_D2(q.ys()).residual));
  }
  return residuals;
}

}  // namespace polygonflow
