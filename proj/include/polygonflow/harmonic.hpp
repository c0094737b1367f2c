#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "polygonflow/polygon.hpp"

namespace polygonflow {

/// First-harmonic cosine/sine pair sampled at tau_i = 2 pi i / n.
///
/// The basis phase is delta + half_steps * pi / n. The half-step count is kept
/// as an integer so that two extra half steps are an exact cyclic relabeling.
struct HarmonicBasis {
  std::size_t n = 0;
  std::size_t half_steps = 0;
  double delta = 0.0;
  std::vector<double> cos_vec;
  std::vector<double> sin_vec;
};

/// C(tau + shift), S(tau + shift) scaled by sqrt(2/n).
HarmonicBasis make_basis(std::size_t n, double shift);
/// C_k, S_k: basis shifted by k pi / n (plus delta).
HarmonicBasis make_shifted_basis(std::size_t n, std::size_t k, double delta = 0.0);

/// z = beta + i alpha with alpha = (2 xi - 1) sin(pi/n), beta = cos(pi/n).
struct RotationNumber {
  std::size_t n = 0;
  double xi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::complex<double> z;
  double modulus = 0.0;
  /// atan2(alpha, beta), in (-pi, pi].
  double phase = 0.0;
};

RotationNumber rotation_number(std::size_t n, double xi);

/// M^k S_0 = |z|^k (cos(k arg z) S_k + sin(k arg z) C_k).
std::vector<double> closed_power_S(std::size_t n, double xi, std::size_t k);
/// M^k C_0 = |z|^k (cos(k arg z) C_k - sin(k arg z) S_k).
std::vector<double> closed_power_C(std::size_t n, double xi, std::size_t k);

struct D2Projection {
  double zeta = 0.0;
  double eta = 0.0;
  /// atan2(eta, zeta); empty when the in-plane part is numerically zero.
  std::optional<double> theta;
  double residual = 0.0;

  bool zero_projection() const noexcept { return !theta.has_value(); }
};

/// zeta^2 + eta^2 below this leaves theta undefined.
inline constexpr double kZeroProjectionSq = 1e-24;

D2Projection project_D2(std::span<const double> vec);

/// u^(k) = cos(theta_u - k arg z) C_k + sin(theta_u - k arg z) S_k, and v^(k) likewise.
std::pair<std::vector<double>, std::vector<double>> predict_vertex_vectors(
    double theta_u, double theta_v, std::size_t n, double xi, std::size_t k);

/// Same flow with the per-step phase advance given directly. predict_vertex_vectors
/// is this with phase = rotation_number(n, xi).phase.
std::pair<std::vector<double>, std::vector<double>> predict_vertex_vectors_with_phase(
    double theta_u, double theta_v, std::size_t n, double phase, std::size_t k);

/// Closed-form trace of the normalized flow for k = 0..steps.
IterationTrace predicted_trace(double theta_u, double theta_v, std::size_t n, double xi,
                               std::size_t steps);
IterationTrace predicted_trace_with_phase(double theta_u, double theta_v, std::size_t n,
                                          double phase, std::size_t steps);

/// |z|^k.
double predicted_norm(std::size_t n, double xi, std::size_t k);

/// Out-of-plane residual of the normalized iterates w^(0..steps) of a single
/// coordinate vector. The start is centered and normalized first.
std::vector<double> d2_decay_rate(std::span<const double> start, double xi, std::size_t steps);

/// Polygon version: per step, the root-sum-square of the x and y residuals.
std::vector<double> d2_decay_rate(const Polygon& p, const DivisionScheme& scheme,
                                  std::size_t steps);

}  // namespace polygonflow
