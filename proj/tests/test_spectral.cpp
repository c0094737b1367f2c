#include <cmath>
#include <numbers>

#include "doctest.h"
#include "polygonflow/polygon.hpp"
#include "polygonflow/spectral.hpp"
#include "support.hpp"

namespace pf = polygonflow;
using std::numbers::pi;
using testsupport::Gen;

TEST_CASE("roots_of_unity") {
  const auto r4 = pf::roots_of_unity(4);
  const pf::Complex expected4[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(r4[j] - expected4[j]) <= 1e-15);

  const auto r3 = pf::roots_of_unity(3);
  CHECK(std::abs(r3[1] - pf::Complex(-0.5, std::sqrt(3.0) / 2)) <= 1e-15);
  CHECK(std::abs(r3[2] - pf::Complex(-0.5, -std::sqrt(3.0) / 2)) <= 1e-15);

  // Product of all n-th roots is (-1)^(n+1); oracle is a plain running product.
  for (std::size_t n = 1; n <= 40; ++n) {
    pf::Complex prod = 1.0;
    for (const auto& w : pf::roots_of_unity(n)) {
      CHECK(std::abs(std::abs(w) - 1.0) <= 1e-15);
      prod *= w;
    }
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    CHECK(std::abs(prod - pf::Complex(sign, 0)) <= 1e-12);
  }
}

TEST_CASE("eigenpair examples") {
  for (std::size_t n : {3u, 7u, 20u}) {
    for (double xi : {0.1, 0.5, 0.9}) {
      const auto e = pf::eigenpair(n, xi, 0);
      CHECK(std::abs(e.lambda - pf::Complex(1, 0)) <= 1e-15);
    }
  }
  CHECK(std::abs(pf::eigenpair(4, 0.5, 1).lambda - pf::Complex(0.5, 0.5)) <= 1e-15);
  CHECK(std::abs(pf::eigenpair(4, 0.5, 2).lambda) <= 1e-15);

  CHECK(PF_ERROR_CODE(pf::eigenpair(5, 0.5, 5)) == pf::ErrorCode::IndexOutOfRange);
  CHECK(PF_ERROR_CODE(pf::eigenpair(5, 1.0, 1)) == pf::ErrorCode::DivisionPointOutOfRange);
}

TEST_CASE("property: eigenvalues on the circle, eigen-residual, conjugate pairing") {
  Gen g(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = g.count(3, 64);
    const double xi = g.xi();
    for (std::size_t j = 0; j < n; ++j) {
      const auto e = pf::eigenpair(n, xi, j);
      CHECK(std::abs(std::abs(e.lambda - (1.0 - xi)) - xi) <= 1e-12);
      const auto c = pf::eigenpair(n, xi, (n - j) % n);
      CHECK(std::abs(e.lambda - std::conj(c.lambda)) <= 1e-15);
    }
  }
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = g.count(3, 64);
    const double xi = g.xi();
    const Eigen::MatrixXcd m = pf::build_transform(n, pf::DivisionScheme::uniform(xi))
                                   .dense()
                                   .cast<std::complex<double>>();
    for (std::size_t j = 0; j < n; ++j) {
      const auto e = pf::eigenpair(n, xi, j);
      Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = e.vector[i];
      CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
      CHECK((m * v - e.lambda * v).norm() <= 1e-12);
    }
  }
}

TEST_CASE("eigen_magnitude_order") {
  const auto order6 = pf::eigen_magnitude_order(6, 0.5);
  const std::vector<double> expected6{std::cos(pi / 6), std::cos(pi / 6), std::cos(pi / 3),
                                      std::cos(pi / 3), 0.0};
  REQUIRE(order6.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(pf::eigenvalue_magnitude(6, 0.5, order6[i]) - expected6[i]) <= 1e-15);
  }
  CHECK(order6 == std::vector<std::size_t>{1, 5, 2, 4, 3});

  for (double xi : {0.1, 0.4, 0.77}) {
    CHECK(pf::eigen_magnitude_order(5, xi) == std::vector<std::size_t>{1, 4, 2, 3});
  }

  const auto order4 = pf::eigen_magnitude_order(4, 0.5);
  CHECK(std::abs(pf::eigenvalue_magnitude(4, 0.5, order4[0]) - std::sqrt(0.5)) <= 1e-15);
  CHECK(std::abs(pf::eigenvalue_magnitude(4, 0.5, order4[1]) - std::sqrt(0.5)) <= 1e-15);
  CHECK(std::abs(pf::eigenvalue_magnitude(4, 0.5, order4[2])) <= 1e-15);
}

TEST_CASE("property: |lambda| is non-increasing in angle") {
  Gen g(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = g.count(3, 64);
    const double xi = g.xi();
    for (std::size_t j = 1; j <= n / 2; ++j) {
      const double prev = std::abs(pf::eigenpair(n, xi, j - 1).lambda);
      const double cur = std::abs(pf::eigenpair(n, xi, j).lambda);
      CHECK(cur <= prev + 1e-15);
      const double theta = 2 * pi * static_cast<double>(j) / static_cast<double>(n);
      const double s = std::sin(theta / 2);
      CHECK(std::abs(cur * cur - (1 - 4 * xi * (1 - xi) * s * s)) <= 1e-14);
    }
  }
}

TEST_CASE("damping_factor examples") {
  const auto r6 = pf::damping_factor(6, 0.5);
  CHECK(std::abs(r6.rho - 1.0 / std::sqrt(3.0)) <= 1e-12);
  CHECK(std::abs(r6.rho - r6.rho_closed_form) <= 1e-12);
  CHECK(r6.argmin_xi == 0.5);

  const auto r5 = pf::damping_factor(5, 0.5);
  CHECK(std::abs(r5.rho - std::cos(2 * pi / 5) / std::cos(pi / 5)) <= 1e-12);
  CHECK(std::abs(r5.rho - 0.381966) <= 1e-6);

  // Near xi = 1 the map approaches a pure cyclic shift, whose eigenvalues all
  // have modulus one, so the ratio tends to 1.
  CHECK(std::abs(pf::damping_ratio(20, 0.999) - 1.0) <= 1e-3);

  CHECK(PF_ERROR_CODE(pf::damping_factor(4, 0.5)) == pf::ErrorCode::TooFewVertices);
  CHECK(PF_ERROR_CODE(pf::damping_factor(6, 0.0)) == pf::ErrorCode::DivisionPointOutOfRange);
}

TEST_CASE("the widely quoted simplification disagrees with the eigenvalue ratio") {
  const auto r = pf::damping_factor(6, 0.5);
  CHECK(std::abs(r.rho_literal_formula - r.rho) > 0.1);
}

TEST_CASE("property: damping ratio closed form, symmetry and strict contraction") {
  Gen g(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = g.count(5, 200);
    const double xi = g.xi();
    const auto r = pf::damping_factor(n, xi);
    CHECK(std::abs(r.rho - r.rho_closed_form) <= 1e-12);
    CHECK(std::abs(pf::damping_ratio(n, xi) - pf::damping_ratio(n, 1.0 - xi)) <= 1e-12);
  }
  for (std::size_t n = 5; n <= 64; ++n) {
    for (int i = 1; i < 100; ++i) {
      const double rho = pf::damping_ratio(n, i / 100.0);
      CHECK(rho > 0.0);
      CHECK(rho < 1.0);
    }
  }
}

TEST_CASE("damping_argmin_scan") {
  CHECK(pf::damping_argmin_scan(10, 999) == 0.5);
  CHECK(pf::damping_argmin_scan(100, 999) == 0.5);
  CHECK(pf::damping_argmin_scan(6, 11) == 0.5);
}
