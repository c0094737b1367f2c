#include <cmath>
#include <numbers>

#include "doctest.h"
#include "polygonflow/harmonic.hpp"
#include "polygonflow/polygon.hpp"
#include "support.hpp"

namespace pf = polygonflow;
using testsupport::Gen;

namespace {

pf::Polygon unit_square() { return pf::make_polygon({1, -1, -1, 1}, {1, 1, -1, -1}); }

}  // namespace

TEST_CASE("make_polygon validates its input") {
  const auto sq = unit_square();
  CHECK(sq.size() == 4);
  CHECK(sq.xs()[1] == -1.0);

  CHECK(PF_ERROR_CODE(pf::make_polygon({0, 1}, {0, 1})) == pf::ErrorCode::TooFewVertices);
  CHECK(PF_ERROR_CODE(pf::make_polygon({0, 1, 2}, {0, 1})) == pf::ErrorCode::LengthMismatch);
  CHECK(PF_ERROR_CODE(pf::make_polygon({0, 1, NAN}, {0, 1, 2})) ==
        pf::ErrorCode::NonFiniteCoordinate);
  CHECK(PF_ERROR_CODE(pf::make_polygon({0, 1, 2}, {0, INFINITY, 2})) ==
        pf::ErrorCode::NonFiniteCoordinate);
}

TEST_CASE("random_polygon is deterministic and in range") {
  CHECK(pf::random_polygon(20, 42) == pf::random_polygon(20, 42));
  CHECK_FALSE(pf::random_polygon(20, 42) == pf::random_polygon(20, 43));

  const auto p = pf::random_polygon(50, 7, 1.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(std::abs(p.xs()[i]) <= 1.0);
    CHECK(std::abs(p.ys()[i]) <= 1.0);
  }
  CHECK(PF_ERROR_CODE(pf::random_polygon(2, 1)) == pf::ErrorCode::TooFewVertices);
}

TEST_CASE("Rng matches an independent xoshiro256** implementation") {
  std::uint64_t sm = 12345;
  const auto splitmix = [&sm] {
    std::uint64_t z = (sm += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t s[4] = {splitmix(), splitmix(), splitmix(), splitmix()};
  const auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const auto next = [&] {
    const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  };
  pf::Rng rng(12345);
  for (int i = 0; i < 1000; ++i) CHECK(rng.next_u64() == next());

  pf::Rng unit(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = unit.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  // Splitmix64 seeded with 0 is documented to start with this word.
  sm = 0;
  CHECK(splitmix() == 0xe220a8397b1dcdafULL);
}

TEST_CASE("centroid") {
  const auto c0 = pf::centroid(unit_square());
  CHECK(c0.x == 0.0);
  CHECK(c0.y == 0.0);

  const auto tri = pf::make_polygon({0, 1, 0}, {0, 0, 2});
  const auto c1 = pf::centroid(tri);
  CHECK(c1.x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(c1.y == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const auto p = pf::random_polygon(20, 42);
  const auto c2 = pf::centroid(p);
  CHECK(std::abs(c2.x - testsupport::kahan_mean(p.xs())) <= 1e-15);
  CHECK(std::abs(c2.y - testsupport::kahan_mean(p.ys())) <= 1e-15);
}

TEST_CASE("center_and_normalize") {
  const auto q = pf::center_and_normalize(unit_square());
  const std::vector<double> ex{0.5, -0.5, -0.5, 0.5}, ey{0.5, 0.5, -0.5, -0.5};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(q.xs()[i] - ex[i]) <= 1e-15);
    CHECK(std::abs(q.ys()[i] - ey[i]) <= 1e-15);
  }

  const auto once = pf::center_and_normalize(pf::random_polygon(17, 3));
  const auto twice = pf::center_and_normalize(once);
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(std::abs(once.xs()[i] - twice.xs()[i]) <= 1e-15);
    CHECK(std::abs(once.ys()[i] - twice.ys()[i]) <= 1e-15);
  }

  CHECK(PF_ERROR_CODE(pf::center_and_normalize(pf::make_polygon({1, 2, 3}, {5, 5, 5}))) ==
        pf::ErrorCode::DegeneratePolygon);
}

TEST_CASE("build_transform dense pattern") {
  const auto check_rows = [](const pf::TransformMatrix& t,
                             const std::vector<std::vector<double>>& rows) {
    const Eigen::MatrixXd d = t.dense();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < rows.size(); ++c) {
        CHECK(d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) == rows[r][c]);
      }
    }
  };
  check_rows(pf::build_transform(3, pf::DivisionScheme::uniform(0.25)),
             {{0.75, 0.25, 0}, {0, 0.75, 0.25}, {0.25, 0, 0.75}});
  check_rows(pf::build_transform(3, pf::DivisionScheme::uniform(0.5)),
             {{0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5}});
  check_rows(pf::build_transform(3, pf::DivisionScheme::per_segment({0.5, 0.5, 0.25})),
             {{0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.25, 0, 0.75}});

  CHECK(PF_ERROR_CODE(pf::build_transform(4, pf::DivisionScheme::per_segment({0.5, 0.5, 0.5}))) ==
        pf::ErrorCode::SchemeLengthMismatch);
  CHECK(PF_ERROR_CODE(pf::DivisionScheme::uniform(0.0)) ==
        pf::ErrorCode::DivisionPointOutOfRange);
  CHECK(PF_ERROR_CODE(pf::DivisionScheme::uniform(1.0)) ==
        pf::ErrorCode::DivisionPointOutOfRange);
  CHECK(PF_ERROR_CODE(pf::DivisionScheme::per_segment({0.5, 1.5, 0.5})) ==
        pf::ErrorCode::DivisionPointOutOfRange);
  CHECK(PF_ERROR_CODE(pf::DivisionScheme::uniform(NAN)) ==
        pf::ErrorCode::DivisionPointOutOfRange);
}

TEST_CASE("apply_transform examples") {
  const auto mid = pf::apply_transform(pf::build_transform(4, pf::DivisionScheme::uniform(0.5)),
                                       unit_square());
  const std::vector<double> ex{0, -1, 0, 1}, ey{1, 0, -1, 0};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(mid.xs()[i] == ex[i]);
    CHECK(mid.ys()[i] == ey[i]);
  }
  CHECK(PF_ERROR_CODE(pf::apply_transform(
            pf::build_transform(5, pf::DivisionScheme::uniform(0.5)), unit_square())) ==
        pf::ErrorCode::SizeMismatch);
}

TEST_CASE("property: rows sum to one, columns only for equal division points") {
  Gen g(101);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = g.count(3, 40);
    const bool hetero = trial % 2 == 1;
    const auto scheme = hetero ? pf::DivisionScheme::per_segment(g.xis(n))
                               : pf::DivisionScheme::uniform(g.xi());
    const Eigen::MatrixXd d = pf::build_transform(n, scheme).dense();
    double worst_col = 0.0;
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
      CHECK(std::abs(d.row(r).sum() - 1.0) <= 1e-15);
      CHECK((d.row(r).array() != 0.0).count() == 2);
    }
    for (Eigen::Index c = 0; c < d.cols(); ++c) {
      worst_col = std::max(worst_col, std::abs(d.col(c).sum() - 1.0));
    }
    if (hetero) {
      CHECK(worst_col > 1e-15);
    } else {
      CHECK(worst_col <= 1e-15);
    }
  }
  // Per-segment values that happen to coincide behave like the uniform case.
  const Eigen::MatrixXd d =
      pf::build_transform(5, pf::DivisionScheme::per_segment({0.3, 0.3, 0.3, 0.3, 0.3})).dense();
  for (Eigen::Index c = 0; c < d.cols(); ++c) CHECK(std::abs(d.col(c).sum() - 1.0) <= 1e-15);
}

TEST_CASE("property: stencil agrees with dense multiply") {
  Gen g(202);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = g.count(3, 256);
    const auto scheme = trial % 3 == 0 ? pf::DivisionScheme::per_segment(g.xis(n))
                                       : pf::DivisionScheme::uniform(g.xi());
    const auto t = pf::build_transform(n, scheme);
    const auto p = g.polygon(n, 5.0);
    const auto q = pf::apply_transform(t, p);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.xs().data(), n);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(p.ys().data(), n);
    const Eigen::VectorXd dx = t.dense() * x, dy = t.dense() * y;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(q.xs()[i] - dx(static_cast<Eigen::Index>(i))) <= 1e-12);
      CHECK(std::abs(q.ys()[i] - dy(static_cast<Eigen::Index>(i))) <= 1e-12);
    }
  }
  const auto p = pf::random_polygon(64, 9);
  const auto t = pf::build_transform(64, pf::DivisionScheme::uniform(0.3));
  const auto q = pf::apply_transform(t, p);
  const Eigen::VectorXd dx = t.dense() * Eigen::Map<const Eigen::VectorXd>(p.xs().data(), 64);
  for (Eigen::Index i = 0; i < 64; ++i) {
    CHECK(std::abs(q.xs()[static_cast<std::size_t>(i)] - dx(i)) <= 1e-13);
  }
}

TEST_CASE("property: uniform schemes preserve the centroid") {
  Gen g(303);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = g.count(3, 32);
    const auto p = g.polygon(n);
    const auto q = pf::apply_transform(pf::build_transform(n, pf::DivisionScheme::uniform(g.xi())), p);
    const auto a = pf::centroid(p), b = pf::centroid(q);
    worst = std::max({worst, std::abs(a.x - b.x), std::abs(a.y - b.y)});
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("property: bounding intervals nest") {
  Gen g(404);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = g.count(3, 30);
    const auto scheme = trial % 2 ? pf::DivisionScheme::per_segment(g.xis(n))
                                  : pf::DivisionScheme::uniform(g.xi());
    const auto p = g.polygon(n, 3.0);
    const auto before = pf::bounding_interval(p);
    const auto after = pf::bounding_interval(pf::apply_transform(pf::build_transform(n, scheme), p));
    CHECK(before.x.contains(after.x));
    CHECK(before.y.contains(after.y));
  }
  const auto sq = pf::bounding_interval(unit_square());
  CHECK(sq.x.lo == -1.0);
  CHECK(sq.x.hi == 1.0);
  CHECK(sq.y.lo == -1.0);
  CHECK(sq.y.hi == 1.0);
  const auto flat = pf::bounding_interval(pf::make_polygon({2, 2, 2}, {-3, -3, -3}));
  CHECK(flat.x.lo == 2.0);
  CHECK(flat.x.hi == 2.0);
  CHECK(flat.y.lo == -3.0);
}

TEST_CASE("iterate: snapshots, normalization and decay") {
  const auto p = pf::random_polygon(12, 5);
  const auto zero = pf::iterate(p, pf::DivisionScheme::uniform(0.3), 0, pf::IterationMode::Normalized);
  REQUIRE(zero.polygons.size() == 1);
  CHECK(zero.polygons[0] == pf::center_and_normalize(p));

  const auto raw = pf::iterate(p, pf::DivisionScheme::uniform(0.3), 0, pf::IterationMode::Unnormalized);
  CHECK(raw.polygons[0] == p);

  const auto tr = pf::iterate(p, pf::DivisionScheme::uniform(0.3), 50, pf::IterationMode::Normalized);
  REQUIRE(tr.polygons.size() == 51);
  REQUIRE(tr.norms.size() == 51);
  for (const auto& snap : tr.polygons) {
    const auto c = pf::centroid(snap);
    CHECK(std::abs(c.x) <= 1e-12);
    CHECK(std::abs(c.y) <= 1e-12);
    CHECK(std::abs(pf::norm2(snap.xs()) - 1.0) <= 1e-12);
    CHECK(std::abs(pf::norm2(snap.ys()) - 1.0) <= 1e-12);
  }

  // Unnormalized uniform runs never move the centroid.
  Gen g(505);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = g.count(3, 25);
    const auto start = g.polygon(n);
    const auto c0 = pf::centroid(start);
    const auto run = pf::iterate(start, pf::DivisionScheme::uniform(g.xi()), 200,
                                 pf::IterationMode::Unnormalized);
    for (const auto& snap : run.polygons) {
      const auto c = pf::centroid(snap);
      CHECK(std::abs(c.x - c0.x) <= 1e-12);
      CHECK(std::abs(c.y - c0.y) <= 1e-12);
    }
  }

  // Distance to the centroid shrinks at least as fast as the dominant
  // eigenvalue allows: max|v - c| <= ||centered vector||_2 * |z|^k.
  const auto start = pf::random_polygon(10, 42);
  const auto c0 = pf::centroid(start);
  const auto run = pf::iterate(start, pf::DivisionScheme::uniform(0.25), 100,
                               pf::IterationMode::Unnormalized);
  std::vector<double> cx(start.xs().begin(), start.xs().end()),
      cy(start.ys().begin(), start.ys().end());
  for (auto& v : cx) v -= c0.x;
  for (auto& v : cy) v -= c0.y;
  const double initial = std::hypot(pf::norm2(cx), pf::norm2(cy));
  const double bound = std::pow(pf::rotation_number(10, 0.25).modulus, 100) * initial;
  const auto& last = run.polygons.back();
  for (std::size_t i = 0; i < last.size(); ++i) {
    CHECK(std::hypot(last.xs()[i] - c0.x, last.ys()[i] - c0.y) <= bound);
  }

  CHECK(PF_ERROR_CODE(pf::iterate(pf::make_polygon({1, 2, 3}, {5, 5, 5}),
                                  pf::DivisionScheme::uniform(0.5), 3,
                                  pf::IterationMode::Normalized)) ==
        pf::ErrorCode::DegeneratePolygon);
}

TEST_CASE("property: unnormalized norm ratio tends to |z|") {
  for (std::size_t n : {5u, 8u, 13u, 20u}) {
    for (double xi : {0.2, 0.5, 0.8}) {
      const auto raw = pf::random_polygon(n, 1000 + n);
      const auto c = pf::centroid(raw);
      std::vector<double> xs(raw.xs().begin(), raw.xs().end()), ys(raw.ys().begin(), raw.ys().end());
      for (auto& e : xs) e -= c.x;
      for (auto& e : ys) e -= c.y;
      const pf::Polygon p(std::move(xs), std::move(ys));
      const auto run = pf::iterate(p, pf::DivisionScheme::uniform(xi), 220,
                                   pf::IterationMode::Unnormalized);
      const double z = pf::rotation_number(n, xi).modulus;
      for (std::size_t k = 200; k <= 220; ++k) {
        CHECK(std::abs(run.norms[k].x / run.norms[k - 1].x - z) <= 1e-6);
      }
    }
  }
}
