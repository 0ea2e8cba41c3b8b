#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ortho/errors.hpp"
#include "ortho/geom.hpp"
#include "ortho/orbits.hpp"

using namespace ortho::orbits;

TEST_CASE("stabilizer-level counts at radius zero") {
  // PSL_2(Z): identity and the inversion fix i.
  CHECK(ball_matrices(Ring::Z, 0).matrices == 2);
  CHECK(ball_matrices(Ring::Z, 0).stabilizer == 2);
  // PSL_2(Z[i]): four elements fix j.
  CHECK(ball_matrices(Ring::GaussianZ, 0).matrices == 4);
  CHECK(ball_matrices(Ring::GaussianZ, 0).stabilizer == 4);
}

TEST_CASE("identity is always counted and counts are monotone") {
  std::int64_t prev = 0;
  for (double s : {0.0, 0.5, 1.0, 2.0, 4.0, 6.0}) {
    const std::int64_t n = ball_matrices(Ring::Z, s).matrices;
    CHECK(n >= 1);
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("interval enumeration equals the plain scan") {
  for (double s : {0.0, 1.0, 2.5, 4.0, 6.0, 8.0, 9.2}) {
    CHECK(ball_matrices(Ring::Z, s).matrices == ball_matrices_slow(Ring::Z, s));
  }
  for (double s : {0.0, 1.0, 2.0, 3.0}) {
    CHECK(ball_matrices(Ring::GaussianZ, s).matrices ==
          ball_matrices_slow(Ring::GaussianZ, s));
  }
}

TEST_CASE("threaded counting is partition independent") {
  const std::int64_t one = ball_matrices(Ring::Z, 9, 1).matrices;
  CHECK(ball_matrices(Ring::Z, 9, 2).matrices == one);
  CHECK(ball_matrices(Ring::Z, 9, 3).matrices == one);
}

TEST_CASE("frobenius norm identity against the distance oracle") {
  using namespace ortho::geom;
  std::mt19937_64 rng(7272);
  std::uniform_real_distribution<double> u(-2, 2);
  const UhsPoint base(Vec::of({0}), 1);
  int made = 0;
  while (made < 1000) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    double det = a * d - b * c;
    if (std::abs(det) < 0.05) continue;
    if (det < 0) {
      a = -a;
      b = -b;
      det = -det;
    }
    const double s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
    const Moebius g = Moebius::from_real(a, b, c, d);
    const double via_dist = dist(base, moebius_apply(g, base));
    const double via_norm = std::acosh((a * a + b * b + c * c + d * d) / 2);
    CHECK(via_dist == doctest::Approx(via_norm).epsilon(1e-9));
    ++made;
  }
}

TEST_CASE("inverse symmetry of the Frobenius norm") {
  // (a b; c d) and its inverse (d -b; -c a) share the squared norm, so the
  // count treats gamma and gamma^-1 alike.
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const auto v = [&] { return static_cast<std::int64_t>(rng() % 19) - 9; };
    const std::int64_t a = v(), b = v(), c = v(), d = v();
    CHECK(a * a + b * b + c * c + d * d ==
          d * d + b * b + c * c + a * a);
  }
}

TEST_CASE("report prediction constants") {
  const auto rep = orbit_ball_report(Ring::Z, 8, 4, 2);
  CHECK(rep.params.at("prediction_constant").substr(0, 1) == "3");
  CHECK(rep.params.at("stabilizer_order") == "2");
  CHECK(rep.rows.size() == 4);
  // Ratio near one already at moderate radius.
  CHECK(std::abs(rep.rows.back().ratio - 1) < 0.1);
  const auto repi = orbit_ball_report(Ring::GaussianZ, 4.5, 3, 2);
  CHECK(repi.params.at("stabilizer_order") == "4");
  const double c = std::stod(repi.params.at("prediction_constant"));
  CHECK(c == doctest::Approx(5.1446).epsilon(1e-3));
}

TEST_CASE("ring parsing and capacity guard") {
  CHECK(ring_from_name("psl2z") == Ring::Z);
  CHECK(ring_from_name("psl2zi") == Ring::GaussianZ);
  CHECK_THROWS_AS(ring_from_name("psl3z"), std::invalid_argument);
  CHECK_THROWS_AS(ball_matrices(Ring::Z, 40), ortho::CapacityError);
}
