#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <numeric>
#include <set>
#include <tuple>

#include "cusp_oracle.hpp"
#include "ortho/cusps.hpp"
#include "ortho/geom.hpp"

using namespace ortho::cusps;

namespace {

std::int64_t phi_naive(std::int64_t n) {
  std::int64_t phi = n, m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      phi -= phi / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) phi -= phi / m;
  return phi;
}

}  // namespace

using cusp_oracle::geometric_horoball_count;
using cusp_oracle::ring_ext_gcd_unit;

TEST_CASE("phi summatory basics") {
  CHECK(phi_summatory(1) == 1);
  CHECK(phi_summatory(10) == 32);
  std::int64_t acc = 0;
  for (std::int64_t n = 1; n <= 100000; ++n) {
    acc += phi_naive(n);
    if (n % 20000 == 0 || n < 20) CHECK(phi_summatory(n) == acc);
  }
}

TEST_CASE("mertens ratio approaches 3/pi^2") {
  const double s = 2 * std::log(20000.0);
  const double ratio = static_cast<double>(mertens_count(s)) *
                       std::numbers::pi * std::numbers::pi / (3 * std::exp(s));
  CHECK(std::abs(ratio - 1) < 0.005);
}

TEST_CASE("ring arithmetic in the five rings") {
  for (std::int64_t dk : kClassNumberOne) {
    const ImagQuadInt one{1, 0, dk};
    const ImagQuadInt omega{0, 1, dk};
    CHECK(one.norm() == 1);
    CHECK((omega * omega.conj()).m == omega.norm());
    CHECK((omega * omega.conj()).n == 0);
    CHECK(units(dk).size() == (dk == -3 ? 6u : dk == -4 ? 4u : 2u));
    for (const auto& u : units(dk)) CHECK(u.norm() == 1);
    for (std::int64_t m = -3; m <= 3; ++m)
      for (std::int64_t n = -3; n <= 3; ++n) {
        const ImagQuadInt z{m, n, dk};
        if (z.is_zero()) continue;
        const ImagQuadInt c = canonical_associate(z);
        for (const auto& u : units(dk))
          CHECK(canonical_associate(z * u) == c);
      }
  }
}

TEST_CASE("ring extended gcd certifies unimodular pairs") {
  for (std::int64_t dk : kClassNumberOne) {
    int hits = 0;
    for (std::int64_t pm = -4; pm <= 4; ++pm)
      for (std::int64_t pn = -4; pn <= 4; ++pn)
        for (std::int64_t qm = -4; qm <= 4; ++qm)
          for (std::int64_t qn = -4; qn <= 4; ++qn) {
            const ImagQuadInt p{pm, pn, dk}, q{qm, qn, dk};
            if (q.is_zero()) continue;
            ImagQuadInt x{0, 0, dk}, y{0, 0, dk};
            if (!ring_ext_gcd_unit(p, q, &x, &y)) continue;
            const ImagQuadInt rel = x * p + y * q;
            CHECK(rel.m == 1);
            CHECK(rel.n == 0);
            ++hits;
          }
    CHECK(hits > 100);
  }
}

TEST_CASE("phi_k values and multiplicativity") {
  CHECK(phi_k({1, 0, -4}) == 1);
  CHECK(phi_k({1, 1, -4}) == 1);  // 1 + i: norm 2, one coprime residue
  CHECK(phi_k({0, 1, -4}) == 1);  // unit
  CHECK(phi_k({3, 0, -4}) == 8);  // inert 3: 9 - 1
  CHECK(phi_k({2, 1, -4}) == 4);  // split prime of norm 5
  CHECK(phi_k({2, 0, -4}) == 2);  // (1+i)^2 up to a unit: 4 (1 - 1/2)
  for (std::int64_t dk : kClassNumberOne) {
    for (std::int64_t am = 1; am <= 4; ++am)
      for (std::int64_t bn = 1; bn <= 4; ++bn) {
        const ImagQuadInt a{am, 1, dk}, b{1, bn, dk};
        if (std::gcd(a.norm(), b.norm()) != 1) continue;
        CHECK(phi_k(a * b) == phi_k(a) * phi_k(b));
      }
  }
}

TEST_CASE("bianchi counts match the geometric oracle") {
  for (std::int64_t dk : kClassNumberOne) {
    for (double s : {0.0, 0.9, 2.0, 3.0, 4.0}) {
      const std::int64_t arithmetic = bianchi_cusp_count(dk, s);
      const std::int64_t geometric = geometric_horoball_count(dk, s);
      INFO("dk = ", dk, " s = ", s);
      CHECK(arithmetic == geometric);
    }
  }
}

TEST_CASE("bianchi boundary case counts only the tangency class") {
  for (std::int64_t dk : kClassNumberOne)
    CHECK(bianchi_cusp_count(dk, 0.3) == 1);
  CHECK_THROWS_AS(bianchi_cusp_count(-15, 3.0), std::invalid_argument);
}

TEST_CASE("horoball diameter law under the moebius action") {
  using namespace ortho::geom;
  std::mt19937_64 rng(55);
  int made = 0;
  while (made < 1000) {
    const auto pick = [&](std::int64_t lo, std::int64_t hi) {
      return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    const ImagQuadInt p{pick(-6, 6), pick(-6, 6), -4};
    const ImagQuadInt q{pick(-6, 6), pick(-6, 6), -4};
    if (q.is_zero()) continue;
    ImagQuadInt x{0, 0, -4}, y{0, 0, -4};
    if (!ring_ext_gcd_unit(p, q, &x, &y)) continue;
    const ImagQuadInt r = ImagQuadInt{-1, 0, -4} * y;
    const Moebius g = Moebius::from_complex(p.m, p.n, r.m, r.n, q.m, q.n, x.m, x.n);
    const Horoball image =
        moebius_apply(g, Horoball(BoundaryPoint::at_infinity(3), 1.0));
    REQUIRE_FALSE(image.center.infinite);
    CHECK(image.size ==
          doctest::Approx(1 / static_cast<double>(q.norm())).epsilon(1e-9));
    ++made;
  }
}

TEST_CASE("reports") {
  const auto rep = mertens_report(12, 4);
  CHECK(rep.rows.size() == 4);
  CHECK(rep.rows.back().count == mertens_count(12));
  const auto brep = bianchi_report(-4, 5, 5);
  CHECK(brep.rows.back().count == bianchi_cusp_count(-4, 5));
}
