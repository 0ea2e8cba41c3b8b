#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ortho/constants.hpp"

using namespace ortho::consts;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCatalan = 0.91596559417721901505;
constexpr double kZeta3 = 1.2020569031595942854;
}  // namespace

TEST_CASE("sphere volumes") {
  CHECK(sphere_vol(0) == 2);
  CHECK(sphere_vol(1) == doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(sphere_vol(2) == doctest::Approx(4 * kPi).epsilon(1e-15));
  CHECK(sphere_vol(3) == doctest::Approx(2 * kPi * kPi).epsilon(1e-15));
  CHECK(sphere_vol(4) == doctest::Approx(8 * kPi * kPi / 3).epsilon(1e-15));
}

TEST_CASE("bowen-margulis mass") {
  CHECK(bm_mass(2, kPi / 3) == doctest::Approx(4 * kPi * kPi / 3).epsilon(1e-14));
  CHECK(bm_mass(3, 1) == doctest::Approx(16 * kPi).epsilon(1e-14));
  CHECK(bm_mass(3, 2.5) == doctest::Approx(2.5 * bm_mass(3, 1)).epsilon(1e-14));
}

TEST_CASE("skinning masses") {
  CHECK(skinning_mass(SkinningKind::point, 2, 0, 0) == doctest::Approx(2 * kPi));
  CHECK(skinning_mass(SkinningKind::cusp, 2, 0, 1) == doctest::Approx(2));
  CHECK(skinning_mass(SkinningKind::geodesic, 3, 1, 2.0) ==
        doctest::Approx(4 * kPi));
  CHECK_THROWS_AS(skinning_mass(SkinningKind::geodesic, 3, 3, 1),
                  std::invalid_argument);
}

TEST_CASE("master constant and the modular surface value") {
  const double point2 = skinning_mass(SkinningKind::point, 2, 0, 0);
  CHECK(master_constant(point2, point2, 1, bm_mass(2, kPi / 3)) ==
        doctest::Approx(3).epsilon(1e-14));
  CHECK_THROWS_AS(master_constant(0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("specialization identities across dimensions") {
  for (int n = 2; n <= 6; ++n) {
    const double vol = 0.25 + n;
    const double bm = bm_mass(n, vol);
    const double point = skinning_mass(SkinningKind::point, n, 0, 0);
    // Orbit-point count constant.
    CHECK(special_constant("margulis", {{"n", n}, {"vol", vol}}) ==
          doctest::Approx(master_constant(point, point, n - 1, bm))
              .epsilon(1e-12));
    for (int k = 1; k <= n - 1; ++k) {
      const double vc = 1.75, vcusp = 0.6, vc2 = 2.25;
      CHECK(special_constant("herrmann",
                             {{"n", n}, {"k", k}, {"vol", vol}, {"vol_c", vc}}) ==
            doctest::Approx(master_constant(
                                point,
                                skinning_mass(SkinningKind::geodesic, n, k, vc),
                                n - 1, bm))
                .epsilon(1e-12));
      CHECK(special_constant("parpau", {{"n", n},
                                        {"k", k},
                                        {"vol", vol},
                                        {"vol_cusp", vcusp},
                                        {"vol_c", vc}}) ==
            doctest::Approx(master_constant(
                                skinning_mass(SkinningKind::cusp, n, 0, vcusp),
                                skinning_mass(SkinningKind::geodesic, n, k, vc),
                                n - 1, bm))
                .epsilon(1e-12));
      for (int k2 = 1; k2 <= n - 1; ++k2) {
        CHECK(special_constant("bigeodesic", {{"n", n},
                                              {"k_minus", k},
                                              {"k_plus", k2},
                                              {"vol", vol},
                                              {"vol_minus", vc},
                                              {"vol_plus", vc2}}) ==
              doctest::Approx(
                  master_constant(
                      skinning_mass(SkinningKind::geodesic, n, k, vc),
                      skinning_mass(SkinningKind::geodesic, n, k2, vc2), n - 1,
                      bm))
                  .epsilon(1e-12));
      }
    }
    CHECK(special_constant("bicusp", {{"n", n},
                                      {"vol", vol},
                                      {"vol_minus", 0.8},
                                      {"vol_plus", 1.9}}) ==
          doctest::Approx(master_constant(
                              skinning_mass(SkinningKind::cusp, n, 0, 0.8),
                              skinning_mass(SkinningKind::cusp, n, 0, 1.9),
                              n - 1, bm))
              .epsilon(1e-12));
    CHECK(special_constant("closed_geodesic_pair", {{"n", n},
                                                    {"vol", vol},
                                                    {"len_minus", 0.9},
                                                    {"len_plus", 2.2}}) ==
          doctest::Approx(master_constant(
                              skinning_mass(SkinningKind::geodesic, n, 1, 0.9),
                              skinning_mass(SkinningKind::geodesic, n, 1, 2.2),
                              n - 1, bm))
              .epsilon(1e-12));
  }
}

TEST_CASE("huber equals the surface specialization") {
  CHECK(special_constant("huber", {{"g", 2}}) == doctest::Approx(0.25));
  for (int g = 2; g <= 10; ++g) {
    const double area = 4 * kPi * (g - 1);
    CHECK(special_constant("huber", {{"g", g}}) ==
          doctest::Approx(special_constant("margulis", {{"n", 2}, {"vol", area}}))
              .epsilon(1e-12));
  }
}

TEST_CASE("zeta values") {
  CHECK(zeta2() == doctest::Approx(kPi * kPi / 6).epsilon(1e-15));
  CHECK(zeta3() == doctest::Approx(kZeta3).epsilon(1e-10));
  CHECK(l_function2(-4) == doctest::Approx(kCatalan).epsilon(1e-10));
  CHECK(dedekind_zeta2(-4) ==
        doctest::Approx(kPi * kPi / 6 * kCatalan).epsilon(1e-10));
  CHECK_THROWS_AS(dedekind_zeta2(5), std::invalid_argument);
  CHECK_THROWS_AS(dedekind_zeta2(-5), std::invalid_argument);  // not fundamental
}

TEST_CASE("kronecker symbol spot values") {
  CHECK(kronecker_symbol(-4, 1) == 1);
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(-4, 5) == 1);
  CHECK(kronecker_symbol(-4, 2) == 0);
  CHECK(kronecker_symbol(-3, 2) == -1);
  CHECK(kronecker_symbol(-8, 3) == 1);
  CHECK(kronecker_symbol(-1, 5) == 1);
  CHECK(kronecker_symbol(-1, 7) == -1);
}

TEST_CASE("humbert volume") {
  const double v4 = humbert_volume(-4);
  CHECK(v4 == doctest::Approx(8 * dedekind_zeta2(-4) / (4 * kPi * kPi)).epsilon(1e-12));
  // Known Gaussian modular orbifold volume.
  CHECK(v4 == doctest::Approx(0.30532186472).epsilon(1e-8));
  CHECK(humbert_volume(-3) > 0);
  CHECK(humbert_volume(-8) > humbert_volume(-4));
}

TEST_CASE("iota case table") {
  CHECK(iota(1, -1, 4) == 2);    // Delta = 0 mod 4
  CHECK(iota(2, 2, 8) == 2);
  CHECK(iota(1, -1, 1) == 1);    // generic
  CHECK(iota(2, 2, 5) == 3);     // a, c even, Delta = 1 mod 4
  CHECK(iota(2, 2, 2) == 2);     // a, c even, Delta = 2 mod 8
  CHECK(iota(2, 2, 6) == 6);     // a, c even, Delta = 6 mod 8
  CHECK(iota(2, 1, 5) == 1);     // c odd
  CHECK(iota(3, 5, 7) == 1);
}

TEST_CASE("named constants") {
  CHECK(special_constant("mertens", {}) == doctest::Approx(3 / (kPi * kPi)));
  CHECK(special_constant("quadratic_form", {{"regulator", 1.0}, {"delta", 4.0}}) ==
        doctest::Approx(12 / (kPi * kPi * 2)));
  // Refined horoball constant agrees with the plain one when the unit group
  // has two elements.
  for (double dk : {-7.0, -8.0, -11.0}) {
    CHECK(special_constant("cosentino", {{"dk", dk}}) ==
          doctest::Approx(special_constant("cosentino_refined", {{"dk", dk}}))
              .epsilon(1e-12));
  }
  CHECK_THROWS_AS(special_constant("cosentino", {{"dk", -4}}),
                  std::invalid_argument);
  CHECK(special_constant("cosentino_refined", {{"dk", -4}}) ==
        doctest::Approx(2 * kPi / dedekind_zeta2(-4)).epsilon(1e-12));
  // Hamiltonian covolumes.
  CHECK(special_constant("hamiltonian_covolume", {{"da", 2}}) ==
        doctest::Approx(7 * kZeta3 / 11520).epsilon(1e-10));
  CHECK(special_constant("hamiltonian_covolume", {{"da", 6}}) ==
        doctest::Approx(kZeta3 * 7 * 1 * 26 * 2 / 11520).epsilon(1e-10));
  // Theorem constant is positive and decreasing in Delta^2.
  const double h1 = special_constant(
      "hamiltonian", {{"da", 2}, {"ha", 1}, {"covol", 1}, {"delta", 1}});
  const double h2 = special_constant(
      "hamiltonian", {{"da", 2}, {"ha", 1}, {"covol", 1}, {"delta", 2}});
  CHECK(h1 > 0);
  CHECK(h1 / h2 == doctest::Approx(4).epsilon(1e-12));
  // Hermitian Q(i) specialization: empty product at Delta = 1.
  CHECK(special_constant("hermitian_qi", {{"delta", 1}, {"a", 1}, {"c", -1}}) ==
        doctest::Approx(kPi * kPi / (8 * dedekind_zeta2(-4))).epsilon(1e-10));
  // With iota supplied directly.
  CHECK(special_constant("hermitian_qi", {{"delta", 1}, {"iota", 2}}) ==
        doctest::Approx(kPi * kPi / (16 * dedekind_zeta2(-4))).epsilon(1e-10));
  // Product over odd primes dividing Delta: Delta = 5 has (-1|5) = 1.
  CHECK(special_constant("hermitian_qi", {{"delta", 5}, {"iota", 1}}) ==
        doctest::Approx(kPi * kPi * (1 + 0.2) / (8 * dedekind_zeta2(-4)))
            .epsilon(1e-10));
  CHECK_THROWS_AS(special_constant("nonsense", {}), std::invalid_argument);
  CHECK_THROWS_AS(special_constant("huber", {}), std::invalid_argument);
  CHECK(special_constant_names().size() >= 14);
}

TEST_CASE("general hermitian constant composes with humbert data") {
  // pi Covol / (2 |D| zeta_K(2) Delta).
  const double v = special_constant(
      "hermitian", {{"dk", -4}, {"delta", 1}, {"covol", kPi}});
  CHECK(v == doctest::Approx(kPi * kPi / (8 * dedekind_zeta2(-4))).epsilon(1e-10));
}
