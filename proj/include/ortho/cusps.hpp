#pragma once

#include <cstdint>
#include <vector>

#include "ortho/report.hpp"

// Cusp-to-cusp counting: the Euler-phi summatory function over Z and its
// analogue over the imaginary quadratic rings of class number one.
namespace ortho::cusps {

// Integer m + n*omega of the ring of integers of discriminant dk, with
// omega = sqrt(dk)/2 for even dk and (1 + sqrt(dk))/2 for odd dk.
struct ImagQuadInt {
  std::int64_t m = 0, n = 0;
  std::int64_t dk = -4;

  std::int64_t norm() const;
  bool is_zero() const { return m == 0 && n == 0; }
  ImagQuadInt operator*(const ImagQuadInt& o) const;
  ImagQuadInt operator+(const ImagQuadInt& o) const {
    return {m + o.m, n + o.n, dk};
  }
  ImagQuadInt conj() const;
  bool operator==(const ImagQuadInt& o) const {
    return m == o.m && n == o.n && dk == o.dk;
  }
};

inline constexpr std::int64_t kClassNumberOne[] = {-3, -4, -7, -8, -11};
bool class_number_one(std::int64_t dk);

// Unit group of the ring (as elements), size 2, 4 or 6.
std::vector<ImagQuadInt> units(std::int64_t dk);

// Canonical associate under unit multiplication; enumerating canonical
// elements visits each nonzero ideal exactly once.
ImagQuadInt canonical_associate(const ImagQuadInt& q);

// Exact q/d when d divides q in the ring, else nullopt-like failure flag.
bool exact_divide(const ImagQuadInt& q, const ImagQuadInt& d, ImagQuadInt* out);

// Sum of Euler's totient over 1..n, by a linear sieve.
std::int64_t phi_summatory(std::int64_t n);

// Number of horoballs of the modular orbit at distance <= s from the cusp,
// modulo integer translations: phi_summatory(floor(e^{s/2})).
std::int64_t mertens_count(double s);

// #(O_K / q)^x by factorization of the norm and the splitting of primes.
std::int64_t phi_k(const ImagQuadInt& q);

// Gamma_infinity-classes of horoballs of the Bianchi orbit of {height >= 1}
// at distance <= s: sum of phi_k over ideals of norm <= e^s (the class of
// the tangent balls at the ring's own points contributes 1 at s = 0).
std::int64_t bianchi_cusp_count(std::int64_t dk, double s);

// One norm sweep serving a whole s-grid.
std::vector<std::int64_t> bianchi_cusp_counts(std::int64_t dk,
                                              const std::vector<double>& s);

report::CountReport mertens_report(double smax, int steps);
report::CountReport bianchi_report(std::int64_t dk, double smax, int steps);

}  // namespace ortho::cusps
