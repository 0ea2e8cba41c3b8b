#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ortho/report.hpp"

// Integral binary quadratic forms: Pell solutions, automorphs, exact orbit
// canonicalization over Q(sqrt(Delta)), primitive-representation counting,
// the common-perpendicular length identity, Gauss reduction cycles and
// quadratic-irrational orbit counting.
namespace ortho::qf {

using i128 = __int128;

// Q(X, Y) = a X^2 + b X Y + c Y^2.
struct BinaryQF {
  std::int64_t a = 0, b = 0, c = 0;

  std::int64_t disc() const { return b * b - 4 * a * c; }
  i128 eval(i128 x, i128 y) const;
  bool primitive() const;
  // Indefinite and not a product of integral linear forms.
  bool indefinite_nonsquare() const;
  BinaryQF negated() const { return {-a, -b, -c}; }
  bool operator==(const BinaryQF& o) const {
    return a == o.a && b == o.b && c == o.c;
  }
};

// Fundamental solution of t^2 - Delta u^2 = 4 with t, u > 0 and u minimal.
struct PellSolution {
  i128 t = 0, u = 0;
};

// Exact element (m + n sqrt(Delta)) / 2 of Q(sqrt(Delta)); m and n keep the
// invariant m = n Delta (mod 2), so the set is closed under multiplication.
struct QuadFieldElem {
  i128 m = 0, n = 0;
  std::int64_t delta = 0;

  static QuadFieldElem half(i128 m, i128 n, std::int64_t delta);
  QuadFieldElem conj() const { return {m, -n, delta}; }
  QuadFieldElem operator*(const QuadFieldElem& o) const;
  QuadFieldElem operator-(const QuadFieldElem& o) const;
  QuadFieldElem operator-() const { return {-m, -n, delta}; }
  int sign() const;  // -1, 0, +1 of the real value
  bool operator==(const QuadFieldElem& o) const {
    return m == o.m && n == o.n && delta == o.delta;
  }
};

struct Representation {
  std::int64_t x = 0, y = 0;
  std::int64_t value = 0;  // Q(x, y)
  bool operator==(const Representation& o) const {
    return x == o.x && y == o.y;
  }
};

// Integer 2x2 matrix, row major: (m[0] m[1]; m[2] m[3]).
using Mat2 = std::array<std::int64_t, 4>;

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_inv_unimodular(const Mat2& a);
BinaryQF precompose(const BinaryQF& q, const Mat2& g);  // Q . g

PellSolution pell_fundamental(std::int64_t delta);

// R_Q = ln((t + u sqrt(Delta)) / 2).
double regulator(const BinaryQF& q);

// gamma_{Q,t,u} = ((t - b u)/2, -c u; a u, (t + b u)/2) for any Pell pair.
Mat2 automorph_from_pell(const BinaryQF& q, i128 t, i128 u);
// The generator built from the fundamental Pell solution.
Mat2 automorph_generator(const BinaryQF& q);

// Canonical element of the SO(Q,Z)-orbit of (x, y): the L-coordinate ratio
// is moved into [1, eps^2) by exact automorph steps and the -I ambiguity is
// resolved by L2 > 0. Exact; equal outputs characterize equal orbits.
Representation canonical_rep(const BinaryQF& q, std::int64_t x, std::int64_t y);

// Psi_Q(s): primitive representations with |Q(x)| <= s, modulo automorphs.
std::int64_t count_primitive_reps(const BinaryQF& q, double s, int threads = 1);

// Psi~_Q(s) = sum_k Psi_Q(s / k^2): all representations modulo automorphs.
std::int64_t count_all_reps(const BinaryQF& q, double s, int threads = 1);

// Signed length ln( (2/sqrt(Delta)) |Q(D, -C)| ) of the perpendicular between
// the standard horoball and gamma applied to the axis of Q.
double perp_length(const BinaryQF& q, const Mat2& gamma);
// Same quantity through the geometry module (image endpoints, apex radius).
double perp_length_geometric(const BinaryQF& q, const Mat2& gamma);

// Exact lattice count {x in Z^2 : Q(x) <= t} for positive definite Q
// (origin included).
std::int64_t gauss_count(const BinaryQF& q, std::int64_t t);

// Cycle of reduced forms of the proper equivalence class of Q.
std::vector<BinaryQF> reduction_cycle(const BinaryQF& q);
bool equivalent(const BinaryQF& q, const BinaryQF& r);
// gamma with Q . gamma = R when the forms are properly equivalent.
std::optional<Mat2> equivalent_witness(const BinaryQF& q, const BinaryQF& r);

// Quadratic irrationals in the modular orbit of the roots of q0, modulo
// integer translation, with complexity h(alpha) = 2/|alpha - alpha^sigma|
// at most s.
std::int64_t count_orbit_irrationals(const BinaryQF& q0, double s);

// Horizontal coordinates mod 1 of the feet, on the height-one horosphere, of
// all common perpendiculars of length <= s to the modular orbit of the axis.
std::vector<double> feet_distribution(const BinaryQF& q, double s);

// Experiment wrappers.
report::CountReport quad_count_report(const BinaryQF& q, double smax,
                                      int steps, int threads);
report::CountReport quad_verify_length_report(const BinaryQF& q, int samples,
                                              std::uint64_t seed);
report::CountReport quad_irrationals_report(const BinaryQF& q, double smax,
                                            int steps);

}  // namespace ortho::qf
