#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace ortho::quat {

// Hamilton quaternion x0 + x1 i + x2 j + x3 k over the reals.
// i^2 = j^2 = -1, ij = -ji = k.
struct Quaternion {
  double x0 = 0, x1 = 0, x2 = 0, x3 = 0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double a, double b, double c, double d)
      : x0(a), x1(b), x2(c), x3(d) {}
  static constexpr Quaternion real(double a) { return {a, 0, 0, 0}; }
  static constexpr Quaternion complex(double re, double im) {
    return {re, im, 0, 0};
  }

  Quaternion conj() const { return {x0, -x1, -x2, -x3}; }
  // Reduced norm n(x) = x * conj(x).
  double norm() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
  // Reduced trace tr(x) = x + conj(x).
  double trace() const { return 2 * x0; }
  double abs() const { return std::sqrt(norm()); }
  bool is_zero(double eps = 0.0) const { return norm() <= eps * eps; }

  Quaternion operator+(const Quaternion& o) const {
    return {x0 + o.x0, x1 + o.x1, x2 + o.x2, x3 + o.x3};
  }
  Quaternion operator-(const Quaternion& o) const {
    return {x0 - o.x0, x1 - o.x1, x2 - o.x2, x3 - o.x3};
  }
  Quaternion operator-() const { return {-x0, -x1, -x2, -x3}; }
  Quaternion operator*(const Quaternion& o) const {
    return {x0 * o.x0 - x1 * o.x1 - x2 * o.x2 - x3 * o.x3,
            x0 * o.x1 + x1 * o.x0 + x2 * o.x3 - x3 * o.x2,
            x0 * o.x2 - x1 * o.x3 + x2 * o.x0 + x3 * o.x1,
            x0 * o.x3 + x1 * o.x2 - x2 * o.x1 + x3 * o.x0};
  }
  Quaternion operator*(double s) const { return {x0 * s, x1 * s, x2 * s, x3 * s}; }
  Quaternion operator/(double s) const { return {x0 / s, x1 / s, x2 / s, x3 / s}; }
  Quaternion inverse() const { return conj() / norm(); }
};

// Hurwitz-order element stored in doubled coordinates: value = h/2 with all
// four entries of the same parity (all even <-> Lipschitz integer, all odd
// <-> half-integer point).
struct HurwitzInt {
  std::array<std::int64_t, 4> h{0, 0, 0, 0};  // doubled coordinates

  static HurwitzInt from_ints(std::int64_t a, std::int64_t b, std::int64_t c,
                              std::int64_t d) {
    return HurwitzInt{{2 * a, 2 * b, 2 * c, 2 * d}};
  }
  static HurwitzInt from_halves(std::int64_t a2, std::int64_t b2,
                                std::int64_t c2, std::int64_t d2) {
    return HurwitzInt{{a2, b2, c2, d2}};
  }

  bool valid() const {
    const auto parity = h[0] & 1;
    return (h[1] & 1) == parity && (h[2] & 1) == parity &&
           (h[3] & 1) == parity;
  }
  HurwitzInt conj() const { return HurwitzInt{{h[0], -h[1], -h[2], -h[3]}}; }
  // n(x) is a rational integer for Hurwitz integers.
  std::int64_t norm() const {
    return (h[0] * h[0] + h[1] * h[1] + h[2] * h[2] + h[3] * h[3]) / 4;
  }
  std::int64_t trace() const { return h[0]; }
  HurwitzInt operator*(const HurwitzInt& o) const {
    // (h/2)(o/2) = (h*o)/4; closure of the order guarantees /2 stays integral.
    std::int64_t a = h[0] * o.h[0] - h[1] * o.h[1] - h[2] * o.h[2] - h[3] * o.h[3];
    std::int64_t b = h[0] * o.h[1] + h[1] * o.h[0] + h[2] * o.h[3] - h[3] * o.h[2];
    std::int64_t c = h[0] * o.h[2] - h[1] * o.h[3] + h[2] * o.h[0] + h[3] * o.h[1];
    std::int64_t d = h[0] * o.h[3] + h[1] * o.h[2] - h[2] * o.h[1] + h[3] * o.h[0];
    return HurwitzInt{{a / 2, b / 2, c / 2, d / 2}};
  }
  HurwitzInt operator+(const HurwitzInt& o) const {
    return HurwitzInt{{h[0] + o.h[0], h[1] + o.h[1], h[2] + o.h[2], h[3] + o.h[3]}};
  }
  HurwitzInt operator-() const { return HurwitzInt{{-h[0], -h[1], -h[2], -h[3]}}; }
  bool operator==(const HurwitzInt& o) const { return h == o.h; }
  Quaternion to_quaternion() const {
    return {h[0] / 2.0, h[1] / 2.0, h[2] / 2.0, h[3] / 2.0};
  }
};

// The 24 units of the Hurwitz order: {+-1, +-i, +-j, +-k, (+-1 +-i +-j +-k)/2}.
std::vector<HurwitzInt> hurwitz_units();

// 2x2 quaternion matrix (a b; c d).
struct QuatMatrix {
  Quaternion a, b, c, d;
};

// Dieudonne determinant, the multiplicative positive-real determinant on
// GL_2(H). Det^2 = n(ad) + n(bc) - tr(a c~ d b~); zero matrix maps to 0.
double dieudonne_det(const QuatMatrix& m);

// The three equivalent resolutions of Det^2 used to cross-check the main
// expression: 0 needs a != 0, 1 needs c != 0, 2 needs b != 0.
double dieudonne_det_sq_case(const QuatMatrix& m, int which);

// Binary Hamiltonian form f(u,v) = a n(u) + tr(u~ b v) + c n(v).
struct HamForm {
  double a = 0;
  Quaternion b;
  double c = 0;

  double discriminant() const { return b.norm() - a * c; }
  double operator()(const Quaternion& u, const Quaternion& v) const {
    return a * u.norm() + (u.conj() * b * v).trace() + c * v.norm();
  }
};

struct HamSphere {
  bool is_plane = false;   // a == 0 degenerates to a hyperplane through infinity
  Quaternion center;       // -b/a when a != 0
  double radius = 0;       // sqrt(Delta)/|a|
};

// Discriminant and the zero-set 3-sphere data of an indefinite form.
HamSphere ham_sphere(const HamForm& f);

// Right action f.g by precomposition with g acting linearly on H x H.
HamForm ham_precompose(const HamForm& f, const QuatMatrix& g);

}  // namespace ortho::quat
