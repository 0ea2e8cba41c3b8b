#pragma once

#include <cstdint>
#include <vector>

#include "ortho/report.hpp"

// Indefinite binary Hermitian forms over Z[i]: the modular action, boundary
// circles, the perpendicular-length identity, pruned breadth-first orbit
// enumeration and the quadratic-growth count report.
namespace ortho::herm {

struct GaussInt {
  std::int64_t x = 0, y = 0;

  std::int64_t norm() const { return x * x + y * y; }
  GaussInt conj() const { return {x, -y}; }
  GaussInt operator+(const GaussInt& o) const { return {x + o.x, y + o.y}; }
  GaussInt operator-(const GaussInt& o) const { return {x - o.x, y - o.y}; }
  GaussInt operator-() const { return {-x, -y}; }
  GaussInt operator*(const GaussInt& o) const {
    return {x * o.x - y * o.y, x * o.y + y * o.x};
  }
  bool operator==(const GaussInt& o) const { return x == o.x && y == o.y; }
};

// f(u, v) = a |u|^2 + u~ b v + u v~ b~ ... matrix M(f) = (a b; b~ c),
// f(u, v) = (u~ v~) M(f) (u v)^T, integral over Z[i].
struct HermForm {
  std::int64_t a = 0;
  GaussInt b;
  std::int64_t c = 0;

  std::int64_t discriminant() const { return b.norm() - a * c; }
  // f(z, 1) for a Gaussian integer z.
  std::int64_t eval_z1(const GaussInt& z) const;
  bool operator==(const HermForm& o) const {
    return a == o.a && b == o.b && c == o.c;
  }
};

struct GaussMat {
  GaussInt a, b, c, d;
  GaussInt det() const { return a * d - b * c; }
};

// f.g with M(f.g) = g^* M(f) g; preserves the discriminant exactly.
HermForm act(const HermForm& f, const GaussMat& g);

// Boundary circle of the form: center -b/a (exact Gaussian rational) and
// radius sqrt(Delta)/|a|; a = 0 marks the line case.
struct OrbitCircle {
  bool is_line = false;
  GaussInt center_num;        // center = center_num / center_den
  std::int64_t center_den = 1;
  std::int64_t abs_a = 0;     // radius = sqrt(Delta) / abs_a
  std::int64_t delta = 0;

  double radius() const;
  // Key after reduction mod the translation lattice and the unit rotation
  // z -> -z; exact integers only.
  friend bool operator==(const OrbitCircle& l, const OrbitCircle& r) {
    return l.is_line == r.is_line && l.center_num == r.center_num &&
           l.center_den == r.center_den && l.abs_a == r.abs_a;
  }
  friend bool operator<(const OrbitCircle& l, const OrbitCircle& r);
};

OrbitCircle circle_of(const HermForm& f);

// Signed perpendicular length between the standard horoball and the
// hemisphere over the circle of f.g at the cusp (x, y) = (1, 0), tau = 1:
// ln(|a(f.g)| / (tau sqrt(Delta))).
double perp_length_herm(const HermForm& f, const GaussMat& g, double tau = 1.0);

// All circles of the modular orbit of f with radius >= r_min and center in
// the fundamental translation cell, by pruned BFS; the result is checked to
// be identical at slack and 2*slack.
std::vector<OrbitCircle> orbit_circles(const HermForm& f, double r_min,
                                       double slack, int threads = 1);

// Count of translation-classes of orbit forms with 0 < |a(f.g)| <= bound for
// each bound in the grid (one BFS sweep), the double-coset count behind the
// quadratic asymptotic.
std::vector<std::int64_t> orbit_form_counts(const HermForm& f,
                                            const std::vector<double>& bounds,
                                            double slack, int threads = 1);

report::CountReport herm_count_report(const HermForm& f, double bound,
                                      double slack, int steps, int threads);

}  // namespace ortho::herm
