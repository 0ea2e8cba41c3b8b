#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ortho/report.hpp"

// Orbit-point counting in hyperbolic balls for the modular and Gaussian
// modular groups, through the Frobenius-norm distance identity
// cosh d(j, gamma j) = (sum of squared entry moduli) / 2.
namespace ortho::orbits {

enum class Ring { Z, GaussianZ };

Ring ring_from_name(const std::string& name);  // "psl2z" | "psl2zi"

struct BallCount {
  std::int64_t matrices = 0;    // elements of PSL with cosh d <= cosh s
  std::int64_t stabilizer = 0;  // order of the base-point stabilizer in PSL
};

// Exact count of determinant-one matrices over the ring with squared
// Frobenius norm at most 2 cosh(s), modulo +-I.
BallCount ball_matrices(Ring ring, double s, int threads = 1);

// Reference counter: plain scan over all four entries, for cross-checking
// the lattice-interval enumeration on small bounds.
std::int64_t ball_matrices_slow(Ring ring, double s);

report::CountReport orbit_ball_report(Ring ring, double smax, int steps,
                                      int threads);

}  // namespace ortho::orbits
