#include "ortho/quat.hpp"

#include <cmath>

namespace ortho::quat {

std::vector<HurwitzInt> hurwitz_units() {
  std::vector<HurwitzInt> units;
  for (int axis = 0; axis < 4; ++axis) {
    for (int sign : {1, -1}) {
      HurwitzInt u;
      u.h[axis] = 2 * sign;
      units.push_back(u);
    }
  }
  for (int s0 : {1, -1})
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1})
          units.push_back(HurwitzInt::from_halves(s0, s1, s2, s3));
  return units;
}

double dieudonne_det(const QuatMatrix& m) {
  const double det_sq = (m.a * m.d).norm() + (m.b * m.c).norm() -
                        (m.a * m.c.conj() * m.d * m.b.conj()).trace();
  return det_sq > 0 ? std::sqrt(det_sq) : 0.0;
}

double dieudonne_det_sq_case(const QuatMatrix& m, int which) {
  switch (which) {
    case 0:
      return (m.a * m.d - m.a * m.c * m.a.inverse() * m.b).norm();
    case 1:
      return (m.c * m.b - m.c * m.a * m.c.inverse() * m.d).norm();
    default:
      return (m.c * m.b - m.d * m.b.inverse() * m.a * m.b).norm();
  }
}

HamSphere ham_sphere(const HamForm& f) {
  HamSphere s;
  if (f.a == 0) {
    s.is_plane = true;
    return s;
  }
  s.center = -f.b / f.a;
  s.radius = std::sqrt(f.discriminant()) / std::abs(f.a);
  return s;
}

HamForm ham_precompose(const HamForm& f, const QuatMatrix& g) {
  // M(f.g) = g^* M(f) g with M(f) = (a b; b~ c).
  const Quaternion a = Quaternion::real(f.a), c = Quaternion::real(f.c);
  const Quaternion m00 = a * g.a + f.b * g.c;
  const Quaternion m01 = a * g.b + f.b * g.d;
  const Quaternion m10 = f.b.conj() * g.a + c * g.c;
  const Quaternion m11 = f.b.conj() * g.b + c * g.d;
  HamForm out;
  out.a = (g.a.conj() * m00 + g.c.conj() * m10).x0;
  out.b = g.a.conj() * m01 + g.c.conj() * m11;
  out.c = (g.b.conj() * m01 + g.d.conj() * m11).x0;
  return out;
}

}  // namespace ortho::quat
