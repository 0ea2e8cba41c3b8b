#pragma once

// Geometric brute-force oracle for the horoball counting: completes coprime
// columns (p, q) to determinant-one matrices over the ring, maps the
// standard horoball through the Poincare extension and deduplicates the
// images by (center mod O_K, diameter).

#include <cmath>
#include <cstdint>
#include <set>
#include <tuple>

#include "ortho/cusps.hpp"
#include "ortho/geom.hpp"

namespace cusp_oracle {

using ortho::cusps::ImagQuadInt;

// Nearest-coordinate division in the omega basis; the five class number one
// rings are norm-Euclidean for this rounding.
inline ImagQuadInt ring_div_round(const ImagQuadInt& a, const ImagQuadInt& b) {
  const std::int64_t nb = b.norm();
  const ImagQuadInt num = a * b.conj();
  auto rd = [&](std::int64_t v) {
    return static_cast<std::int64_t>(
        std::llround(static_cast<double>(v) / static_cast<double>(nb)));
  };
  return {rd(num.m), rd(num.n), a.dk};
}

inline bool ring_ext_gcd_unit(ImagQuadInt p, ImagQuadInt q, ImagQuadInt* x,
                              ImagQuadInt* y) {
  const std::int64_t dk = p.dk;
  ImagQuadInt old_r = p, r = q;
  ImagQuadInt old_s{1, 0, dk}, s{0, 0, dk};
  ImagQuadInt old_t{0, 0, dk}, t{1, 0, dk};
  const ImagQuadInt minus_one{-1, 0, dk};
  while (!r.is_zero()) {
    const ImagQuadInt c = ring_div_round(old_r, r);
    const ImagQuadInt r2 = old_r + minus_one * (c * r);
    old_r = r;
    r = r2;
    const ImagQuadInt s2 = old_s + minus_one * (c * s);
    old_s = s;
    s = s2;
    const ImagQuadInt t2 = old_t + minus_one * (c * t);
    old_t = t;
    t = t2;
  }
  if (old_r.norm() != 1) return false;
  const ImagQuadInt inv = old_r.conj();
  *x = old_s * inv;
  *y = old_t * inv;
  return true;
}

inline std::int64_t geometric_horoball_count(std::int64_t dk, double s) {
  using namespace ortho::geom;
  const double wx = (((dk % 2) + 2) % 2 == 0) ? 0.0 : 0.5;
  const double wy = std::sqrt(static_cast<double>(-dk)) / 2;
  const auto nmax = static_cast<std::int64_t>(std::floor(std::exp(s) + 1e-9));
  const auto qb = static_cast<std::int64_t>(std::sqrt(static_cast<double>(nmax))) + 2;
  const std::int64_t pb = 2 * qb + 4;
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> images;
  auto emb = [&](const ImagQuadInt& z) {
    return std::pair<double, double>(
        static_cast<double>(z.m) + static_cast<double>(z.n) * wx,
        static_cast<double>(z.n) * wy);
  };
  for (std::int64_t qm = -qb; qm <= qb; ++qm)
    for (std::int64_t qn = -qb; qn <= qb; ++qn) {
      const ImagQuadInt q{qm, qn, dk};
      if (q.is_zero() || q.norm() > nmax) continue;
      for (std::int64_t pm = -pb; pm <= pb; ++pm)
        for (std::int64_t pn = -pb; pn <= pb; ++pn) {
          const ImagQuadInt p{pm, pn, dk};
          ImagQuadInt xx{0, 0, dk}, yy{0, 0, dk};
          if (!ring_ext_gcd_unit(p, q, &xx, &yy)) continue;
          const ImagQuadInt rr = ImagQuadInt{-1, 0, dk} * yy;
          const auto [px, py] = emb(p);
          const auto [qx, qy] = emb(q);
          const auto [rx, ry] = emb(rr);
          const auto [sx, sy] = emb(xx);
          const Moebius g =
              Moebius::from_complex(px, py, rx, ry, qx, qy, sx, sy);
          const Horoball image =
              moebius_apply(g, Horoball(BoundaryPoint::at_infinity(3), 1.0));
          if (image.center.infinite) continue;
          if (std::log(1 / image.size) > s + 1e-9) continue;
          const auto nq =
              static_cast<std::int64_t>(std::llround(1 / image.size));
          const double cy = image.center.point[1], cx = image.center.point[0];
          const double cn = cy / wy;
          const double cm = cx - cn * wx;
          const double fm = cm - std::floor(cm), fn = cn - std::floor(cn);
          const auto km = static_cast<std::int64_t>(
              std::llround(fm * static_cast<double>(nq)));
          const auto kn = static_cast<std::int64_t>(
              std::llround(fn * static_cast<double>(nq)));
          images.insert({km % nq, kn % nq, nq});
        }
    }
  return static_cast<std::int64_t>(images.size());
}

}  // namespace cusp_oracle
