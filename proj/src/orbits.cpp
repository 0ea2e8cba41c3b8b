#include "ortho/orbits.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ortho/constants.hpp"
#include "ortho/errors.hpp"

namespace ortho::orbits {

namespace {

using i128 = __int128;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Extended gcd over Z: g = gcd(a, b) >= 0 with xa + yb = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t* x,
                     std::int64_t* y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  *x = old_s;
  *y = old_t;
  return old_r;
}

// Number of integers k with q(k) = a k^2 + b k + c <= 0, a > 0.
std::int64_t quadratic_interval_count(i128 a, i128 b, i128 c) {
  const double fa = static_cast<double>(a), fb = static_cast<double>(b),
               fc = static_cast<double>(c);
  const double disc = fb * fb - 4 * fa * fc;
  if (disc < 0) return 0;
  const double sq = std::sqrt(disc);
  auto eval = [&](i128 k) { return a * k * k + b * k + c; };
  auto lo = static_cast<std::int64_t>(std::floor((-fb - sq) / (2 * fa)));
  auto hi = static_cast<std::int64_t>(std::ceil((-fb + sq) / (2 * fa)));
  // Exact fixup around the floating endpoints.
  while (eval(lo) > 0 && lo <= hi) ++lo;
  while (eval(lo - 1) <= 0) --lo;
  while (eval(hi) > 0 && hi >= lo) --hi;
  while (eval(hi + 1) <= 0) ++hi;
  return hi >= lo ? hi - lo + 1 : 0;
}

// ---- integer case: SL_2(Z) matrices with A^2+B^2+C^2+D^2 <= cap ----------

std::int64_t count_z_range(std::int64_t cap, std::int64_t alo, std::int64_t ahi) {
  std::int64_t total = 0;
  const auto limit = static_cast<std::int64_t>(std::sqrt(static_cast<double>(cap))) + 1;
  for (std::int64_t a = alo; a <= ahi; ++a) {
    for (std::int64_t c = -limit; c <= limit; ++c) {
      const std::int64_t m = a * a + c * c;
      if (m == 0 || m > cap) continue;
      std::int64_t x, y;
      if (ext_gcd(a, c, &x, &y) != 1) continue;
      // a d - c b = 1 with base (d0, b0) = (x, -y); family d = d0 + k c,
      // b = b0 + k a.
      const std::int64_t d0 = x, b0 = -y;
      // (a^2+c^2) k^2 + 2(a b0 + c d0) k + b0^2 + d0^2 - (cap - m) <= 0.
      total += quadratic_interval_count(
          m, 2 * (static_cast<i128>(a) * b0 + static_cast<i128>(c) * d0),
          static_cast<i128>(b0) * b0 + static_cast<i128>(d0) * d0 - (cap - m));
    }
  }
  return total;
}

// ---- Gaussian case --------------------------------------------------------

struct GInt {
  std::int64_t x = 0, y = 0;

  std::int64_t norm() const { return x * x + y * y; }
  GInt operator*(const GInt& o) const {
    return {x * o.x - y * o.y, x * o.y + y * o.x};
  }
  GInt operator+(const GInt& o) const { return {x + o.x, y + o.y}; }
  GInt operator-(const GInt& o) const { return {x - o.x, y - o.y}; }
  GInt conj() const { return {x, -y}; }
  bool is_zero() const { return x == 0 && y == 0; }
};

// Nearest-integer division; remainder has norm strictly below the divisor's.
GInt g_div_round(const GInt& a, const GInt& b) {
  const std::int64_t n = b.norm();
  const GInt num = a * b.conj();
  auto round_div = [](std::int64_t p, std::int64_t q) {
    return static_cast<std::int64_t>(
        std::llround(static_cast<double>(p) / static_cast<double>(q)));
  };
  return {round_div(num.x, n), round_div(num.y, n)};
}

bool g_ext_gcd_unit(GInt a, GInt b, GInt* x, GInt* y) {
  // Returns true iff gcd is a unit, with x a + y b = 1.
  GInt old_r = a, r = b, old_s{1, 0}, s{0, 0}, old_t{0, 0}, t{1, 0};
  while (!r.is_zero()) {
    const GInt q = g_div_round(old_r, r);
    GInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r.norm() != 1) return false;
  // Divide by the unit gcd.
  const GInt inv = old_r.conj();  // unit inverse
  *x = old_s * inv;
  *y = old_t * inv;
  return true;
}

std::int64_t count_zi_range(std::int64_t cap, std::int64_t axlo, std::int64_t axhi) {
  std::int64_t total = 0;
  const auto limit = static_cast<std::int64_t>(std::sqrt(static_cast<double>(cap))) + 1;
  for (std::int64_t ax = axlo; ax <= axhi; ++ax) {
    for (std::int64_t ay = -limit; ay <= limit; ++ay) {
      const GInt a{ax, ay};
      for (std::int64_t cx = -limit; cx <= limit; ++cx) {
        for (std::int64_t cy = -limit; cy <= limit; ++cy) {
          const GInt c{cx, cy};
          const std::int64_t m = a.norm() + c.norm();
          if (m == 0 || m > cap) continue;
          GInt d0, b0neg;
          if (!g_ext_gcd_unit(a, c, &d0, &b0neg)) continue;
          // a d - c b = 1: particular (d, b) = (d0, -b0neg); family
          // (d, b) += t (c, a) for Gaussian t.
          const GInt b0{-b0neg.x, -b0neg.y};
          const std::int64_t rem = cap - m;
          // |b0 + t a|^2 + |d0 + t c|^2 <= rem: disk in t of squared radius
          // (rem - k0 + |w|^2/m) around -w/m with w = conj(a) b0 + conj(c) d0.
          const GInt w = a.conj() * b0 + c.conj() * d0;
          const std::int64_t k0 = b0.norm() + d0.norm();
          // m |t|^2 + 2 Re(conj(w) t)... enumerate ty rows, count tx per row.
          const double rad_sq =
              (static_cast<double>(rem) - k0 +
               static_cast<double>(w.norm()) / static_cast<double>(m));
          if (rad_sq < 0) continue;
          const double cy0 = -static_cast<double>(w.y) / static_cast<double>(m);
          const double rr = std::sqrt(rad_sq / static_cast<double>(m));
          for (std::int64_t ty = static_cast<std::int64_t>(std::floor(cy0 - rr)) - 1;
               ty <= static_cast<std::int64_t>(std::ceil(cy0 + rr)) + 1; ++ty) {
            // m tx^2 + 2 w.x tx + (m ty^2 + 2 w.y ty + k0 - rem) <= 0.
            total += quadratic_interval_count(
                m, 2 * static_cast<i128>(w.x),
                static_cast<i128>(m) * ty * ty + 2 * static_cast<i128>(w.y) * ty +
                    k0 - rem);
          }
        }
      }
    }
  }
  return total;
}

std::int64_t cap_from_s(double s) {
  const double cap = 2 * std::cosh(s);
  if (cap > 9e17) throw CapacityError("ball bound too large");
  return static_cast<std::int64_t>(std::floor(cap + 1e-9));
}

}  // namespace

Ring ring_from_name(const std::string& name) {
  if (name == "psl2z") return Ring::Z;
  if (name == "psl2zi") return Ring::GaussianZ;
  throw std::invalid_argument("unknown group: " + name);
}

BallCount ball_matrices(Ring ring, double s, int threads) {
  require(s >= 0, "radius must be nonnegative");
  const std::int64_t cap = cap_from_s(s);
  const auto limit = static_cast<std::int64_t>(std::sqrt(static_cast<double>(cap))) + 1;
  if (ring == Ring::Z && limit > 3000000)
    throw CapacityError("ball radius too large for the integer enumeration");
  if (ring == Ring::GaussianZ && limit > 3000)
    throw CapacityError("ball radius too large for the Gaussian enumeration");
  const int nt = std::max(1, threads);
  std::vector<std::int64_t> partial(static_cast<std::size_t>(nt), 0);
  std::vector<std::thread> pool;
  const std::int64_t span = 2 * limit + 1;
  for (int i = 0; i < nt; ++i) {
    const std::int64_t begin = -limit + span * i / nt;
    const std::int64_t end = -limit + span * (i + 1) / nt - 1;
    pool.emplace_back([&, i, begin, end] {
      partial[static_cast<std::size_t>(i)] =
          ring == Ring::Z ? count_z_range(cap, begin, end)
                          : count_zi_range(cap, begin, end);
    });
  }
  for (auto& t : pool) t.join();
  std::int64_t sl_total = 0;
  for (std::int64_t p : partial) sl_total += p;

  BallCount out;
  out.matrices = sl_total / 2;  // quotient by +-I
  // Stabilizer of the base point: elements at distance zero.
  const std::int64_t cap0 = 2;
  out.stabilizer =
      (ring == Ring::Z ? count_z_range(cap0, -2, 2) : count_zi_range(cap0, -2, 2)) / 2;
  return out;
}

std::int64_t ball_matrices_slow(Ring ring, double s) {
  const std::int64_t cap = cap_from_s(s);
  const auto limit = static_cast<std::int64_t>(std::sqrt(static_cast<double>(cap))) + 1;
  std::int64_t total = 0;
  if (ring == Ring::Z) {
    for (std::int64_t a = -limit; a <= limit; ++a)
      for (std::int64_t b = -limit; b <= limit; ++b)
        for (std::int64_t c = -limit; c <= limit; ++c)
          for (std::int64_t d = -limit; d <= limit; ++d)
            if (a * d - b * c == 1 && a * a + b * b + c * c + d * d <= cap)
              ++total;
    return total / 2;
  }
  auto loop = [&](auto&& fn) {
    for (std::int64_t x = -limit; x <= limit; ++x)
      for (std::int64_t y = -limit; y <= limit; ++y) fn(GInt{x, y});
  };
  loop([&](GInt a) {
    loop([&](GInt b) {
      loop([&](GInt c) {
        loop([&](GInt d) {
          const GInt det = a * d - b * c;
          if (det.x == 1 && det.y == 0 &&
              a.norm() + b.norm() + c.norm() + d.norm() <= cap)
            ++total;
        });
      });
    });
  });
  return total / 2;
}

report::CountReport orbit_ball_report(Ring ring, double smax, int steps,
                                      int threads) {
  require(steps >= 1 && smax > 0, "need smax > 0 and steps >= 1");
  report::CountReport rep;
  rep.experiment = "orbit-ball";
  rep.params["group"] = ring == Ring::Z ? "psl2z" : "psl2zi";
  const int n = ring == Ring::Z ? 2 : 3;
  // Modular surface area pi/3; Gaussian modular orbifold volume by the
  // Bianchi covolume formula.
  const double vol = ring == Ring::Z ? std::numbers::pi / 3
                                     : consts::humbert_volume(-4);
  const double point = consts::skinning_mass(consts::SkinningKind::point, n, 0, 0);
  const double constant =
      consts::master_constant(point, point, n - 1, consts::bm_mass(n, vol));
  std::int64_t stab = 0;
  for (int i = 1; i <= steps; ++i) {
    const double s = smax * i / steps;
    const BallCount bc = ball_matrices(ring, s, threads);
    stab = bc.stabilizer;
    report::Row row;
    row.s = s;
    row.count = bc.matrices;
    row.prediction = constant * std::exp((n - 1) * s);
    row.ratio = static_cast<double>(row.count) / row.prediction;
    rep.rows.push_back(row);
  }
  rep.params["stabilizer_order"] = std::to_string(stab);
  rep.params["prediction_constant"] = report::format_double(constant);
  rep.fit = report::fit_constant(rep.rows, n - 1);
  return rep;
}

}  // namespace ortho::orbits
