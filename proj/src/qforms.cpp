#include "ortho/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "ortho/constants.hpp"
#include "ortho/errors.hpp"
#include "ortho/geom.hpp"

namespace ortho::qf {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

i128 iabs(i128 x) { return x < 0 ? -x : x; }

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw CapacityError("128-bit overflow in exact quadratic arithmetic");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r))
    throw CapacityError("128-bit overflow in exact quadratic arithmetic");
  return r;
}

std::int64_t isqrt64(std::int64_t n) {
  if (n < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

i128 isqrt128(i128 n) {
  if (n < 0) return -1;
  auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square64(std::int64_t n) {
  if (n < 0) return false;
  const std::int64_t r = isqrt64(n);
  return r * r == n;
}

void require_counting_form(const BinaryQF& q) {
  require(q.primitive(), "form must be primitive");
  require(q.indefinite_nonsquare(),
          "form must be indefinite with nonsquare discriminant");
}

}  // namespace

// ----------------------------------------------------------------- BinaryQF

i128 BinaryQF::eval(i128 x, i128 y) const {
  return checked_add(
      checked_add(checked_mul(a, checked_mul(x, x)),
                  checked_mul(b, checked_mul(x, y))),
      checked_mul(c, checked_mul(y, y)));
}

bool BinaryQF::primitive() const {
  return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)) == 1;
}

bool BinaryQF::indefinite_nonsquare() const {
  const std::int64_t d = disc();
  return d > 0 && !is_square64(d);
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat_inv_unimodular(const Mat2& a) {
  require(a[0] * a[3] - a[1] * a[2] == 1, "matrix must have determinant 1");
  return {a[3], -a[1], -a[2], a[0]};
}

BinaryQF precompose(const BinaryQF& q, const Mat2& g) {
  // Q(g (x,y)) with g acting by columns: (x,y) -> (g0 x + g1 y, g2 x + g3 y).
  const auto A = static_cast<std::int64_t>(q.eval(g[0], g[2]));
  const auto C = static_cast<std::int64_t>(q.eval(g[1], g[3]));
  const std::int64_t B = 2 * q.a * g[0] * g[1] + q.b * (g[0] * g[3] + g[1] * g[2]) +
                         2 * q.c * g[2] * g[3];
  return {A, B, C};
}

// ------------------------------------------------------------ QuadFieldElem

QuadFieldElem QuadFieldElem::half(i128 m, i128 n, std::int64_t delta) {
  QuadFieldElem e{m, n, delta};
  if (((m - n * static_cast<i128>(delta)) & 1) != 0)
    throw std::invalid_argument("quadratic element violates parity invariant");
  return e;
}

QuadFieldElem QuadFieldElem::operator*(const QuadFieldElem& o) const {
  const i128 d = delta;
  const i128 mm = checked_add(checked_mul(m, o.m), checked_mul(checked_mul(n, o.n), d));
  const i128 nn = checked_add(checked_mul(m, o.n), checked_mul(n, o.m));
  return {mm / 2, nn / 2, delta};
}

QuadFieldElem QuadFieldElem::operator-(const QuadFieldElem& o) const {
  return {m - o.m, n - o.n, delta};
}

int QuadFieldElem::sign() const {
  if (m >= 0 && n >= 0) return (m > 0 || n > 0) ? 1 : 0;
  if (m <= 0 && n <= 0) return (m < 0 || n < 0) ? -1 : 0;
  const i128 lhs = checked_mul(m, m);
  const i128 rhs = checked_mul(checked_mul(n, n), static_cast<i128>(delta));
  if (m > 0) return lhs > rhs ? 1 : -1;  // n < 0
  return rhs > lhs ? 1 : -1;             // m < 0, n > 0
}

// ------------------------------------------------------------------- Pell

namespace {

bool valid_pell_disc(std::int64_t delta) {
  const std::int64_t r = ((delta % 4) + 4) % 4;
  return delta > 0 && !is_square64(delta) && (r == 0 || r == 1);
}

BinaryQF principal_form(std::int64_t delta) {
  if (((delta % 4) + 4) % 4 == 0) return {1, 0, -delta / 4};
  return {1, 1, (1 - delta) / 4};
}

struct ReducedStep {
  BinaryQF next;
  Mat2 transform;  // next = current . transform
};

bool is_reduced(const BinaryQF& f) {
  const std::int64_t d = f.disc();
  if (f.b <= 0) return false;
  if (f.b * f.b >= d) return false;               // b < sqrt(d)
  const std::int64_t t = 2 * std::llabs(f.a);
  if ((f.b + t) * (f.b + t) <= d) return false;   // sqrt(d) < b + 2|a|
  if (t > f.b && (t - f.b) * (t - f.b) >= d) return false;  // 2|a| - b < sqrt(d)
  return true;
}

// One rho-step of the reduction/cycle operator.
ReducedStep rho(const BinaryQF& f) {
  require(f.c != 0, "rho undefined when c = 0 (square discriminant)");
  const std::int64_t d = f.disc();
  const std::int64_t m = 2 * std::llabs(f.c);
  const std::int64_t s = isqrt64(d);
  // Target window for b': (-|c|, |c|] while |c| > sqrt(d), else (sqrt(d)-2|c|, sqrt(d)).
  const std::int64_t lo =
      (static_cast<i128>(f.c) * f.c > d) ? -std::llabs(f.c) + 1 : s - m + 1;
  std::int64_t b2 = lo + ((((-f.b - lo) % m) + m) % m);
  const std::int64_t c2 = static_cast<std::int64_t>(
      (static_cast<i128>(b2) * b2 - d) / (4 * static_cast<i128>(f.c)));
  const std::int64_t mcoef = (f.b + b2) / (2 * f.c);
  return {{f.c, b2, c2}, Mat2{0, -1, 1, mcoef}};
}

struct ReductionPath {
  BinaryQF reduced;
  Mat2 transform;  // reduced = input . transform
};

ReductionPath reduce_form(BinaryQF f) {
  Mat2 acc{1, 0, 0, 1};
  for (int i = 0; i < 100000; ++i) {
    if (is_reduced(f)) return {f, acc};
    const ReducedStep st = rho(f);
    f = st.next;
    acc = mat_mul(acc, st.transform);
  }
  throw std::runtime_error("reduction did not terminate");
}

}  // namespace

PellSolution pell_fundamental(std::int64_t delta) {
  require(valid_pell_disc(delta),
          "Pell discriminant must be positive, nonsquare and 0 or 1 mod 4");
  // Walk the principal cycle once; the return transformation is the
  // fundamental automorph, with trace t and lower-left a*u.
  const BinaryQF p = principal_form(delta);
  const ReductionPath start = reduce_form(p);
  BinaryQF f = start.reduced;
  Mat2 acc{1, 0, 0, 1};
  for (int i = 0; i < 10000000; ++i) {
    const ReducedStep st = rho(f);
    f = st.next;
    acc = mat_mul(acc, st.transform);
    if (f == start.reduced) break;
  }
  require(f == start.reduced, "principal cycle did not close");
  // Conjugate back to an automorph of the principal form itself.
  const Mat2 gamma = mat_mul(mat_mul(start.transform, acc),
                             mat_inv_unimodular(start.transform));
  PellSolution sol;
  sol.t = iabs(static_cast<i128>(gamma[0]) + gamma[3]);
  sol.u = iabs(static_cast<i128>(gamma[2]) / p.a);
  if (sol.u == 0)
    throw std::runtime_error("degenerate automorph from principal cycle");
  const i128 check = checked_mul(sol.t, sol.t) -
                     checked_mul(static_cast<i128>(delta), checked_mul(sol.u, sol.u));
  if (check != 4) throw std::runtime_error("Pell verification failed");
  return sol;
}

double regulator(const BinaryQF& q) {
  require_counting_form(q);
  const PellSolution p = pell_fundamental(q.disc());
  return std::log((static_cast<double>(p.t) +
                   static_cast<double>(p.u) * std::sqrt(static_cast<double>(q.disc()))) /
                  2);
}

Mat2 automorph_from_pell(const BinaryQF& q, i128 t, i128 u) {
  const i128 tm = t - checked_mul(static_cast<i128>(q.b), u);
  const i128 tp = t + checked_mul(static_cast<i128>(q.b), u);
  if ((tm & 1) != 0 || (tp & 1) != 0)
    throw std::runtime_error("Pell parity violated: t != b u mod 2");
  const auto lo = static_cast<std::int64_t>(tm / 2);
  const auto hi = static_cast<std::int64_t>(tp / 2);
  return {lo, static_cast<std::int64_t>(-q.c * u),
          static_cast<std::int64_t>(q.a * u), hi};
}

Mat2 automorph_generator(const BinaryQF& q) {
  require_counting_form(q);
  const PellSolution p = pell_fundamental(q.disc());
  return automorph_from_pell(q, p.t, p.u);
}

// ------------------------------------------------------- orbit canonical form

namespace {

// Window context: exact eps, eps^2 and the automorph directions acting on the
// linear-form coordinates 2aL1 = (2ax + by) - y sqrt(D), 2aL2 = conj.
struct OrbitContext {
  BinaryQF q;
  std::int64_t delta;
  QuadFieldElem eps, eps_sq;
  Mat2 up;    // multiplies |L1/L2| by eps^2
  Mat2 down;  // inverse direction

  explicit OrbitContext(const BinaryQF& form) : q(form), delta(form.disc()) {
    require_counting_form(form);
    const PellSolution p = pell_fundamental(delta);
    eps = QuadFieldElem::half(p.t, p.u, delta);
    eps_sq = eps * eps;
    const Mat2 g = automorph_from_pell(form, p.t, p.u);
    // Decide which direction scales L1 by eps: compare the linear form
    // L1 . g with eps * L1 coefficient-wise (exact).
    const QuadFieldElem cx_g = QuadFieldElem::half(
        2 * (2 * static_cast<i128>(form.a) * g[0] + static_cast<i128>(form.b) * g[2]),
        -2 * static_cast<i128>(g[2]), delta);
    const QuadFieldElem cx = QuadFieldElem::half(4 * static_cast<i128>(form.a), 0, delta);
    if (cx_g == eps * cx) {
      up = g;
      down = mat_inv_unimodular(g);
    } else {
      up = mat_inv_unimodular(g);
      down = g;
      const QuadFieldElem cx_inv = QuadFieldElem::half(
          2 * (2 * static_cast<i128>(form.a) * up[0] + static_cast<i128>(form.b) * up[2]),
          -2 * static_cast<i128>(up[2]), delta);
      if (!(cx_inv == eps * cx))
        throw std::runtime_error("automorph eigen-direction not identified");
    }
  }

  QuadFieldElem l1(i128 x, i128 y) const {
    const i128 a2 = 2 * (2 * static_cast<i128>(q.a) * x + static_cast<i128>(q.b) * y);
    return QuadFieldElem::half(a2, -2 * y, delta);
  }
  QuadFieldElem l2(i128 x, i128 y) const {
    const i128 a2 = 2 * (2 * static_cast<i128>(q.a) * x + static_cast<i128>(q.b) * y);
    return QuadFieldElem::half(a2, 2 * y, delta);
  }

  // |L1| >= |L2|, exact: sign((A - y r)^2 - (A + y r)^2) = sign(-4 A y r).
  bool ratio_at_least_one(i128 x, i128 y) const {
    const i128 A = 2 * static_cast<i128>(q.a) * x + static_cast<i128>(q.b) * y;
    return checked_mul(A, y) <= 0;
  }
  // |L1| < eps^2 |L2|, exact.
  bool ratio_below_eps_sq(i128 x, i128 y) const {
    QuadFieldElem p1 = l1(x, y);
    if (p1.sign() < 0) p1 = -p1;
    QuadFieldElem p2 = l2(x, y);
    if (p2.sign() < 0) p2 = -p2;
    return (eps_sq * p2 - p1).sign() > 0;
  }
  bool in_window(i128 x, i128 y) const {
    return ratio_at_least_one(x, y) && ratio_below_eps_sq(x, y);
  }
  bool l2_positive(i128 x, i128 y) const { return l2(x, y).sign() > 0; }
};

void apply_mat(const Mat2& g, i128& x, i128& y) {
  const i128 nx = checked_add(checked_mul(static_cast<i128>(g[0]), x),
                              checked_mul(static_cast<i128>(g[1]), y));
  const i128 ny = checked_add(checked_mul(static_cast<i128>(g[2]), x),
                              checked_mul(static_cast<i128>(g[3]), y));
  x = nx;
  y = ny;
}

constexpr std::int64_t kCoordCap = std::int64_t{1} << 62;

}  // namespace

Representation canonical_rep(const BinaryQF& q, std::int64_t x0, std::int64_t y0) {
  const OrbitContext ctx(q);
  require(q.eval(x0, y0) != 0, "representation must have Q(x, y) != 0");
  i128 x = x0, y = y0;
  for (int i = 0;; ++i) {
    if (i > 100000) throw CapacityError("orbit canonicalization did not settle");
    if (!ctx.ratio_at_least_one(x, y)) {
      apply_mat(ctx.up, x, y);
    } else if (!ctx.ratio_below_eps_sq(x, y)) {
      apply_mat(ctx.down, x, y);
    } else {
      break;
    }
    if (iabs(x) > kCoordCap || iabs(y) > kCoordCap)
      throw CapacityError("orbit canonicalization overflow");
  }
  if (!ctx.l2_positive(x, y)) {
    x = -x;
    y = -y;
  }
  Representation r;
  r.x = static_cast<std::int64_t>(x);
  r.y = static_cast<std::int64_t>(y);
  r.value = static_cast<std::int64_t>(q.eval(x, y));
  return r;
}

// ------------------------------------------------------------ counting Psi

namespace {

struct CountBox {
  std::int64_t ymax = 0;
  double alim = 0;  // bound on |2ax + by|
};

// Enumeration bounds for the window representatives. With L1 L2 = Q/a and
// the window |L1/L2| in [1, eps^2), any representative of an orbit with
// |Q| <= s satisfies |L2| <= sqrt(s/|a|) and |L1| < eps sqrt(s/|a|), so on
// the scaled forms 2aL: |2aL2| <= 2 sqrt(|a|s), |2aL1| < 2 eps sqrt(|a|s).
// From y = (2aL2 - 2aL1)/(2 sqrt(D)) and 2ax + by = (2aL1 + 2aL2)/2 the box
// below covers every canonical point; a 5% slack pads the float arithmetic.
// Over-enumeration is harmless (the exact window test admits one point per
// orbit), under-enumeration is impossible by the inequalities above.
CountBox count_box(const BinaryQF& q, double s) {
  const double delta = static_cast<double>(q.disc());
  const double abs_a = std::abs(static_cast<double>(q.a));
  const PellSolution p = pell_fundamental(q.disc());
  const double eps = (static_cast<double>(p.t) +
                      static_cast<double>(p.u) * std::sqrt(delta)) /
                     2;
  const double lim2 = 2 * std::sqrt(abs_a * std::max(0.0, s));
  const double lim1 = eps * lim2;
  CountBox box;
  const double ybound = (lim1 + lim2) / (2 * std::sqrt(delta)) * 1.05 + 2;
  if (ybound > 1e9) throw CapacityError("representation enumeration too large");
  box.ymax = static_cast<std::int64_t>(ybound);
  box.alim = (lim1 + lim2) / 2 * 1.05 + 2;
  return box;
}

std::int64_t count_primitive_range(const BinaryQF& q, const OrbitContext& ctx,
                                   double s, const CountBox& box,
                                   std::int64_t ylo, std::int64_t yhi) {
  const auto smax = static_cast<std::int64_t>(std::floor(s));
  std::int64_t count = 0;
  for (std::int64_t y = ylo; y <= yhi; ++y) {
    // x range from |2ax + by| <= alim.
    const double t1 = (-box.alim - static_cast<double>(q.b) * static_cast<double>(y)) /
                      (2.0 * static_cast<double>(q.a));
    const double t2 = (box.alim - static_cast<double>(q.b) * static_cast<double>(y)) /
                      (2.0 * static_cast<double>(q.a));
    const auto xlo = static_cast<std::int64_t>(std::floor(std::min(t1, t2))) - 1;
    const auto xhi = static_cast<std::int64_t>(std::ceil(std::max(t1, t2))) + 1;
    for (std::int64_t x = xlo; x <= xhi; ++x) {
      const i128 A = 2 * static_cast<i128>(q.a) * x + static_cast<i128>(q.b) * y;
      if (checked_mul(A, static_cast<i128>(y)) > 0) continue;  // |L1| < |L2|
      const i128 value = q.eval(x, y);
      if (value == 0 || iabs(value) > smax) continue;
      if (std::gcd(std::llabs(x), std::llabs(y)) != 1) continue;
      if (!ctx.ratio_below_eps_sq(x, y)) continue;
      if (!ctx.l2_positive(x, y)) continue;
      ++count;
    }
  }
  return count;
}

}  // namespace

std::int64_t count_primitive_reps(const BinaryQF& q, double s, int threads) {
  require_counting_form(q);
  require(s >= 0, "bound must be nonnegative");
  if (s < 1) return 0;
  const OrbitContext ctx(q);
  const CountBox box = count_box(q, s);
  const std::int64_t lo = -box.ymax, hi = box.ymax;
  const int nt = std::max(1, threads);
  if (nt == 1) return count_primitive_range(q, ctx, s, box, lo, hi);
  std::vector<std::int64_t> partial(static_cast<std::size_t>(nt), 0);
  std::vector<std::thread> pool;
  const std::int64_t span = hi - lo + 1;
  for (int i = 0; i < nt; ++i) {
    const std::int64_t begin = lo + span * i / nt;
    const std::int64_t end = lo + span * (i + 1) / nt - 1;
    pool.emplace_back([&, i, begin, end] {
      partial[static_cast<std::size_t>(i)] =
          count_primitive_range(q, ctx, s, box, begin, end);
    });
  }
  for (auto& t : pool) t.join();
  std::int64_t total = 0;
  for (std::int64_t p : partial) total += p;
  return total;
}

std::int64_t count_all_reps(const BinaryQF& q, double s, int threads) {
  require_counting_form(q);
  std::int64_t total = 0;
  for (std::int64_t k = 1; static_cast<double>(k) * static_cast<double>(k) <= s; ++k) {
    const std::int64_t part =
        count_primitive_reps(q, s / (static_cast<double>(k) * static_cast<double>(k)),
                             threads);
    if (part == 0) break;  // Psi is monotone, later terms vanish too
    total += part;
  }
  return total;
}

// ------------------------------------------------------ perpendicular length

double perp_length(const BinaryQF& q, const Mat2& gamma) {
  require_counting_form(q);
  require(gamma[0] * gamma[3] - gamma[1] * gamma[2] == 1,
          "gamma must have determinant 1");
  const i128 v = q.eval(gamma[3], -gamma[2]);
  require(v != 0, "gamma sends the axis endpoint to infinity");
  return std::log(2 * std::abs(static_cast<double>(v)) /
                  std::sqrt(static_cast<double>(q.disc())));
}

double perp_length_geometric(const BinaryQF& q, const Mat2& gamma) {
  require_counting_form(q);
  const double sd = std::sqrt(static_cast<double>(q.disc()));
  const double r1 = (-q.b + sd) / (2 * q.a);
  const double r2 = (-q.b - sd) / (2 * q.a);
  const geom::Geodesic axis(geom::BoundaryPoint::finite(geom::Vec::of({r1})),
                            geom::BoundaryPoint::finite(geom::Vec::of({r2})));
  const geom::Moebius g = geom::Moebius::from_real(
      static_cast<double>(gamma[0]), static_cast<double>(gamma[1]),
      static_cast<double>(gamma[2]), static_cast<double>(gamma[3]));
  const geom::Horoball std_ball(geom::BoundaryPoint::at_infinity(2), 1.0);
  return geom::dist_between(std_ball, geom::moebius_apply(g, axis));
}

// ------------------------------------------------------------- Gauss count

std::int64_t gauss_count(const BinaryQF& q, std::int64_t t) {
  require(q.disc() < 0 && q.a > 0, "form must be positive definite");
  require(t >= 0, "bound must be nonnegative");
  const std::int64_t d = -q.disc();
  // Rows with real solutions: |d| y^2 <= 4 a t.
  const std::int64_t ymax = isqrt64(4 * q.a * t / d);
  std::int64_t count = 0;
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    const i128 disc_x = static_cast<i128>(q.disc()) * y * y +
                        4 * static_cast<i128>(q.a) * t;
    if (disc_x < 0) continue;
    const i128 sq = isqrt128(disc_x);
    std::int64_t xlo = static_cast<std::int64_t>(
        (-static_cast<i128>(q.b) * y - sq) / (2 * q.a)) - 2;
    std::int64_t xhi = static_cast<std::int64_t>(
        (-static_cast<i128>(q.b) * y + sq) / (2 * q.a)) + 2;
    while (q.eval(xlo, y) > t) ++xlo;
    while (xlo <= xhi && q.eval(xhi, y) > t) --xhi;
    if (xlo <= xhi) count += xhi - xlo + 1;
  }
  return count;
}

// ------------------------------------------------------- reduction machinery

std::vector<BinaryQF> reduction_cycle(const BinaryQF& q) {
  require(q.indefinite_nonsquare(),
          "reduction cycle needs an indefinite nonsquare discriminant");
  const ReductionPath path = reduce_form(q);
  std::vector<BinaryQF> cycle{path.reduced};
  BinaryQF f = path.reduced;
  for (int i = 0; i < 10000000; ++i) {
    f = rho(f).next;
    if (f == path.reduced) return cycle;
    cycle.push_back(f);
  }
  throw std::runtime_error("reduction cycle did not close");
}

bool equivalent(const BinaryQF& q, const BinaryQF& r) {
  require(q.indefinite_nonsquare() && r.indefinite_nonsquare(),
          "equivalence needs indefinite nonsquare discriminants");
  if (q.disc() != r.disc()) return false;
  const BinaryQF target = reduce_form(r).reduced;
  for (const BinaryQF& f : reduction_cycle(q))
    if (f == target) return true;
  return false;
}

std::optional<Mat2> equivalent_witness(const BinaryQF& q, const BinaryQF& r) {
  if (q.disc() != r.disc()) return std::nullopt;
  const ReductionPath pq = reduce_form(q);
  const ReductionPath pr = reduce_form(r);
  BinaryQF f = pq.reduced;
  Mat2 around{1, 0, 0, 1};
  for (int i = 0; i < 10000000; ++i) {
    if (f == pr.reduced) {
      const Mat2 w = mat_mul(mat_mul(pq.transform, around),
                             mat_inv_unimodular(pr.transform));
      return w;
    }
    const ReducedStep st = rho(f);
    f = st.next;
    around = mat_mul(around, st.transform);
    if (f == pq.reduced) return std::nullopt;  // walked the whole cycle
  }
  return std::nullopt;
}

// ------------------------------------------- irrational orbits and feet

namespace {

struct CycleSet {
  std::vector<BinaryQF> forms;
  bool contains(const BinaryQF& reduced) const {
    return std::find(forms.begin(), forms.end(), reduced) != forms.end();
  }
};

// Enumerates forms (a', b', c') of discriminant d with center -b'/(2a') in
// [0,1) and |a'| <= amax, calling fn on each form in the class of q0 or -q0.
template <typename Fn>
void scan_orbit_forms(const BinaryQF& q0, std::int64_t amax, bool both_signs,
                      Fn&& fn) {
  const std::int64_t d = q0.disc();
  const CycleSet plus{reduction_cycle(q0)};
  const CycleSet minus{reduction_cycle(q0.negated())};
  for (std::int64_t aa = 1; aa <= amax; ++aa) {
    for (int sign = 0; sign < (both_signs ? 2 : 1); ++sign) {
      const std::int64_t a = sign == 0 ? aa : -aa;
      const std::int64_t m = 2 * aa;
      for (std::int64_t k = 0; k < m; ++k) {
        // b ranges over the residues with -b/(2a) in [0,1).
        const std::int64_t b = a > 0 ? -k : k;
        const i128 num = static_cast<i128>(b) * b - d;
        if (num % (4 * static_cast<i128>(a)) != 0) continue;
        const auto c = static_cast<std::int64_t>(num / (4 * static_cast<i128>(a)));
        const BinaryQF f{a, b, c};
        if (!f.primitive()) continue;
        const BinaryQF red = reduce_form(f).reduced;
        if (plus.contains(red) || minus.contains(red)) fn(f);
      }
    }
  }
}

}  // namespace

std::int64_t count_orbit_irrationals(const BinaryQF& q0, double s) {
  require_counting_form(q0);
  require(s > 0, "bound must be positive");
  // h(alpha) = 2|a|/sqrt(Delta) <= s.
  const double amax_f = s * std::sqrt(static_cast<double>(q0.disc())) / 2;
  if (amax_f > 5e7) throw CapacityError("irrational enumeration too large");
  const auto amax = static_cast<std::int64_t>(std::floor(amax_f + 1e-12));
  std::int64_t count = 0;
  scan_orbit_forms(q0, amax, /*both_signs=*/true, [&](const BinaryQF&) { ++count; });
  return count;
}

std::vector<double> feet_distribution(const BinaryQF& q, double s) {
  require_counting_form(q);
  const double sd = std::sqrt(static_cast<double>(q.disc()));
  // Perpendicular length -ln r with r = sqrt(Delta)/(2a'); length <= s and
  // positive means sqrt(Delta)/2 < a' <= sqrt(Delta) e^s / 2.
  const double amax_f = sd * std::exp(s) / 2;
  if (amax_f > 5e7) throw CapacityError("feet enumeration too large");
  const auto amax = static_cast<std::int64_t>(std::floor(amax_f + 1e-12));
  std::vector<double> feet;
  scan_orbit_forms(q, amax, /*both_signs=*/false, [&](const BinaryQF& f) {
    const double radius = sd / (2 * static_cast<double>(f.a));
    if (radius >= 1) return;  // meets the horoball, no perpendicular
    double foot = -static_cast<double>(f.b) / (2 * static_cast<double>(f.a));
    foot -= std::floor(foot);
    feet.push_back(foot);
  });
  return feet;
}

// ---------------------------------------------------------------- reports

report::CountReport quad_count_report(const BinaryQF& q, double smax, int steps,
                                      int threads) {
  require(steps >= 1 && smax >= 1, "need smax >= 1 and steps >= 1");
  report::CountReport rep;
  rep.experiment = "quad-count";
  rep.params["a"] = std::to_string(q.a);
  rep.params["b"] = std::to_string(q.b);
  rep.params["c"] = std::to_string(q.c);
  const double constant = consts::special_constant(
      "quadratic_form",
      {{"regulator", regulator(q)}, {"delta", static_cast<double>(q.disc())}});
  for (int i = 1; i <= steps; ++i) {
    const double s = smax * i / steps;
    report::Row row;
    row.s = s;
    row.count = count_primitive_reps(q, s, threads);
    row.prediction = constant * s;
    row.ratio = static_cast<double>(row.count) / row.prediction;
    rep.rows.push_back(row);
  }
  // Linear growth: fit against e^{1 * ln s} over the positive rows.
  std::vector<report::Row> logrows;
  for (const auto& r : rep.rows)
    if (r.count > 0) {
      report::Row lr = r;
      lr.s = std::log(r.s);
      logrows.push_back(lr);
    }
  rep.fit = report::fit_constant(logrows, 1.0);
  return rep;
}

report::CountReport quad_verify_length_report(const BinaryQF& q, int samples,
                                              std::uint64_t seed) {
  require(samples >= 1, "need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> word_len(1, 24);
  std::uniform_int_distribution<int> pick(0, 2);
  std::int64_t ok = 0;
  double max_diff = 0;
  int made = 0;
  std::int64_t attempts = 0;
  while (made < samples) {
    if (++attempts > 200LL * samples + 1000)
      throw CapacityError("could not draw enough positive-length samples");
    // Random word in {T, T^-1, S}, entries kept small enough for doubles.
    Mat2 g{1, 0, 0, 1};
    const int len = word_len(rng);
    for (int i = 0; i < len; ++i) {
      const int w = pick(rng);
      const Mat2 gen = w == 0 ? Mat2{1, 1, 0, 1}
                     : w == 1 ? Mat2{1, -1, 0, 1}
                              : Mat2{0, -1, 1, 0};
      g = mat_mul(g, gen);
      if (std::llabs(g[0]) > 1000000 || std::llabs(g[1]) > 1000000 ||
          std::llabs(g[2]) > 1000000 || std::llabs(g[3]) > 1000000)
        break;
    }
    if (q.eval(g[3], -g[2]) == 0) continue;
    const double arithmetic = perp_length(q, g);
    if (arithmetic <= 0) continue;
    const double geometric = perp_length_geometric(q, g);
    max_diff = std::max(max_diff, std::abs(arithmetic - geometric));
    if (std::abs(arithmetic - geometric) < 1e-9) ++ok;
    ++made;
  }
  report::CountReport rep;
  rep.experiment = "quad-verify-length";
  rep.params["a"] = std::to_string(q.a);
  rep.params["b"] = std::to_string(q.b);
  rep.params["c"] = std::to_string(q.c);
  rep.params["seed"] = std::to_string(seed);
  rep.params["max_abs_diff"] = report::format_double(max_diff);
  report::Row row;
  row.s = samples;
  row.count = ok;
  row.prediction = samples;
  row.ratio = static_cast<double>(ok) / samples;
  rep.rows.push_back(row);
  rep.fit.constant = max_diff;
  rep.fit.window = samples;
  rep.fit.drift = 0;
  return rep;
}

report::CountReport quad_irrationals_report(const BinaryQF& q, double smax,
                                            int steps) {
  require(steps >= 1 && smax > 0, "need smax > 0 and steps >= 1");
  report::CountReport rep;
  rep.experiment = "quad-irrationals";
  rep.params["a"] = std::to_string(q.a);
  rep.params["b"] = std::to_string(q.b);
  rep.params["c"] = std::to_string(q.c);
  std::vector<double> ss, cs;
  for (int i = 1; i <= steps; ++i) {
    const double s = smax * i / steps;
    report::Row row;
    row.s = s;
    row.count = count_orbit_irrationals(q, s);
    if (row.count > 0) {
      ss.push_back(s);
      cs.push_back(static_cast<double>(row.count));
    }
    rep.rows.push_back(row);
  }
  // No closed-form constant for this count; the predictions use the
  // self-fitted linear coefficient and the growth exponent goes to params.
  std::vector<report::Row> logrows;
  for (const auto& r : rep.rows)
    if (r.count > 0) {
      report::Row lr = r;
      lr.s = std::log(r.s);
      logrows.push_back(lr);
    }
  if (!logrows.empty()) rep.fit = report::fit_constant(logrows, 1.0);
  for (auto& r : rep.rows) {
    r.prediction = rep.fit.constant > 0 ? rep.fit.constant * r.s : 1;
    r.ratio = static_cast<double>(r.count) / r.prediction;
  }
  rep.params["fitted_exponent"] = report::format_double(
      ss.size() >= 2 ? report::fit_exponent(ss, cs) : 0);
  return rep;
}

}  // namespace ortho::qf
