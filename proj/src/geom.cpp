#include "ortho/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ortho::geom {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_same_dim(int a, int b) {
  require(a == b, "dimension mismatch");
}

double sq(double x) { return x * x; }

// |x - xi|^2 for an interior point and a finite boundary point.
double dist_sq_to_boundary(const UhsPoint& x, const Vec& xi) {
  return (x.horizontal - xi).norm_sq() + sq(x.height);
}

}  // namespace

// --------------------------------------------------------------------- Vec

Vec Vec::zero(int size) {
  Vec v;
  v.size = size;
  return v;
}

Vec Vec::of(std::initializer_list<double> xs) {
  Vec v;
  v.size = static_cast<int>(xs.size());
  int i = 0;
  for (double x : xs) v.a[static_cast<std::size_t>(i++)] = x;
  return v;
}

double Vec::norm_sq() const {
  double s = 0;
  for (int i = 0; i < size; ++i) s += sq((*this)[i]);
  return s;
}

double Vec::norm() const { return std::sqrt(norm_sq()); }

bool Vec::operator==(const Vec& o) const {
  if (size != o.size) return false;
  for (int i = 0; i < size; ++i)
    if ((*this)[i] != o[i]) return false;
  return true;
}

Vec operator+(const Vec& x, const Vec& y) {
  Vec r = x;
  for (int i = 0; i < x.size; ++i) r[i] += y[i];
  return r;
}

Vec operator-(const Vec& x, const Vec& y) {
  Vec r = x;
  for (int i = 0; i < x.size; ++i) r[i] -= y[i];
  return r;
}

Vec operator*(double s, const Vec& x) {
  Vec r = x;
  for (int i = 0; i < x.size; ++i) r[i] *= s;
  return r;
}

double dot(const Vec& x, const Vec& y) {
  double s = 0;
  for (int i = 0; i < x.size; ++i) s += x[i] * y[i];
  return s;
}

// ------------------------------------------------------------------- types

UhsPoint::UhsPoint(Vec h, double t) : horizontal(h), height(t) {
  require(t > 0, "UhsPoint height must be positive");
  require(h.size >= 1 && h.size <= kMaxDim - 1, "unsupported dimension");
}

BoundaryPoint BoundaryPoint::at_infinity(int dim) {
  BoundaryPoint b;
  b.infinite = true;
  b.point = Vec::zero(dim - 1);
  return b;
}

BoundaryPoint BoundaryPoint::finite(Vec p) {
  BoundaryPoint b;
  b.point = p;
  return b;
}

bool BoundaryPoint::operator==(const BoundaryPoint& o) const {
  if (infinite != o.infinite) return false;
  return infinite || point == o.point;
}

Geodesic::Geodesic(BoundaryPoint a, BoundaryPoint b) : from(a), to(b) {
  require_same_dim(a.dim(), b.dim());
  require(!(a == b), "geodesic endpoints must be distinct");
}

Vec Geodesic::center() const {
  require(!vertical(), "vertical geodesic has no finite center");
  return 0.5 * (from.point + to.point);
}

double Geodesic::radius() const {
  require(!vertical(), "vertical geodesic has no finite radius");
  return 0.5 * (from.point - to.point).norm();
}

Horoball::Horoball(BoundaryPoint c, double s) : center(c), size(s) {
  require(s > 0, "horoball size must be positive");
}

UnitTangent::UnitTangent(UhsPoint b, std::array<double, kMaxDim> dir)
    : base(b), direction(dir) {
  double n = 0;
  for (int i = 0; i < base.dim(); ++i) n += sq(dir[static_cast<std::size_t>(i)]);
  require(std::abs(std::sqrt(n) - base.height) <= 1e-9 * base.height,
          "tangent vector is not unit");
}

UnitTangent UnitTangent::antipode() const {
  auto d = direction;
  for (auto& x : d) x = -x;
  return UnitTangent(base, d);
}

HyperboloidPoint::HyperboloidPoint(std::array<double, kMaxDim + 1> coords,
                                   int n)
    : x(coords), dim(n) {
  require(n >= 2 && n <= kMaxDim, "unsupported dimension");
  require(x[0] > 0, "hyperboloid point needs x0 > 0");
  require(std::abs(minkowski(x, x, n) + 1) <= 1e-9,
          "hyperboloid point needs q(x) = -1");
}

double minkowski(const std::array<double, kMaxDim + 1>& x,
                 const std::array<double, kMaxDim + 1>& y, int n) {
  double s = -x[0] * y[0];
  for (int i = 1; i <= n; ++i)
    s += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
  return s;
}

// ----------------------------------------------------------------- Moebius

namespace {

// The coefficient ring of dimension n: R for H^2, C for H^3, H for H^5.
bool in_ring(const quat::Quaternion& q, int dim) {
  if (dim >= 5) return true;
  if (dim >= 3) return q.x2 == 0 && q.x3 == 0;
  return q.x1 == 0 && q.x2 == 0 && q.x3 == 0;
}

quat::Quaternion embed(const Vec& h) {
  // R^{n-1} -> Im-completion used by the Poincare extension: 1 -> x0,
  // 2 -> (x0, x1), 4 -> all four coordinates.
  quat::Quaternion q;
  q.x0 = h.size > 0 ? h[0] : 0;
  q.x1 = h.size > 1 ? h[1] : 0;
  q.x2 = h.size > 2 ? h[2] : 0;
  q.x3 = h.size > 3 ? h[3] : 0;
  return q;
}

Vec unembed(const quat::Quaternion& q, int size) {
  Vec v = Vec::zero(size);
  if (size > 0) v[0] = q.x0;
  if (size > 1) v[1] = q.x1;
  if (size > 2) v[2] = q.x2;
  if (size > 3) v[3] = q.x3;
  return v;
}

}  // namespace

Moebius::Moebius(quat::Quaternion a_, quat::Quaternion b_, quat::Quaternion c_,
                 quat::Quaternion d_, int dim_)
    : a(a_), b(b_), c(c_), d(d_), dim(dim_) {
  require(dim == 2 || dim == 3 || dim == 5, "Moebius dimension must be 2, 3 or 5");
  require(in_ring(a, dim) && in_ring(b, dim) && in_ring(c, dim) && in_ring(d, dim),
          "Moebius entries outside the coefficient ring");
  const double det = quat::dieudonne_det(quat::QuatMatrix{a, b, c, d});
  // 1e-12 relative to the size of the determinant expression itself.
  const double scale = 1 + (a * d).norm() + (b * c).norm();
  require(std::abs(det - 1) <= 1e-12 * scale,
          "Moebius map must have determinant 1");
}

Moebius Moebius::identity(int dim) {
  return Moebius(quat::Quaternion::real(1), {}, {}, quat::Quaternion::real(1),
                 dim);
}

Moebius Moebius::from_real(double a, double b, double c, double d) {
  return Moebius(quat::Quaternion::real(a), quat::Quaternion::real(b),
                 quat::Quaternion::real(c), quat::Quaternion::real(d), 2);
}

Moebius Moebius::from_complex(double ar, double ai, double br, double bi,
                              double cr, double ci, double dr, double di) {
  return Moebius(quat::Quaternion::complex(ar, ai),
                 quat::Quaternion::complex(br, bi),
                 quat::Quaternion::complex(cr, ci),
                 quat::Quaternion::complex(dr, di), 3);
}

Moebius Moebius::inverse() const {
  // For Dieudonne determinant 1 the inverse is (d~, -b~; -c~, a~) only in the
  // commutative case; over H use the general block inverse of (a b; c d).
  // (a b; c d)^-1 = (e f; g h) with e = (a - b d^-1 c)^-1 etc.; handle the
  // zero-entry cases by the adjugate-style formulas below.
  const quat::Quaternion A = a, B = b, C = c, D = d;
  quat::Quaternion e, f, g, h;
  if (!D.is_zero(1e-300)) {
    const quat::Quaternion s = A - B * D.inverse() * C;  // Schur complement
    e = s.inverse();
    f = -(e * B * D.inverse());
    g = -(D.inverse() * C * e);
    h = D.inverse() + D.inverse() * C * e * B * D.inverse();
  } else {
    // D = 0 forces B, C invertible: (a b; c 0)^-1 = (0, c^-1; b^-1, -b^-1 a c^-1).
    e = {};
    f = C.inverse();
    g = B.inverse();
    h = -(B.inverse() * A * C.inverse());
  }
  return Moebius(e, f, g, h, dim);
}

Moebius Moebius::operator*(const Moebius& o) const {
  return Moebius(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                 c * o.b + d * o.d, dim);
}

UhsPoint moebius_apply(const Moebius& g, const UhsPoint& p) {
  require_same_dim(g.dim, p.dim());
  const quat::Quaternion z = embed(p.horizontal);
  const double r = p.height;
  const quat::Quaternion czd = g.c * z + g.d;
  const double den = czd.norm() + r * r * g.c.norm();
  require(den > 0, "Moebius image degenerate");
  const quat::Quaternion num =
      (g.a * z + g.b) * czd.conj() + g.a * g.c.conj() * (r * r);
  return UhsPoint(unembed(num / den, p.horizontal.size), r / den);
}

BoundaryPoint moebius_apply(const Moebius& g, const BoundaryPoint& p) {
  require_same_dim(g.dim, p.dim());
  const int size = p.point.size;
  if (p.infinite) {
    if (g.c.is_zero(1e-300)) return BoundaryPoint::at_infinity(p.dim());
    return BoundaryPoint::finite(unembed(g.a * g.c.inverse(), size));
  }
  const quat::Quaternion z = embed(p.point);
  const quat::Quaternion czd = g.c * z + g.d;
  if (czd.is_zero(1e-14)) return BoundaryPoint::at_infinity(p.dim());
  return BoundaryPoint::finite(unembed((g.a * z + g.b) * czd.inverse(), size));
}

Geodesic moebius_apply(const Moebius& g, const Geodesic& l) {
  return Geodesic(moebius_apply(g, l.from), moebius_apply(g, l.to));
}

Horoball moebius_apply(const Moebius& g, const Horoball& h) {
  const BoundaryPoint center = moebius_apply(g, h.center);
  // Image of one point of the bounding horosphere pins the image size.
  UhsPoint on_sphere = h.center.infinite
                           ? UhsPoint(Vec::zero(h.dim() - 1), h.size)
                           : UhsPoint(h.center.point, h.size);
  const UhsPoint q = moebius_apply(g, on_sphere);
  if (center.infinite) return Horoball(center, q.height);
  const double d2 = (q.horizontal - center.point).norm_sq() + sq(q.height);
  return Horoball(center, d2 / q.height);
}

// --------------------------------------------------------------- distances

double dist(const UhsPoint& x, const UhsPoint& y) {
  require_same_dim(x.dim(), y.dim());
  const double d2 = (x.horizontal - y.horizontal).norm_sq() + sq(x.height - y.height);
  return std::acosh(1 + d2 / (2 * x.height * y.height));
}

double dist(const HyperboloidPoint& x, const HyperboloidPoint& y) {
  require_same_dim(x.dim, y.dim);
  return std::acosh(std::max(1.0, -minkowski(x.x, y.x, x.dim)));
}

double busemann(const BoundaryPoint& xi, const UhsPoint& x, const UhsPoint& y) {
  require_same_dim(xi.dim(), x.dim());
  require_same_dim(x.dim(), y.dim());
  if (xi.infinite) return std::log(y.height / x.height);
  return std::log((y.height / x.height) * dist_sq_to_boundary(x, xi.point) /
                  dist_sq_to_boundary(y, xi.point));
}

double visual_dist(const UhsPoint& x, const BoundaryPoint& xi,
                   const BoundaryPoint& eta) {
  require_same_dim(x.dim(), xi.dim());
  require_same_dim(xi.dim(), eta.dim());
  if (xi == eta) return 0;
  if (xi.infinite || eta.infinite) {
    const Vec& fin = xi.infinite ? eta.point : xi.point;
    return x.height / std::sqrt(dist_sq_to_boundary(x, fin));
  }
  return x.height * (xi.point - eta.point).norm() /
         std::sqrt(dist_sq_to_boundary(x, xi.point) *
                   dist_sq_to_boundary(x, eta.point));
}

namespace {

// Canonical conjugation sending a horoball to {height >= 1}: identity scaling
// for a center at infinity, dilation . inversion . translation otherwise.
Moebius standardizing_map(const Horoball& h) {
  const int dim = h.dim();
  if (h.center.infinite) {
    const double s = std::sqrt(h.size);
    return Moebius(quat::Quaternion::real(1 / s), {}, {},
                   quat::Quaternion::real(s), dim);
  }
  const quat::Quaternion c = embed(h.center.point);
  const double s = std::sqrt(h.size);
  // (sqrt(delta) 0; 0 1/sqrt(delta)) * (0 -1; 1 0) * (1 -c; 0 1)
  return Moebius(quat::Quaternion{}, quat::Quaternion::real(-s),
                 quat::Quaternion::real(1 / s), (c * (-1.0)) / s, dim);
}

}  // namespace

double hamenstadt_dist(const Horoball& h, const BoundaryPoint& xi,
                       const BoundaryPoint& eta) {
  require_same_dim(h.dim(), xi.dim());
  require_same_dim(xi.dim(), eta.dim());
  require(!(xi == h.center) && !(eta == h.center),
          "Hamenstadt distance undefined at the horoball center");
  if (xi == eta) return 0;
  if (h.center.infinite)
    return (xi.point - eta.point).norm() / h.size;
  const Moebius g = standardizing_map(h);
  const BoundaryPoint gx = moebius_apply(g, xi), ge = moebius_apply(g, eta);
  return (gx.point - ge.point).norm();
}

double busemann_limit(const BoundaryPoint& xi, const UhsPoint& x,
                      const UhsPoint& y) {
  double prev = 0;
  for (int t = 1; t <= 30; ++t) {
    UhsPoint rho = xi.infinite ? UhsPoint(Vec::zero(x.dim() - 1), std::exp(t))
                               : UhsPoint(xi.point, std::exp(-t));
    const double val = dist(rho, x) - dist(rho, y);
    if (t > 1 && std::abs(val - prev) < 1e-10) return val;
    prev = val;
  }
  return prev;
}

double hamenstadt_dist_limit(const Horoball& h, const BoundaryPoint& xi,
                             const BoundaryPoint& eta) {
  require(!(xi == h.center) && !(eta == h.center),
          "Hamenstadt distance undefined at the horoball center");
  if (xi == eta) return 0;
  double prev = 0;
  for (int t = 1; t <= 30; ++t) {
    UhsPoint rho = h.center.infinite
                       ? UhsPoint(Vec::zero(h.dim() - 1), h.size * std::exp(t))
                       : UhsPoint(h.center.point, h.size * std::exp(-t));
    const double val = std::exp(t) * visual_dist(rho, xi, eta);
    if (t > 1 && std::abs(val - prev) < 1e-10) return val;
    prev = val;
  }
  return prev;
}

// ------------------------------------------------- set distances and feet

namespace {

int set_dim(const ConvexSet& s) {
  if (auto* p = std::get_if<UhsPoint>(&s)) return p->dim();
  if (auto* l = std::get_if<Geodesic>(&s)) return l->dim();
  return std::get<Horoball>(s).dim();
}

// cosh^2 of the distance from a hyperboloid point to the line with null
// endpoint lifts u, v.
double cosh_sq_point_line(const std::array<double, kMaxDim + 1>& y,
                          const std::array<double, kMaxDim + 1>& u,
                          const std::array<double, kMaxDim + 1>& v, int n) {
  return 2 * minkowski(y, u, n) * minkowski(y, v, n) / (-minkowski(u, v, n));
}

double dist_point_geodesic(const UhsPoint& x, const Geodesic& l) {
  const auto y = uhs_to_hyperboloid(x);
  const auto u = boundary_to_null(l.from);
  const auto v = boundary_to_null(l.to);
  const double c2 = cosh_sq_point_line(y.x, u, v, y.dim);
  return std::acosh(std::sqrt(std::max(1.0, c2)));
}

// Orthogonal projection of a hyperboloid point on the line ]u,v[; the
// minimizing parameter satisfies e^{2 lambda} = <y,v>/<y,u>.
HyperboloidPoint project_point_geodesic(const UhsPoint& x, const Geodesic& l) {
  const auto y = uhs_to_hyperboloid(x);
  const auto u = boundary_to_null(l.from);
  const auto v = boundary_to_null(l.to);
  const int n = y.dim;
  const double pu = minkowski(y.x, u, n), pv = minkowski(y.x, v, n);
  const double el = std::sqrt(pv / pu);  // e^{lambda*}
  const double scale = std::sqrt(-2 * minkowski(u, v, n));
  std::array<double, kMaxDim + 1> p{};
  for (int i = 0; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    p[k] = (el * u[k] + v[k] / el) / scale;
  }
  return HyperboloidPoint(p, n);
}

double dist_point_horoball(const UhsPoint& x, const Horoball& h) {
  if (h.center.infinite) return std::log(h.size / x.height);
  const UhsPoint t = moebius_apply(standardizing_map(h), x);
  return -std::log(t.height);
}

double dist_horoball_horoball(const Horoball& a, const Horoball& b) {
  require(!(a.center == b.center), "horoballs with equal centers are nested");
  if (a.center.infinite || b.center.infinite) {
    const Horoball& inf = a.center.infinite ? a : b;
    const Horoball& fin = a.center.infinite ? b : a;
    return std::log(inf.size / fin.size);
  }
  return std::log((a.center.point - b.center.point).norm_sq() /
                  (a.size * b.size));
}

double dist_horoball_geodesic(const Horoball& h, const Geodesic& l) {
  const Moebius g = standardizing_map(h);
  const Geodesic img = moebius_apply(g, l);
  require(!img.vertical(), "geodesic ends at the horoball center");
  return -std::log(img.radius());
}

// Point on the line ]u,v[ at parameter lambda (arclength, toward u as
// lambda -> +inf); renormalized so rounding at large lambda cannot push the
// point off the hyperboloid.
HyperboloidPoint line_point(const std::array<double, kMaxDim + 1>& u,
                            const std::array<double, kMaxDim + 1>& v, int n,
                            double lambda) {
  const double scale = std::sqrt(-2 * minkowski(u, v, n));
  std::array<double, kMaxDim + 1> p{};
  for (int i = 0; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    p[k] = (std::exp(lambda) * u[k] + std::exp(-lambda) * v[k]) / scale;
  }
  const double renorm = std::sqrt(-minkowski(p, p, n));
  for (int i = 0; i <= n; ++i) p[static_cast<std::size_t>(i)] /= renorm;
  return HyperboloidPoint(p, n);
}

// Distance between the lines ]u,v[ and ]p,q[ in closed form: along the first
// line, cosh^2 d(x(lambda), L2) is (e^{2l} a1 b1 + a1 b2 + a2 b1 +
// e^{-2l} a2 b2) / (<u,v><p,q>) with a = <.,p>, b = <.,q>, minimized at
// e^{4 lambda*} = a2 b2 / (a1 b1).
double dist_geodesic_geodesic(const Geodesic& l1, const Geodesic& l2,
                              double* arg_lambda = nullptr) {
  const auto u = boundary_to_null(l1.from);
  const auto v = boundary_to_null(l1.to);
  const auto p = boundary_to_null(l2.from);
  const auto q = boundary_to_null(l2.to);
  const int n = l1.dim();
  const double a1 = minkowski(u, p, n), a2 = minkowski(v, p, n);
  const double b1 = minkowski(u, q, n), b2 = minkowski(v, q, n);
  const double denom = minkowski(u, v, n) * minkowski(p, q, n);
  const double num = 2 * std::sqrt(std::max(0.0, a1 * b1 * a2 * b2)) +
                     a1 * b2 + a2 * b1;
  if (arg_lambda) {
    *arg_lambda = (a1 * b1 > 0 && a2 * b2 > 0)
                      ? std::log(a2 * b2 / (a1 * b1)) / 4
                      : 0;
  }
  return std::acosh(std::sqrt(std::max(1.0, num / denom)));
}

bool same_set(const ConvexSet& a, const ConvexSet& b) {
  if (a.index() != b.index()) return false;
  if (auto* p = std::get_if<UhsPoint>(&a))
    return *p == std::get<UhsPoint>(b);
  if (auto* l = std::get_if<Geodesic>(&a)) {
    const auto& m = std::get<Geodesic>(b);
    // Equal as point sets, either orientation.
    return (*l == m) || (l->from == m.to && l->to == m.from);
  }
  return std::get<Horoball>(a) == std::get<Horoball>(b);
}

}  // namespace

double dist_between(const ConvexSet& a, const ConvexSet& b) {
  require_same_dim(set_dim(a), set_dim(b));
  require(!same_set(a, b), "dist_between requires distinct sets");
  if (auto* p = std::get_if<UhsPoint>(&a)) {
    if (auto* q = std::get_if<UhsPoint>(&b)) return dist(*p, *q);
    if (auto* l = std::get_if<Geodesic>(&b)) return dist_point_geodesic(*p, *l);
    return dist_point_horoball(*p, std::get<Horoball>(b));
  }
  if (auto* l = std::get_if<Geodesic>(&a)) {
    if (auto* q = std::get_if<UhsPoint>(&b)) return dist_point_geodesic(*q, *l);
    if (auto* m = std::get_if<Geodesic>(&b)) return dist_geodesic_geodesic(*l, *m);
    return dist_horoball_geodesic(std::get<Horoball>(b), *l);
  }
  const auto& h = std::get<Horoball>(a);
  if (auto* q = std::get_if<UhsPoint>(&b)) return dist_point_horoball(*q, h);
  if (auto* m = std::get_if<Geodesic>(&b)) return dist_horoball_geodesic(h, *m);
  return dist_horoball_horoball(h, std::get<Horoball>(b));
}

namespace {

Perpendicular perp_point_point(const UhsPoint& x, const UhsPoint& y) {
  return {x, y, dist(x, y)};
}

Perpendicular perp_point_geodesic(const UhsPoint& x, const Geodesic& l) {
  const UhsPoint foot = hyperboloid_to_uhs(project_point_geodesic(x, l));
  return {x, foot, dist(x, foot)};
}

Perpendicular perp_point_horoball(const UhsPoint& x, const Horoball& h) {
  const Moebius g = standardizing_map(h);
  const UhsPoint t = moebius_apply(g, x);
  const UhsPoint foot_std(t.horizontal, 1.0);
  const UhsPoint foot = moebius_apply(g.inverse(), foot_std);
  return {x, foot, dist(x, foot)};
}

Perpendicular perp_horoball_geodesic(const Horoball& h, const Geodesic& l) {
  const Moebius g = standardizing_map(h);
  const Geodesic img = moebius_apply(g, l);
  require(!img.vertical(), "geodesic ends at the horoball center");
  const Vec c = img.center();
  const double r = img.radius();
  const Moebius back = g.inverse();
  const UhsPoint foot_h = moebius_apply(back, UhsPoint(c, 1.0));
  const UhsPoint foot_l = moebius_apply(back, UhsPoint(c, r));
  return {foot_h, foot_l, std::log(1 / r)};
}

Perpendicular perp_horoball_horoball(const Horoball& a, const Horoball& b) {
  const Moebius g = standardizing_map(a);
  const Horoball img = moebius_apply(g, b);
  require(!img.center.infinite, "horoballs with equal centers are nested");
  const Moebius back = g.inverse();
  const UhsPoint foot_a = moebius_apply(back, UhsPoint(img.center.point, 1.0));
  const UhsPoint foot_b =
      moebius_apply(back, UhsPoint(img.center.point, img.size));
  return {foot_a, foot_b, std::log(1 / img.size)};
}

Perpendicular perp_geodesic_geodesic(const Geodesic& l1, const Geodesic& l2) {
  double lam = 0;
  const double d = dist_geodesic_geodesic(l1, l2, &lam);
  const auto u = boundary_to_null(l1.from);
  const auto v = boundary_to_null(l1.to);
  const UhsPoint foot1 = hyperboloid_to_uhs(line_point(u, v, l1.dim(), lam));
  const UhsPoint foot2 = hyperboloid_to_uhs(project_point_geodesic(foot1, l2));
  return {foot1, foot2, d};
}

Perpendicular flipped(Perpendicular p) {
  std::swap(p.foot_a, p.foot_b);
  return p;
}

}  // namespace

Perpendicular common_perpendicular(const ConvexSet& a, const ConvexSet& b) {
  const double d = dist_between(a, b);
  if (!(d > 0))
    throw std::invalid_argument("no common perpendicular: sets overlap");
  Perpendicular perp;
  if (auto* p = std::get_if<UhsPoint>(&a)) {
    if (auto* q = std::get_if<UhsPoint>(&b)) perp = perp_point_point(*p, *q);
    else if (auto* l = std::get_if<Geodesic>(&b)) perp = perp_point_geodesic(*p, *l);
    else perp = perp_point_horoball(*p, std::get<Horoball>(b));
  } else if (auto* l = std::get_if<Geodesic>(&a)) {
    if (auto* q = std::get_if<UhsPoint>(&b)) perp = flipped(perp_point_geodesic(*q, *l));
    else if (auto* m = std::get_if<Geodesic>(&b)) perp = perp_geodesic_geodesic(*l, *m);
    else perp = flipped(perp_horoball_geodesic(std::get<Horoball>(b), *l));
  } else {
    const auto& h = std::get<Horoball>(a);
    if (auto* q = std::get_if<UhsPoint>(&b)) perp = flipped(perp_point_horoball(*q, h));
    else if (auto* m = std::get_if<Geodesic>(&b)) perp = perp_horoball_geodesic(h, *m);
    else perp = perp_horoball_horoball(h, std::get<Horoball>(b));
  }
  perp.length = d;
  return perp;
}

// ------------------------------------------------------------- Hopf / flow

HopfCoords hopf(const UnitTangent& v) {
  const HypTangent t = uhs_tangent_to_hyperboloid(v);
  const int n = t.point.dim;
  std::array<double, kMaxDim + 1> np{}, nm{};
  for (int i = 0; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    np[k] = t.point.x[k] + t.dir[k];
    nm[k] = t.point.x[k] - t.dir[k];
  }
  HopfCoords out;
  out.forward = null_to_boundary(np, n);
  out.backward = null_to_boundary(nm, n);
  // Base point x0 = (0,1) lifts to (1, 0, ..., 0).
  std::array<double, kMaxDim + 1> x0{};
  x0[0] = 1;
  out.t = 0.5 * std::log(minkowski(x0, np, n) / minkowski(x0, nm, n));
  return out;
}

UnitTangent geodesic_flow(const UnitTangent& v, double t) {
  const HypTangent ht = uhs_tangent_to_hyperboloid(v);
  const int n = ht.point.dim;
  const double ch = std::cosh(t), sh = std::sinh(t);
  HypTangent out;
  std::array<double, kMaxDim + 1> p{}, d{};
  for (int i = 0; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    p[k] = ht.point.x[k] * ch + ht.dir[k] * sh;
    d[k] = ht.point.x[k] * sh + ht.dir[k] * ch;
  }
  out.point = HyperboloidPoint(p, n);
  out.dir = d;
  return hyperboloid_tangent_to_uhs(out);
}

// ------------------------------------------------------------ conversions

HyperboloidPoint uhs_to_hyperboloid(const UhsPoint& p) {
  const int n = p.dim();
  const double h = p.height;
  const double A = p.horizontal.norm_sq() + h * h;
  std::array<double, kMaxDim + 1> x{};
  x[0] = (A + 1) / (2 * h);
  x[1] = (A - 1) / (2 * h);
  for (int i = 0; i < n - 1; ++i)
    x[static_cast<std::size_t>(i + 2)] = p.horizontal[i] / h;
  return HyperboloidPoint(x, n);
}

UhsPoint hyperboloid_to_uhs(const HyperboloidPoint& x) {
  const int n = x.dim;
  const double d = x.x[0] - x.x[1];
  require(d > 0, "point maps to the boundary");
  Vec h = Vec::zero(n - 1);
  for (int i = 0; i < n - 1; ++i) h[i] = x.x[static_cast<std::size_t>(i + 2)] / d;
  return UhsPoint(h, 1 / d);
}

BallPoint hyperboloid_to_ball(const HyperboloidPoint& x) {
  BallPoint b;
  b.dim = x.dim;
  for (int i = 0; i < x.dim; ++i)
    b.y[static_cast<std::size_t>(i)] =
        x.x[static_cast<std::size_t>(i + 1)] / (1 + x.x[0]);
  return b;
}

HyperboloidPoint ball_to_hyperboloid(const BallPoint& y) {
  double n2 = 0;
  for (int i = 0; i < y.dim; ++i) n2 += sq(y.y[static_cast<std::size_t>(i)]);
  require(n2 < 1, "ball point must have |y| < 1");
  std::array<double, kMaxDim + 1> x{};
  x[0] = (1 + n2) / (1 - n2);
  for (int i = 0; i < y.dim; ++i)
    x[static_cast<std::size_t>(i + 1)] = 2 * y.y[static_cast<std::size_t>(i)] / (1 - n2);
  return HyperboloidPoint(x, y.dim);
}

BallPoint uhs_to_ball(const UhsPoint& p) {
  return hyperboloid_to_ball(uhs_to_hyperboloid(p));
}

UhsPoint ball_to_uhs(const BallPoint& y) {
  return hyperboloid_to_uhs(ball_to_hyperboloid(y));
}

std::array<double, kMaxDim + 1> boundary_to_null(const BoundaryPoint& xi) {
  std::array<double, kMaxDim + 1> l{};
  if (xi.infinite) {
    l[0] = 1;
    l[1] = 1;
    return l;
  }
  const double n2 = xi.point.norm_sq();
  l[0] = (n2 + 1) / 2;
  l[1] = (n2 - 1) / 2;
  for (int i = 0; i < xi.point.size; ++i)
    l[static_cast<std::size_t>(i + 2)] = xi.point[i];
  return l;
}

BoundaryPoint null_to_boundary(const std::array<double, kMaxDim + 1>& l, int n) {
  double scale = std::abs(l[0]);
  for (int i = 1; i <= n; ++i)
    scale = std::max(scale, std::abs(l[static_cast<std::size_t>(i)]));
  const double d = l[0] - l[1];
  if (std::abs(d) <= 1e-12 * scale) return BoundaryPoint::at_infinity(n);
  Vec v = Vec::zero(n - 1);
  for (int i = 0; i < n - 1; ++i) v[i] = l[static_cast<std::size_t>(i + 2)] / d;
  return BoundaryPoint::finite(v);
}

std::array<double, kMaxDim> boundary_to_ball(const BoundaryPoint& xi) {
  const auto l = boundary_to_null(xi);
  std::array<double, kMaxDim> y{};
  for (int i = 0; i < xi.dim(); ++i)
    y[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i + 1)] / l[0];
  return y;
}

HypTangent uhs_tangent_to_hyperboloid(const UnitTangent& v) {
  const int n = v.dim();
  const double h = v.base.height;
  const Vec& xb = v.base.horizontal;
  const double vh = v.direction[static_cast<std::size_t>(n - 1)];
  Vec vb = Vec::zero(n - 1);
  for (int i = 0; i < n - 1; ++i) vb[i] = v.direction[static_cast<std::size_t>(i)];

  const double A = xb.norm_sq() + h * h;
  const double dA = 2 * (dot(xb, vb) + h * vh);
  HypTangent t;
  t.point = uhs_to_hyperboloid(v.base);
  t.dir[0] = dA / (2 * h) - (A + 1) * vh / (2 * h * h);
  t.dir[1] = dA / (2 * h) - (A - 1) * vh / (2 * h * h);
  for (int i = 0; i < n - 1; ++i)
    t.dir[static_cast<std::size_t>(i + 2)] = vb[i] / h - xb[i] * vh / (h * h);
  return t;
}

UnitTangent hyperboloid_tangent_to_uhs(const HypTangent& t) {
  const int n = t.point.dim;
  const double d = t.point.x[0] - t.point.x[1];
  const double dd = t.dir[0] - t.dir[1];
  const UhsPoint base = hyperboloid_to_uhs(t.point);
  std::array<double, kMaxDim> dir{};
  dir[static_cast<std::size_t>(n - 1)] = -dd / (d * d);
  for (int i = 0; i < n - 1; ++i)
    dir[static_cast<std::size_t>(i)] =
        t.dir[static_cast<std::size_t>(i + 2)] / d -
        t.point.x[static_cast<std::size_t>(i + 2)] * dd / (d * d);
  return UnitTangent(base, dir);
}

double hyperboloid_level_dist(const std::array<double, kMaxDim + 1>& w,
                              const HyperboloidPoint& x) {
  const int n = x.dim;
  const double qw = minkowski(w, w, n);
  const double ip = minkowski(w, x.x, n);
  if (std::abs(qw + 1) <= 1e-10) return std::acosh(std::max(1.0, -ip));
  if (std::abs(qw) <= 1e-10) {
    require(ip < 0, "horosphere side convention needs <x,w> < 0");
    return std::log(-ip);
  }
  if (std::abs(qw - 1) <= 1e-10) return std::asinh(std::abs(ip));
  throw std::invalid_argument("q(w) must be -1, 0 or 1");
}

double curv_to_dist(double curv, CurvKind kind) {
  if (kind == CurvKind::point_tangency) return std::asinh(curv);
  return std::log(curv);
}

}  // namespace ortho::geom
