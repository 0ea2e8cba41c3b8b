#pragma once

#include <array>
#include <optional>
#include <variant>

#include "ortho/quat.hpp"

// Closed-form hyperbolic geometry in the upper half-space, ball and
// hyperboloid models of H^n for n in {2,3,5} (any 2 <= n <= 5 works).
// All coordinates are doubles; identities hold to ~1e-9 and are enforced
// by the property suites.
namespace ortho::geom {

inline constexpr int kMaxDim = 5;

// Small fixed-capacity vector for horizontal/boundary coordinates (n-1 slots).
struct Vec {
  std::array<double, kMaxDim - 1> a{};
  int size = 0;

  static Vec zero(int size);
  static Vec of(std::initializer_list<double> xs);
  double& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return a[static_cast<std::size_t>(i)]; }
  double norm_sq() const;
  double norm() const;
  bool operator==(const Vec& o) const;
};

Vec operator+(const Vec& x, const Vec& y);
Vec operator-(const Vec& x, const Vec& y);
Vec operator*(double s, const Vec& x);
double dot(const Vec& x, const Vec& y);

// Point of the upper half-space model: (horizontal, height), height > 0.
// The ambient dimension is horizontal.size + 1.
struct UhsPoint {
  Vec horizontal;
  double height = 1;

  UhsPoint() = default;
  UhsPoint(Vec h, double t);
  int dim() const { return horizontal.size + 1; }
  bool operator==(const UhsPoint& o) const {
    return height == o.height && horizontal == o.horizontal;
  }
};

// Point of the boundary at infinity: a finite point of R^{n-1} or infinity.
struct BoundaryPoint {
  Vec point;  // valid when !infinite
  bool infinite = false;

  static BoundaryPoint at_infinity(int dim);
  static BoundaryPoint finite(Vec p);
  int dim() const { return point.size + 1; }
  bool operator==(const BoundaryPoint& o) const;
};

// Oriented geodesic line ]from, to[ with distinct endpoints at infinity.
struct Geodesic {
  BoundaryPoint from, to;

  Geodesic(BoundaryPoint a, BoundaryPoint b);
  int dim() const { return from.dim(); }
  bool vertical() const { return from.infinite || to.infinite; }
  // Euclidean center/radius of the semicircle; requires both endpoints finite.
  Vec center() const;
  double radius() const;
  bool operator==(const Geodesic& o) const {
    return from == o.from && to == o.to;
  }
};

// Horoball: Euclidean ball of the given diameter tangent at a finite center,
// or the region {height >= size} when centered at infinity.
struct Horoball {
  BoundaryPoint center;
  double size = 1;

  Horoball(BoundaryPoint c, double s);
  int dim() const { return center.dim(); }
  bool operator==(const Horoball& o) const {
    return size == o.size && center == o.center;
  }
};

// Unit tangent vector: Euclidean |direction| equals base.height, so the
// hyperbolic norm is one.
struct UnitTangent {
  UhsPoint base;
  std::array<double, kMaxDim> direction{};

  UnitTangent(UhsPoint b, std::array<double, kMaxDim> dir);
  int dim() const { return base.dim(); }
  UnitTangent antipode() const;
};

// Point of the hyperboloid model: x in R^{n+1} with q(x) = -1, x0 > 0,
// where q(x) = -x0^2 + |xbar|^2.
struct HyperboloidPoint {
  std::array<double, kMaxDim + 1> x{};
  int dim = 2;  // ambient hyperbolic dimension n

  HyperboloidPoint() = default;
  HyperboloidPoint(std::array<double, kMaxDim + 1> coords, int n);
};

// Point of the Poincare ball model, |y| < 1.
struct BallPoint {
  std::array<double, kMaxDim> y{};
  int dim = 2;
};

// Minkowski form and pairing on R^{1,n}.
double minkowski(const std::array<double, kMaxDim + 1>& x,
                 const std::array<double, kMaxDim + 1>& y, int n);

// ---------------------------------------------------------------------------
// Moebius maps: 2x2 matrices over R (n=2), C (n=3) or H (n=5), acting on the
// upper half-space by the Poincare extension
//   (z, r) -> ( (az+b)(cz+d)~ + a c~ r^2 , r ) / ( n(cz+d) + r^2 n(c) ).
// ---------------------------------------------------------------------------
struct Moebius {
  quat::Quaternion a, b, c, d;
  int dim = 2;

  Moebius(quat::Quaternion a_, quat::Quaternion b_, quat::Quaternion c_,
          quat::Quaternion d_, int dim_);
  static Moebius identity(int dim);
  static Moebius from_real(double a, double b, double c, double d);
  static Moebius from_complex(double ar, double ai, double br, double bi,
                              double cr, double ci, double dr, double di);
  Moebius inverse() const;
  Moebius operator*(const Moebius& o) const;
};

UhsPoint moebius_apply(const Moebius& g, const UhsPoint& p);
BoundaryPoint moebius_apply(const Moebius& g, const BoundaryPoint& p);
Geodesic moebius_apply(const Moebius& g, const Geodesic& l);
Horoball moebius_apply(const Moebius& g, const Horoball& h);

// ---------------------------------------------------------------------------
// Distances and cocycles.
// ---------------------------------------------------------------------------
double dist(const UhsPoint& x, const UhsPoint& y);
double dist(const HyperboloidPoint& x, const HyperboloidPoint& y);

// Busemann cocycle beta_xi(x, y); for xi = infinity this is ln(y_n / x_n).
double busemann(const BoundaryPoint& xi, const UhsPoint& x, const UhsPoint& y);

// Visual distance d_x(xi, eta); returns 0 when xi == eta.
double visual_dist(const UhsPoint& x, const BoundaryPoint& xi,
                   const BoundaryPoint& eta);

// Hamenstadt distance on the horosphere bounding H, as a metric on the
// boundary minus the center of H.
double hamenstadt_dist(const Horoball& h, const BoundaryPoint& xi,
                       const BoundaryPoint& eta);

// Reference evaluator for hamenstadt_dist via the limit e^t d_{rho_t}(xi,eta)
// along the ray toward the center, run to t = 30 with a stall check.
double hamenstadt_dist_limit(const Horoball& h, const BoundaryPoint& xi,
                             const BoundaryPoint& eta);

// Reference evaluator for busemann via lim d(rho_t, x) - d(rho_t, y) along
// a ray toward xi, same stall protocol.
double busemann_limit(const BoundaryPoint& xi, const UhsPoint& x,
                      const UhsPoint& y);

// ---------------------------------------------------------------------------
// Distances between convex sets, common perpendiculars.
// ---------------------------------------------------------------------------
using ConvexSet = std::variant<UhsPoint, Geodesic, Horoball>;

// Signed distance: positive between disjoint closures, <= 0 with the
// penetration-depth convention when they overlap (horoball cases).
double dist_between(const ConvexSet& a, const ConvexSet& b);

struct Perpendicular {
  UhsPoint foot_a, foot_b;
  double length = 0;
};

// The segment realizing dist_between; requires dist_between(a, b) > 0.
Perpendicular common_perpendicular(const ConvexSet& a, const ConvexSet& b);

// ---------------------------------------------------------------------------
// Hopf parametrisation and geodesic flow. The time origin uses the base
// point x0 = (0, 1).
// ---------------------------------------------------------------------------
struct HopfCoords {
  BoundaryPoint backward, forward;  // (v-, v+)
  double t = 0;
};

HopfCoords hopf(const UnitTangent& v);
UnitTangent geodesic_flow(const UnitTangent& v, double t);

// ---------------------------------------------------------------------------
// Model conversions, exact round trips to ~1e-12.
// ---------------------------------------------------------------------------
HyperboloidPoint uhs_to_hyperboloid(const UhsPoint& p);
UhsPoint hyperboloid_to_uhs(const HyperboloidPoint& x);
BallPoint hyperboloid_to_ball(const HyperboloidPoint& x);
HyperboloidPoint ball_to_hyperboloid(const BallPoint& y);
BallPoint uhs_to_ball(const UhsPoint& p);
UhsPoint ball_to_uhs(const BallPoint& y);

// Null lift of a boundary point and its inverse.
std::array<double, kMaxDim + 1> boundary_to_null(const BoundaryPoint& xi);
BoundaryPoint null_to_boundary(const std::array<double, kMaxDim + 1>& l, int n);

// Boundary correspondence with the ball model (infinity <-> "north pole"
// e_1). The null ray determines the ball boundary point.
std::array<double, kMaxDim> boundary_to_ball(const BoundaryPoint& xi);

// Tangent-level conversion for the flow/Hopf machinery.
struct HypTangent {
  HyperboloidPoint point;
  std::array<double, kMaxDim + 1> dir{};  // q(dir) = 1, <point, dir> = 0
};
HypTangent uhs_tangent_to_hyperboloid(const UnitTangent& v);
UnitTangent hyperboloid_tangent_to_uhs(const HypTangent& t);

// ---------------------------------------------------------------------------
// Distance from a hyperboloid point to the level object of a vector w,
// dispatched on q(w) in {-1, 0, +1}:
//   q(w) = -1 : distance to the point w,
//   q(w) =  0 : signed distance to the horosphere {<y,w> = -1} (<x,w> < 0),
//   q(w) = +1 : distance to the hyperplane w-perp, sinh d = |<x,w>|.
// ---------------------------------------------------------------------------
double hyperboloid_level_dist(const std::array<double, kMaxDim + 1>& w,
                              const HyperboloidPoint& x);

enum class CurvKind { point_tangency, horoball };

// Spherical-curvature to distance conversions used by circle packings:
// point kind d = arcsinh(curv), horoball kind d = ln(curv).
double curv_to_dist(double curv, CurvKind kind);

}  // namespace ortho::geom
