#pragma once
#include <utility>
#include <vector>

#include "cvp/mat3.hpp"

namespace cvp {

struct Vec2 {
  double x = 0, y = 0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double a) const { return {x * a, y * a}; }
  Vec2 operator/(double a) const { return {x / a, y / a}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

// Convex polygon in an affine chart, counterclockwise, strictly convex.
// `chart` records the projective map sending the lifted chart plane z=1 to
// the ambient RP^2 coordinates the group matrices act on.
struct ConvexDomain {
  std::vector<Vec2> vertices;
  Mat3 chart = Mat3::identity();
};

struct TangentVector {
  Vec2 base;
  Vec2 dir;
};

// Validates >= 3 vertices, counterclockwise strict convexity (consecutive
// edge cross products > 1e-12 relative to scale), no repeated vertices.
ConvexDomain make_domain(std::vector<Vec2> vertices, const Mat3& chart = Mat3::identity());

// Regular n-gon approximation of the unit disc. The vertex radius is chosen
// so vertices and edge midpoints deviate equally from the circle, which
// halves the worst-case boundary error of the inscribed polygon.
ConvexDomain make_disc(int n);

// Convexity test used by make_domain; exposed for hull utilities.
bool is_strictly_convex_ccw(const std::vector<Vec2>& vs, double tol = 1e-12);

bool contains_strict(const ConvexDomain& dom, const Vec2& p, double tol = 1e-12);

// Exit point of the ray base + t*dir (t > 0) through the polygon boundary.
// Requires base strictly inside and dir nonzero.
Vec2 ray_exit(const ConvexDomain& dom, const Vec2& base, const Vec2& dir);

// Intersections p, q of the line through x, y with the boundary, ordered so
// that p, x, y, q are collinear in this order.
std::pair<Vec2, Vec2> chord_endpoints(const ConvexDomain& dom, const Vec2& x, const Vec2& y);

// Hilbert distance (1/2) log(|p-y||q-x| / (|p-x||q-y|)).
double distance(const ConvexDomain& dom, const Vec2& x, const Vec2& y);

// Finsler norm (1/2)(1/|x-p^-| + 1/|x-p^+|) |v|.
double finsler_norm(const ConvexDomain& dom, const TangentVector& tv);

// Euclidean area of the unit Finsler ball at x by polar quadrature with
// n_rays equally spaced directions (radius along u is 1/||u||_x).
double unit_ball_area(const ConvexDomain& dom, const Vec2& x, int n_rays);

// Hilbert measure of `region` inside `dom`: midpoint rule on a grid x grid
// lattice over the region's bounding box, density 1/unit_ball_area.
// The Lebesgue scale is normalized against the Euclidean unit disc, so the
// two normalizing factors cancel and plain Euclidean areas appear here.
double measure(const ConvexDomain& dom, const ConvexDomain& region, int grid,
               int n_rays = 64);

// Symmetric Hausdorff distance between the two polygon boundaries, sampled
// at vertices plus `subdiv` points per edge, measured against full edges.
double hausdorff_distance(const ConvexDomain& a, const ConvexDomain& b, int subdiv = 8);

// Applies a projective map to every vertex (lift to z=1, map, re-affinize).
// Throws PointAtInfinity if a vertex leaves the affine chart.
ConvexDomain apply_projective(const Mat3& T, const ConvexDomain& dom);

// Clips the polygon to an axis-aligned box; returns empty list if disjoint.
std::vector<Vec2> clip_to_box(const std::vector<Vec2>& poly, const Vec2& lo, const Vec2& hi);

// Convex hull (monotone chain), counterclockwise, duplicates removed at tol.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts, double dedup_tol = 1e-9);

}  // namespace cvp
