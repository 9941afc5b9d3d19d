#pragma once
#include <string>
#include <vector>

#include "cvp/bulge.hpp"
#include "cvp/domain.hpp"
#include "cvp/representation.hpp"

namespace cvp {

struct LimitPoints {
  std::vector<ProjPoint> points;
  int skipped_non_hyperbolic = 0;  // should be zero for a convex holonomy
};

// Attracting and repelling fixed points of every hyperbolic element of the
// orbit ball, deduplicated at `dedup_tol`. Non-hyperbolic elements are
// skipped and counted, not fatal.
LimitPoints limit_points(const Representation& rep, int depth, double dedup_tol = 1e-8,
                         std::uint64_t budget = 100000000ull);

// Projective map (a rotation of RP^2) sending a line missing the point set
// to infinity, so the images are bounded in the standard chart. Identity is
// returned whenever it already works. Throws NoSeparatingLine when the
// directions spread over every hemisphere.
Mat3 choose_chart(const std::vector<ProjPoint>& points);

// Convex hull polygon of the in-chart limit points. The resulting domain
// stores the inverse of `world_to_chart` as its chart field (the map from
// chart lifts back to ambient coordinates).
ConvexDomain domain_hull(const Representation& rep, int depth,
                         std::uint64_t budget = 100000000ull, double dedup_tol = 1e-8);
ConvexDomain domain_hull_from(const LimitPoints& pts, const Mat3& world_to_chart);

// In-chart triangle on the frame's fixed points (attract, neutral, repel).
// Throws PointAtInfinity when a vertex leaves the chart.
ConvexDomain limit_triangle(const BulgeFrame& frame, const Mat3& world_to_chart);

struct SvgLayer {
  std::string label;
  std::vector<Vec2> polygon;
  bool closed = true;
};

// Deterministic layered SVG: fixed header, six-decimal coordinates, one
// path per layer. Identical inputs give identical bytes.
std::string render_svg(const std::vector<SvgLayer>& layers);
void render_svg_file(const std::vector<SvgLayer>& layers, const std::string& path);

}  // namespace cvp
