#include <cmath>

#include "cvp/limitset.hpp"
#include "cvp/reps.hpp"
#include "doctest.h"

using namespace cvp;

namespace {

double conic_residual_pt(const ProjPoint& p) {
  Vec3 v = p.v / p.v.norm();
  return std::fabs(v.x * v.x + v.y * v.y - v.z * v.z);
}

}  // namespace

TEST_CASE("limit points of a Fuchsian seed lie on the Klein conic") {
  Representation rep = fuchsian_pants({2.0, 2.0, 2.0});
  LimitPoints pts = limit_points(rep, 4);
  CHECK(pts.skipped_non_hyperbolic == 0);
  CHECK(pts.points.size() > 50);
  for (const ProjPoint& p : pts.points) CHECK(conic_residual_pt(p) < 1e-7);
}

TEST_CASE("limit points grow with depth") {
  Representation rep = fuchsian_pants({2.0, 2.0, 2.0});
  LimitPoints d3 = limit_points(rep, 3);
  LimitPoints d4 = limit_points(rep, 4);
  CHECK(d4.points.size() > d3.points.size());
  // Monotone as point sets up to the dedup tolerance.
  for (const ProjPoint& p : d3.points) {
    double best = 1e9;
    for (const ProjPoint& q : d4.points) best = std::fmin(best, (p.v - q.v).norm());
    CHECK(best < 1e-7);
  }
}

TEST_CASE("choose_chart identity fast path and rejection") {
  // Points already bounded in the z = 1 chart.
  std::vector<ProjPoint> pts;
  for (int k = 0; k < 16; ++k) {
    double t = 2.0 * M_PI * k / 16;
    pts.push_back(ProjPoint::from({0.8 * std::cos(t), 0.8 * std::sin(t), 1.0}));
  }
  CHECK(max_abs_diff(choose_chart(pts), Mat3::identity()) == 0.0);

  // Directions hugging a great circle span every hemisphere within the
  // margin: no chart exists.
  std::vector<ProjPoint> bad;
  for (int k = 0; k < 96; ++k) {
    double t = 2.0 * M_PI * k / 96;
    bad.push_back(ProjPoint::from({std::cos(t), std::sin(t), 0.01}));
  }
  CHECK_THROWS_AS(choose_chart(bad), error);
}

TEST_CASE("choose_chart finds a rotated chart") {
  // The same circle but living in the x = 1 plane family: identity fails,
  // a rotation must be found, and images must be bounded.
  std::vector<ProjPoint> pts;
  for (int k = 0; k < 24; ++k) {
    double t = 2.0 * M_PI * k / 24;
    pts.push_back(ProjPoint::from({1.0, 0.9 * std::cos(t), 0.9 * std::sin(t)}));
  }
  Mat3 chart = choose_chart(pts);
  for (const ProjPoint& p : pts) {
    Vec3 w = chart * p.v;
    CHECK(std::fabs(w.z) > 0.1 * w.max_abs());
  }
}

TEST_CASE("domain hull of a cocompact seed approximates the Klein disc") {
  // The octagon group's limit set is the full circle; the pants group's is
  // a Cantor set whose hull is the convex core, not the disc.
  Representation rep = genus2_octagon();
  ConvexDomain hull = domain_hull(rep, 4);
  double max_r = 0;
  for (const Vec2& v : hull.vertices) max_r = std::fmax(max_r, v.norm());
  CHECK(max_r < 1.0 + 1e-7);
  CHECK(max_r > 0.999);
  CHECK(hausdorff_distance(hull, make_disc(512)) < 0.02);
}

TEST_CASE("domain hull is monotone in depth") {
  Representation rep = fuchsian_pants({2.0, 2.0, 2.0});
  ConvexDomain h3 = domain_hull(rep, 3);
  ConvexDomain h5 = domain_hull(rep, 5);
  for (const Vec2& v : h3.vertices) {
    // Every depth-3 vertex is inside (or on) the depth-5 hull.
    bool inside = contains_strict(h5, v, -1e-9);
    CHECK(inside);
  }
}

TEST_CASE("bulged hulls move and stay inside the triangle-augmented hull") {
  Representation rep = pants_amalgam_demo({2.0, 2.0, 2.0});
  BulgeFrame frame = bulge_frame(rep, rep.splitting->gamma);
  LimitPoints p0 = limit_points(rep, 4);
  Representation def = deform(rep, 0.0, 6.0);
  LimitPoints p6 = limit_points(def, 4);

  std::vector<ProjPoint> all = p0.points;
  all.insert(all.end(), p6.points.begin(), p6.points.end());
  all.push_back(frame.spectrum.fixed_attract);
  all.push_back(frame.spectrum.fixed_repel);
  all.push_back(frame.spectrum.fixed_neutral);
  Mat3 chart = choose_chart(all);

  ConvexDomain h0 = domain_hull_from(p0, chart);
  ConvexDomain h6 = domain_hull_from(p6, chart);
  CHECK(hausdorff_distance(h0, h6) > 1e-3);

  // Deformed limit points stay inside hull(0) union the gamma triangle
  // (up to a small tolerance): check against the joint hull.
  ConvexDomain tri = limit_triangle(frame, chart);
  std::vector<Vec2> aug = h0.vertices;
  aug.insert(aug.end(), tri.vertices.begin(), tri.vertices.end());
  ConvexDomain envelope = make_domain(convex_hull(aug), h0.chart);
  // The paper's containment is local to gamma's lift: hull vertices near
  // the triangle must fall inside hull(0) union the triangle; vertices
  // near other lifts of gamma bulge into their own translated triangles.
  Vec2 tlo = tri.vertices[0], thi = tri.vertices[0];
  for (const Vec2& v : tri.vertices) {
    tlo.x = std::fmin(tlo.x, v.x);
    tlo.y = std::fmin(tlo.y, v.y);
    thi.x = std::fmax(thi.x, v.x);
    thi.y = std::fmax(thi.y, v.y);
  }
  Vec2 pad = (thi - tlo) * 0.05;
  int outside = 0;
  for (const Vec2& v : h6.vertices) {
    if (v.x < tlo.x - pad.x || v.x > thi.x + pad.x || v.y < tlo.y - pad.y ||
        v.y > thi.y + pad.y)
      continue;
    if (!contains_strict(envelope, v, -1e-6)) ++outside;
  }
  CHECK(outside == 0);
}

TEST_CASE("limit_triangle basics") {
  Representation rep = make_representation(
      {"a", "b"}, {Mat3::diag(4.0, 1.0, 0.25), Mat3::diag(2.0, 1.0, 0.5)});
  BulgeFrame f = bulge_frame(rep, {1});
  // A diagonal gamma fixes the coordinate axes; a chart that sees all three
  // axis points yields a triangle on their images.
  Mat3 tilt{{1, 0, 0.2, 0, 1, 0.3, 1, 1, 1}};
  ConvexDomain tri = limit_triangle(f, normalize_det1(tilt));
  CHECK(tri.vertices.size() == 3);
  // The axis points e1 and e2 are on the infinity line of the standard
  // z = 1 chart, so the identity chart must error.
  CHECK_THROWS_AS(limit_triangle(f, Mat3::identity()), error);
}

TEST_CASE("svg rendering is deterministic and structured") {
  std::vector<SvgLayer> layers;
  layers.push_back({"square", {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, true});
  std::string a = render_svg(layers);
  std::string b = render_svg(layers);
  CHECK(a == b);
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("data-label=\"square\"") != std::string::npos);
  CHECK(a.find("path") != std::string::npos);

  std::string empty = render_svg({});
  CHECK(empty.find("<svg") != std::string::npos);
  CHECK(empty.find("path") == std::string::npos);
}

TEST_CASE("hull invariance sanity under a generator") {
  Representation rep = fuchsian_pants({2.0, 2.0, 2.0});
  LimitPoints pts = limit_points(rep, 5);
  Mat3 chart = choose_chart(pts.points);
  ConvexDomain hull = domain_hull_from(pts, chart);
  // Push every limit point through generator a and re-hull: the image hull
  // must be Hausdorff-close to the original (the true domain is invariant).
  LimitPoints moved;
  for (const ProjPoint& p : pts.points)
    moved.points.push_back(ProjPoint::from(rep.images[0] * p.v));
  ConvexDomain hull2 = domain_hull_from(moved, chart);
  CHECK(hausdorff_distance(hull, hull2) < 0.05);
}
