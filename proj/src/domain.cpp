#include "cvp/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cvp {

namespace {

double polygon_scale(const std::vector<Vec2>& vs) {
  double s = 0;
  for (const Vec2& v : vs) s = std::fmax(s, std::fmax(std::fabs(v.x), std::fabs(v.y)));
  return std::fmax(s, 1.0);
}

}  // namespace

bool is_strictly_convex_ccw(const std::vector<Vec2>& vs, double tol) {
  size_t n = vs.size();
  if (n < 3) return false;
  // Cross products of consecutive unit edge directions (the sine of each
  // turn angle): scale-free strict convexity.
  for (size_t i = 0; i < n; ++i) {
    Vec2 e1 = vs[(i + 1) % n] - vs[i];
    Vec2 e2 = vs[(i + 2) % n] - vs[(i + 1) % n];
    double n1 = e1.norm(), n2 = e2.norm();
    if (n1 == 0.0 || n2 == 0.0) return false;
    if (e1.cross(e2) <= tol * n1 * n2) return false;
  }
  return true;
}

ConvexDomain make_domain(std::vector<Vec2> vertices, const Mat3& chart) {
  if (vertices.size() < 3) fail(errc::degenerate_matrix, "domain needs at least 3 vertices");
  double scale = polygon_scale(vertices);
  for (size_t i = 0; i < vertices.size(); ++i) {
    Vec2 d = vertices[i] - vertices[(i + 1) % vertices.size()];
    if (d.norm() < 1e-12 * scale) fail(errc::coincident_points, "repeated polygon vertex");
  }
  if (!is_strictly_convex_ccw(vertices))
    fail(errc::degenerate_matrix, "vertices are not a strictly convex ccw polygon");
  return ConvexDomain{std::move(vertices), chart};
}

ConvexDomain make_disc(int n) {
  if (n < 3) fail(errc::parameter_range, "disc polygon needs n >= 3");
  // Vertex radius 2/(1+cos(pi/n)): vertices sit outside the circle by the
  // same amount the edge midpoints sit inside it.
  double r = 2.0 / (1.0 + std::cos(M_PI / n));
  std::vector<Vec2> vs;
  vs.reserve(size_t(n));
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * M_PI * k / n;
    vs.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return make_domain(std::move(vs));
}

bool contains_strict(const ConvexDomain& dom, const Vec2& p, double tol) {
  size_t n = dom.vertices.size();
  double scale = polygon_scale(dom.vertices);
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = dom.vertices[i], b = dom.vertices[(i + 1) % n];
    if ((b - a).cross(p - a) <= tol * scale * scale) return false;
  }
  return true;
}

namespace {

// Positive ray parameter t where base + t*dir crosses edge (a,b), or -1.
double ray_edge_hit(const Vec2& base, const Vec2& dir, const Vec2& a, const Vec2& b,
                    double eps) {
  Vec2 e = b - a;
  double denom = dir.cross(e);
  if (denom == 0.0) return -1.0;
  Vec2 d = a - base;
  double t = d.cross(e) / denom;
  double u = d.cross(dir) / denom;
  if (t <= 0.0) return -1.0;
  if (u < -eps || u > 1.0 + eps) return -1.0;
  return t;
}

}  // namespace

Vec2 ray_exit(const ConvexDomain& dom, const Vec2& base, const Vec2& dir) {
  if (dir.norm() == 0.0) fail(errc::zero_vector, "ray direction is zero");
  size_t n = dom.vertices.size();
  // Epsilon ladder: a strict pass first, then a looser one for rays that
  // graze a vertex.
  for (double eps : {1e-12, 1e-9}) {
    double best = -1.0;
    for (size_t i = 0; i < n; ++i) {
      double t = ray_edge_hit(base, dir, dom.vertices[i], dom.vertices[(i + 1) % n], eps);
      if (t > 0.0 && (best < 0.0 || t < best)) best = t;
    }
    if (best > 0.0) return base + dir * best;
  }
  fail(errc::point_outside_domain, "ray does not exit the polygon (base outside?)");
}

std::pair<Vec2, Vec2> chord_endpoints(const ConvexDomain& dom, const Vec2& x, const Vec2& y) {
  double scale = polygon_scale(dom.vertices);
  if ((y - x).norm() < 1e-14 * scale) fail(errc::coincident_points, "chord through coincident points");
  if (!contains_strict(dom, x) || !contains_strict(dom, y))
    fail(errc::point_outside_domain, "chord endpoint outside the open domain");
  Vec2 d = y - x;
  Vec2 q = ray_exit(dom, x, d);        // beyond y
  Vec2 p = ray_exit(dom, x, d * -1.0); // behind x
  return {p, q};
}

double distance(const ConvexDomain& dom, const Vec2& x, const Vec2& y) {
  if (!contains_strict(dom, x) || !contains_strict(dom, y))
    fail(errc::point_outside_domain, "distance endpoint outside the open domain");
  if ((y - x).norm() == 0.0) return 0.0;
  // Canonical argument order makes the symmetry d(x,y) = d(y,x) bit-exact.
  const Vec2* a = &x;
  const Vec2* b = &y;
  if (b->x < a->x || (b->x == a->x && b->y < a->y)) std::swap(a, b);
  auto [p, q] = chord_endpoints(dom, *a, *b);
  double r = ((p - *b).norm() * (q - *a).norm()) / ((p - *a).norm() * (q - *b).norm());
  return 0.5 * std::log(r);
}

double finsler_norm(const ConvexDomain& dom, const TangentVector& tv) {
  if (tv.dir.norm() == 0.0) fail(errc::zero_vector, "finsler norm of zero vector");
  if (!contains_strict(dom, tv.base))
    fail(errc::point_outside_domain, "finsler base outside the open domain");
  Vec2 pp = ray_exit(dom, tv.base, tv.dir);
  Vec2 pm = ray_exit(dom, tv.base, tv.dir * -1.0);
  return 0.5 * (1.0 / (tv.base - pm).norm() + 1.0 / (tv.base - pp).norm()) * tv.dir.norm();
}

double unit_ball_area(const ConvexDomain& dom, const Vec2& x, int n_rays) {
  if (n_rays < 16) fail(errc::parameter_range, "unit_ball_area needs n_rays >= 16");
  if (!contains_strict(dom, x)) fail(errc::point_outside_domain, "point outside the open domain");
  double area = 0;
  for (int k = 0; k < n_rays; ++k) {
    double t = 2.0 * M_PI * k / n_rays;
    Vec2 u{std::cos(t), std::sin(t)};
    double r = 1.0 / finsler_norm(dom, {x, u});
    area += 0.5 * r * r * (2.0 * M_PI / n_rays);
  }
  return area;
}

double measure(const ConvexDomain& dom, const ConvexDomain& region, int grid, int n_rays) {
  if (grid < 1) fail(errc::parameter_range, "measure needs grid >= 1");
  for (const Vec2& v : region.vertices)
    if (!contains_strict(dom, v))
      fail(errc::region_not_contained, "region vertex outside the domain");
  Vec2 lo = region.vertices[0], hi = region.vertices[0];
  for (const Vec2& v : region.vertices) {
    lo.x = std::fmin(lo.x, v.x);
    lo.y = std::fmin(lo.y, v.y);
    hi.x = std::fmax(hi.x, v.x);
    hi.y = std::fmax(hi.y, v.y);
  }
  double dx = (hi.x - lo.x) / grid, dy = (hi.y - lo.y) / grid;
  if (dx == 0.0 || dy == 0.0) return 0.0;
  double total = 0;
  for (int i = 0; i < grid; ++i) {
    double row = 0;
    for (int j = 0; j < grid; ++j) {
      Vec2 c{lo.x + (i + 0.5) * dx, lo.y + (j + 0.5) * dy};
      if (!contains_strict(region, c)) continue;
      row += 1.0 / unit_ball_area(dom, c, n_rays);
    }
    total += row * dx * dy;  // fixed summation order keeps results bit-stable
  }
  return total;
}

namespace {

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 e = b - a;
  double len2 = e.dot(e);
  double t = len2 > 0 ? std::clamp((p - a).dot(e) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + e * t)).norm();
}

double directed_hausdorff(const std::vector<Vec2>& from, const std::vector<Vec2>& to,
                          int subdiv) {
  size_t n = from.size(), m = to.size();
  double worst = 0;
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = from[i], b = from[(i + 1) % n];
    for (int s = 0; s < subdiv; ++s) {
      Vec2 p = a + (b - a) * (double(s) / subdiv);
      double best = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < m; ++j)
        best = std::fmin(best, point_segment_dist(p, to[j], to[(j + 1) % m]));
      worst = std::fmax(worst, best);
    }
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const ConvexDomain& a, const ConvexDomain& b, int subdiv) {
  if (max_abs_diff(a.chart, b.chart) > 1e-12)
    fail(errc::chart_mismatch, "hausdorff distance across different charts");
  return std::fmax(directed_hausdorff(a.vertices, b.vertices, subdiv),
                   directed_hausdorff(b.vertices, a.vertices, subdiv));
}

ConvexDomain apply_projective(const Mat3& T, const ConvexDomain& dom) {
  std::vector<Vec2> out;
  out.reserve(dom.vertices.size());
  for (const Vec2& v : dom.vertices) {
    Vec3 w = T * Vec3{v.x, v.y, 1.0};
    if (std::fabs(w.z) < 1e-12 * w.max_abs())
      fail(errc::point_at_infinity, "projective image of vertex leaves the chart");
    out.push_back({w.x / w.z, w.y / w.z});
  }
  if (!is_strictly_convex_ccw(out)) std::reverse(out.begin(), out.end());
  return make_domain(std::move(out), dom.chart);
}

std::vector<Vec2> clip_to_box(const std::vector<Vec2>& poly, const Vec2& lo, const Vec2& hi) {
  // Sutherland-Hodgman against the four box half-planes.
  std::vector<Vec2> cur = poly;
  auto clip = [&](auto inside, auto intersect) {
    std::vector<Vec2> next;
    size_t n = cur.size();
    for (size_t i = 0; i < n; ++i) {
      Vec2 a = cur[i], b = cur[(i + 1) % n];
      bool ia = inside(a), ib = inside(b);
      if (ia) next.push_back(a);
      if (ia != ib) next.push_back(intersect(a, b));
    }
    cur = std::move(next);
  };
  clip([&](Vec2 p) { return p.x >= lo.x; },
       [&](Vec2 a, Vec2 b) { double t = (lo.x - a.x) / (b.x - a.x); return Vec2{lo.x, a.y + t * (b.y - a.y)}; });
  clip([&](Vec2 p) { return p.x <= hi.x; },
       [&](Vec2 a, Vec2 b) { double t = (hi.x - a.x) / (b.x - a.x); return Vec2{hi.x, a.y + t * (b.y - a.y)}; });
  clip([&](Vec2 p) { return p.y >= lo.y; },
       [&](Vec2 a, Vec2 b) { double t = (lo.y - a.y) / (b.y - a.y); return Vec2{a.x + t * (b.x - a.x), lo.y}; });
  clip([&](Vec2 p) { return p.y <= hi.y; },
       [&](Vec2 a, Vec2 b) { double t = (hi.y - a.y) / (b.y - a.y); return Vec2{a.x + t * (b.x - a.x), hi.y}; });
  return cur;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts, double dedup_tol) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](const Vec2& a, const Vec2& b) { return (a - b).norm() < dedup_tol; }),
            pts.end());
  size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && (h[k - 1] - h[k - 2]).cross(pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && (h[k - 1] - h[k - 2]).cross(pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace cvp
