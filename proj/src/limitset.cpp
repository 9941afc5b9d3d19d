#include "cvp/limitset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace cvp {

LimitPoints limit_points(const Representation& rep, int depth, double dedup_tol,
                         std::uint64_t budget) {
  if (depth < 1) fail(errc::parameter_range, "limit_points needs depth >= 1");
  LimitPoints out;
  std::vector<ProjPoint> raw;
  orbit_scan(
      rep, depth,
      [&](const Word&, const Mat3& m, const Mat3& mi) {
        try {
          HyperbolicSpectrum s = eigen_hyperbolic_pair(m, mi);
          raw.push_back(s.fixed_attract);
          raw.push_back(s.fixed_repel);
        } catch (const error& e) {
          if (e.code() == errc::not_hyperbolic)
            ++out.skipped_non_hyperbolic;
          else
            throw;
        }
      },
      budget);

  // Dedup on the canonical lifts; sort first so the result is order-free.
  std::sort(raw.begin(), raw.end(), [](const ProjPoint& a, const ProjPoint& b) {
    if (a.v.x != b.v.x) return a.v.x < b.v.x;
    if (a.v.y != b.v.y) return a.v.y < b.v.y;
    return a.v.z < b.v.z;
  });
  for (const ProjPoint& p : raw) {
    bool dup = false;
    for (auto it = out.points.rbegin(); it != out.points.rend(); ++it) {
      if ((it->v - p.v).norm() < dedup_tol) {
        dup = true;
        break;
      }
      if (p.v.x - it->v.x > dedup_tol) break;  // sorted by x, nothing earlier can match
    }
    if (!dup) out.points.push_back(p);
  }
  return out;
}

namespace {

Vec3 unit(const Vec3& v) { return v / v.norm(); }

// Rotation taking unit vector n to e3 (Rodrigues construction).
Mat3 rotation_to_z(const Vec3& n) {
  Vec3 z{0, 0, 1};
  Vec3 axis = n.cross(z);
  double s = axis.norm(), c = n.dot(z);
  if (s < 1e-14) {
    if (c > 0) return Mat3::identity();
    return Mat3::diag(1, -1, -1);  // n = -e3: half turn about x
  }
  axis = axis / s;
  Mat3 K{{0, -axis.z, axis.y, axis.z, 0, -axis.x, -axis.y, axis.x, 0}};
  return Mat3::identity() + K * s + K * K * (1 - c);
}

double chart_margin(const Vec3& n, const std::vector<ProjPoint>& pts) {
  double m = 1.0;
  for (const ProjPoint& p : pts) m = std::fmin(m, std::fabs(unit(p.v).dot(n)));
  return m;
}

}  // namespace

Mat3 choose_chart(const std::vector<ProjPoint>& points) {
  if (points.size() < 3) fail(errc::parameter_range, "choose_chart needs at least 3 points");

  // Candidate normals: coordinate axes first (so the identity chart wins
  // when it works), then sign-mean iterations from several starts.
  std::vector<Vec3> candidates = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  std::vector<Vec3> starts = candidates;
  starts.push_back(unit(points[0].v));
  for (Vec3 n : starts) {
    for (int it = 0; it < 12; ++it) {
      Vec3 acc{0, 0, 0};
      for (const ProjPoint& p : points) {
        Vec3 u = unit(p.v);
        acc = acc + u * (u.dot(n) >= 0 ? 1.0 : -1.0);
      }
      if (acc.norm() < 1e-12) break;
      n = unit(acc);
    }
    candidates.push_back(n);
  }

  // Required angular margin: every direction within ~84.3 degrees of the
  // normal, i.e. a 10% gap to the horizon.
  const double min_cos = std::cos(M_PI / 2.0 / 1.1);
  Vec3 best{0, 0, 1};
  double best_margin = -1;
  for (const Vec3& n : candidates) {
    double m = chart_margin(n, points);
    if (m > best_margin + 1e-15) {
      best_margin = m;
      best = n;
    }
  }
  // Hill-climb toward the worst-margin direction: the sign-mean candidates
  // track the dominant cluster and can miss charts when a single far point
  // (a triangle apex, say) pins the margin.
  for (int iter = 0; iter < 60; ++iter) {
    Vec3 worst{0, 0, 0};
    double m = 1.0;
    for (const ProjPoint& p : points) {
      Vec3 d = unit(p.v);
      double c = d.dot(best);
      if (std::fabs(c) < m) {
        m = std::fabs(c);
        worst = c >= 0 ? d : d * -1.0;
      }
    }
    bool improved = false;
    for (double step : {0.5, 0.25, 0.1, 0.04}) {
      Vec3 cand = unit(best + worst * step);
      double cm = chart_margin(cand, points);
      if (cm > best_margin + 1e-15) {
        best_margin = cm;
        best = cand;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (best_margin < min_cos)
    fail(errc::no_separating_line, "no affine chart bounds the point set with margin");
  if (best.z > 0 && chart_margin({0, 0, 1}, points) >= min_cos) return Mat3::identity();
  return rotation_to_z(best);
}

namespace {

// Dense limit sets produce hulls with nearly collinear consecutive
// vertices; drop the flattest ones until the strict-convexity tolerance of
// ConvexDomain holds. The removed vertices sit within the dedup scale of
// the surviving boundary.
void prune_to_strictly_convex(std::vector<Vec2>& vs) {
  bool changed = true;
  while (changed && vs.size() > 3) {
    changed = false;
    for (size_t i = 0; i < vs.size();) {
      size_t n = vs.size();
      Vec2 a = vs[(i + n - 1) % n], b = vs[i], c = vs[(i + 1) % n];
      Vec2 e1 = b - a, e2 = c - b;
      double n1 = e1.norm(), n2 = e2.norm();
      if (n1 == 0.0 || n2 == 0.0 || e1.cross(e2) <= 2e-12 * n1 * n2) {
        vs.erase(vs.begin() + long(i));
        changed = true;
      } else {
        ++i;
      }
    }
  }
}

}  // namespace

ConvexDomain domain_hull_from(const LimitPoints& pts, const Mat3& world_to_chart) {
  std::vector<Vec2> affine;
  affine.reserve(pts.points.size());
  for (const ProjPoint& p : pts.points) {
    Vec3 w = world_to_chart * p.v;
    if (std::fabs(w.z) < 1e-12 * w.max_abs())
      fail(errc::point_at_infinity, "limit point at chart infinity");
    affine.push_back({w.x / w.z, w.y / w.z});
  }
  std::vector<Vec2> hull = convex_hull(std::move(affine));
  prune_to_strictly_convex(hull);
  if (hull.size() < 3) fail(errc::degenerate_matrix, "limit points are collinear");
  // The domain records the map from chart lifts back to ambient coordinates.
  return make_domain(std::move(hull), world_to_chart.inverse());
}

ConvexDomain domain_hull(const Representation& rep, int depth, std::uint64_t budget,
                         double dedup_tol) {
  LimitPoints pts = limit_points(rep, depth, dedup_tol, budget);
  if (pts.points.empty()) fail(errc::insufficient_data, "no limit points found");
  Mat3 chart = choose_chart(pts.points);
  return domain_hull_from(pts, chart);
}

ConvexDomain limit_triangle(const BulgeFrame& frame, const Mat3& world_to_chart) {
  std::vector<Vec2> vs;
  for (const ProjPoint& p :
       {frame.spectrum.fixed_attract, frame.spectrum.fixed_neutral, frame.spectrum.fixed_repel}) {
    Vec3 w = world_to_chart * p.v;
    if (std::fabs(w.z) < 1e-12 * w.max_abs())
      fail(errc::point_at_infinity, "triangle vertex at chart infinity");
    vs.push_back({w.x / w.z, w.y / w.z});
  }
  if (!is_strictly_convex_ccw(vs)) std::reverse(vs.begin(), vs.end());
  return make_domain(std::move(vs), world_to_chart.inverse());
}

namespace {

void append_num(std::string& s, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  s += buf;
}

}  // namespace

std::string render_svg(const std::vector<SvgLayer>& layers) {
  // Fixed view box around the union of layers (or unit box when empty).
  double lo_x = -1, lo_y = -1, hi_x = 1, hi_y = 1;
  bool any = false;
  for (const SvgLayer& l : layers)
    for (const Vec2& p : l.polygon) {
      if (!any) {
        lo_x = hi_x = p.x;
        lo_y = hi_y = p.y;
        any = true;
      }
      lo_x = std::fmin(lo_x, p.x);
      hi_x = std::fmax(hi_x, p.x);
      lo_y = std::fmin(lo_y, p.y);
      hi_y = std::fmax(hi_y, p.y);
    }
  double pad = 0.05 * std::fmax(hi_x - lo_x, hi_y - lo_y);
  if (pad <= 0) pad = 0.1;

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
  append_num(s, lo_x - pad);
  s += " ";
  append_num(s, -(hi_y + pad));  // flip y so the chart reads upright
  s += " ";
  append_num(s, (hi_x - lo_x) + 2 * pad);
  s += " ";
  append_num(s, (hi_y - lo_y) + 2 * pad);
  s += "\">\n";
  size_t ci = 0;
  for (const SvgLayer& l : layers) {
    if (l.polygon.empty()) continue;
    s += "  <path fill=\"none\" stroke=\"";
    s += palette[ci % 8];
    s += "\" stroke-width=\"0.01\" data-label=\"" + l.label + "\" d=\"";
    for (size_t i = 0; i < l.polygon.size(); ++i) {
      s += i == 0 ? "M " : "L ";
      append_num(s, l.polygon[i].x);
      s += " ";
      append_num(s, -l.polygon[i].y);
      s += " ";
    }
    if (l.closed) s += "Z";
    s += "\"/>\n";
    ++ci;
  }
  s += "</svg>\n";
  return s;
}

void render_svg_file(const std::vector<SvgLayer>& layers, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::io_failure, "cannot open " + path);
  f << render_svg(layers);
  if (!f) fail(errc::io_failure, "failed writing " + path);
}

}  // namespace cvp
