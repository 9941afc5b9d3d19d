#include "cvp/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvp/bulge.hpp"
#include "cvp/limitset.hpp"

namespace cvp {

Census census(const Representation& rep, int max_word_len, bool oriented, std::uint64_t budget) {
  if (max_word_len < 1) fail(errc::parameter_range, "census needs max_word_len >= 1");
  Census out;
  out.max_word_len = max_word_len;
  out.oriented = oriented;

  auto push = [&](const Word& w, const Mat3& m, const Mat3& mi) {
    try {
      // Length first: if it throws, nothing has been copied yet (GCC 11
      // leaks the copied member of a partially constructed aggregate).
      double len = hilbert_length_pair(m, mi);
      out.entries.push_back({w, len});
    } catch (const error& e) {
      if (e.code() == errc::not_hyperbolic)
        ++out.skipped_non_hyperbolic;
      else
        throw;
    }
  };

  if (rep.relators.empty()) {
    // Free group: one entry per conjugacy class.
    std::vector<ConjClass> classes =
        enumerate_classes(rep.n_gens(), max_word_len, /*unoriented=*/!oriented, budget);
    PrefixEvaluator eval(rep);
    PrefixEvaluator eval_inv(rep);
    for (const ConjClass& c : classes) push(c.rep, eval(c.rep), eval_inv(inverse_word(c.rep)));
    for (const CensusEntry& e : out.entries)
      if (int(e.word.size()) >= max_word_len) out.t_complete = std::fmin(out.t_complete, e.length);
  } else {
    // Relator present: count distinct elements instead (critical-exponent
    // style census; the conjugacy problem is avoided on purpose).
    orbit_scan(
        rep, max_word_len,
        [&](const Word& w, const Mat3& m, const Mat3& mi) { push(w, m, mi); }, budget);
  }

  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const CensusEntry& a, const CensusEntry& b) { return a.length < b.length; });
  return out;
}

std::uint64_t counting_function(const Census& c, double T) {
  if (!(T > 0)) fail(errc::parameter_range, "counting_function needs T > 0");
  auto it = std::upper_bound(c.entries.begin(), c.entries.end(), T,
                             [](double t, const CensusEntry& e) { return t < e.length; });
  return std::uint64_t(it - c.entries.begin());
}

namespace {

EntropyEstimate fit_counts(const std::vector<double>& sorted_lengths, double window_fraction,
                           double t_complete) {
  if (!(window_fraction > 0.0 && window_fraction < 1.0))
    fail(errc::parameter_range, "window_fraction must lie in (0,1)");
  size_t n = sorted_lengths.size();
  if (n < 10) fail(errc::insufficient_data, "too few lengths for an entropy fit");

  double lmin = sorted_lengths.front(), lmax = sorted_lengths.back();
  double span = lmax - lmin;
  if (!(span > 0)) fail(errc::insufficient_data, "all lengths identical");
  double t_hi = lmax - 0.10 * span;  // final 10% is truncation-biased
  // The completeness horizon caps the window only while it leaves a usable
  // one; degenerate horizons (deep words with short lengths, as in nearly
  // flat domains) fall back to the plain windowing rule.
  if (t_complete > lmin + 0.2 * span) t_hi = std::fmin(t_hi, t_complete);
  double t_lo = std::fmax(lmin, t_hi - window_fraction * span);

  // Sample points: (T, log N(T)) at each distinct length in the window.
  std::vector<double> xs, ys;
  for (size_t i = 0; i < n; ++i) {
    double t = sorted_lengths[i];
    if (i + 1 < n && sorted_lengths[i + 1] == t) continue;  // keep last of ties
    if (t < t_lo || t > t_hi) continue;
    xs.push_back(t);
    ys.push_back(std::log(double(i + 1)));
  }
  if (xs.size() < 10) fail(errc::insufficient_data, "fewer than 10 distinct lengths in window");

  size_t m = xs.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0)) fail(errc::insufficient_data, "degenerate abscissa in entropy fit");
  double slope = sxy / sxx;
  double ss_res = 0;
  for (size_t i = 0; i < m; ++i) {
    double r = ys[i] - my - slope * (xs[i] - mx);
    ss_res += r * r;
  }
  EntropyEstimate est;
  est.h = slope;
  est.t_min = t_lo;
  est.t_max = t_hi;
  est.n_points = int(m);
  est.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  est.stderr_h = m > 2 ? std::sqrt(ss_res / double(m - 2) / sxx) : 0.0;
  return est;
}

}  // namespace

EntropyEstimate fit_entropy(const Census& c, double window_fraction) {
  std::vector<double> lengths;
  lengths.reserve(c.entries.size());
  for (const CensusEntry& e : c.entries) lengths.push_back(e.length);
  return fit_counts(lengths, window_fraction, c.t_complete);
}

EntropyEstimate fit_entropy_from_lengths(std::vector<double> lengths, double window_fraction,
                                         double t_complete) {
  std::sort(lengths.begin(), lengths.end());
  return fit_counts(lengths, window_fraction, t_complete);
}

namespace {

// Star-shaped boundary fan around a fixed interior point: the exit edge of
// any ray is found by binary search on vertex angles.
class StarFan {
public:
  StarFan(const ConvexDomain& dom, const Vec2& o) : dom_(dom), o_(o) {
    size_t n = dom.vertices.size();
    ang_.resize(n);
    for (size_t i = 0; i < n; ++i) {
      Vec2 d = dom.vertices[i] - o;
      ang_[i] = std::atan2(d.y, d.x);
    }
    start_ = size_t(std::min_element(ang_.begin(), ang_.end()) - ang_.begin());
  }

  // Boundary hit of the ray o + t d, t > 0.
  Vec2 exit(const Vec2& d) const {
    size_t n = ang_.size();
    double theta = std::atan2(d.y, d.x);
    // Find the first vertex (in ccw order from start_) with angle > theta.
    size_t lo = 0, hi = n;
    auto ang_at = [&](size_t k) { return ang_[(start_ + k) % n]; };
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (ang_at(mid) <= theta)
        lo = mid + 1;
      else
        hi = mid;
    }
    size_t j = (start_ + lo % n) % n;          // vertex after the ray
    size_t i = (j + n - 1) % n;                // vertex before the ray
    for (double eps : {1e-12, 1e-9}) {
      double t = edge_hit(d, i, j, eps);
      if (t > 0) return o_ + d * t;
      // Grazing a vertex: try the neighbouring edges.
      t = edge_hit(d, (i + n - 1) % n, i, eps);
      if (t > 0) return o_ + d * t;
      t = edge_hit(d, j, (j + 1) % n, eps);
      if (t > 0) return o_ + d * t;
    }
    return ray_exit(dom_, o_, d);  // full scan fallback
  }

private:
  double edge_hit(const Vec2& d, size_t i, size_t j, double eps) const {
    const Vec2& a = dom_.vertices[i];
    const Vec2& b = dom_.vertices[j];
    Vec2 e = b - a;
    double denom = d.cross(e);
    if (denom == 0.0) return -1.0;
    Vec2 w = a - o_;
    double t = w.cross(e) / denom;
    double u = w.cross(d) / denom;
    if (t <= 0.0 || u < -eps || u > 1.0 + eps) return -1.0;
    return t;
  }

  const ConvexDomain& dom_;
  Vec2 o_;
  std::vector<double> ang_;
  size_t start_ = 0;
};

}  // namespace

EntropyEstimate orbit_exponent(const Representation& rep, const ConvexDomain& dom,
                               const Vec2& basepoint, int radius, double window_fraction,
                               std::uint64_t budget, int* skipped) {
  if (!contains_strict(dom, basepoint))
    fail(errc::point_outside_domain, "orbit basepoint outside the domain");
  Mat3 chart = dom.chart;            // chart lift -> ambient
  Mat3 chart_inv = chart.inverse();  // ambient -> chart
  Vec3 o_amb = chart * Vec3{basepoint.x, basepoint.y, 1.0};
  StarFan fan(dom, basepoint);

  int skip = 0;
  double t_complete = std::numeric_limits<double>::infinity();
  std::vector<double> lengths;
  orbit_scan(
      rep, radius,
      [&](const Word& word, const Mat3& g, const Mat3&) {
        Vec3 w = chart_inv * (g * o_amb);
        if (std::fabs(w.z) < 1e-12 * w.max_abs()) {
          ++skip;
          return;
        }
        Vec2 y{w.x / w.z, w.y / w.z};
        Vec2 d = y - basepoint;
        double dn = d.norm();
        if (dn == 0.0) return;  // fixed basepoint, zero displacement
        Vec2 q = fan.exit(d);
        double tq = (q - basepoint).norm();
        if (dn >= tq) {  // image leaves the polygonal inner approximation
          ++skip;
          return;
        }
        Vec2 p = fan.exit(d * -1.0);
        double r = ((p - y).norm() * tq) / ((p - basepoint).norm() * (q - y).norm());
        double dist = 0.5 * std::log(r);
        lengths.push_back(dist);
        if (int(word.size()) >= radius) t_complete = std::fmin(t_complete, dist);
      },
      budget);
  if (skipped) *skipped = skip;
  return fit_entropy_from_lengths(std::move(lengths), window_fraction, t_complete);
}

namespace {

double hausdorff_clipped(const ConvexDomain& a, const ConvexDomain& b, const Vec2& lo,
                         const Vec2& hi) {
  std::vector<Vec2> ca = clip_to_box(a.vertices, lo, hi);
  std::vector<Vec2> cb = clip_to_box(b.vertices, lo, hi);
  if (ca.size() < 3 || cb.size() < 3) return std::nan("");
  double worst = 0;
  auto dir = [&](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
    for (size_t i = 0; i < from.size(); ++i)
      for (int s = 0; s < 4; ++s) {
        Vec2 pnt = from[i] + (from[(i + 1) % from.size()] - from[i]) * (s / 4.0);
        double best = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < to.size(); ++j) {
          const Vec2& u = to[j];
          const Vec2& v = to[(j + 1) % to.size()];
          Vec2 e = v - u;
          double len2 = e.dot(e);
          double tt = len2 > 0 ? std::clamp((pnt - u).dot(e) / len2, 0.0, 1.0) : 0.0;
          best = std::fmin(best, (pnt - (u + e * tt)).norm());
        }
        worst = std::fmax(worst, best);
      }
  };
  dir(ca, cb);
  dir(cb, ca);
  return worst;
}

}  // namespace

std::vector<SweepRow> sweep(const Representation& rep, const SweepConfig& cfg) {
  if (!rep.splitting) fail(errc::no_splitting, "sweep needs a splitting annotation");
  const Splitting& sp = *rep.splitting;
  BulgeFrame frame = bulge_frame(rep, sp.gamma);

  Word alpha = cfg.probe_alpha, beta = cfg.probe_beta;
  if (alpha.empty() && beta.empty()) {
    if (sp.kind == Splitting::Kind::amalgam) {
      alpha = {sp.left_gens.at(0) + 1};
      beta = {sp.right_gens.at(0) + 1};
    } else {
      beta = {sp.stable_letter + 1};
    }
  }

  // One chart for the whole sweep, chosen from the union of the limit
  // points of every grid point (intermediate domains can leave the cone
  // spanned by the endpoints alone) plus the frame's fixed points.
  std::vector<LimitPoints> pts_by_s;
  std::vector<ProjPoint> all;
  for (double s : cfg.s_grid) {
    pts_by_s.push_back(
        limit_points(deform(rep, cfg.t, s, 25.0, cfg.side), cfg.hull_depth, 1e-8, cfg.budget));
    all.insert(all.end(), pts_by_s.back().points.begin(), pts_by_s.back().points.end());
  }
  all.push_back(frame.spectrum.fixed_attract);
  all.push_back(frame.spectrum.fixed_repel);
  Mat3 world_to_chart = choose_chart(all);

  // Base point: midpoint of the gamma axis chord, pulled toward the left
  // side's fixed points (it must stay interior for every s).
  Vec3 ga = world_to_chart * frame.spectrum.fixed_attract.v;
  Vec3 gr = world_to_chart * frame.spectrum.fixed_repel.v;
  Vec2 axis_mid = (Vec2{ga.x / ga.z, ga.y / ga.z} + Vec2{gr.x / gr.z, gr.y / gr.z}) / 2.0;
  Vec2 left_c{0, 0};
  int nleft = 0;
  for (int gi : sp.left_gens) {
    HyperbolicSpectrum s = eigen_hyperbolic(rep.images[size_t(gi)]);
    for (const ProjPoint& p : {s.fixed_attract, s.fixed_repel}) {
      Vec3 w = world_to_chart * p.v;
      left_c = left_c + Vec2{w.x / w.z, w.y / w.z};
      ++nleft;
    }
  }
  Vec2 basepoint = axis_mid;
  if (nleft > 0) basepoint = axis_mid * 0.85 + (left_c / nleft) * 0.15;

  std::vector<SweepRow> rows;
  ConvexDomain prev_hull;
  bool have_prev = false;
  Vec2 win_lo, win_hi;

  for (size_t si = 0; si < cfg.s_grid.size(); ++si) {
    double s = cfg.s_grid[si];
    SweepRow row;
    row.s = s;
    row.t = cfg.t;
    try {
      Representation def = deform(rep, cfg.t, s, 25.0, cfg.side);

      Census cen = census(def, cfg.census_len, true, cfg.budget);
      EntropyEstimate ce = fit_entropy(cen, cfg.window_fraction);
      row.h_census = ce.h;
      row.h_census_stderr = ce.stderr_h;

      ConvexDomain hull = domain_hull_from(pts_by_s[si], world_to_chart);
      if (!have_prev) {
        // Window: box around the basepoint sized by the first hull.
        double r = 0;
        for (const Vec2& v : hull.vertices) r = std::fmax(r, (v - basepoint).norm());
        win_lo = basepoint - Vec2{r, r} * 0.9;
        win_hi = basepoint + Vec2{r, r} * 0.9;
      }
      EntropyEstimate oe = orbit_exponent(def, hull, basepoint, cfg.orbit_radius,
                                          cfg.window_fraction, cfg.budget);
      row.h_orbit = oe.h;
      row.h_orbit_stderr = oe.stderr_h;

      TraceProbe probe = trace_probe(rep, alpha, beta, {s}, cfg.t);
      row.trace_ab = probe.rows.at(0).trace;
      row.length_ab = probe.rows.at(0).length;

      row.hausdorff_drift =
          have_prev ? hausdorff_clipped(prev_hull, hull, win_lo, win_hi) : 0.0;
      prev_hull = hull;
      have_prev = true;
    } catch (const error&) {
      row.h_census = row.h_orbit = row.trace_ab = row.length_ab = row.hausdorff_drift =
          std::nan("");
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cvp
