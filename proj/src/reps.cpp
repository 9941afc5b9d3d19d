#include "cvp/reps.hpp"

#include <algorithm>
#include <cmath>

namespace cvp {

Mat2 Mat2::inverse() const {
  double dt = det();
  if (std::fabs(dt) < 1e-300) fail(errc::degenerate_matrix, "2x2 matrix singular");
  return {d / dt, -b / dt, -c / dt, a / dt};
}

namespace {

// Action of g on binary quadratic forms S -> g S g^T in the coefficient
// basis (alpha, beta, gamma) of alpha x^2 + beta xy + gamma y^2.
Mat3 sym2_raw(const Mat2& g) {
  return Mat3{{g.a * g.a, g.a * g.b, g.b * g.b,
               2 * g.a * g.c, g.a * g.d + g.b * g.c, 2 * g.b * g.d,
               g.c * g.c, g.c * g.d, g.d * g.d}};
}

// (alpha, beta, gamma) -> (alpha - gamma, beta, alpha + gamma) turns the
// discriminant conic beta^2 - 4 alpha gamma into x^2 + y^2 - z^2.
const Mat3 kPhi{{1, 0, -1, 0, 1, 0, 1, 0, 1}};
const Mat3 kPhiInv{{0.5, 0, 0.5, 0, 1, 0, -0.5, 0, 0.5}};

}  // namespace

Mat3 embed_sym2(const Mat2& g) {
  double dt = g.det();
  if (!(dt > 0)) fail(errc::degenerate_matrix, "sym2 embedding needs positive determinant");
  Mat2 n{g.a / std::sqrt(dt), g.b / std::sqrt(dt), g.c / std::sqrt(dt), g.d / std::sqrt(dt)};
  // det(sym2) = det(n)^3 = 1 structurally; no renormalization against a
  // (noisy at this scale) computed determinant.
  return kPhi * sym2_raw(n) * kPhiInv;
}

Mat3 klein_conic_form() { return Mat3::diag(1, 1, -1); }

namespace {

Mat2 sl2_diag(double mu) { return {mu, 0, 0, 1 / mu}; }

// Quarter turn about the point i; conjugation by it inverts any hyperbolic
// whose axis is the imaginary axis (a diagonal matrix).
const Mat2 kHalfTurn{0, 1, -1, 0};

// Eigenbasis of a 2x2 hyperbolic: columns are the unit eigenvectors for
// the larger and smaller |eigenvalue|, determinant normalized to +1.
Mat2 eigenbasis2(const Mat2& g) {
  double t = g.trace();
  double disc = t * t - 4.0 * g.det();
  if (disc <= 0) fail(errc::not_hyperbolic, "2x2 element is not hyperbolic");
  double r = std::sqrt(disc);
  double l1 = (t + (t >= 0 ? r : -r)) / 2.0;  // larger |eigenvalue|
  double l2 = g.det() / l1;
  auto evec = [&](double lam, double& x, double& y) {
    // Rows of (g - lam I) are proportional; use the larger one.
    double r1x = g.a - lam, r1y = g.b;
    double r2x = g.c, r2y = g.d - lam;
    if (r1x * r1x + r1y * r1y >= r2x * r2x + r2y * r2y) {
      x = -r1y;
      y = r1x;
    } else {
      x = -r2y;
      y = r2x;
    }
    double n = std::hypot(x, y);
    if (n < 1e-300) fail(errc::not_hyperbolic, "2x2 eigenvector collapsed");
    x /= n;
    y /= n;
  };
  Mat2 m;
  evec(l1, m.a, m.c);
  evec(l2, m.b, m.d);
  double d = m.det();
  if (std::fabs(d) < 1e-12) fail(errc::not_hyperbolic, "2x2 eigenbasis degenerate");
  if (d < 0) {
    m.b = -m.b;
    m.d = -m.d;
    d = -d;
  }
  double s = std::sqrt(d);
  return {m.a / s, m.b / s, m.c / s, m.d / s};
}

// Conjugate the pair (A, B) into the frame where `curve` is diagonal with
// the attracting fixed point first; keeps every later product moderate and
// lets kHalfTurn invert the curve exactly.
void center_on(const Mat2& curve, Mat2& A, Mat2& B) {
  Mat2 m = eigenbasis2(curve);
  Mat2 mi = m.inverse();
  A = mi * A * m;
  B = mi * B * m;
}

Representation embed_pair(const Mat2& A, const Mat2& B) {
  return make_representation({"a", "b"}, {embed_sym2(A), embed_sym2(B)});
}

// SL(2,R) pants group with trace triple (x, y, z), all <= -2:
// A = -diag(lambda, 1/lambda), B solved from tr B = y, tr AB = z. The
// off-diagonal entries are balanced (|b| = |r|) to keep the matrix, and
// hence its symmetric square, well conditioned.
void pants_sl2(double l1, double l2, double l3, Mat2& A, Mat2& B) {
  if (!(l1 > 0 && l2 > 0 && l3 > 0)) fail(errc::parameter_range, "pants lengths must be positive");
  double lambda = std::exp(l1 / 2.0);
  double y = -2.0 * std::cosh(l2 / 2.0);
  double z = -2.0 * std::cosh(l3 / 2.0);
  A = {-lambda, 0, 0, -1 / lambda};
  double p = -(z + y / lambda) / (lambda - 1 / lambda);
  double s = y - p;
  double qr = p * s - 1;
  double q = std::fabs(qr) > 1e-12 ? std::sqrt(std::fabs(qr)) : 1.0;
  B = {p, q, qr / q, s};
}

}  // namespace

Representation fuchsian_pants(const PantsParams& pp) {
  Mat2 A, B;
  pants_sl2(pp.l1, pp.l2, pp.l3, A, B);
  return embed_pair(A, B);
}

void fuchsian_pants_sl2(const PantsParams& pp, Mat2& a, Mat2& b) {
  pants_sl2(pp.l1, pp.l2, pp.l3, a, b);
}

Representation square_torus() {
  // sinh(l/2) = 1 on both generators gives tr[a,b] = -2.
  double c = std::sqrt(2.0), s = 1.0;
  Mat2 A = sl2_diag(c + s);  // cosh + sinh = e^{l/2}
  Mat2 B{c, s, s, c};
  return embed_pair(A, B);
}

Representation punctured_torus_hnn(const Representation& base) {
  if (base.n_gens() != 2) fail(errc::config_error, "HNN seed needs exactly two generators");
  if (!is_hyperbolic(base.images[0]))
    fail(errc::not_hyperbolic, "HNN curve gamma = a is not hyperbolic");
  Representation rep = base;
  Splitting sp;
  sp.kind = Splitting::Kind::hnn;
  sp.gamma = {1};
  sp.left_gens = {0};
  sp.stable_letter = 1;
  rep.splitting = sp;
  return rep;
}

Representation genus2_octagon() {
  // Once-holed torus with both handle lengths 2 acosh(1 + sqrt 2); the
  // commutator boundary is hyperbolic since sinh^2(l/2) = 2 + 2 sqrt 2 > 1.
  double ch = 1.0 + std::sqrt(2.0);
  double sh = std::sqrt(ch * ch - 1.0);
  Mat2 A = sl2_diag(ch + sh);
  Mat2 B{ch, sh, sh, ch};
  Mat2 C = A * B * A.inverse() * B.inverse();
  center_on(C, A, B);  // now [A,B] is diagonal and kHalfTurn inverts it
  Mat2 E = kHalfTurn;
  Mat2 Ei = E.inverse();
  Mat2 A2 = E * A * Ei, B2 = E * B * Ei;

  Representation rep = make_representation(
      {"a1", "b1", "a2", "b2"},
      {embed_sym2(A), embed_sym2(B), embed_sym2(A2), embed_sym2(B2)});
  rep.relators = {Word{1, 2, -1, -2, 3, 4, -3, -4}};
  Splitting sp;
  sp.kind = Splitting::Kind::amalgam;
  sp.gamma = {1, 2, -1, -2};
  sp.left_gens = {0, 1};
  sp.right_gens = {2, 3};
  rep.splitting = sp;
  return rep;
}

Representation pants_amalgam_demo(const PantsParams& pp) {
  Mat2 A, B;
  pants_sl2(pp.l1, pp.l2, pp.l3, A, B);
  center_on(A * B, A, B);  // gluing curve ab diagonal, inverted by kHalfTurn
  Mat2 E = kHalfTurn;
  Mat2 Ei = E.inverse();
  Mat2 C = E * A * Ei, D = E * B * Ei;

  Representation rep = make_representation(
      {"a", "b", "c", "d"},
      {embed_sym2(A), embed_sym2(B), embed_sym2(C), embed_sym2(D)});
  rep.relators = {Word{1, 2, 3, 4}};  // cd = E(ab)E^-1 = (ab)^-1
  Splitting sp;
  sp.kind = Splitting::Kind::amalgam;
  sp.gamma = {1, 2};
  sp.left_gens = {0, 1};
  sp.right_gens = {2, 3};
  rep.splitting = sp;
  return rep;
}

namespace {

double circle_angle(const ProjPoint& p) {
  // Boundary points of the conic frame sit near the unit circle of the
  // z = 1 chart; the certificate only needs a consistent parametrization.
  if (std::fabs(p.v.z) < 1e-9 * p.v.max_abs())
    fail(errc::ping_pong_failed, "fixed point escapes the chart");
  return std::atan2(p.v.y / p.v.z, p.v.x / p.v.z);
}

double ang_dist(double a, double b) {
  double d = std::fabs(a - b);
  while (d > M_PI) d = std::fabs(d - 2.0 * M_PI);
  return d;
}

}  // namespace

Representation schottky_pair(const Mat3& g1, const Mat3& g2, int depth) {
  HyperbolicSpectrum s1 = eigen_hyperbolic(g1);
  HyperbolicSpectrum s2 = eigen_hyperbolic(g2);

  // Interval data on the boundary circle: one interval around each of the
  // four axis endpoints.
  struct Pole {
    double angle;
    int owner;  // signed generator whose attracting end this is
  };
  std::vector<Pole> poles = {{circle_angle(s1.fixed_attract), 1},
                             {circle_angle(s1.fixed_repel), -1},
                             {circle_angle(s2.fixed_attract), 2},
                             {circle_angle(s2.fixed_repel), -2}};
  double sep = M_PI;
  for (size_t i = 0; i < poles.size(); ++i)
    for (size_t j = i + 1; j < poles.size(); ++j)
      sep = std::fmin(sep, ang_dist(poles[i].angle, poles[j].angle));
  if (sep < 1e-6) fail(errc::ping_pong_failed, "axis endpoints are not separated");
  double radius = 0.45 * sep;

  Representation rep = make_representation({"a", "b"}, {g1, g2});

  // Sampled mapping check: orbits of the poles under words of length up to
  // `depth` must respect the interval combinatorics g(outside I_{g^-1})
  // inside I_g. Rejection is conservative.
  std::vector<std::pair<double, Word>> samples;
  for (const Pole& p : poles) samples.push_back({p.angle, Word{}});
  for (int level = 0; level < depth; ++level) {
    std::vector<std::pair<double, Word>> next;
    for (const auto& [ang, w] : samples) {
      for (int letter : {1, -1, 2, -2}) {
        if (!w.empty() && w.back() == -letter) continue;
        // The sample must lie outside the repelling interval of `letter`.
        double rep_angle = 0;
        for (const Pole& p : poles)
          if (p.owner == -letter) rep_angle = p.angle;
        if (ang_dist(ang, rep_angle) <= radius) continue;
        Vec3 lift{std::cos(ang), std::sin(ang), 1.0};
        Vec3 img = rep.letter_image(letter) * lift;
        double ia = circle_angle(ProjPoint::from(img));
        double att_angle = 0;
        for (const Pole& p : poles)
          if (p.owner == letter) att_angle = p.angle;
        if (ang_dist(ia, att_angle) > radius)
          fail(errc::ping_pong_failed, "interval mapping check failed");
        Word nw = w;
        nw.push_back(letter);
        next.push_back({ia, nw});
      }
    }
    samples = std::move(next);
  }

  rep.pingpong_certified = true;
  return rep;
}

}  // namespace cvp
