#include "cvp/bulge.hpp"

#include <cmath>

namespace cvp {

BulgeFrame bulge_frame(const Representation& rep, const Word& gamma) {
  Mat3 g = evaluate(rep, gamma);
  HyperbolicSpectrum spec = eigen_hyperbolic(g);
  Mat3 P = Mat3::from_columns(spec.fixed_attract.v, spec.fixed_neutral.v, spec.fixed_repel.v);
  double d = P.det();
  if (std::fabs(d) < 1e-14) fail(errc::not_hyperbolic, "eigenbasis is numerically degenerate");
  if (d < 0) {
    // Flip one column's sign: same projective frame, positive determinant.
    Mat3 flip = Mat3::diag(1, -1, 1);
    P = P * flip;
    d = -d;
  }
  P = P * (1.0 / std::cbrt(d));
  BulgeFrame frame{P, P.inverse(), spec};

  Mat3 in_frame = frame.basis_inv * g * frame.basis;
  Mat3 diag = Mat3::diag(spec.lambda1, spec.lambda2, spec.lambda3);
  if (max_abs_diff(in_frame, diag) > 1e-8 * std::fmax(1.0, diag.max_abs()))
    fail(errc::not_hyperbolic, "diagonalization residual exceeds 1e-8");
  return frame;
}

namespace {

Mat3 conjugated_diag(const BulgeFrame& frame, double d0, double d1, double d2) {
  return frame.basis * Mat3::diag(d0, d1, d2) * frame.basis_inv;
}

void check_cap(double v, double cap, const char* name) {
  if (!(std::fabs(v) <= cap))
    fail(errc::parameter_range, std::string(name) + " exceeds the deformation cap");
}

// In-frame conjugation by diag(d): entry (i,j) scales by d_i/d_j. Applying
// this to the in-frame entries avoids forming large products outright, and
// the determinant is untouched, so no renormalization is needed.
Mat3 sandwich_conj(const BulgeFrame& frame, const Mat3& g, const double d[3]) {
  Mat3 f = frame.basis_inv * g * frame.basis;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f(i, j) *= d[i] / d[j];
  return frame.basis * f * frame.basis_inv;
}

Mat3 sandwich_left(const BulgeFrame& frame, const Mat3& g, const double d[3]) {
  // d has product 1, so this also preserves the determinant.
  Mat3 f = frame.basis_inv * g * frame.basis;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f(i, j) *= d[i];
  return frame.basis * f * frame.basis_inv;
}

Mat3 sandwich_right(const BulgeFrame& frame, const Mat3& g, const double d[3]) {
  Mat3 f = frame.basis_inv * g * frame.basis;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f(i, j) *= d[j];
  return frame.basis * f * frame.basis_inv;
}

}  // namespace

Mat3 o_s(const BulgeFrame& frame, double s) {
  return conjugated_diag(frame, std::exp(-s / 3.0), std::exp(2.0 * s / 3.0), std::exp(-s / 3.0));
}

Mat3 tau_t(const BulgeFrame& frame, double t) {
  return conjugated_diag(frame, std::exp(t), 1.0, std::exp(-t));
}

Representation deform(const Representation& rep, double t, double s, double cap,
                      DeformSide side) {
  if (!rep.splitting) fail(errc::no_splitting, "deform needs a splitting annotation");
  check_cap(t, cap, "t");
  check_cap(s, cap, "s");
  const Splitting& sp = *rep.splitting;
  BulgeFrame frame = bulge_frame(rep, sp.gamma);
  double d[3] = {std::exp(t - s / 3.0), std::exp(2.0 * s / 3.0), std::exp(-t - s / 3.0)};
  double dinv[3] = {1.0 / d[0], 1.0 / d[1], 1.0 / d[2]};

  Representation out = rep;
  out.invalidate_cache();
  if (sp.kind == Splitting::Kind::amalgam) {
    if (side == DeformSide::right) {
      for (int idx : sp.right_gens)
        out.images[size_t(idx)] = sandwich_conj(frame, rep.images[size_t(idx)], d);
    } else {
      // Debulge the left side: conjugate by (tau_t o_s)^-1.
      for (int idx : sp.left_gens)
        out.images[size_t(idx)] = sandwich_conj(frame, rep.images[size_t(idx)], dinv);
    }
  } else {
    if (side == DeformSide::right) {
      out.images[size_t(sp.stable_letter)] =
          sandwich_left(frame, rep.images[size_t(sp.stable_letter)], d);
    } else {
      // Conjugated view: the whole picture moved by (tau_t o_s)^-1, which
      // turns the left multiplication into a right one.
      out.images[size_t(sp.stable_letter)] =
          sandwich_right(frame, rep.images[size_t(sp.stable_letter)], d);
    }
  }
  return out;
}

TraceProbe trace_probe(const Representation& rep, const Word& alpha, const Word& beta,
                       const std::vector<double>& s_grid, double t) {
  if (!rep.splitting) fail(errc::no_splitting, "trace_probe needs a splitting annotation");
  Word w = concat(alpha, beta);
  if (reduce(w).empty()) fail(errc::empty_word, "trace probe word is trivial");

  TraceProbe probe;
  for (double s : s_grid) {
    Representation def = deform(rep, t, s);
    Mat3 img = evaluate(def, w);
    TraceProbeRow row;
    row.s = s;
    row.trace = img.trace();
    try {
      row.length = hilbert_length(img);
    } catch (const error&) {
      row.length = std::nan("");
    }
    probe.rows.push_back(row);
  }

  // OLS of log|trace| against s over the top half of the grid.
  size_t n = probe.rows.size();
  size_t lo = n / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t cnt = 0;
  for (size_t i = lo; i < n; ++i) {
    double x = probe.rows[i].s;
    double ay = std::fabs(probe.rows[i].trace);
    if (!(ay > 0)) continue;
    double y = std::log(ay);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) {
    double denom = cnt * sxx - sx * sx;
    probe.fitted_rate = denom != 0 ? (cnt * sxy - sx * sy) / denom : 0.0;
  }
  return probe;
}

}  // namespace cvp
