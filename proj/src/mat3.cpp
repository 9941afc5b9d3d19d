#include "cvp/mat3.hpp"

#include <algorithm>
#include <cmath>

namespace cvp {

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
    }
  return r;
}

Mat3 Mat3::operator*(double a) const {
  Mat3 r = *this;
  for (auto& e : r.m) e *= a;
  return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
  Mat3 r = *this;
  for (int i = 0; i < 9; ++i) r.m[size_t(i)] += o.m[size_t(i)];
  return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
  Mat3 r = *this;
  for (int i = 0; i < 9; ++i) r.m[size_t(i)] -= o.m[size_t(i)];
  return r;
}

Mat3 Mat3::transpose() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  return r;
}

double Mat3::det() const {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double Mat3::max_abs() const {
  double r = 0;
  for (double e : m) r = std::fmax(r, std::fabs(e));
  return r;
}

double Mat3::frobenius() const {
  double s = 0;
  for (double e : m) s += e * e;
  return std::sqrt(s);
}

bool Mat3::finite() const {
  for (double e : m)
    if (!std::isfinite(e)) return false;
  return true;
}

Mat3 Mat3::adjugate() const {
  Mat3 adj;
  adj(0, 0) = m[4] * m[8] - m[5] * m[7];
  adj(0, 1) = m[2] * m[7] - m[1] * m[8];
  adj(0, 2) = m[1] * m[5] - m[2] * m[4];
  adj(1, 0) = m[5] * m[6] - m[3] * m[8];
  adj(1, 1) = m[0] * m[8] - m[2] * m[6];
  adj(1, 2) = m[2] * m[3] - m[0] * m[5];
  adj(2, 0) = m[3] * m[7] - m[4] * m[6];
  adj(2, 1) = m[1] * m[6] - m[0] * m[7];
  adj(2, 2) = m[0] * m[4] - m[1] * m[3];
  return adj;
}

Mat3 Mat3::inverse() const {
  double d = det();
  double scale = max_abs();
  if (d == 0.0 || std::fabs(d) < 1e-300 * scale)
    fail(errc::degenerate_matrix, "matrix is numerically singular");
  return adjugate() * (1.0 / d);
}

namespace {

long double det_ld(const Mat3& M) {
  const auto& m = M.m;
  long double a = (long double)m[4] * m[8] - (long double)m[5] * m[7];
  long double b = (long double)m[3] * m[8] - (long double)m[5] * m[6];
  long double c = (long double)m[3] * m[7] - (long double)m[4] * m[6];
  return (long double)m[0] * a - (long double)m[1] * b + (long double)m[2] * c;
}

}  // namespace

Mat3 normalize_det1(const Mat3& M) {
  if (!M.finite()) fail(errc::degenerate_matrix, "matrix has non-finite entries");
  long double d = det_ld(M);
  if (fabsl(d) < 1e-14L) fail(errc::degenerate_matrix, "matrix determinant below 1e-14");
  if (d < 0)
    fail(errc::degenerate_matrix,
         "negative determinant; negate the matrix before projectivizing");
  // The determinant of a large-entry matrix is only computable within
  // ~eps * scale^3; inside that envelope (or plain rounding noise) the
  // matrix is already normalized and must return unchanged, both for
  // bitwise idempotence and to avoid rescaling by pure noise.
  double scale = M.max_abs();
  long double noise = 256.0L * 5.5e-20L * (long double)scale * scale * scale;
  long double tol = std::max<long double>(1e-13L, noise);
  if (fabsl(d - 1.0L) <= tol) return M;
  return M * double(1.0L / cbrtl(d));
}

ProjPoint ProjPoint::from(const Vec3& raw) {
  double ax = std::fabs(raw.x), ay = std::fabs(raw.y), az = std::fabs(raw.z);
  double mx = std::fmax(ax, std::fmax(ay, az));
  if (!(mx > 0) || !std::isfinite(mx)) fail(errc::zero_vector, "projective point from zero vector");
  double pivot = (ax == mx) ? raw.x : (ay == mx ? raw.y : raw.z);
  return ProjPoint{raw / pivot};
}

namespace {

// The eigen path runs in long double: entries of group elements reach 1e8
// and beyond while the spectral data sits orders of magnitude below, so the
// characteristic polynomial and the adjugate suffer cancellation at the
// limit of double precision. The extended mantissa buys the missing digits.

struct LVec3 {
  long double x = 0, y = 0, z = 0;
  long double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  LVec3 cross(const LVec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  long double norm() const { return sqrtl(x * x + y * y + z * z); }
};

struct L3 {
  long double m[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
  long double& operator()(int r, int c) { return m[3 * r + c]; }
  long double operator()(int r, int c) const { return m[3 * r + c]; }
  static L3 from(const Mat3& a) {
    L3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = a.m[size_t(i)];
    return r;
  }
  L3 scaled(long double f) const {
    L3 r = *this;
    for (auto& e : r.m) e *= f;
    return r;
  }
  L3 transpose() const {
    L3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  long double trace() const { return m[0] + m[4] + m[8]; }
  long double max_abs() const {
    long double r = 0;
    for (auto e : m) r = std::max(r, fabsl(e));
    return r;
  }
  LVec3 row(int r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }
  LVec3 apply(const LVec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  L3 mul(const L3& o) const {
    L3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
    return r;
  }
  L3 adjugate() const {
    L3 adj;
    adj(0, 0) = m[4] * m[8] - m[5] * m[7];
    adj(0, 1) = m[2] * m[7] - m[1] * m[8];
    adj(0, 2) = m[1] * m[5] - m[2] * m[4];
    adj(1, 0) = m[5] * m[6] - m[3] * m[8];
    adj(1, 1) = m[0] * m[8] - m[2] * m[6];
    adj(1, 2) = m[2] * m[3] - m[0] * m[5];
    adj(2, 0) = m[3] * m[7] - m[4] * m[6];
    adj(2, 1) = m[1] * m[6] - m[0] * m[7];
    adj(2, 2) = m[0] * m[4] - m[1] * m[3];
    return adj;
  }
  long double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }
};

// Osborne balancing with power-of-two factors: D^-1 M D with comparable
// row/column norms. Exact (no rounding), leaves eigenvalues untouched, and
// tames the cancellation a strongly non-normal matrix (a conjugated word)
// otherwise forces on the characteristic polynomial.
L3 balance(const L3& M, long double d[3]) {
  L3 a = M;
  d[0] = d[1] = d[2] = 1.0L;
  for (int pass = 0; pass < 16; ++pass) {
    bool changed = false;
    for (int i = 0; i < 3; ++i) {
      long double r = 0, c = 0;
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        r += fabsl(a(i, j));
        c += fabsl(a(j, i));
      }
      if (r == 0 || c == 0) continue;
      // Row i scales by 1/f and column i by f, so f = sqrt(r/c) equalizes.
      long double f = exp2l(roundl(log2l(sqrtl(r / c))));
      if (f != 1.0L && (r / f + c * f) < 0.95L * (r + c)) {
        for (int j = 0; j < 3; ++j) {
          a(i, j) /= f;
          a(j, i) *= f;
        }
        d[i] *= f;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return a;
}

// Closed-form seed for the real roots of x^3 + a x^2 + b x + c
// (trigonometric branch for three real roots, Cardano otherwise).
int cubic_seed(long double a, long double b, long double c, long double roots[3]) {
  long double q = (a * a - 3.0L * b) / 9.0L;
  long double r = (a * (2.0L * a * a - 9.0L * b) + 27.0L * c) / 54.0L;
  long double r2 = r * r, q3 = q * q * q;
  if (r2 < q3) {
    long double t = r / sqrtl(q3);
    t = std::min(1.0L, std::max(-1.0L, t));
    t = acosl(t);
    long double f = -2.0L * sqrtl(q);
    roots[0] = f * cosl(t / 3.0L) - a / 3.0L;
    roots[1] = f * cosl((t + 2.0L * M_PIl) / 3.0L) - a / 3.0L;
    roots[2] = f * cosl((t - 2.0L * M_PIl) / 3.0L) - a / 3.0L;
    return 3;
  }
  long double u3 = -r - copysignl(sqrtl(r2 - q3), r);
  long double u = cbrtl(u3);
  long double v = (u == 0.0L) ? 0.0L : q / u;
  roots[0] = (u + v) - a / 3.0L;
  return 1;
}

// Rightmost real root of the characteristic polynomial of a unit-scaled
// matrix: closed-form seed, then safeguarded Newton from the Cauchy bound
// (monotone for the largest root of a monic cubic).
long double top_char_root(const L3& A) {
  long double tr = A.trace();
  long double c1 = (tr * tr - A.mul(A).trace()) / 2.0L;
  long double a = -tr, b = c1, c = -A.det();

  long double roots[3];
  int n = cubic_seed(a, b, c, roots);
  long double seed = roots[0];
  for (int i = 1; i < n; ++i) seed = std::max(seed, roots[i]);
  long double hi = 1.0L + std::max(fabsl(a), std::max(fabsl(b), fabsl(c)));
  long double x = std::min(std::max(seed, -hi), hi);
  auto p = [&](long double t) { return ((t + a) * t + b) * t + c; };
  if (p(x) < 0) x = hi;  // restart above the largest root
  for (int it = 0; it < 120; ++it) {
    long double f = p(x);
    long double df = (3.0L * x + 2.0L * a) * x + b;
    if (df == 0.0L) break;
    long double step = f / df;
    x -= step;
    if (fabsl(step) <= 1e-19L * std::max(1.0L, fabsl(x))) break;
  }
  return x;
}

LVec3 null_vector_seed(const L3& S) {
  // Largest cross product of row pairs spans the 1-d null space.
  LVec3 best = S.row(0).cross(S.row(1));
  long double bn = best.norm();
  LVec3 c = S.row(1).cross(S.row(2));
  if (c.norm() > bn) {
    best = c;
    bn = c.norm();
  }
  c = S.row(0).cross(S.row(2));
  if (c.norm() > bn) {
    best = c;
    bn = c.norm();
  }
  return best;
}

LVec3 solve3(const L3& A, const LVec3& rhs) {
  // Gaussian elimination with partial pivoting on a stack copy.
  long double a[3][4] = {{A(0, 0), A(0, 1), A(0, 2), rhs.x},
                         {A(1, 0), A(1, 1), A(1, 2), rhs.y},
                         {A(2, 0), A(2, 1), A(2, 2), rhs.z}};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (fabsl(a[r][col]) > fabsl(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0L) return {0, 0, 0};
    if (piv != col)
      for (int k = 0; k < 4; ++k) std::swap(a[piv][k], a[col][k]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      long double f = a[r][col] / a[col][col];
      for (int k = col; k < 4; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

// Top eigenpair refinement: Rayleigh-quotient iteration from the char-poly
// seed. The char polynomial of a strongly non-normal matrix carries large
// cancellation noise, while RQI works on the matrix entries directly and
// converges to backward-stable accuracy in a few steps.
void top_eigen_rqi(const L3& A, long double seed, long double& lam, LVec3& v, LVec3& w) {
  L3 At = A.transpose();
  auto seed_vec = [&](const L3& m, long double sigma) {
    L3 S = m;
    for (int i = 0; i < 3; ++i) S(i, i) -= sigma;
    LVec3 x = null_vector_seed(S);
    long double n = x.norm();
    if (!(n > 1e-300L)) return LVec3{0.57735L, 0.57735L, 0.57735L};
    return LVec3{x.x / n, x.y / n, x.z / n};
  };
  v = seed_vec(A, seed);
  w = seed_vec(At, seed);

  // Two-sided Rayleigh-quotient iteration: cubically convergent even for
  // strongly non-normal matrices, where the one-sided quotient stalls.
  long double sigma = seed;
  for (int it = 0; it < 10; ++it) {
    long double bump = (it == 0) ? sigma * 1e-14L : 0.0L;
    L3 sa = A, st = At;
    for (int i = 0; i < 3; ++i) {
      sa(i, i) -= sigma + bump;
      st(i, i) -= sigma + bump;
    }
    LVec3 nv = solve3(sa, v);
    LVec3 nw = solve3(st, w);
    long double nn = nv.norm(), wn = nw.norm();
    if (!(nn > 0) || !(wn > 0) || !std::isfinite(double(nn)) || !std::isfinite(double(wn)))
      break;
    v = {nv.x / nn, nv.y / nn, nv.z / nn};
    w = {nw.x / wn, nw.y / wn, nw.z / wn};
    LVec3 av = A.apply(v);
    long double denom = w.x * v.x + w.y * v.y + w.z * v.z;
    if (fabsl(denom) < 1e-16L) break;
    long double next = (w.x * av.x + w.y * av.y + w.z * av.z) / denom;
    if (!std::isfinite(double(next))) break;
    bool done = fabsl(next - sigma) <= 1e-18L * fabsl(next);
    sigma = next;
    if (done) break;
  }

  LVec3 av = A.apply(v);
  long double denom = w.x * v.x + w.y * v.y + w.z * v.z;
  if (fabsl(denom) < 1e-14L)
    fail(errc::not_hyperbolic, "top eigenvalue too ill-conditioned");
  lam = (w.x * av.x + w.y * av.y + w.z * av.z) / denom;
  if (!std::isfinite(double(lam))) fail(errc::not_hyperbolic, "eigenvalue refinement failed");
  // Residual gate: relative to the eigenvalue (a strongly non-normal
  // matrix has |lambda| << ||A||, and garbage eigenvectors would slip
  // through a matrix-scale gate), with a floor at the conditioning limit
  // eps * ||A|| / |w.v| that an exact eigenpair cannot beat.
  long double gate = std::max(1e-8L * fabsl(lam), 2.5e-18L / fabsl(denom));
  LVec3 resid{av.x - lam * v.x, av.y - lam * v.y, av.z - lam * v.z};
  LVec3 wr = At.apply(w);
  LVec3 wresid{wr.x - lam * w.x, wr.y - lam * w.y, wr.z - lam * w.z};
  if (resid.norm() > gate || wresid.norm() > gate)
    fail(errc::not_hyperbolic, "eigenpair residual too large");
}

}  // namespace

namespace {

// Shared spectral core. N0 plays the role of an inverse of M0 up to a
// positive scalar: the adjugate for the single-matrix entry point, the
// exact product of generator inverses for the pair entry point.
void spectrum_core(const L3& M0, const L3& N0, double rel_gap, long double out[3],
                   HyperbolicSpectrum* vecs) {
  long double dM[3], dN[3];
  L3 Mb = balance(M0, dM);
  L3 Nb = balance(N0, dN);
  long double scale = Mb.max_abs();
  long double nscale = Nb.max_abs();
  if (scale <= 0 || nscale <= 0) fail(errc::degenerate_matrix, "zero matrix");
  L3 A = Mb.scaled(1.0L / scale);
  L3 B = Nb.scaled(1.0L / nscale);

  long double ra, rb;
  LVec3 v1, w1, v3, w3;
  top_eigen_rqi(A, top_char_root(A), ra, v1, w1);
  top_eigen_rqi(B, top_char_root(B), rb, v3, w3);
  if (!(ra > 0) || !(rb > 0)) fail(errc::not_hyperbolic, "eigenvalues not all positive");

  long double l1 = ra * scale;
  // N is an inverse of M up to positive scale, so its top eigenvalue
  // reciprocates lambda3; lambda2 follows from det = 1.
  long double l3 = 1.0L / (rb * nscale);
  long double l2 = 1.0L / (l1 * l3);
  if (!(l1 > 0) || !(l2 > 0) || !(l3 > 0) || !std::isfinite(double(l2)))
    fail(errc::not_hyperbolic, "eigenvalues not all positive");

  // A complex pair forces the top real roots of M and its inverse to be
  // reciprocal (l1 == l3), which cannot satisfy the ordering below; no
  // separate realness certificate is needed beyond these checks.
  if (!((l1 - l2) >= rel_gap * l1) || !((l2 - l3) >= rel_gap * l2))
    fail(errc::not_hyperbolic, "eigenvalue gap below threshold");

  // Loose trace consistency: entries beyond ~1e14 no longer encode the
  // spectrum at double precision, and the recovered triple then misses the
  // stored trace by O(1). Reject those instead of returning wrong lengths.
  long double tr_err = fabsl((l1 + l2 + l3) - M0.trace());
  long double tri_err = fabsl((1.0L / l1 + 1.0L / l2 + 1.0L / l3) - N0.trace());
  if (tr_err > 1e-2L * std::max(l1, fabsl(M0.trace())) ||
      tri_err > 1e-2L * std::max(1.0L / l3, fabsl(N0.trace())))
    fail(errc::not_hyperbolic, "entries too large to resolve the spectrum");

  out[0] = l1;
  out[1] = l2;
  out[2] = l3;
  if (!vecs) return;

  // Undo the balancing similarities: right vectors scale by D, left by 1/D.
  for (int i = 0; i < 3; ++i) {
    v1[i] *= dM[i];
    w1[i] /= dM[i];
    v3[i] *= dN[i];
    w3[i] /= dN[i];
  }
  // Neutral direction: orthogonal to the top left eigenvectors of M and
  // its inverse.
  LVec3 v2 = w1.cross(w3);
  if (v2.norm() < 1e-300L) fail(errc::not_hyperbolic, "neutral eigenvector collapsed");
  vecs->lambda1 = double(l1);
  vecs->lambda2 = double(l2);
  vecs->lambda3 = double(l3);
  vecs->fixed_attract = ProjPoint::from(Vec3{double(v1.x), double(v1.y), double(v1.z)});
  vecs->fixed_neutral = ProjPoint::from(Vec3{double(v2.x), double(v2.y), double(v2.z)});
  vecs->fixed_repel = ProjPoint::from(Vec3{double(v3.x), double(v3.y), double(v3.z)});
}

void check_finite(const Mat3& M) {
  if (!M.finite()) fail(errc::degenerate_matrix, "matrix has non-finite entries");
}

}  // namespace

HyperbolicSpectrum eigen_hyperbolic(const Mat3& M, double rel_gap) {
  check_finite(M);
  L3 m = L3::from(M);
  HyperbolicSpectrum s;
  long double l[3];
  spectrum_core(m, m.adjugate(), rel_gap, l, &s);
  return s;
}

HyperbolicSpectrum eigen_hyperbolic_pair(const Mat3& M, const Mat3& M_inv, double rel_gap) {
  check_finite(M);
  check_finite(M_inv);
  HyperbolicSpectrum s;
  long double l[3];
  spectrum_core(L3::from(M), L3::from(M_inv), rel_gap, l, &s);
  return s;
}

double hilbert_length_pair(const Mat3& M, const Mat3& M_inv) {
  check_finite(M);
  check_finite(M_inv);
  long double l[3];
  spectrum_core(L3::from(M), L3::from(M_inv), 1e-8, l, nullptr);
  return 0.5 * double(logl(l[0]) - logl(l[2]));
}

bool is_hyperbolic(const Mat3& M, double rel_gap) {
  try {
    eigen_hyperbolic(M, rel_gap);
    return true;
  } catch (const error&) {
    return false;
  }
}

double hilbert_length(const Mat3& M) {
  HyperbolicSpectrum s = eigen_hyperbolic(M);
  return 0.5 * std::log(s.lambda1 / s.lambda3);
}

double cross_ratio(const ProjPoint& p, const ProjPoint& x, const ProjPoint& y,
                   const ProjPoint& q, bool allow_coincident) {
  if (allow_coincident && x == y) return 1.0;

  Vec3 u = p.v / p.v.norm();
  Vec3 w = q.v / q.v.norm();
  Vec3 xs = x.v / x.v.norm();
  Vec3 ys = y.v / y.v.norm();

  auto coincident = [](const Vec3& a, const Vec3& b) { return a.cross(b).norm() < 1e-12; };
  if (coincident(u, w) || coincident(u, xs) || coincident(u, ys) || coincident(w, xs) ||
      coincident(w, ys) || coincident(xs, ys))
    fail(errc::coincident_points, "cross ratio of coincident points");

  Vec3 n = u.cross(w);
  double nn = n.dot(n);
  if (std::fabs(xs.dot(n)) > 1e-10 || std::fabs(ys.dot(n)) > 1e-10)
    fail(errc::not_collinear, "cross ratio of non-collinear points");

  // Decompose z = a*u + b*w; the parameter b/a sends p to 0 and q to inf,
  // making the cross ratio t_y / t_x.
  auto param = [&](const Vec3& z, double& a, double& b) {
    a = z.cross(w).dot(n) / nn;
    b = u.cross(z).dot(n) / nn;
  };
  double ax, bx, ay, by;
  param(xs, ax, bx);
  param(ys, ay, by);
  if (ax == 0.0 || ay == 0.0 || bx == 0.0)
    fail(errc::coincident_points, "cross ratio parameter degenerate");
  return (by / ay) / (bx / ax);
}

}  // namespace cvp
