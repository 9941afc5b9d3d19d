#pragma once
#include <array>
#include <cmath>
#include <cstddef>

#include "cvp/error.hpp"

namespace cvp {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double a) const { return {x * a, y * a, z * a}; }
  Vec3 operator/(double a) const { return {x / a, y / a, z / a}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  double max_abs() const { return std::fmax(std::fabs(x), std::fmax(std::fabs(y), std::fabs(z))); }
};

// Row-major real 3x3 matrix. Library convention: elements of SL(3,R) are
// Mat3 with determinant 1; normalize_det1 projects onto that slice.
struct Mat3 {
  std::array<double, 9> m{};

  double& operator()(int r, int c) { return m[size_t(3 * r + c)]; }
  double operator()(int r, int c) const { return m[size_t(3 * r + c)]; }

  static Mat3 identity() { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
  static Mat3 diag(double a, double b, double c) { return Mat3{{a, 0, 0, 0, b, 0, 0, 0, c}}; }
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return Mat3{{c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z}};
  }

  Vec3 row(int r) const { return {m[size_t(3 * r)], m[size_t(3 * r + 1)], m[size_t(3 * r + 2)]}; }
  Vec3 col(int c) const { return {m[size_t(c)], m[size_t(c + 3)], m[size_t(c + 6)]}; }

  Mat3 operator*(const Mat3& o) const;
  Vec3 operator*(const Vec3& v) const {
    return {row(0).dot(v), row(1).dot(v), row(2).dot(v)};
  }
  Mat3 operator*(double a) const;
  Mat3 operator+(const Mat3& o) const;
  Mat3 operator-(const Mat3& o) const;

  Mat3 transpose() const;
  double det() const;
  double trace() const { return m[0] + m[4] + m[8]; }
  // Transposed cofactor matrix: adj(M) * M = det(M) * I. For det-1 group
  // elements this IS the inverse, with no division by a computed (and at
  // large entry scales meaningless) determinant.
  Mat3 adjugate() const;
  // General inverse via adjugate / det; throws DegenerateMatrix when the
  // determinant vanishes. Only safe for moderately scaled matrices.
  Mat3 inverse() const;

  double max_abs() const;
  double frobenius() const;
  bool finite() const;
};

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
  double d = 0;
  for (int i = 0; i < 9; ++i) d = std::fmax(d, std::fabs(a.m[size_t(i)] - b.m[size_t(i)]));
  return d;
}

// Scales M so that det = 1. Requires det(M) > 0; callers with a negative
// determinant negate the matrix first (same projective map).
Mat3 normalize_det1(const Mat3& M);

// Point of RP^2 held in a canonical lift: the largest-magnitude coordinate
// equals +1, so equal points compare bitwise after normalization.
struct ProjPoint {
  Vec3 v;

  static ProjPoint from(const Vec3& raw);
  bool operator==(const ProjPoint& o) const { return v.x == o.v.x && v.y == o.v.y && v.z == o.v.z; }
};

// Spectrum of a positively hyperbolic element: three real eigenvalues
// lambda1 > lambda2 > lambda3 > 0 with their projective fixed points.
struct HyperbolicSpectrum {
  double lambda1 = 0, lambda2 = 0, lambda3 = 0;
  ProjPoint fixed_attract, fixed_neutral, fixed_repel;
};

// Solves the characteristic cubic in closed form (trigonometric branch),
// polishes the roots with Newton steps, and recovers eigenvectors by a
// cross-product seed plus one inverse-iteration step; the small eigenvalue
// comes from the adjugate, whose top eigenvalue it reciprocates.
// Throws NotHyperbolic unless the eigenvalues are real, positive and
// pairwise separated by a relative gap of at least `rel_gap`.
HyperbolicSpectrum eigen_hyperbolic(const Mat3& M, double rel_gap = 1e-8);

// Variant fed with the exact group inverse of M (a clean product of
// generator inverses). At entry scales beyond ~1e6 the inverse encoded in
// M's own entries drowns in rounding; the explicit product keeps the small
// eigenvalue and the repelling fixed point accurate.
HyperbolicSpectrum eigen_hyperbolic_pair(const Mat3& M, const Mat3& M_inv,
                                         double rel_gap = 1e-8);

// Translation length for the Hilbert metric: (1/2) log(lambda1/lambda3).
double hilbert_length(const Mat3& M);
double hilbert_length_pair(const Mat3& M, const Mat3& M_inv);

// Returns true when eigen_hyperbolic would succeed.
bool is_hyperbolic(const Mat3& M, double rel_gap = 1e-8);

// Cross ratio |p-y||q-x| / (|p-x||q-y|) of four collinear points, evaluated
// in a projective parametrization of the common line (p -> 0, q -> inf).
// For points ordered p, x, y, q the value exceeds 1.
// allow_coincident: bitwise-equal x == y returns 1 instead of erroring.
double cross_ratio(const ProjPoint& p, const ProjPoint& x, const ProjPoint& y,
                   const ProjPoint& q, bool allow_coincident = false);

}  // namespace cvp
