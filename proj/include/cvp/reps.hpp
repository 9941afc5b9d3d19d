#pragma once
#include "cvp/representation.hpp"

namespace cvp {

// 2x2 real matrix helpers for the hyperbolic-plane constructions.
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 inverse() const;
  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
};

// Symmetric-square (adjoint) embedding SL(2,R) -> SL(3,R), conjugated into
// the frame where the invariant conic is x^2 + y^2 - z^2 = 0, so Fuchsian
// groups preserve the unit circle of the standard chart. An element with
// 2x2 eigenvalues mu, 1/mu maps to eigenvalues mu^2, 1, mu^-2; the Hilbert
// length of the image equals the hyperbolic translation length of g.
Mat3 embed_sym2(const Mat2& g);

// Invariant form of the embedded picture: J = diag(1, 1, -1).
Mat3 klein_conic_form();

struct PantsParams {
  double l1 = 2, l2 = 2, l3 = 2;
};

// Fuchsian pair of pants <a, b>: boundary holonomies a, b, (ab)^-1 carry
// Hilbert lengths l1, l2, l3. Built from the trace triple
// (-2cosh(l1/2), -2cosh(l2/2), -2cosh(l3/2)) realized in SL(2,R), then
// embedded. Free (no relators), no splitting.
Representation fuchsian_pants(const PantsParams& p);

// The underlying SL(2,R) pair of fuchsian_pants, exposed for cross-model
// oracles (the embedded Hilbert lengths equal the 2x2 translation lengths).
void fuchsian_pants_sl2(const PantsParams& p, Mat2& a, Mat2& b);

// Fuchsian once-punctured square torus <a, b>, tr[a,b] = -2 in the 2x2
// model, both generators of equal length.
Representation square_torus();

// Annotates a rank-2 base with the HNN splitting along gamma = a with
// stable letter b. Throws NotHyperbolic when a is not hyperbolic.
Representation punctured_torus_hnn(const Representation& base);

// Genus-2 surface group: a once-holed torus <a1, b1> with all side lengths
// 2 acosh(1 + sqrt 2) doubled across the axis of its boundary commutator by
// a half-turn E, so a2 = E a1 E^-1, b2 = E b1 E^-1 and the surface relator
// [a1,b1][a2,b2] evaluates to the identity by construction. Splitting:
// amalgam along gamma = [a1,b1].
Representation genus2_octagon();

// Double of a pair of pants across its third boundary curve: a four-holed
// sphere <a, b, c, d | abcd> with c = E a E^-1, d = E b E^-1 for the
// half-turn E about a point on the axis of ab. Splitting: amalgam along
// gamma = ab with left {a, b}, right {c, d}. This is the desk-scale
// separating-curve deformation seed.
Representation pants_amalgam_demo(const PantsParams& p);

// Free rank-2 representation from two hyperbolic maps, with a sampled
// interval ping-pong certificate on the boundary circle at the given depth.
// Throws PingPongFailed when the certificate cannot be established.
Representation schottky_pair(const Mat3& g1, const Mat3& g2, int depth = 4);

}  // namespace cvp
