#pragma once
#include <vector>

#include "cvp/representation.hpp"

namespace cvp {

// Eigenbasis of the splitting curve's holonomy: columns of `basis` are the
// attracting, neutral, repelling eigenvectors (descending eigenvalues),
// scaled so det(basis) = 1, which pins the frame bit-reproducibly.
struct BulgeFrame {
  Mat3 basis;
  Mat3 basis_inv;
  HyperbolicSpectrum spectrum;
};

// Frame of evaluate(rep, gamma); diagonalization residual below 1e-8.
BulgeFrame bulge_frame(const Representation& rep, const Word& gamma);

// Bulging one-parameter family diag(e^{-s/3}, e^{2s/3}, e^{-s/3}) conjugated
// into the frame. Commutes with the curve holonomy.
Mat3 o_s(const BulgeFrame& frame, double s);

// Earthquake family diag(e^t, 1, e^{-t}) conjugated into the frame.
Mat3 tau_t(const BulgeFrame& frame, double t);

// Which side of the splitting moves. Bulging the right side and debulging
// the left by the inverse are projectively equivalent views (the two
// representations are conjugate by tau_t o_s).
enum class DeformSide { right, left };

// Deformed representation rho_{t,s}: amalgam splittings conjugate the
// right-hand generators by tau_t o_s, HNN splittings left-multiply the
// stable letter. With DeformSide::left the left generators are conjugated
// by the inverse instead (HNN: the stable letter is right-multiplied).
// All products are evaluated in-frame (diagonal sandwich on in-frame
// entries) so large s never cancels catastrophically; |t|, |s| are capped
// at 25 by default.
Representation deform(const Representation& rep, double t, double s, double cap = 25.0,
                      DeformSide side = DeformSide::right);

struct TraceProbeRow {
  double s = 0;
  double trace = 0;
  double length = 0;
};

struct TraceProbe {
  std::vector<TraceProbeRow> rows;
  // Least-squares rate of log|trace| vs s over the top half of the grid.
  double fitted_rate = 0;
};

// Evaluates rho_s(alpha * beta) over the s grid (amalgam: alpha on the left
// side, beta on the right; HNN: the concatenation contains the stable
// letter), reporting trace, Hilbert length and the exponential trace rate.
TraceProbe trace_probe(const Representation& rep, const Word& alpha, const Word& beta,
                       const std::vector<double>& s_grid, double t = 0.0);

}  // namespace cvp
