#pragma once
#include <cstdint>
#include <limits>
#include <vector>

#include "cvp/bulge.hpp"
#include "cvp/domain.hpp"
#include "cvp/representation.hpp"

namespace cvp {

struct CensusEntry {
  Word word;        // class representative (free) or shortest element word
  double length;    // Hilbert length
};

struct Census {
  std::vector<CensusEntry> entries;  // sorted ascending by length
  int max_word_len = 0;
  bool oriented = true;
  int skipped_non_hyperbolic = 0;
  // Completeness horizon: smallest length carried by a class rep at the
  // word cap (class censuses only). Counting above it misses longer words.
  // Element censuses (relator path) are ball-regulated at every T and
  // carry +inf here.
  double t_complete = std::numeric_limits<double>::infinity();
};

// Closed-geodesic census. Free representations (no relators) enumerate
// conjugacy classes; representations with relators fall back to distinct
// group elements from the orbit ball, a Poincare-series style count.
Census census(const Representation& rep, int max_word_len, bool oriented = true,
              std::uint64_t budget = 100000000ull);

// N(T) = number of census entries with length <= T (binary search).
std::uint64_t counting_function(const Census& c, double T);

struct EntropyEstimate {
  double h = 0;
  double t_min = 0, t_max = 0;  // fit window
  double r_squared = 0;
  double stderr_h = 0;
  int n_points = 0;
};

// Least-squares slope of log N(T) over T for the top `window_fraction` of
// the observed length range, excluding the final 10% (word-length capped
// counts are biased low there). The window top is additionally capped at
// the completeness horizon - the smallest length carried by a word at the
// cap - since above it N(T) silently misses longer words and the slope
// deflates. Needs >= 10 distinct lengths in the window.
EntropyEstimate fit_entropy(const Census& c, double window_fraction);

// Same fit applied to a raw list of lengths (used by orbit counting);
// `t_complete` is the caller's completeness horizon, +inf if none.
EntropyEstimate fit_entropy_from_lengths(std::vector<double> lengths, double window_fraction,
                                         double t_complete =
                                             std::numeric_limits<double>::infinity());

// Critical-exponent estimator: slope of log #{g : d(o, g o) <= R} with the
// Hilbert distance of `dom`. Orbit points that leave the polygonal inner
// approximation are counted into `skipped` and dropped from the fit.
EntropyEstimate orbit_exponent(const Representation& rep, const ConvexDomain& dom,
                               const Vec2& basepoint, int radius, double window_fraction,
                               std::uint64_t budget = 100000000ull, int* skipped = nullptr);

struct SweepConfig {
  double t = 0.0;
  std::vector<double> s_grid;
  int census_len = 8;          // orbit radius for the census estimator
  int orbit_radius = 7;        // orbit radius for the critical-exponent estimator
  int hull_depth = 5;
  double window_fraction = 0.6;
  std::uint64_t budget = 100000000ull;
  Word probe_alpha, probe_beta;  // trace probe word (defaults from splitting)
  DeformSide side = DeformSide::right;
};

struct SweepRow {
  double s = 0, t = 0;
  double h_census = 0, h_census_stderr = 0;
  double h_orbit = 0, h_orbit_stderr = 0;
  double trace_ab = 0, length_ab = 0;
  double hausdorff_drift = 0;
};

// Per-s entropy estimates with both estimators, trace probe columns and the
// Hausdorff drift of the base-pointed window of the domain hull.
std::vector<SweepRow> sweep(const Representation& rep, const SweepConfig& cfg);

}  // namespace cvp
