#pragma once
#include <cstdint>
#include <vector>

#include "cvp/bigint.hpp"

namespace cvp {

// Exact rational p/q used for the floor computations, so T = m*Cr style
// boundaries never suffer an off-by-one. Built from doubles by snapping to
// the nearest small-denominator rational (continued fractions).
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational from_double(double x, long long max_den = 1000000);
  double value() const { return double(num) / double(den); }
};

// floor((a - k*b) / c) for rationals a, b, c and integer k >= 0.
long long floor_linear(const Rational& a, long long k, const Rational& b, const Rational& c);

struct BoundParams {
  long long g = 2;       // genus, >= 2
  double cr = 1.0;       // minimum crossing-segment length Cr_s > 0
  double l = 1.0;        // minimum pants-curve length L > 0
  double s_extra = 0.0;  // per-crossing cylinder addend (the s*i(eta,gamma) term)
};

// Number of ordered partitions of k into m non-negative parts: C(m+k-1, k).
BigUint ordered_partitions(std::uint64_t m, std::uint64_t k);

// f(m, T) = sum_{k=0}^{floor((T - m Cr')/L)} C(m+k-1, k), where Cr' is the
// crossing cost Cr + s_extra. Evaluated through the hockey-stick identity
// sum = C(m + K, K); a brute-force oracle checks the two agree.
// Throws InfeasibleM when m Cr' > T.
BigUint f_bound(std::uint64_t m, double T, const BoundParams& p);

// (432 g - 432)^{floor(T/Cr')} * sum_{m=1}^{floor(T/Cr')} f(m, T), exact.
BigUint count_bound(double T, const BoundParams& p);

struct BoundDebug {
  std::uint64_t m_star = 0;  // argmax_m f(m, T) at the largest grid T
  std::uint64_t q_star = 0;  // k range top for that m
};

// Extrapolated limit of (1/T) log count_bound(T) over an increasing grid:
// the last three points are solved against h + a log(T)/T + c/T. Throws
// NotConverged unless the successive raw differences settle below `settle`.
double entropy_bound(const BoundParams& p, const std::vector<double>& T_grid,
                     BoundDebug* dbg = nullptr, double settle = 1e-4);

}  // namespace cvp
