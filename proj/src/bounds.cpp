#include "cvp/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace cvp {

Rational Rational::from_double(double x, long long max_den) {
  if (!std::isfinite(x)) fail(errc::parameter_range, "rational from non-finite double");
  bool neg = x < 0;
  double ax = neg ? -x : x;
  // Continued-fraction convergents until the value is matched to ~1e-12.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = ax;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e17) break;
    long long a = (long long)fl;
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || p2 < 0 || q2 <= 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double err = std::fabs(double(p1) / double(q1) - ax);
    if (err <= 1e-12 * std::fmax(1.0, ax)) break;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) fail(errc::parameter_range, "cannot represent value as a small rational");
  double err = std::fabs(double(p1) / double(q1) - ax);
  if (err > 1e-9 * std::fmax(1.0, ax))
    fail(errc::parameter_range, "value is not close to a small rational");
  return Rational{neg ? -p1 : p1, q1};
}

long long floor_linear(const Rational& a, long long k, const Rational& b, const Rational& c) {
  if (c.num <= 0 || c.den <= 0) fail(errc::parameter_range, "floor_linear needs c > 0");
  // (a - k b) / c = (a.num b.den - k b.num a.den) c.den / (a.den b.den c.num)
  __int128 p = (__int128)a.num * b.den - (__int128)k * b.num * a.den;
  p *= c.den;
  __int128 q = (__int128)a.den * b.den * c.num;
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (p >= 0) return (long long)(p / q);
  return -(long long)(((-p) + q - 1) / q);
}

BigUint ordered_partitions(std::uint64_t m, std::uint64_t k) {
  if (m < 1) fail(errc::parameter_range, "ordered_partitions needs m >= 1");
  return binomial(m + k - 1, k);
}

namespace {

struct FloorData {
  long long m_max = 0;                // floor(T / Cr')
  std::vector<long long> k_of_m;      // K_m = floor((T - m Cr') / L), 1-based
};

FloorData floors_for(double T, const BoundParams& p) {
  if (!(p.g >= 2)) fail(errc::parameter_range, "genus must be >= 2");
  if (!(p.cr > 0) || !(p.l > 0) || !(p.s_extra >= 0))
    fail(errc::parameter_range, "bound parameters out of range");
  Rational rT = Rational::from_double(T);
  Rational rCr = Rational::from_double(p.cr + p.s_extra);
  Rational rL = Rational::from_double(p.l);
  FloorData fd;
  fd.m_max = floor_linear(rT, 0, rCr, rCr);  // floor(T / Cr')
  if (fd.m_max < 0) fd.m_max = 0;
  fd.k_of_m.assign(size_t(fd.m_max) + 1, 0);
  for (long long m = 1; m <= fd.m_max; ++m) fd.k_of_m[size_t(m)] = floor_linear(rT, m, rCr, rL);
  return fd;
}

// C(m + K, min(m, K)) computed fresh.
BigUint hockey_stick(std::uint64_t m, std::uint64_t K) { return binomial(m + K, std::min(m, K)); }

}  // namespace

BigUint f_bound(std::uint64_t m, double T, const BoundParams& p) {
  if (m < 1) fail(errc::parameter_range, "f_bound needs m >= 1");
  FloorData fd = floors_for(T, p);
  if ((long long)m > fd.m_max) fail(errc::infeasible_m, "m Cr exceeds T");
  // sum_{k=0}^{K} C(m+k-1, k) telescopes to C(m+K, K).
  return hockey_stick(m, std::uint64_t(fd.k_of_m[size_t(m)]));
}

namespace {

// Incremental update C(m+1 + K', m+1) from C(m + K, m) with K' = K - r.
void advance_binomial(BigUint& c, std::uint64_t m, std::uint64_t K, std::uint64_t r) {
  if (r == 0) {
    c.mul_small(m + K + 1);
    c.div_small_exact(m + 1);
    return;
  }
  for (std::uint64_t j = 0; j < r; ++j) c.mul_small(K - j);
  c.div_small_exact(m + 1);
  for (std::uint64_t j = 0; j + 2 <= r; ++j) c.div_small_exact(m + K - j);
}

BigUint count_bound_impl(double T, const BoundParams& p, BoundDebug* dbg) {
  FloorData fd = floors_for(T, p);
  if (fd.m_max < 1) return BigUint();

  BigUint sum;
  BigUint cur;
  bool have_cur = false;
  long long prev_k = 0;
  BigUint best;
  std::uint64_t best_m = 0;
  for (long long m = 1; m <= fd.m_max; ++m) {
    long long K = fd.k_of_m[size_t(m)];
    if (have_cur) {
      long long r = prev_k - K;
      std::uint64_t fresh_cost = std::uint64_t(std::min<long long>(m, K));
      if (r >= 0 && std::uint64_t(2 * r + 2) < fresh_cost) {
        advance_binomial(cur, std::uint64_t(m - 1), std::uint64_t(prev_k), std::uint64_t(r));
      } else {
        cur = hockey_stick(std::uint64_t(m), std::uint64_t(K));
      }
    } else {
      cur = hockey_stick(std::uint64_t(m), std::uint64_t(K));
      have_cur = true;
    }
    prev_k = K;
    sum += cur;
    if (dbg && best < cur) {
      best = cur;
      best_m = std::uint64_t(m);
    }
  }
  if (dbg) {
    dbg->m_star = best_m;
    dbg->q_star = best_m > 0 ? std::uint64_t(fd.k_of_m[size_t(best_m)]) : 0;
  }

  std::uint64_t base = std::uint64_t(432 * p.g - 432);
  return BigUint::pow(BigUint(base), std::uint64_t(fd.m_max)) * sum;
}

}  // namespace

BigUint count_bound(double T, const BoundParams& p) { return count_bound_impl(T, p, nullptr); }

double entropy_bound(const BoundParams& p, const std::vector<double>& T_grid, BoundDebug* dbg,
                     double settle) {
  if (T_grid.size() < 3) fail(errc::parameter_range, "entropy_bound needs >= 3 grid points");
  for (size_t i = 1; i < T_grid.size(); ++i)
    if (!(T_grid[i] > T_grid[i - 1])) fail(errc::parameter_range, "T grid must increase");

  std::vector<double> v;
  for (size_t i = 0; i < T_grid.size(); ++i) {
    BoundDebug* d = (dbg && i + 1 == T_grid.size()) ? dbg : nullptr;
    BigUint cb = count_bound_impl(T_grid[i], p, d);
    if (cb.is_zero()) fail(errc::parameter_range, "grid point does not exceed Cr");
    v.push_back(cb.log_natural() / T_grid[i]);
  }

  size_t n = v.size();
  if (std::fabs(v[n - 1] - v[n - 2]) >= settle || std::fabs(v[n - 2] - v[n - 3]) >= settle)
    fail(errc::not_converged, "bound sequence not settled on this grid");

  // Solve v = h + a log(T)/T + c/T on the last three points (the finite-size
  // corrections of the max-term estimate), and return h.
  long double A[3][4];
  for (int i = 0; i < 3; ++i) {
    double T = T_grid[n - 3 + size_t(i)];
    A[i][0] = 1.0L;
    A[i][1] = (long double)(std::log(T) / T);
    A[i][2] = (long double)(1.0 / T);
    A[i][3] = (long double)v[n - 3 + size_t(i)];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs((double)A[r][col]) > std::fabs((double)A[piv][col])) piv = r;
    for (int k = 0; k < 4; ++k) std::swap(A[piv][k], A[col][k]);
    if (A[col][col] == 0.0L) fail(errc::not_converged, "degenerate extrapolation system");
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      long double f = A[r][col] / A[col][col];
      for (int k = col; k < 4; ++k) A[r][k] -= f * A[col][k];
    }
  }
  return double(A[0][3] / A[0][0]);
}

}  // namespace cvp
