#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cvp/error.hpp"

namespace cvp {

// Unsigned arbitrary-precision integer on 32-bit limbs (little endian).
// Just the operations the counting calculus needs: add, multiply, exact
// small division, powers, comparison, logarithm, decimal output.
class BigUint {
public:
  BigUint() = default;
  explicit BigUint(std::uint64_t v);

  bool is_zero() const { return limbs_.empty(); }
  bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }
  bool operator<(const BigUint& o) const;
  bool operator<=(const BigUint& o) const { return *this < o || *this == o; }

  BigUint& operator+=(const BigUint& o);
  BigUint operator+(const BigUint& o) const;
  BigUint operator*(const BigUint& o) const;

  BigUint& mul_small(std::uint64_t f);
  // Exact division; throws ParameterRange if a remainder appears.
  BigUint& div_small_exact(std::uint64_t d);

  static BigUint pow(const BigUint& base, std::uint64_t e);

  std::uint64_t bit_length() const;
  // Natural log via the top 64 bits plus the binary exponent; relative
  // error ~1e-16. Log of zero is a ParameterRange error.
  double log_natural() const;

  std::uint64_t to_u64() const;  // throws if it does not fit
  std::string to_decimal() const;

private:
  void trim();
  std::vector<std::uint32_t> limbs_;
};

// Exact binomial coefficient C(n, k) by the multiplicative ladder.
BigUint binomial(std::uint64_t n, std::uint64_t k);

}  // namespace cvp
