#include "cvp/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cvp {

BigUint::BigUint(std::uint64_t v) {
  while (v) {
    limbs_.push_back(std::uint32_t(v & 0xFFFFFFFFu));
    v >>= 32;
  }
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

bool BigUint::operator<(const BigUint& o) const {
  if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size();
  for (size_t i = limbs_.size(); i-- > 0;)
    if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i];
  return false;
}

BigUint& BigUint::operator+=(const BigUint& o) {
  size_t n = std::max(limbs_.size(), o.limbs_.size());
  limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (size_t i = 0; i < n; ++i) {
    std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
    limbs_[i] = std::uint32_t(s & 0xFFFFFFFFu);
    carry = s >> 32;
  }
  if (carry) limbs_.push_back(std::uint32_t(carry));
  return *this;
}

BigUint BigUint::operator+(const BigUint& o) const {
  BigUint r = *this;
  r += o;
  return r;
}

BigUint BigUint::operator*(const BigUint& o) const {
  if (is_zero() || o.is_zero()) return BigUint();
  BigUint r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    std::uint64_t a = limbs_[i];
    for (size_t j = 0; j < o.limbs_.size(); ++j) {
      std::uint64_t cur = r.limbs_[i + j] + a * o.limbs_[j] + carry;
      r.limbs_[i + j] = std::uint32_t(cur & 0xFFFFFFFFu);
      carry = cur >> 32;
    }
    size_t k = i + o.limbs_.size();
    while (carry) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = std::uint32_t(cur & 0xFFFFFFFFu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigUint& BigUint::mul_small(std::uint64_t f) {
  if (f == 0 || is_zero()) {
    limbs_.clear();
    return *this;
  }
  // Split the factor so per-limb products fit in 64 bits.
  if (f >> 32) {
    BigUint hi = *this;
    hi.mul_small(f >> 32);
    mul_small(f & 0xFFFFFFFFu);
    hi.limbs_.insert(hi.limbs_.begin(), 0);  // shift by one limb
    *this += hi;
    return *this;
  }
  std::uint64_t carry = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t cur = std::uint64_t(limbs_[i]) * f + carry;
    limbs_[i] = std::uint32_t(cur & 0xFFFFFFFFu);
    carry = cur >> 32;
  }
  while (carry) {
    limbs_.push_back(std::uint32_t(carry & 0xFFFFFFFFu));
    carry >>= 32;
  }
  return *this;
}

BigUint& BigUint::div_small_exact(std::uint64_t d) {
  if (d == 0) fail(errc::parameter_range, "division by zero");
  if (d >> 32) fail(errc::parameter_range, "divisor exceeds 32 bits");
  std::uint64_t rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | limbs_[i];
    limbs_[i] = std::uint32_t(cur / d);
    rem = cur % d;
  }
  if (rem != 0) fail(errc::parameter_range, "inexact small division");
  trim();
  return *this;
}

BigUint BigUint::pow(const BigUint& base, std::uint64_t e) {
  BigUint r(1);
  BigUint b = base;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::uint64_t BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  std::uint64_t top = limbs_.back();
  std::uint64_t bits = 0;
  while (top) {
    top >>= 1;
    ++bits;
  }
  return bits + 32 * (limbs_.size() - 1);
}

double BigUint::log_natural() const {
  if (is_zero()) fail(errc::parameter_range, "log of zero");
  std::uint64_t bits = bit_length();
  if (bits <= 64) return std::log(double(to_u64()));
  // Mantissa: the top 64 bits as an integer, exponent the rest.
  std::uint64_t shift = bits - 64;
  std::uint64_t mant = 0;
  for (int b = 63; b >= 0; --b) {
    std::uint64_t pos = shift + std::uint64_t(b);
    std::uint64_t limb = pos / 32, off = pos % 32;
    std::uint64_t bit = (limbs_[limb] >> off) & 1u;
    mant |= bit << b;
  }
  return std::log(double(mant)) + double(shift) * std::log(2.0);
}

std::uint64_t BigUint::to_u64() const {
  if (limbs_.size() > 2) fail(errc::parameter_range, "value exceeds 64 bits");
  std::uint64_t v = 0;
  for (size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
  return v;
}

std::string BigUint::to_decimal() const {
  if (is_zero()) return "0";
  std::vector<std::uint32_t> work = limbs_;
  std::string out;
  while (!work.empty()) {
    // Divide by 10^9, emit 9 digits.
    std::uint64_t rem = 0;
    for (size_t i = work.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | work[i];
      work[i] = std::uint32_t(cur / 1000000000ull);
      rem = cur % 1000000000ull;
    }
    while (!work.empty() && work.back() == 0) work.pop_back();
    char buf[16];
    if (work.empty())
      std::snprintf(buf, sizeof buf, "%llu", (unsigned long long)rem);
    else
      std::snprintf(buf, sizeof buf, "%09llu", (unsigned long long)rem);
    out.insert(0, buf);
  }
  return out;
}

BigUint binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return BigUint();
  if (k > n - k) k = n - k;
  BigUint r(1);
  for (std::uint64_t i = 1; i <= k; ++i) {
    r.mul_small(n - k + i);
    r.div_small_exact(i);
  }
  return r;
}

}  // namespace cvp
