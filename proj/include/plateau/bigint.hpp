#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plateau/errors.hpp"

namespace plateau {

// Signed arbitrary-precision integer over a base 2^32 little-endian
// magnitude. Scope is deliberately small: the exact additions,
// multiplications and small exact divisions that the dual-enumerator
// transform needs once coefficients outgrow 64 bits.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);

  // base^exp by repeated multiplication; exp must be non-negative.
  static BigInt pow(long long base, int exp);

  bool is_zero() const { return mag_.empty(); }
  // -1, 0 or +1.
  int sign() const { return mag_.empty() ? 0 : (neg_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt& operator+=(const BigInt& o);
  BigInt& operator-=(const BigInt& o);

  bool operator==(const BigInt& o) const { return neg_ == o.neg_ && mag_ == o.mag_; }
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;

  // Quotient by a small positive divisor; throws `code` when the division
  // leaves a remainder.
  BigInt div_exact(std::uint32_t divisor, Err code) const;

  // Decimal representation, e.g. "-1267650600228229401496703205376".
  std::string str() const;

  // Narrowing back to long long; OverflowGuard when out of range.
  long long to_ll() const;

 private:
  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // Requires a >= b.
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  void trim();

  bool neg_ = false;
  std::vector<std::uint32_t> mag_;  // no leading zero limbs; empty means zero
};

}  // namespace plateau
