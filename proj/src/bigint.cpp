#include "plateau/bigint.hpp"

#include <algorithm>
#include <climits>

namespace plateau {

namespace {
constexpr std::uint64_t kLimbBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
  neg_ = v < 0;
  // Two's-complement-safe magnitude, LLONG_MIN included.
  std::uint64_t mag = neg_ ? 0ull - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
  while (mag != 0) {
    mag_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
    mag >>= 32;
  }
  if (mag_.empty()) neg_ = false;
}

BigInt BigInt::pow(long long base, int exp) {
  require(exp >= 0, Err::BadEntry, "negative exponent");
  BigInt r(1);
  BigInt b(base);
  for (int i = 0; i < exp; ++i) r = r * b;
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(std::max(a.size(), b.size()) + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t cur = carry;
    if (i < a.size()) cur += a[i];
    if (i < b.size()) cur += b[i];
    out[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
    carry = cur >> 32;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(a.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow;
    if (i < b.size()) cur -= b[i];
    if (cur < 0) {
      cur += static_cast<std::int64_t>(kLimbBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out[i] = static_cast<std::uint32_t>(cur);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.mag_.empty()) r.neg_ = !r.neg_;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  BigInt r;
  if (neg_ == o.neg_) {
    r.neg_ = neg_;
    r.mag_ = add_mag(mag_, o.mag_);
  } else {
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.neg_ = neg_;
      r.mag_ = sub_mag(mag_, o.mag_);
    } else {
      r.neg_ = o.neg_;
      r.mag_ = sub_mag(o.mag_, mag_);
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt& BigInt::operator+=(const BigInt& o) {
  *this = *this + o;
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) {
  *this = *this - o;
  return *this;
}

BigInt BigInt::operator*(const BigInt& o) const {
  if (mag_.empty() || o.mag_.empty()) return BigInt();
  BigInt r;
  r.neg_ = neg_ != o.neg_;
  r.mag_.assign(mag_.size() + o.mag_.size(), 0);
  for (std::size_t i = 0; i < mag_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.mag_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(mag_[i]) * o.mag_[j] + r.mag_[i + j] + carry;
      r.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    r.mag_[i + o.mag_.size()] = static_cast<std::uint32_t>(carry);
  }
  r.trim();
  return r;
}

bool BigInt::operator<(const BigInt& o) const {
  if (neg_ != o.neg_) return neg_;
  int c = cmp_mag(mag_, o.mag_);
  return neg_ ? c > 0 : c < 0;
}

BigInt BigInt::div_exact(std::uint32_t divisor, Err code) const {
  require(divisor != 0, Err::DivisionByZero, "division by zero");
  BigInt r;
  r.neg_ = neg_;
  r.mag_.assign(mag_.size(), 0);
  std::uint64_t rem = 0;
  for (std::size_t i = mag_.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | mag_[i];
    r.mag_[i] = static_cast<std::uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  require(rem == 0, code, "inexact division by " + std::to_string(divisor));
  r.trim();
  return r;
}

std::string BigInt::str() const {
  if (mag_.empty()) return "0";
  std::vector<std::uint32_t> work = mag_;
  std::string digits;
  while (!work.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = work.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | work[i];
      work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!work.empty() && work.back() == 0) work.pop_back();
    for (int i = 0; i < 9; ++i) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (neg_) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

long long BigInt::to_ll() const {
  require(mag_.size() <= 2, Err::OverflowGuard, "value exceeds 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = mag_.size(); i-- > 0;) v = (v << 32) | mag_[i];
  std::uint64_t limit = static_cast<std::uint64_t>(LLONG_MAX) + (neg_ ? 1u : 0u);
  require(v <= limit, Err::OverflowGuard, "value exceeds long long range");
  if (!neg_) return static_cast<long long>(v);
  return v == 0 ? 0 : -static_cast<long long>(v - 1) - 1;
}

}  // namespace plateau
