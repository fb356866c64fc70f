#include "plateau/arith.hpp"

#include <string>

namespace plateau {

long long pow_ll(int base, int e) {
  require(base > 0 && e >= 0, Err::OutOfRange,
          "pow_ll needs a positive base and non-negative exponent");
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    require(r <= (1LL << 62) / base, Err::OverflowGuard,
            std::to_string(base) + "^" + std::to_string(e) + " exceeds the integer guard");
    r *= base;
  }
  return r;
}

int eta_neg1(int p) { return p % 4 == 1 ? 1 : -1; }

int eta_neg1_pow(int p, int k) { return k % 2 == 0 ? 1 : eta_neg1(p); }

long long sqrt_pstar_int_pow(int p, int e) {
  require(e >= 0, Err::OutOfRange,
          "Gauss-sum exponent " + std::to_string(e) + " is negative; parameters out of range");
  require(e % 2 == 0, Err::NonIntegerResult,
          "sqrt(p*)^" + std::to_string(e) + " is irrational");
  long long r = 1;
  for (int i = 0; i < e / 2; ++i) {
    require(r <= (1LL << 62) / p && r >= -((1LL << 62) / p), Err::OverflowGuard,
            "sqrt(p*) power exceeds the integer guard");
    r *= static_cast<long long>(eta_neg1(p)) * p;
  }
  return r;
}

long long exact_halve(long long v) {
  require(v % 2 == 0, Err::NonIntegerResult,
          "closed form produced the odd numerator " + std::to_string(v));
  return v / 2;
}

long long exact_div(long long v, long long d, Err code) {
  require(d != 0, Err::DivisionByZero, "exact_div by zero");
  require(v % d == 0, code,
          std::to_string(v) + " is not divisible by " + std::to_string(d));
  return v / d;
}

void require_odd_prime(int p) {
  bool ok = p >= 3 && p % 2 == 1;
  for (int r = 3; ok && static_cast<long long>(r) * r <= p; r += 2) {
    if (p % r == 0) ok = false;
  }
  require(ok, Err::CompositeP, "p = " + std::to_string(p) + " is not an odd prime");
}

}  // namespace plateau
