#pragma once

#include "plateau/errors.hpp"

namespace plateau {

// base^e with an overflow guard at 2^62.
long long pow_ll(int base, int e);

// Quadratic character of -1 mod p: +1 when p = 1 mod 4, else -1.
int eta_neg1(int p);
int eta_neg1_pow(int p, int k);

// sqrt(p*)^e as an exact integer, where p* = eta_neg1(p) * p. Only even
// non-negative exponents are integral; OutOfRange on negative e,
// NonIntegerResult on odd e.
long long sqrt_pstar_int_pow(int p, int e);

// v / 2 with exactness enforced (NonIntegerResult).
long long exact_halve(long long v);

// v / d with exactness enforced, reporting the given error code.
long long exact_div(long long v, long long d, Err code);

// CompositeP unless p is an odd prime. Parameter-level closed forms take p
// directly, without a FieldCtx to vouch for it.
void require_odd_prime(int p);

}  // namespace plateau
