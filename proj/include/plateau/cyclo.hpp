#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plateau/errors.hpp"

namespace plateau {

// Exact element of Z[zeta_p] on the reduced power basis {zeta^0..zeta^{p-2}},
// with zeta^{p-1} rewritten eagerly as -(1 + zeta + ... + zeta^{p-2}).
// Canonical: equal ring elements have identical coefficient vectors.
struct CycloInt {
  int p = 0;
  std::vector<long long> coeffs;  // length p-1

  CycloInt() = default;
  explicit CycloInt(int prime) : p(prime), coeffs(static_cast<std::size_t>(prime - 1), 0) {}

  static CycloInt rational(int p, long long r);
  static CycloInt zeta_pow(int p, long long e);

  bool is_zero() const;
  bool operator==(const CycloInt& o) const { return p == o.p && coeffs == o.coeffs; }
  bool operator!=(const CycloInt& o) const { return !(*this == o); }

  // Debug form "[c0,c1,...]".
  std::string str() const;
};

CycloInt cy_add(const CycloInt& a, const CycloInt& b);
CycloInt cy_sub(const CycloInt& a, const CycloInt& b);
CycloInt cy_neg(const CycloInt& a);
CycloInt cy_mul(const CycloInt& a, const CycloInt& b);
CycloInt cy_conj(const CycloInt& a);  // zeta -> zeta^{-1}

// a * conj(a); for Walsh values this is the rational integer |W|^2.
CycloInt norm_sq(const CycloInt& a);

// Returns r when a = r * zeta^0 in canonical form, otherwise nullopt.
std::optional<long long> as_rational_int(const CycloInt& a);

struct GaussSum {
  int p = 0;
  CycloInt value;  // sum over x in F_p^* of eta0(x) * zeta^x
};

GaussSum gauss_sum(int p);

// gauss_sum(p)^e; for even e this collapses to the rational (p*)^(e/2).
CycloInt sqrt_pstar_pow(int p, int e);

// Guard used before Walsh computations: coefficients stay below p^{m+s},
// which must fit in 62 bits for exact signed arithmetic.
void check_magnitude_guard(int p, int m_plus_s);

}  // namespace plateau
