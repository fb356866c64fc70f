#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plateau/errors.hpp"

namespace plateau {

// Field elements are encoded as integers in [0, p^m): the element
// sum_i d_i * x^i (mod the field polynomial) is stored as sum_i d_i * p^i.
using ffelem = std::int32_t;

// Quadratic character of the prime field F_p (odd p).
struct QuadChar {
  int p = 0;
  std::vector<int> table;  // table[a] = eta0(a) for a in [0, p); eta0(0) = 0

  int eta0(long long a) const {
    long long r = a % p;
    if (r < 0) r += p;
    return table[static_cast<std::size_t>(r)];
  }
  bool is_square(long long a) const { return eta0(a) == 1; }
  // p* = eta0(-1) * p, so that the Gauss sum G satisfies G^2 = p*.
  long long p_star() const { return static_cast<long long>(table[p - 1]) * p; }
};

QuadChar quad_char(int p);

// Immutable context for F_{p^m} with dense operation tables.
struct FieldCtx {
  int p = 0;
  int m = 0;
  long long q = 0;               // p^m
  std::vector<int> modulus;      // c0..cm of the monic field polynomial (cm = 1)
  ffelem generator = 0;          // smallest multiplicative generator
  QuadChar chi;                  // quadratic character of F_p

  std::vector<int> trace_table;        // q entries in [0, p)
  std::vector<ffelem> mul_table;       // flat q*q, index a*q + b
  std::vector<ffelem> inv_table;       // q entries; inv_table[0] = 0 (unused)
  std::vector<ffelem> frob_table;      // x -> x^p
  std::vector<std::int8_t> trace_mul;  // flat q*q, trace_mul[a*q+b] = Tr(a*b)
  std::vector<long long> pow_p;        // p^0 .. p^m

  void digits(ffelem a, int* out) const;  // out must hold m ints
  ffelem undigits(const int* d) const;
};

// Largest field for which dense q*q tables are built. Larger requests fail
// with TooLarge rather than degrading to slow on-demand arithmetic.
inline constexpr long long kMaxFieldSize = 2187;

FieldCtx build_field(int p, int m);
FieldCtx build_field(int p, int m, const std::vector<int>& modulus);

// Parses "p=<int>,m=<int>[,mod=<c0,c1,...,cm>]".
FieldCtx parse_field_spec(const std::string& spec);
std::string field_spec_string(const FieldCtx& F);

ffelem ff_add(const FieldCtx& F, ffelem a, ffelem b);
ffelem ff_sub(const FieldCtx& F, ffelem a, ffelem b);
ffelem ff_neg(const FieldCtx& F, ffelem a);

inline ffelem ff_mul(const FieldCtx& F, ffelem a, ffelem b) {
  return F.mul_table[static_cast<std::size_t>(a) * F.q + b];
}

ffelem ff_inv(const FieldCtx& F, ffelem a);
ffelem ff_pow(const FieldCtx& F, ffelem a, long long e);

inline int trace(const FieldCtx& F, ffelem a) { return F.trace_table[a]; }

// Embeds the residue c mod p as a constant field element.
ffelem ff_scalar(const FieldCtx& F, long long c);

bool poly_is_irreducible(int p, const std::vector<int>& low_coeffs);

// Lexicographically smallest monic irreducible of degree m, comparing
// coefficient tuples (c0, c1, ..., c_{m-1}) low-degree-first.
// Returns the m low coefficients; the leading coefficient is 1.
std::vector<int> smallest_irreducible(int p, int m);

}  // namespace plateau
