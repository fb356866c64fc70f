#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plateau/field.hpp"

namespace plateau {

// Quadratic form Q(x) = sum_i Tr(a_i * x^{p^i + 1}) with i = 0..floor(m/2).
struct QuadraticForm {
  std::vector<ffelem> coeffs;
};

// Total map F_{p^m} -> F_p as a dense value table. The FieldCtx must outlive
// the function object.
struct PFunction {
  const FieldCtx* ctx = nullptr;
  std::vector<std::int8_t> values;  // length q, entries in [0, p)
  std::optional<QuadraticForm> provenance;

  int operator()(ffelem x) const { return values[static_cast<std::size_t>(x)]; }
  long long domain_size() const { return ctx->q; }
};

struct WrpbCertificate {
  bool balanced = false;
  bool f_of_zero_is_zero = false;
  // Smallest even t with gcd(t-1, p-1) = 1 and f(ax) = a^t f(x) for all
  // a in F_p^*, x in F_{p^m}; searched over even t in [2, 2(p-1)].
  std::optional<int> homogeneity_exponent_t;
  bool holds = false;
};

PFunction from_table(const FieldCtx& F, const std::vector<int>& values);
PFunction quadratic(const FieldCtx& F, const std::vector<ffelem>& coeffs);

// Zeros of L(z) = sum_i (a_i z^{p^i} + a_i^{p^{m-i}} z^{p^{m-i}}), an
// F_p-subspace whose dimension is the plateau order s of the quadratic.
std::vector<ffelem> linearized_kernel(const PFunction& f);
int linearized_kernel_dim(const PFunction& f);

// Same dimension straight from the coefficients: rank of L on the power
// basis instead of a scan over the field. This is the cheap pre-filter for
// candidate sweeps, which must not pay for a full value table per reject.
int linearized_kernel_dim(const FieldCtx& F, const std::vector<ffelem>& coeffs);

// spectrum_balanced is the caller's spectral determination (W_f(0) = 0); it
// must agree with the value census computed here.
WrpbCertificate check_wrpb_conditions(const PFunction& f, bool spectrum_balanced);

// Value census convenience: how often each value in [0, p) is attained.
std::vector<long long> value_census(const PFunction& f);
bool is_balanced(const PFunction& f);

// Text format: header "p m [mod coefficients c0..cm]", then one line
// "quad: a0 a1 ..." or "table: v0 v1 ...". Blank lines and lines starting
// with '#' are ignored.
struct LoadedFunction {
  std::shared_ptr<const FieldCtx> field;
  PFunction f;
};

LoadedFunction parse_function_stream(std::istream& in);
LoadedFunction load_function_file(const std::string& path);
std::string function_spec_string(const PFunction& f);

}  // namespace plateau
