#include "plateau/cyclo.hpp"

#include "plateau/field.hpp"

namespace plateau {

namespace {

void check_same_p(const CycloInt& a, const CycloInt& b) {
  require(a.p == b.p, Err::MixedRoots,
          "cannot combine roots of unity of orders " + std::to_string(a.p) + " and " +
              std::to_string(b.p));
}

}  // namespace

CycloInt CycloInt::rational(int p, long long r) {
  CycloInt z(p);
  z.coeffs[0] = r;
  return z;
}

CycloInt CycloInt::zeta_pow(int p, long long e) {
  CycloInt z(p);
  long long r = e % p;
  if (r < 0) r += p;
  if (r < p - 1) {
    z.coeffs[static_cast<std::size_t>(r)] = 1;
  } else {
    for (auto& c : z.coeffs) c = -1;
  }
  return z;
}

bool CycloInt::is_zero() const {
  for (long long c : coeffs) {
    if (c != 0) return false;
  }
  return true;
}

std::string CycloInt::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coeffs[i]);
  }
  s += "]";
  return s;
}

CycloInt cy_add(const CycloInt& a, const CycloInt& b) {
  check_same_p(a, b);
  CycloInt out(a.p);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = a.coeffs[i] + b.coeffs[i];
  return out;
}

CycloInt cy_sub(const CycloInt& a, const CycloInt& b) {
  check_same_p(a, b);
  CycloInt out(a.p);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = a.coeffs[i] - b.coeffs[i];
  return out;
}

CycloInt cy_neg(const CycloInt& a) {
  CycloInt out(a.p);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = -a.coeffs[i];
  return out;
}

CycloInt cy_mul(const CycloInt& a, const CycloInt& b) {
  check_same_p(a, b);
  const int p = a.p;
  const std::size_t n = static_cast<std::size_t>(p - 1);
  std::vector<long long> full(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coeffs[j] == 0) continue;
      full[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  CycloInt out(p);
  for (std::size_t i = 0; i < n; ++i) out.coeffs[i] = full[i];
  for (std::size_t k = n; k < 2 * n - 1; ++k) {
    const long long v = full[k];
    if (v == 0) continue;
    const std::size_t e = k % static_cast<std::size_t>(p);
    if (e == n) {
      for (auto& c : out.coeffs) c -= v;
    } else {
      out.coeffs[e] += v;
    }
  }
  return out;
}

CycloInt cy_conj(const CycloInt& a) {
  const int p = a.p;
  CycloInt out(p);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const long long v = a.coeffs[i];
    if (v == 0) continue;
    const std::size_t e = static_cast<std::size_t>((p - static_cast<int>(i)) % p);
    if (e == static_cast<std::size_t>(p - 1)) {
      for (auto& c : out.coeffs) c -= v;
    } else {
      out.coeffs[e] += v;
    }
  }
  return out;
}

CycloInt norm_sq(const CycloInt& a) { return cy_mul(a, cy_conj(a)); }

std::optional<long long> as_rational_int(const CycloInt& a) {
  for (std::size_t i = 1; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] != 0) return std::nullopt;
  }
  return a.coeffs[0];
}

GaussSum gauss_sum(int p) {
  const QuadChar chi = quad_char(p);
  CycloInt g(p);
  for (int x = 1; x < p; ++x) {
    const CycloInt z = CycloInt::zeta_pow(p, x);
    g = chi.eta0(x) == 1 ? cy_add(g, z) : cy_sub(g, z);
  }
  const CycloInt sq = cy_mul(g, g);
  const auto r = as_rational_int(sq);
  require(r.has_value() && *r == chi.p_star(), Err::MixedRoots,
          "Gauss sum self-check failed: square is " + sq.str());
  return GaussSum{p, g};
}

CycloInt sqrt_pstar_pow(int p, int e) {
  require(e >= 0, Err::BadEntry, "exponent must be non-negative");
  const GaussSum g = gauss_sum(p);
  CycloInt out = CycloInt::rational(p, 1);
  CycloInt base = g.value;
  int k = e;
  while (k) {
    if (k & 1) out = cy_mul(out, base);
    base = cy_mul(base, base);
    k >>= 1;
  }
  return out;
}

void check_magnitude_guard(int p, int m_plus_s) {
  long long acc = 1;
  const long long limit = 1LL << 62;
  for (int i = 0; i < m_plus_s; ++i) {
    require(acc <= limit / p, Err::OverflowGuard,
            "p^(m+s) exceeds 2^62; exact 64-bit arithmetic would overflow");
    acc *= p;
  }
}

}  // namespace plateau
