#include "plateau/field.hpp"

#include <algorithm>
#include <sstream>

namespace plateau {

namespace {

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; static_cast<long long>(d) * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<int> prime_factors(long long n) {
  std::vector<int> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<int>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

// Polynomials over F_p as coefficient vectors, index = degree.
int poly_deg(const std::vector<int>& u, int p) {
  int d = static_cast<int>(u.size()) - 1;
  while (d >= 0 && u[static_cast<std::size_t>(d)] % p == 0) --d;
  return d;
}

// a * b reduced mod the monic polynomial x^m + sum_i low[i] x^i.
std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b,
                             const std::vector<int>& low, int p) {
  const int m = static_cast<int>(low.size());
  std::vector<int> out(static_cast<std::size_t>(2 * m - 1), 0);
  for (int i = 0; i < m; ++i) {
    if (i < static_cast<int>(a.size()) && a[static_cast<std::size_t>(i)]) {
      const int x = a[static_cast<std::size_t>(i)];
      for (int j = 0; j < m; ++j) {
        if (j < static_cast<int>(b.size()) && b[static_cast<std::size_t>(j)]) {
          auto& slot = out[static_cast<std::size_t>(i + j)];
          slot = (slot + x * b[static_cast<std::size_t>(j)]) % p;
        }
      }
    }
  }
  for (int k = 2 * m - 2; k >= m; --k) {
    const int v = out[static_cast<std::size_t>(k)];
    if (v) {
      out[static_cast<std::size_t>(k)] = 0;
      for (int i = 0; i < m; ++i) {
        auto& slot = out[static_cast<std::size_t>(k - m + i)];
        slot = ((slot - v * low[static_cast<std::size_t>(i)]) % p + p) % p;
      }
    }
  }
  out.resize(static_cast<std::size_t>(m));
  return out;
}

std::vector<int> poly_powmod(std::vector<int> base, long long e,
                             const std::vector<int>& low, int p) {
  const int m = static_cast<int>(low.size());
  std::vector<int> r(static_cast<std::size_t>(m), 0);
  r[0] = 1;
  base.resize(static_cast<std::size_t>(m), 0);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, low, p);
    base = poly_mulmod(base, base, low, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

QuadChar quad_char(int p) {
  require(is_odd_prime(p), Err::CompositeP, "p must be an odd prime, got " + std::to_string(p));
  QuadChar chi;
  chi.p = p;
  chi.table.assign(static_cast<std::size_t>(p), -1);
  chi.table[0] = 0;
  for (int x = 1; x < p; ++x) {
    chi.table[static_cast<std::size_t>(x) * x % p] = 1;
  }
  return chi;
}

bool poly_is_irreducible(int p, const std::vector<int>& low_coeffs) {
  const int m = static_cast<int>(low_coeffs.size());
  if (m == 0) return false;
  if (m == 1) return true;  // monic degree 1 is always irreducible
  if (low_coeffs[0] % p == 0) return false;  // divisible by x

  std::vector<int> x(static_cast<std::size_t>(m), 0);
  x[1] = 1;

  long long pm = 1;
  for (int i = 0; i < m; ++i) pm *= p;
  if (poly_powmod(x, pm, low_coeffs, p) != x) return false;

  // For each prime r | m: gcd(x^{p^{m/r}} - x, f) must be constant.
  for (int r : prime_factors(m)) {
    long long e = 1;
    for (int i = 0; i < m / r; ++i) e *= p;
    std::vector<int> t = poly_powmod(x, e, low_coeffs, p);
    std::vector<int> a(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
      a[static_cast<std::size_t>(i)] =
          ((t[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]) % p + p) % p;
    }
    std::vector<int> A = low_coeffs;
    A.push_back(1);  // f itself
    std::vector<int> B = a;
    while (poly_deg(B, p) >= 0) {
      int dA = poly_deg(A, p);
      int dB = poly_deg(B, p);
      if (dA < dB) {
        std::swap(A, B);
        continue;
      }
      // A -= (lead(A)/lead(B)) * x^{dA-dB} * B
      long long inv = 1;
      {
        long long base = B[static_cast<std::size_t>(dB)] % p, acc = 1;
        for (int e2 = p - 2; e2; e2 >>= 1) {
          if (e2 & 1) acc = acc * base % p;
          base = base * base % p;
        }
        inv = acc;
      }
      const long long c = A[static_cast<std::size_t>(dA)] * inv % p;
      const int sh = dA - dB;
      for (int i = 0; i <= dB; ++i) {
        auto& slot = A[static_cast<std::size_t>(i + sh)];
        slot = static_cast<int>(((slot - c * B[static_cast<std::size_t>(i)]) % p + p) % p);
      }
      if (poly_deg(A, p) < poly_deg(B, p)) std::swap(A, B);
    }
    if (poly_deg(A, p) > 0) return false;
  }
  return true;
}

std::vector<int> smallest_irreducible(int p, int m) {
  std::vector<int> c(static_cast<std::size_t>(m), 0);
  // Odometer over coefficient tuples (c0, ..., c_{m-1}) with the last
  // coordinate varying fastest, which is exactly lexicographic order on the
  // low-degree-first tuples.
  while (true) {
    if (poly_is_irreducible(p, c)) return c;
    int i = m - 1;
    while (i >= 0) {
      if (++c[static_cast<std::size_t>(i)] < p) break;
      c[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    require(i >= 0, Err::ReduciblePolynomial,
            "no irreducible polynomial found (impossible for a prime field)");
  }
}

void FieldCtx::digits(ffelem a, int* out) const {
  long long v = a;
  for (int i = 0; i < m; ++i) {
    out[i] = static_cast<int>(v % p);
    v /= p;
  }
}

ffelem FieldCtx::undigits(const int* d) const {
  long long a = 0;
  for (int i = m - 1; i >= 0; --i) a = a * p + d[i];
  return static_cast<ffelem>(a);
}

ffelem ff_add(const FieldCtx& F, ffelem a, ffelem b) {
  // Digit-wise addition mod p; no carries between digits.
  long long out = 0, mult = 1;
  long long va = a, vb = b;
  for (int i = 0; i < F.m; ++i) {
    out += mult * ((va % F.p + vb % F.p) % F.p);
    va /= F.p;
    vb /= F.p;
    mult *= F.p;
  }
  return static_cast<ffelem>(out);
}

ffelem ff_sub(const FieldCtx& F, ffelem a, ffelem b) { return ff_add(F, a, ff_neg(F, b)); }

ffelem ff_neg(const FieldCtx& F, ffelem a) {
  long long out = 0, mult = 1;
  long long va = a;
  for (int i = 0; i < F.m; ++i) {
    const int d = static_cast<int>(va % F.p);
    out += mult * ((F.p - d) % F.p);
    va /= F.p;
    mult *= F.p;
  }
  return static_cast<ffelem>(out);
}

ffelem ff_inv(const FieldCtx& F, ffelem a) {
  require(a != 0, Err::DivisionByZero, "inverse of zero");
  return F.inv_table[static_cast<std::size_t>(a)];
}

ffelem ff_pow(const FieldCtx& F, ffelem a, long long e) {
  if (a == 0) {
    require(e > 0, Err::DivisionByZero, "0 cannot be raised to a non-positive power");
    return 0;
  }
  e %= (F.q - 1);
  if (e < 0) e += F.q - 1;
  ffelem r = 1, b = a;
  while (e) {
    if (e & 1) r = ff_mul(F, r, b);
    b = ff_mul(F, b, b);
    e >>= 1;
  }
  return r;
}

ffelem ff_scalar(const FieldCtx& F, long long c) {
  long long r = c % F.p;
  if (r < 0) r += F.p;
  return static_cast<ffelem>(r);
}

FieldCtx build_field(int p, int m) {
  require(is_odd_prime(p), Err::CompositeP, "p must be an odd prime, got " + std::to_string(p));
  require(m >= 1, Err::BadLength, "degree m must be >= 1");
  return build_field(p, m, [&] {
    std::vector<int> low = smallest_irreducible(p, m);
    low.push_back(1);
    return low;
  }());
}

FieldCtx build_field(int p, int m, const std::vector<int>& modulus) {
  require(is_odd_prime(p), Err::CompositeP, "p must be an odd prime, got " + std::to_string(p));
  require(m >= 1, Err::BadLength, "degree m must be >= 1");
  require(static_cast<int>(modulus.size()) == m + 1, Err::BadLength,
          "modulus needs exactly m+1 coefficients");
  for (int c : modulus) {
    require(0 <= c && c < p, Err::BadEntry, "modulus coefficients must lie in [0, p)");
  }
  require(modulus.back() == 1, Err::BadEntry, "modulus must be monic");

  std::vector<int> low(modulus.begin(), modulus.end() - 1);
  require(poly_is_irreducible(p, low), Err::ReduciblePolynomial,
          "supplied modulus is reducible over F_p");

  FieldCtx F;
  F.p = p;
  F.m = m;
  F.q = 1;
  F.pow_p.assign(static_cast<std::size_t>(m) + 1, 1);
  for (int i = 0; i < m; ++i) {
    F.q *= p;
    F.pow_p[static_cast<std::size_t>(i) + 1] = F.q;
  }
  require(F.q <= kMaxFieldSize, Err::TooLarge,
          "field size " + std::to_string(F.q) + " exceeds the dense-table limit " +
              std::to_string(kMaxFieldSize));
  F.modulus = modulus;
  F.chi = quad_char(p);

  const std::size_t q = static_cast<std::size_t>(F.q);

  // Multiplication table via polynomial multiplication mod the field polynomial.
  F.mul_table.assign(q * q, 0);
  std::vector<int> da(static_cast<std::size_t>(m)), db(static_cast<std::size_t>(m));
  for (std::size_t a = 0; a < q; ++a) {
    F.digits(static_cast<ffelem>(a), da.data());
    std::vector<int> va(da.begin(), da.end());
    for (std::size_t b = a; b < q; ++b) {
      F.digits(static_cast<ffelem>(b), db.data());
      std::vector<int> vb(db.begin(), db.end());
      const std::vector<int> prod = poly_mulmod(va, vb, low, p);
      const ffelem r = F.undigits(prod.data());
      F.mul_table[a * q + b] = r;
      F.mul_table[b * q + a] = r;
    }
  }

  // Frobenius x -> x^p via square-and-multiply on the table.
  F.frob_table.assign(q, 0);
  for (std::size_t x = 0; x < q; ++x) {
    ffelem r = 1, base = static_cast<ffelem>(x);
    int e = p;
    while (e) {
      if (e & 1) r = ff_mul(F, r, base);
      base = ff_mul(F, base, base);
      e >>= 1;
    }
    F.frob_table[x] = (x == 0) ? 0 : r;
  }

  // Absolute trace by summing Frobenius orbits digit-wise.
  F.trace_table.assign(q, 0);
  std::vector<int> ds(static_cast<std::size_t>(m));
  for (std::size_t x = 0; x < q; ++x) {
    ffelem s = static_cast<ffelem>(x);
    ffelem t = static_cast<ffelem>(x);
    for (int i = 1; i < m; ++i) {
      t = F.frob_table[static_cast<std::size_t>(t)];
      s = ff_add(F, s, t);
    }
    F.digits(s, ds.data());
    for (int i = 1; i < m; ++i) {
      require(ds[static_cast<std::size_t>(i)] == 0, Err::ReduciblePolynomial,
              "trace left the prime field; modulus arithmetic is inconsistent");
    }
    F.trace_table[x] = ds[0];
  }

  // Inverses.
  F.inv_table.assign(q, 0);
  for (std::size_t x = 1; x < q; ++x) {
    F.inv_table[x] = ff_pow(F, static_cast<ffelem>(x), F.q - 2);
    require(ff_mul(F, F.inv_table[x], static_cast<ffelem>(x)) == 1, Err::DivisionByZero,
            "inverse self-check failed");
  }

  // Smallest multiplicative generator.
  const std::vector<int> factors = prime_factors(F.q - 1);
  F.generator = 0;
  for (std::size_t g = 2; g < q; ++g) {
    bool ok = true;
    for (int r : factors) {
      if (ff_pow(F, static_cast<ffelem>(g), (F.q - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      F.generator = static_cast<ffelem>(g);
      break;
    }
  }
  require(F.generator != 0, Err::ReduciblePolynomial, "no multiplicative generator found");

  // Trace-of-product table: the hot lookup for Walsh transforms and
  // codeword weights.
  F.trace_mul.assign(q * q, 0);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      F.trace_mul[a * q + b] =
          static_cast<std::int8_t>(F.trace_table[static_cast<std::size_t>(F.mul_table[a * q + b])]);
    }
  }

  return F;
}

FieldCtx parse_field_spec(const std::string& spec) {
  int p = 0, m = 0;
  bool have_p = false, have_m = false, have_mod = false;
  std::vector<int> mod;

  std::stringstream ss(spec);
  std::string tok;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto to_int = [&](const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      fail(Err::BadEntry, "expected an integer in field spec, got '" + s + "'");
    }
    require(pos == s.size(), Err::BadEntry, "trailing junk in field spec token '" + s + "'");
    return v;
  };

  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    if (tok.rfind("p=", 0) == 0) {
      require(!have_p && !have_mod, Err::BadEntry, "misplaced 'p=' in field spec");
      p = to_int(tok.substr(2));
      have_p = true;
    } else if (tok.rfind("m=", 0) == 0) {
      require(!have_m && !have_mod, Err::BadEntry, "misplaced 'm=' in field spec");
      m = to_int(tok.substr(2));
      have_m = true;
    } else if (tok.rfind("mod=", 0) == 0) {
      require(!have_mod, Err::BadEntry, "duplicate 'mod=' in field spec");
      have_mod = true;
      mod.push_back(to_int(tok.substr(4)));
    } else if (have_mod) {
      mod.push_back(to_int(tok));
    } else {
      fail(Err::BadEntry, "unrecognized field spec token '" + tok + "'");
    }
  }
  require(have_p && have_m, Err::BadEntry, "field spec must contain p=<int> and m=<int>");
  if (have_mod) return build_field(p, m, mod);
  return build_field(p, m);
}

std::string field_spec_string(const FieldCtx& F) {
  std::string s = "p=" + std::to_string(F.p) + ",m=" + std::to_string(F.m) + ",mod=";
  for (std::size_t i = 0; i < F.modulus.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(F.modulus[i]);
  }
  return s;
}

}  // namespace plateau
