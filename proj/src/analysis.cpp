#include "plateau/analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "plateau/arith.hpp"
#include "plateau/threads.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plateau {

namespace {

int inverse_mod(int v, int p) {
  for (int c = 1; c < p; ++c) {
    if (v * c % p == 1) return c;
  }
  fail(Err::DivisionByZero, "no inverse of " + std::to_string(v) + " modulo " + std::to_string(p));
}

// p^k, or -1 once the value passes the bound.
long long checked_power(int p, int k, long long bound) {
  long long v = 1;
  for (int i = 0; i < k; ++i) {
    v *= p;
    if (v > bound) return -1;
  }
  return v;
}

// Distinct projective codewords (first nonzero coordinate scaled to 1),
// their supports as bit blocks, and the per-representative minimality flag
// from the pairwise support-covering sweep.
struct ProjectiveWords {
  std::size_t words = 0;  // 64-bit blocks per support
  std::vector<std::vector<std::int8_t>> reps;
  std::vector<std::uint64_t> supports;  // reps.size() * words
  std::vector<char> minimal;
};

ProjectiveWords collect_projective(const LinearCode& code, long long bound) {
  require(code.ctx != nullptr, Err::BadEntry, "code lacks a field context");
  const FieldCtx& F = *code.ctx;
  require(checked_power(F.p, code.k, bound) > 0, Err::TooLarge,
          "p^k exceeds the enumeration bound " + std::to_string(bound));
  const auto& D = code.defining_set.elements;
  require(!D.empty(), Err::EmptySet, "empty defining set");

  ProjectiveWords out;
  out.words = static_cast<std::size_t>((code.n + 63) / 64);

  std::set<std::vector<std::int8_t>> seen;
  for (long long w = 1; w < F.q; ++w) {
    const std::int8_t* row = &F.trace_mul[static_cast<std::size_t>(w) * F.q];
    std::vector<std::int8_t> word(D.size());
    int first = -1;
    for (std::size_t j = 0; j < D.size(); ++j) {
      word[j] = row[D[j]];
      if (word[j] != 0 && first < 0) first = static_cast<int>(j);
    }
    if (first < 0) continue;  // the kernel of omega -> c_omega
    const int scale = inverse_mod(word[static_cast<std::size_t>(first)], F.p);
    if (scale != 1) {
      for (auto& v : word) v = static_cast<std::int8_t>(v * scale % F.p);
    }
    if (!seen.insert(word).second) continue;
    std::vector<std::uint64_t> bits(out.words, 0);
    for (std::size_t j = 0; j < word.size(); ++j) {
      if (word[j] != 0) bits[j / 64] |= 1ull << (j % 64);
    }
    out.reps.push_back(std::move(word));
    out.supports.insert(out.supports.end(), bits.begin(), bits.end());
  }

  const long long count = static_cast<long long>(out.reps.size());
  out.minimal.assign(out.reps.size(), 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_count())
#endif
  for (long long a = 0; a < count; ++a) {
    const std::uint64_t* sa = &out.supports[static_cast<std::size_t>(a) * out.words];
    for (long long b = 0; b < count; ++b) {
      if (b == a) continue;
      const std::uint64_t* sb = &out.supports[static_cast<std::size_t>(b) * out.words];
      bool inside = true;
      for (std::size_t t = 0; t < out.words; ++t) {
        if (sb[t] & ~sa[t]) {
          inside = false;
          break;
        }
      }
      // Covers a proper subset, or the same support from a different
      // projective class; either way the outer representative is not minimal.
      if (inside) {
        out.minimal[static_cast<std::size_t>(a)] = 0;
        break;
      }
    }
  }
  return out;
}

// Is column i of the generator matrix a nonzero scalar multiple of column 0?
bool column_multiple(const std::vector<std::vector<std::int8_t>>& rows, std::size_t i, int p) {
  for (int c = 1; c < p; ++c) {
    bool match = true;
    for (const auto& row : rows) {
      if (row[i] != static_cast<std::int8_t>(row[0] * c % p)) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

}  // namespace

PropositionParams proposition_parameters(int p, int m, int s, int epsilon, SetKind kind) {
  require_odd_prime(p);
  require(epsilon == 1 || epsilon == -1, Err::BadEntry, "epsilon must be +1 or -1");
  require(!is_punctured_kind(kind), Err::UncoveredBranch,
          "the punctured statement fixes [n, k] but no distance");
  require(m >= 2, Err::OutOfRange, "m must be at least 2");
  require(s >= 0 && s <= m, Err::OutOfRange, "s must lie in [0, m]");
  // Entry guard: every distance below is under 2 p^m, so p^(m+1) must fit.
  (void)pow_ll(p, m + 1);

  const bool even = ((m + s) % 2) == 0;
  const std::string kname = set_kind_name(kind);
  if (kind == SetKind::D0 && !even) {
    fail(Err::UncoveredBranch, "no statement for D0 with m+s odd");
  }
  if (kind == SetKind::D02 && even) {
    fail(Err::UncoveredBranch, "no statement for D02 with m+s even");
  }

  PropositionParams out;
  out.k = m;
  out.n = expected_set_size(kind, p, m);
  const long long pm2 = pow_ll(p, m - 2);
  auto bound = [&](int slack) {
    require(s >= 1 && s <= m - slack, Err::OutOfRange,
            kname + ": statement covers 1 <= s <= m-" + std::to_string(slack));
  };

  if (even) {
    const int e0 = epsilon * eta_neg1_pow(p, (m + s) / 2);
    const std::string tag = e0 == 1 ? ":eps0=+1" : ":eps0=-1";
    const long long r4 = pow_ll(p, (m + s - 4) / 2);
    switch (kind) {
      case SetKind::D0:
        bound(4);
        out.d = e0 == 1 ? (p - 1) * (pm2 - (p - 1) * r4) : (p - 1) * (pm2 - r4);
        out.branch = "D0:even" + tag;
        break;
      case SetKind::D1:
      case SetKind::D2:
        bound(4);
        out.d = e0 == 1 ? (p - 1) * pm2 - (p + 1) * r4 : (p - 1) * (pm2 - r4);
        out.branch = (kind == SetKind::D1 ? "D1:even" : "D2:even:alias-D1") + tag;
        break;
      case SetKind::D01:
        bound(4);
        out.d = e0 == 1 ? (p - 1) * (2 * pm2 - (p - 2) * r4) : 2 * (p - 1) * (pm2 - r4);
        out.branch = "D01:even" + tag;
        break;
      case SetKind::D12:
        // The two sign branches state different ranges for s.
        if (e0 == 1) {
          bound(2);
          out.d = 2 * (p - 1) * pm2 - 2 * r4;
        } else {
          bound(4);
          out.d = 2 * (p - 1) * (pm2 - r4);
        }
        out.branch = "D12:even" + tag;
        break;
      case SetKind::Dsq:
      case SetKind::Dnsq:
        bound(4);
        out.d = e0 == 1 ? exact_halve((p - 1) * ((p - 1) * pm2 - (p + 1) * r4))
                        : exact_halve((p - 1) * (p - 1) * (pm2 - r4));
        out.branch = (kind == SetKind::Dsq ? "Dsq:even" : "Dnsq:even:alias-Dsq") + tag;
        break;
      case SetKind::Dsq0:
      case SetKind::Dnsq0:
        bound(4);
        out.d = e0 == 1 ? exact_halve((p - 1) * ((p + 1) * pm2 - (p - 1) * r4))
                        : exact_halve((p * p - 1) * (pm2 - r4));
        out.branch = (kind == SetKind::Dsq0 ? "Dsq0:even" : "Dnsq0:even:alias-Dsq0") + tag;
        break;
      default:
        fail(Err::UncoveredBranch, "no statement for " + kname);
    }
    return out;
  }

  const long long r3 = pow_ll(p, (m + s - 3) / 2);
  const int e1 = epsilon * eta_neg1_pow(p, (m + s - 3) / 2);
  const bool cond = (p % 4 == 1 && epsilon == 1) || (p % 4 == 3 && e1 == -1);
  const std::string tag = cond ? ":condC" : ":notC";
  switch (kind) {
    case SetKind::D1:
      bound(5);
      out.d = cond ? (p - 1) * (pm2 - r3) : (p - 1) * pm2 - 2 * r3;
      out.branch = "D1:odd" + tag;
      break;
    case SetKind::D2:
      bound(5);
      out.d = cond ? (p - 1) * pm2 - 2 * r3 : (p - 1) * (pm2 - r3);
      out.branch = "D2:odd" + tag;
      break;
    case SetKind::D01:
      bound(3);
      out.d = (p - 1) * (2 * pm2 - r3);
      out.branch = "D01:odd";
      break;
    case SetKind::D02:
      bound(3);
      out.d = (p - 1) * (2 * pm2 - r3);
      out.branch = "D02:odd";
      break;
    case SetKind::D12:
      bound(3);
      out.d = 2 * (p - 1) * pm2 - 2 * r3;
      out.branch = "D12:odd";
      break;
    case SetKind::Dsq:
      bound(5);
      out.d = cond ? exact_halve((p - 1) * (p - 1) * (pm2 - r3))
                   : (p - 1) * (exact_halve(pm2 * (p - 1)) - r3);
      out.branch = "Dsq:odd" + tag;
      break;
    case SetKind::Dnsq:
      bound(5);
      out.d = cond ? (p - 1) * (exact_halve(pm2 * (p - 1)) - r3)
                   : exact_halve((p - 1) * (p - 1) * (pm2 - r3));
      out.branch = "Dnsq:odd" + tag;
      break;
    case SetKind::Dsq0:
      bound(3);
      out.d = cond ? exact_halve((p - 1) * (pm2 * (p + 1) - (p - 1) * r3))
                   : exact_halve(pm2 * (p * p - 1)) - (p - 1) * r3;
      out.branch = "Dsq0:odd" + tag;
      break;
    case SetKind::Dnsq0:
      bound(3);
      out.d = cond ? (p - 1) * (exact_halve(pm2 * (p + 1)) - r3)
                   : exact_halve((p - 1) * (pm2 * (p + 1) - (p - 1) * r3));
      out.branch = "Dnsq0:odd" + tag;
      break;
    default:
      fail(Err::UncoveredBranch, "no statement for " + kname);
  }
  return out;
}

PropositionParams proposition_parameters(const PlateauedProfile& profile, SetKind kind) {
  return proposition_parameters(profile.p, profile.m, profile.s, profile.epsilon, kind);
}

MinimalityReport minimality_ab(const LinearCode& code) {
  require(code.ctx != nullptr, Err::BadEntry, "code lacks a field context");
  require(!code.weight_distribution.empty(), Err::EmptySet, "no nonzero codewords");
  MinimalityReport r;
  r.w_min = code.weight_distribution.begin()->first;
  r.w_max = code.weight_distribution.rbegin()->first;
  const long long p = code.ctx->p;
  r.ab_ratio_holds = p * r.w_min > (p - 1) * r.w_max;
  return r;
}

ExhaustiveMinimality exhaustive_minimality(const LinearCode& code, long long bound) {
  const ProjectiveWords pw = collect_projective(code, bound);
  ExhaustiveMinimality out;
  out.n_nonminimal =
      static_cast<long long>(std::count(pw.minimal.begin(), pw.minimal.end(), 0));
  out.all_minimal = out.n_nonminimal == 0;
  return out;
}

bool minimality_exhaustive(const LinearCode& code, long long bound) {
  return exhaustive_minimality(code, bound).all_minimal;
}

MinimalityReport certify_minimality(const LinearCode& code, const PlateauedProfile* profile,
                                    long long exhaustive_bound) {
  MinimalityReport r = minimality_ab(code);
  if (checked_power(code.ctx->p, code.k, exhaustive_bound) > 0) {
    const ExhaustiveMinimality ex = exhaustive_minimality(code, exhaustive_bound);
    r.exhaustive_verdict = ex.all_minimal;
    r.n_nonminimal = ex.n_nonminimal;
  }
  if (profile != nullptr && !is_punctured_kind(code.defining_set.kind)) {
    try {
      r.proposition = proposition_parameters(*profile, code.defining_set.kind);
    } catch (const PlateauError& e) {
      // Out-of-range or uncovered combinations are reported without a
      // prediction; anything else is a real failure.
      if (e.code() != Err::OutOfRange && e.code() != Err::UncoveredBranch) throw;
    }
  }
  return r;
}

std::vector<BigInt> macwilliams_transform(const std::vector<BigInt>& enumerator, long long k,
                                          long long q) {
  require(!enumerator.empty(), Err::BadLength, "empty enumerator");
  require(q >= 2 && q <= 0xffffffffLL, Err::BadEntry, "alphabet size out of range");
  require(k >= 0, Err::BadEntry, "negative dimension");
  const long long n = static_cast<long long>(enumerator.size()) - 1;

  std::vector<std::vector<BigInt>> binom(static_cast<std::size_t>(n + 1));
  for (long long i = 0; i <= n; ++i) {
    auto& row = binom[static_cast<std::size_t>(i)];
    row.assign(static_cast<std::size_t>(n + 1), BigInt());
    row[0] = BigInt(1);
    for (long long j = 1; j <= i; ++j) {
      row[static_cast<std::size_t>(j)] =
          binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
  }
  std::vector<BigInt> powq1(static_cast<std::size_t>(n + 1));
  powq1[0] = BigInt(1);
  for (long long t = 1; t <= n; ++t) {
    powq1[static_cast<std::size_t>(t)] = powq1[static_cast<std::size_t>(t - 1)] * BigInt(q - 1);
  }

  std::vector<BigInt> out(static_cast<std::size_t>(n + 1));
  for (long long j = 0; j <= n; ++j) {
    BigInt acc;
    for (long long w = 0; w <= n; ++w) {
      const BigInt& aw = enumerator[static_cast<std::size_t>(w)];
      if (aw.is_zero()) continue;
      BigInt kr;
      for (long long i = 0; i <= std::min(j, w); ++i) {
        if (j - i > n - w) continue;
        BigInt term = powq1[static_cast<std::size_t>(j - i)] *
                      binom[static_cast<std::size_t>(w)][static_cast<std::size_t>(i)] *
                      binom[static_cast<std::size_t>(n - w)][static_cast<std::size_t>(j - i)];
        if (i % 2 == 0) {
          kr += term;
        } else {
          kr -= term;
        }
      }
      acc += aw * kr;
    }
    for (long long t = 0; t < k; ++t) {
      acc = acc.div_exact(static_cast<std::uint32_t>(q), Err::InexactDivision);
    }
    require(acc.sign() >= 0, Err::InexactDivision, "negative dual coefficient");
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

DualReport macwilliams_dual(const LinearCode& code) {
  require(code.ctx != nullptr, Err::BadEntry, "code lacks a field context");
  require(code.n >= 1 && code.k >= 1 && code.k <= code.n, Err::BadEntry, "invalid dimensions");
  std::vector<BigInt> a(static_cast<std::size_t>(code.n + 1));
  a[0] = BigInt(1);
  for (const auto& [w, count] : code.weight_distribution) {
    require(w >= 1 && w <= code.n, Err::BadEntry, "weight outside [1, n]");
    a[static_cast<std::size_t>(w)] = BigInt(count);
  }

  DualReport r;
  r.n = code.n;
  r.k_perp = code.n - code.k;
  r.enumerator = macwilliams_transform(a, code.k, code.ctx->p);
  require(r.enumerator[0] == BigInt(1), Err::InexactDivision, "dual A_0 differs from 1");
  // Dual size identity, an end-to-end check of the transform.
  BigInt total;
  for (const BigInt& b : r.enumerator) total += b;
  require(total == BigInt::pow(code.ctx->p, static_cast<int>(r.k_perp)), Err::InexactDivision,
          "dual enumerator sums to the wrong size");
  for (long long w = 1; w <= code.n; ++w) {
    if (r.enumerator[static_cast<std::size_t>(w)].sign() > 0) {
      r.d_perp = w;
      break;
    }
  }
  return r;
}

BoundsReport bounds_check(long long n, long long k, long long d, int p) {
  require_odd_prime(p);
  require(n >= 1 && k >= 1 && k <= n && d >= 1 && d <= n, Err::BadEntry,
          "invalid [n, k, d] parameters");
  BoundsReport r;
  long long sum = 0;
  long long power = 1;
  for (long long i = 0; i < k; ++i) {
    if (power >= d) {
      // ceil(d / p^i) stays 1 from here on; this also caps the power
      // before it can overflow.
      sum += k - i;
      break;
    }
    sum += (d + power - 1) / power;
    power *= p;
  }
  r.griesmer_sum = sum;
  r.griesmer_ok = sum <= n;
  r.griesmer_gap = n - sum;
  r.singleton_gap = (n - k + 1) - d;
  r.singleton_ok = r.singleton_gap >= 0;
  return r;
}

SssReport sss_report(const LinearCode& code, const DualReport& dual,
                     const MinimalityReport& cert) {
  require(code.ctx != nullptr, Err::BadEntry, "code lacks a field context");
  const bool certified =
      cert.ab_ratio_holds || (cert.exhaustive_verdict.has_value() && *cert.exhaustive_verdict);
  require(certified, Err::NotMinimal,
          "the access-structure statement needs a certified minimal code");
  require(dual.n == code.n, Err::BadEntry, "dual report belongs to another code");
  require(dual.d_perp >= 2, Err::OutOfRange, "dual distance below 2");

  const int p = code.ctx->p;
  SssReport r;
  r.num_participants = code.n - 1;
  r.num_minimal_access_sets = pow_ll(p, code.k - 1);
  r.d_perp = dual.d_perp;
  if (dual.d_perp == 2) {
    const auto rows = generator_matrix(code);
    r.in_all.assign(static_cast<std::size_t>(code.n - 1), 0);
    for (long long i = 1; i < code.n; ++i) {
      r.in_all[static_cast<std::size_t>(i - 1)] =
          column_multiple(rows, static_cast<std::size_t>(i), p) ? 1 : 0;
    }
    r.per_other_count = code.k >= 2 ? (p - 1) * pow_ll(p, code.k - 2) : 0;
  } else {
    const long long lmax = std::min<long long>(code.k - 1, dual.d_perp - 2);
    for (long long l = 1; l <= lmax; ++l) {
      r.coverage.emplace_back(static_cast<int>(l),
                              pow_ll(p - 1, static_cast<int>(l)) *
                                  pow_ll(p, static_cast<int>(code.k - l - 1)));
    }
  }
  return r;
}

SssOracleReport minimal_access_sets_oracle(const LinearCode& code, long long bound) {
  const ProjectiveWords pw = collect_projective(code, bound);
  SssOracleReport r;
  r.per_participant.assign(static_cast<std::size_t>(code.n - 1), 0);
  for (std::size_t a = 0; a < pw.reps.size(); ++a) {
    if (!pw.minimal[a] || pw.reps[a][0] != 1) continue;
    ++r.num_sets;
    const auto& word = pw.reps[a];
    for (std::size_t j = 1; j < word.size(); ++j) {
      if (word[j] != 0) ++r.per_participant[j - 1];
    }
  }
  return r;
}

}  // namespace plateau
