#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plateau/bigint.hpp"
#include "plateau/code.hpp"

namespace plateau {

// Predicted [n, k, d] from the published minimal-code statements for the
// ten buildable kinds. Each statement fixes a parity of m + s, a stated
// range for s, and (except the sign-free D01 and D02 cases) a sign branch:
// for even m + s the branch is chosen by eps0 = eps * eta0(-1)^((m+s)/2),
// for odd m + s by the condition (p = 1 mod 4 and eps = 1) or
// (p = 3 mod 4 and eps1 = -1) with eps1 = eps * eta0(-1)^((m+s-3)/2).
// Even-parity D2, Dnsq and Dnsq0 share the D1, Dsq and Dsq0 statements.
struct PropositionParams {
  long long n = 0;
  int k = 0;  // always m
  long long d = 0;
  std::string branch;  // evaluated branch, e.g. "D1:odd:sideC" or "D12:even:eps0=+1"
};

// Errors: OutOfRange when s falls outside the stated range (callers treat
// this as report-only and keep the brute-force value); UncoveredBranch for
// combinations with no statement (D0 with m + s odd, D02 with m + s even,
// and the punctured kinds, whose corollary fixes [n, k] but no distance).
PropositionParams proposition_parameters(int p, int m, int s, int epsilon, SetKind kind);
PropositionParams proposition_parameters(const PlateauedProfile& profile, SetKind kind);

struct MinimalityReport {
  long long w_min = 0;
  long long w_max = 0;
  // (p-1)/p < w_min/w_max, compared as p*w_min > (p-1)*w_max in integers.
  // Sufficient for minimality, not necessary.
  bool ab_ratio_holds = false;
  std::optional<bool> exhaustive_verdict;
  // Distinct projective codewords whose support contains another codeword's
  // support; -1 when the exhaustive sweep did not run.
  long long n_nonminimal = -1;
  std::optional<PropositionParams> proposition;
};

// The AB part only: w_min, w_max and the exact ratio test.
MinimalityReport minimality_ab(const LinearCode& code);

struct ExhaustiveMinimality {
  bool all_minimal = false;
  long long n_nonminimal = 0;
};

// Pairwise support-covering sweep over the distinct projective codewords,
// each scaled so its first nonzero coordinate is 1. A representative is
// non-minimal when some other representative's support sits inside its own
// (equal supports from different projective classes condemn both sides).
// TooLarge when p^k exceeds the bound.
ExhaustiveMinimality exhaustive_minimality(const LinearCode& code, long long bound = 6561);
bool minimality_exhaustive(const LinearCode& code, long long bound = 6561);

// AB certificate, plus the exhaustive sweep when p^k fits the bound, plus
// the matching parameter statement when a profile is supplied and the
// (kind, parity, s) combination has one.
MinimalityReport certify_minimality(const LinearCode& code,
                                    const PlateauedProfile* profile = nullptr,
                                    long long exhaustive_bound = 6561);

struct DualReport {
  long long n = 0;
  long long k_perp = 0;  // n - k
  long long d_perp = 0;
  std::vector<BigInt> enumerator;  // A-perp indexed by weight, size n + 1
};

// B_j = q^{-k} * sum_w A_w * K_j(w) with the Krawtchouk polynomial
// K_j(w) = sum_i (-1)^i (q-1)^{j-i} C(w,i) C(n-w,j-i), everything in exact
// integers; the q^k division must leave no remainder (InexactDivision)
// and no coefficient may come out negative.
std::vector<BigInt> macwilliams_transform(const std::vector<BigInt>& enumerator, long long k,
                                          long long q);

// Dual weight enumerator of the code, d_perp = min{w > 0 : A-perp_w > 0}.
DualReport macwilliams_dual(const LinearCode& code);

struct BoundsReport {
  bool griesmer_ok = false;
  bool singleton_ok = false;
  long long griesmer_sum = 0;  // sum of ceil(d / p^i) for i in [0, k)
  long long griesmer_gap = 0;  // n - griesmer_sum
  long long singleton_gap = 0; // (n - k + 1) - d
};

BoundsReport bounds_check(long long n, long long k, long long d, int p);

// Access structure of the secret sharing scheme on the dual code, with
// coordinate 0 acting as the dealer. The d_perp = 2 and d_perp >= 3
// branches fill disjoint fields.
struct SssReport {
  long long num_participants = 0;        // n - 1
  long long num_minimal_access_sets = 0; // p^(k-1)
  long long d_perp = 0;
  // d_perp == 2: tag per participant i (index i - 1): in every minimal
  // access set when column g_i of the generator matrix is a scalar multiple
  // of g_0, otherwise in per_other_count of them.
  std::vector<char> in_all;
  long long per_other_count = 0;  // (p-1) p^(k-2), 0 when k = 1
  // d_perp >= 3: every set of l participants lies in (p-1)^l p^(k-l-1)
  // minimal access sets, for l in [1, min(k-1, d_perp - 2)].
  std::vector<std::pair<int, long long>> coverage;
};

// Requires a certified minimal code: cert.ab_ratio_holds or a true
// exhaustive verdict, else NotMinimal.
SssReport sss_report(const LinearCode& code, const DualReport& dual,
                     const MinimalityReport& cert);

struct SssOracleReport {
  long long num_sets = 0;
  // Membership count of participant i at index i - 1, size n - 1.
  std::vector<long long> per_participant;
};

// Enumerates the access sets directly: supports (coordinate 0 removed) of
// the minimal codewords whose coordinate 0 equals 1. TooLarge when p^k
// exceeds the bound.
SssOracleReport minimal_access_sets_oracle(const LinearCode& code, long long bound = 243);

}  // namespace plateau
