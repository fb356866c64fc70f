#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plateau/spectrum.hpp"

namespace plateau {

// The ten value-class defining sets plus the two punctured variants that
// have their own closed-form distributions.
enum class SetKind { D0, D1, D2, D01, D02, D12, Dsq, Dnsq, Dsq0, Dnsq0, PuncD0, PuncD12 };

std::string set_kind_name(SetKind kind);
SetKind parse_set_kind(const std::string& name);
bool is_punctured_kind(SetKind kind);
// The ten buildable kinds, in declaration order.
const std::vector<SetKind>& base_set_kinds();

// Transversal used when puncturing an orbit-closed defining set: one
// representative per {x, -x} pair, or one per full F_p^* orbit. The two
// coincide at p = 3. The worked punctured-code examples use the antipodal
// convention (length and weights halve).
enum class PunctureFlavor { Antipodal, FullOrbit };

std::string flavor_name(PunctureFlavor flavor);

struct DefiningSet {
  const FieldCtx* ctx = nullptr;
  SetKind kind = SetKind::D0;
  // For punctured sets, the flavor that produced them.
  PunctureFlavor flavor = PunctureFlavor::Antipodal;
  std::vector<ffelem> elements;  // ascending encoding order
};

// Set label for reports, e.g. "D01" or "PuncD0[antipodal]".
std::string set_label(const DefiningSet& ds);

// Cardinality each kind attains when f is balanced with f(0) = 0.
long long expected_set_size(SetKind kind, int p, int m,
                            PunctureFlavor flavor = PunctureFlavor::Antipodal);

// Collects {x in F_q^* : f(x) in CLASS(kind)} in ascending order.
// require_balanced enforces the balanced-case cardinality (NotBalanced on
// mismatch); pass false to build codes from unbalanced functions. EmptySet
// if no element qualifies; BadEntry for the punctured kinds (use puncture).
DefiningSet build_defining_set(const PFunction& f, SetKind kind, bool require_balanced = true);

// One representative per scaling orbit (minimum encoding by default; the
// maximum-encoding transversal exists to demonstrate transversal
// invariance). The set must be closed under the flavor's scalar group,
// else NotOrbitClosed. Only D0 and D12 have punctured counterparts with
// closed forms; other kinds are rejected with BadEntry.
DefiningSet puncture(const DefiningSet& ds, PunctureFlavor flavor = PunctureFlavor::Antipodal,
                     bool max_representative = false);

struct LinearCode {
  const FieldCtx* ctx = nullptr;
  DefiningSet defining_set;
  long long n = 0;
  int k = 0;
  long long d = 0;
  // weight -> number of distinct codewords of that weight (zero word
  // excluded). When the map omega -> c_omega is p^{m-k}-to-one the raw
  // counts are divided down exactly.
  std::map<long long, long long> weight_distribution;
};

// Codeword c_omega = (Tr(omega d))_{d in D}; distribution over all omega.
// The parallel version is the production kernel; the serial version
// recomputes every trace through the multiplication and trace tables
// separately, as an independent cross-check and benchmark baseline.
LinearCode brute_force_distribution(const DefiningSet& ds);
LinearCode brute_force_distribution_serial(const DefiningSet& ds);

// "1+60y^48+161y^54+21y^66" style, ascending weights.
std::string enumerator_string(const std::map<long long, long long>& distribution);

struct ClosedFormDistribution {
  SetKind kind = SetKind::D0;
  int p = 0, m = 0, s = 0, epsilon = 0;
  long long n = 0;
  int k = 0;  // always m: the theorems assert full dimension
  std::map<long long, long long> rows;
  std::string branch;  // which table branch was evaluated, e.g. "D1:odd:p3mod4"
};

// Exact evaluation of the published weight-distribution tables. The rows
// are valid for a weakly regular s-plateaued balanced function with the
// given sign; at parameter points no such function attains, the formulas
// are still evaluated verbatim (weights may then fall outside [1, n]).
// Errors: OutOfRange when (m, s) violates the tables' applicability
// (s >= 1, and m+s >= 4, m-s >= 2 when m+s is even; m+s >= 3 when odd);
// UncoveredBranch where no table exists (D0 and PuncD0 with m+s odd, D02
// with m+s even, PuncD12 away from p = 3). Even-parity D2, Dnsq and Dnsq0
// resolve to the D1, Dsq and Dsq0 tables as the statements direct.
ClosedFormDistribution closed_form_distribution(int p, int m, int s, int epsilon, SetKind kind,
                                                PunctureFlavor flavor = PunctureFlavor::Antipodal);

// Parameter pull from a classified profile. The premise of the tables is
// a balanced function; the caller is responsible for checking
// profile.wrpb.holds when the premise matters.
ClosedFormDistribution closed_form_distribution(const PlateauedProfile& profile, SetKind kind,
                                                PunctureFlavor flavor = PunctureFlavor::Antipodal);

// Rows c_{omega_i} for a basis subset; k rows of length n, verified to have
// rank k by elimination mod p (RankDeficient otherwise, defensively).
std::vector<std::vector<std::int8_t>> generator_matrix(const LinearCode& code);

int rank_mod_p(std::vector<std::vector<std::int8_t>> rows, int p);

}  // namespace plateau
