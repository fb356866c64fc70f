#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "fixture_data.hpp"
#include "plateau/code.hpp"
#include "test_util.hpp"

using namespace plateau;
using namespace testfx;

namespace {

// Census-lemma reconstruction of a weight distribution: every codeword
// weight is n minus the number of defining-set elements d with
// Tr(omega d) = 0, and those counts depend only on the class of omega.
WeightMap reconstructed_rows(SetKind kind, int p, int m, int s, int e) {
  if (kind == SetKind::PuncD0) {
    WeightMap full = reconstructed_rows(SetKind::D0, p, m, s, e);
    WeightMap out;
    for (const auto& [w, a] : full) {
      REQUIRE(w % (p - 1) == 0);
      out[w / (p - 1)] += a;
    }
    return out;
  }
  if (kind == SetKind::PuncD12) {
    WeightMap full = reconstructed_rows(SetKind::D12, p, m, s, e);
    WeightMap out;
    for (const auto& [w, a] : full) {
      REQUIRE(w % 2 == 0);
      out[w / 2] += a;
    }
    return out;
  }

  std::vector<CountKind> counters;
  bool excludes_zero = false;
  switch (kind) {
    case SetKind::D0: counters = {CountKind::N0}; excludes_zero = true; break;
    case SetKind::D1: counters = {CountKind::N1}; break;
    case SetKind::D2: counters = {CountKind::N2}; break;
    case SetKind::D01: counters = {CountKind::N0, CountKind::N1}; excludes_zero = true; break;
    case SetKind::D02: counters = {CountKind::N0, CountKind::N2}; excludes_zero = true; break;
    case SetKind::D12: counters = {CountKind::N1, CountKind::N2}; break;
    case SetKind::Dsq: counters = {CountKind::Nsq}; break;
    case SetKind::Dnsq: counters = {CountKind::Nnsq}; break;
    case SetKind::Dsq0: counters = {CountKind::N0, CountKind::Nsq}; excludes_zero = true; break;
    case SetKind::Dnsq0:
      counters = {CountKind::N0, CountKind::Nnsq};
      excludes_zero = true;
      break;
    default: REQUIRE(false);
  }

  // Frequencies by class: outside the support, or inside with a dual value
  // that is zero / a square / a nonsquare.
  const std::vector<long long> census = closed_form_dual_census(p, m, s, e);
  const QuadChar chi = quad_char(p);
  std::map<OmegaClass, long long> cls_counts;
  cls_counts[OmegaClass::Off] = ipow(p, m) - ipow(p, m - s) - 1;
  cls_counts[OmegaClass::Zero] = census[0];
  cls_counts[OmegaClass::Square] = 0;
  cls_counts[OmegaClass::NonSquare] = 0;
  for (int v = 1; v < p; ++v) {
    cls_counts[chi.is_square(v) ? OmegaClass::Square : OmegaClass::NonSquare] +=
        census[static_cast<std::size_t>(v)];
  }

  const long long n = expected_set_size(kind, p, m);
  WeightMap out;
  for (const auto& [cls, cnt] : cls_counts) {
    if (cnt == 0) continue;
    long long zeros = 0;
    for (CountKind which : counters) zeros += closed_form_count(which, p, m, s, e, cls);
    const long long w = n - zeros + (excludes_zero ? 1 : 0);
    out[w] += cnt;
  }
  return out;
}

bool grid_applicable(SetKind kind, int p, int m, int s) {
  const bool even = (m + s) % 2 == 0;
  if (m < 2 || s < 1 || s > m) return false;
  if (even && (m + s < 4 || m - s < 2)) return false;
  if (!even && m + s < 3) return false;
  if (kind == SetKind::PuncD12 && p != 3) return false;
  return true;
}

bool grid_covered(SetKind kind, int m, int s) {
  const bool even = (m + s) % 2 == 0;
  if (kind == SetKind::D0 || kind == SetKind::PuncD0) return even;
  if (kind == SetKind::D02) return !even;
  return true;
}

}  // namespace

TEST_CASE("set kind names round-trip and classify as punctured or not") {
  const std::vector<SetKind> all = {SetKind::D0,   SetKind::D1,    SetKind::D2,   SetKind::D01,
                                    SetKind::D02,  SetKind::D12,   SetKind::Dsq,  SetKind::Dnsq,
                                    SetKind::Dsq0, SetKind::Dnsq0, SetKind::PuncD0,
                                    SetKind::PuncD12};
  for (SetKind k : all) {
    CHECK(parse_set_kind(set_kind_name(k)) == k);
    CHECK(is_punctured_kind(k) == (k == SetKind::PuncD0 || k == SetKind::PuncD12));
  }
  CHECK(base_set_kinds().size() == 10);
  for (SetKind k : base_set_kinds()) CHECK(!is_punctured_kind(k));
  CHECK(error_code_of([] { parse_set_kind("Dx"); }) == Err::BadEntry);
  CHECK(flavor_name(PunctureFlavor::Antipodal) == "antipodal");
  CHECK(flavor_name(PunctureFlavor::FullOrbit) == "full-orbit");
}

TEST_CASE("expected set sizes in the balanced case") {
  CHECK(expected_set_size(SetKind::D0, 3, 4) == 26);
  CHECK(expected_set_size(SetKind::D1, 3, 4) == 27);
  CHECK(expected_set_size(SetKind::D2, 3, 4) == 27);
  CHECK(expected_set_size(SetKind::D01, 3, 4) == 53);
  CHECK(expected_set_size(SetKind::D02, 3, 4) == 53);
  CHECK(expected_set_size(SetKind::D12, 3, 4) == 54);
  CHECK(expected_set_size(SetKind::Dsq, 3, 4) == 27);
  CHECK(expected_set_size(SetKind::Dnsq, 3, 4) == 27);
  CHECK(expected_set_size(SetKind::Dsq0, 3, 4) == 53);
  CHECK(expected_set_size(SetKind::Dnsq0, 3, 4) == 53);
  CHECK(expected_set_size(SetKind::PuncD0, 3, 4, PunctureFlavor::Antipodal) == 13);
  CHECK(expected_set_size(SetKind::PuncD0, 3, 4, PunctureFlavor::FullOrbit) == 13);
  CHECK(expected_set_size(SetKind::PuncD12, 3, 4, PunctureFlavor::Antipodal) == 27);

  CHECK(expected_set_size(SetKind::D0, 5, 3) == 24);
  CHECK(expected_set_size(SetKind::Dsq, 5, 3) == 50);
  CHECK(expected_set_size(SetKind::Dsq0, 5, 3) == 74);
  CHECK(expected_set_size(SetKind::PuncD0, 5, 3, PunctureFlavor::Antipodal) == 12);
  CHECK(expected_set_size(SetKind::PuncD0, 5, 3, PunctureFlavor::FullOrbit) == 6);
  CHECK(expected_set_size(SetKind::PuncD12, 5, 3, PunctureFlavor::Antipodal) == 25);
  // 2 * 5^2 is not divisible by the orbit size 4.
  CHECK(error_code_of([] {
          expected_set_size(SetKind::PuncD12, 5, 3, PunctureFlavor::FullOrbit);
        }) == Err::NotOrbitClosed);
}

TEST_CASE("defining sets collect the right elements") {
  const FieldCtx F = build_field(3, 4);
  const PFunction f = quadratic(F, {1, 1, 0});

  const DefiningSet d0 = build_defining_set(f, SetKind::D0, false);
  const std::vector<ffelem> want = {3,  5,  6,  7,  9,  11, 12, 13, 15, 18, 19, 21, 24,
                                    26, 27, 29, 42, 44, 48, 50, 54, 55, 69, 70, 75, 76};
  CHECK(d0.elements == want);
  CHECK(d0.kind == SetKind::D0);
  CHECK(set_label(d0) == "D0");

  // Every class partitions F_q^*: D01, D2 and Dnsq cover it with D0 absent.
  const DefiningSet d01 = build_defining_set(f, SetKind::D01, false);
  const DefiningSet d2 = build_defining_set(f, SetKind::D2, false);
  CHECK(d01.elements.size() + d2.elements.size() == static_cast<std::size_t>(F.q - 1));
  for (ffelem x : d0.elements) CHECK(f(x) == 0);

  // At p = 3 the only nonzero square is 1 and the only nonsquare is 2.
  CHECK(build_defining_set(f, SetKind::Dsq, false).elements ==
        build_defining_set(f, SetKind::D1, false).elements);
  CHECK(build_defining_set(f, SetKind::Dnsq, false).elements == d2.elements);
  CHECK(build_defining_set(f, SetKind::Dsq0, false).elements == d01.elements);
  CHECK(build_defining_set(f, SetKind::Dnsq0, false).elements ==
        build_defining_set(f, SetKind::D02, false).elements);
}

TEST_CASE("defining set construction failure modes") {
  const FieldCtx F33 = build_field(3, 3);
  const PFunction f33 = quadratic(F33, {2, 1});
  CHECK(error_code_of([&] { build_defining_set(f33, SetKind::Dsq, false); }) == Err::EmptySet);

  const FieldCtx F53 = build_field(5, 3);
  const PFunction f53 = quadratic(F53, {3, 1});
  CHECK(error_code_of([&] { build_defining_set(f53, SetKind::D1, false); }) == Err::EmptySet);
  CHECK(error_code_of([&] { build_defining_set(f53, SetKind::Dsq, false); }) == Err::EmptySet);

  // The witness is not balanced: D1 has 36 elements, the balanced size is 27.
  const FieldCtx F34 = build_field(3, 4);
  const PFunction f34 = quadratic(F34, {1, 1, 0});
  CHECK(error_code_of([&] { build_defining_set(f34, SetKind::D1, true); }) == Err::NotBalanced);
  // D0 happens to match the balanced cardinality, so the check passes.
  CHECK(build_defining_set(f34, SetKind::D0, true).elements.size() == 26);

  CHECK(error_code_of([&] { build_defining_set(f34, SetKind::PuncD0, false); }) == Err::BadEntry);
}

TEST_CASE("puncturing keeps one representative per scaling orbit") {
  const FieldCtx F = build_field(5, 3);
  const PFunction f = quadratic(F, {3, 1});
  const DefiningSet d0 = build_defining_set(f, SetKind::D0, false);

  const DefiningSet anti = puncture(d0, PunctureFlavor::Antipodal);
  CHECK(anti.kind == SetKind::PuncD0);
  CHECK(anti.flavor == PunctureFlavor::Antipodal);
  CHECK(set_label(anti) == "PuncD0[antipodal]");
  CHECK(anti.elements.size() * 2 == d0.elements.size());

  const DefiningSet full = puncture(d0, PunctureFlavor::FullOrbit);
  CHECK(full.elements.size() * 4 == d0.elements.size());
  CHECK(set_label(full) == "PuncD0[full-orbit]");

  // Transversal choice does not matter: representatives differ but the
  // codeword weights are identical because Tr(a omega d) = a Tr(omega d).
  const DefiningSet full_max = puncture(d0, PunctureFlavor::FullOrbit, true);
  CHECK(full_max.elements != full.elements);
  CHECK(full_max.elements.size() == full.elements.size());
  CHECK(brute_force_distribution(full_max).weight_distribution ==
        brute_force_distribution(full).weight_distribution);

  // Orbit representatives expand back to the whole set.
  std::vector<ffelem> expanded;
  for (ffelem d : full.elements) {
    for (int a = 1; a < F.p; ++a) expanded.push_back(ff_mul(F, ff_scalar(F, a), d));
  }
  std::sort(expanded.begin(), expanded.end());
  CHECK(expanded == d0.elements);
}

TEST_CASE("puncturing rejects sets that are not orbit-closed") {
  const FieldCtx F = build_field(5, 3);
  // Scaling x by 2 multiplies the value by 4, which leaves {1, 2}.
  for (const std::vector<ffelem>& coeffs : {std::vector<ffelem>{3, 1}, {4, 1}}) {
    const PFunction f = quadratic(F, coeffs);
    const DefiningSet d12 = build_defining_set(f, SetKind::D12, false);
    CHECK(puncture(d12, PunctureFlavor::Antipodal).elements.size() * 2 == d12.elements.size());
    CHECK(error_code_of([&] { puncture(d12, PunctureFlavor::FullOrbit); }) ==
          Err::NotOrbitClosed);
  }
  // Only D0 and D12 have punctured counterparts in production.
  const PFunction f = quadratic(F, {4, 1});
  const DefiningSet dsq = build_defining_set(f, SetKind::Dsq, false);
  CHECK(error_code_of([&] { puncture(dsq, PunctureFlavor::Antipodal); }) == Err::BadEntry);
}

TEST_CASE("brute-force weight distributions match the fixture corpus") {
  for (const CodeFixture& fx : code_fixtures()) {
    CAPTURE(fx.p);
    CAPTURE(fx.m);
    CAPTURE(static_cast<int>(fx.base));
    CAPTURE(fx.punct);
    const FieldCtx F = build_field(fx.p, fx.m);
    const DefiningSet ds = fixture_set(F, fx);
    const LinearCode code = brute_force_distribution(ds);
    CHECK(code.n == fx.n);
    CHECK(code.k == fx.k);
    CHECK(code.d == fx.d);
    CHECK(code.weight_distribution == fx.weights);

    // The number of distinct nonzero codewords is p^k - 1.
    long long total = 0;
    for (const auto& [w, a] : code.weight_distribution) total += a;
    CHECK(total == ipow(fx.p, fx.k) - 1);

    const LinearCode serial = brute_force_distribution_serial(ds);
    CHECK(serial.weight_distribution == code.weight_distribution);
    CHECK(serial.k == code.k);
  }
}

TEST_CASE("code distribution is invariant under scaling the defining set") {
  // c_omega on a*D equals c_{a*omega} on D, so the multiset of weights is
  // unchanged for any nonzero scalar, even for arbitrary sets.
  const FieldCtx F = build_field(3, 3);
  DefiningSet ds;
  ds.ctx = &F;
  ds.kind = SetKind::D0;
  ds.elements = {1, 2, 5, 9, 13, 17, 22};
  DefiningSet scaled = ds;
  for (ffelem& d : scaled.elements) d = ff_mul(F, F.generator, d);
  std::sort(scaled.elements.begin(), scaled.elements.end());
  CHECK(scaled.elements != ds.elements);
  CHECK(brute_force_distribution(scaled).weight_distribution ==
        brute_force_distribution(ds).weight_distribution);
}

TEST_CASE("brute force handles rank-deficient codes via the codeword fibres") {
  // D = {1} over F_9: the code is the trace character on one coordinate,
  // n = 1, and the map omega -> c_omega is 3-to-1, so k = 1.
  const FieldCtx F = build_field(3, 2);
  DefiningSet ds;
  ds.ctx = &F;
  ds.kind = SetKind::D0;
  ds.elements = {1};
  const LinearCode code = brute_force_distribution(ds);
  CHECK(code.n == 1);
  CHECK(code.k == 1);
  CHECK(code.d == 1);
  CHECK(code.weight_distribution == WeightMap{{1, 2}});

  DefiningSet empty;
  empty.ctx = &F;
  CHECK(error_code_of([&] { brute_force_distribution(empty); }) == Err::EmptySet);
}

TEST_CASE("generator matrices have full rank and span the enumerated code") {
  for (std::size_t idx : {0UL, 6UL, 27UL}) {
    const CodeFixture& fx = code_fixtures()[idx];
    const FieldCtx F = build_field(fx.p, fx.m);
    const DefiningSet ds = fixture_set(F, fx);
    const LinearCode code = brute_force_distribution(ds);
    const auto G = generator_matrix(code);
    REQUIRE(static_cast<int>(G.size()) == code.k);
    for (const auto& row : G) CHECK(row.size() == static_cast<std::size_t>(code.n));
    CHECK(rank_mod_p(G, F.p) == code.k);

    // Enumerate the row space and recover the same weight distribution.
    WeightMap spanned;
    std::vector<int> digits(static_cast<std::size_t>(code.k), 0);
    const long long total = ipow(fx.p, fx.k);
    for (long long it = 1; it < total; ++it) {
      int pos = 0;
      while (++digits[static_cast<std::size_t>(pos)] == fx.p) {
        digits[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      long long w = 0;
      for (long long j = 0; j < code.n; ++j) {
        int acc = 0;
        for (int i = 0; i < code.k; ++i) {
          acc += digits[static_cast<std::size_t>(i)] * G[static_cast<std::size_t>(i)]
                                                       [static_cast<std::size_t>(j)];
        }
        w += acc % fx.p != 0;
      }
      ++spanned[w];
    }
    CHECK(spanned == code.weight_distribution);
  }
}

TEST_CASE("rank computation mod p") {
  CHECK(rank_mod_p({{1, 2}, {2, 1}}, 3) == 1);
  CHECK(rank_mod_p({{1, 2}, {2, 2}}, 3) == 2);
  CHECK(rank_mod_p({{0, 0, 0}}, 5) == 0);
  // Row two is twice row one mod 5, and row three is their sum.
  CHECK(rank_mod_p({{1, 2, 3}, {2, 4, 1}, {3, 1, 4}}, 5) == 1);
  CHECK(rank_mod_p({{1, 0, 3}, {2, 4, 1}, {3, 4, 4}}, 5) == 2);
}

TEST_CASE("closed-form distributions reproduce the pinned tables") {
  struct Pin {
    SetKind kind;
    int p, m, s, e;
    WeightMap rows;
  };
  const std::vector<Pin> pins = {
      {SetKind::D0, 3, 5, 1, 1, {{48, 60}, {54, 161}, {66, 21}}},
      {SetKind::D0, 5, 3, 1, -1, {{16, 24}, {20, 99}, {36, 1}}},
      {SetKind::D1, 5, 3, 1, -1, {{16, 13}, {20, 99}, {26, 12}}},
      {SetKind::D01, 3, 4, 1, 1, {{30, 9}, {36, 65}, {42, 6}}},
      {SetKind::PuncD0, 3, 5, 1, 1, {{24, 60}, {27, 161}, {33, 21}}},
      {SetKind::PuncD12, 3, 3, 1, 1, {{5, 4}, {6, 17}, {8, 5}}},
      {SetKind::D1, 7, 3, 1, -1, {{36, 25}, {42, 293}, {50, 24}}},
      {SetKind::D2, 7, 3, 1, 1, {{34, 18}, {42, 293}, {48, 31}}},
      {SetKind::Dsq, 5, 3, 1, -1, {{32, 13}, {40, 99}, {52, 12}}},
      {SetKind::Dsq0, 5, 3, 1, 1, {{52, 17}, {60, 99}, {72, 8}}},
      {SetKind::D12, 3, 4, 1, 1, {{30, 6}, {36, 62}, {42, 12}}},
      {SetKind::D12, 3, 3, 1, -1, {{8, 1}, {12, 17}, {14, 8}}},
      {SetKind::Dsq, 7, 3, 1, 1, {{102, 18}, {126, 293}, {144, 31}}},
      {SetKind::Dsq0, 11, 3, 2, -1, {{550, 10}, {660, 1319}, {1210, 1}}},
      {SetKind::PuncD0, 3, 4, 2, -1, {{3, 5}, {9, 71}, {12, 4}}},
      {SetKind::PuncD12, 3, 4, 1, 1, {{15, 6}, {18, 62}, {21, 12}}},
      {SetKind::D0, 3, 4, 2, 1, {{12, 8}, {18, 71}, {30, 1}}},
      {SetKind::Dnsq0, 7, 4, 2, 1, {{1008, 24}, {1176, 2351}, {1302, 25}}},
      {SetKind::D01, 5, 3, 1, 1, {{28, 9}, {38, 8}, {40, 99}, {48, 8}}},
      {SetKind::D01, 7, 3, 1, -1, {{72, 24}, {84, 293}, {86, 24}, {114, 1}}},
      // A formula weight of zero: no balanced function exists there, and
      // the row is reported verbatim rather than clamped.
      {SetKind::Dnsq, 13, 3, 2, -1, {{0, 1}, {936, 2183}, {1092, 12}}},
  };
  for (const Pin& pin : pins) {
    CAPTURE(static_cast<int>(pin.kind));
    CAPTURE(pin.p);
    CAPTURE(pin.m);
    CAPTURE(pin.s);
    const ClosedFormDistribution cfd =
        closed_form_distribution(pin.p, pin.m, pin.s, pin.e, pin.kind, PunctureFlavor::FullOrbit);
    CHECK(cfd.rows == pin.rows);
    CHECK(cfd.k == pin.m);
    CHECK(cfd.n == expected_set_size(pin.kind, pin.p, pin.m, PunctureFlavor::FullOrbit));
  }

  // The antipodal puncture halves the parent weights and keeps counts.
  const ClosedFormDistribution anti =
      closed_form_distribution(5, 3, 1, -1, SetKind::PuncD0, PunctureFlavor::Antipodal);
  CHECK(anti.rows == WeightMap{{8, 24}, {10, 99}, {18, 1}});
  CHECK(anti.n == 12);
  const ClosedFormDistribution full =
      closed_form_distribution(5, 3, 1, -1, SetKind::PuncD0, PunctureFlavor::FullOrbit);
  CHECK(full.rows == WeightMap{{4, 24}, {5, 99}, {9, 1}});
  CHECK(full.n == 6);
}

TEST_CASE("closed-form branch labels and aliasing") {
  CHECK(closed_form_distribution(3, 5, 1, 1, SetKind::D0).branch == "D0:even");
  CHECK(closed_form_distribution(5, 3, 1, -1, SetKind::D1).branch == "D1:even");
  CHECK(closed_form_distribution(5, 3, 2, -1, SetKind::D1).branch == "D1:odd:p1mod4");
  CHECK(closed_form_distribution(7, 3, 2, -1, SetKind::D1).branch == "D1:odd:p3mod4");
  CHECK(closed_form_distribution(3, 3, 1, 1, SetKind::PuncD12).branch == "PuncD12:even");
  CHECK(closed_form_distribution(3, 4, 1, 1, SetKind::PuncD12).branch == "PuncD12:odd");
  CHECK(closed_form_distribution(3, 4, 2, 1, SetKind::PuncD0).branch ==
        "PuncD0:even:antipodal");
  CHECK(closed_form_distribution(3, 4, 2, 1, SetKind::PuncD0, PunctureFlavor::FullOrbit).branch ==
        "PuncD0:even:full-orbit");

  // Even parity: D2, Dnsq and Dnsq0 resolve to the D1, Dsq and Dsq0 tables.
  for (int e : {1, -1}) {
    CHECK(closed_form_distribution(5, 3, 1, e, SetKind::D2).rows ==
          closed_form_distribution(5, 3, 1, e, SetKind::D1).rows);
    CHECK(closed_form_distribution(7, 4, 2, e, SetKind::Dnsq).rows ==
          closed_form_distribution(7, 4, 2, e, SetKind::Dsq).rows);
    CHECK(closed_form_distribution(3, 5, 1, e, SetKind::Dnsq0).rows ==
          closed_form_distribution(3, 5, 1, e, SetKind::Dsq0).rows);
  }
  CHECK(closed_form_distribution(5, 3, 1, 1, SetKind::D2).branch == "D2:even:alias-D1");

  // Odd parity keeps them distinct.
  CHECK(closed_form_distribution(5, 3, 2, 1, SetKind::D2).rows !=
        closed_form_distribution(5, 3, 2, 1, SetKind::D1).rows);
}

TEST_CASE("closed forms refuse uncovered branches and bad parameters") {
  CHECK(error_code_of([] { closed_form_distribution(13, 3, 2, 1, SetKind::D0); }) ==
        Err::UncoveredBranch);
  CHECK(error_code_of([] { closed_form_distribution(3, 4, 1, 1, SetKind::D0); }) ==
        Err::UncoveredBranch);
  CHECK(error_code_of([] { closed_form_distribution(5, 3, 1, 1, SetKind::D02); }) ==
        Err::UncoveredBranch);
  CHECK(error_code_of([] { closed_form_distribution(3, 4, 1, 1, SetKind::PuncD0); }) ==
        Err::UncoveredBranch);
  CHECK(error_code_of([] { closed_form_distribution(5, 3, 1, 1, SetKind::PuncD12); }) ==
        Err::UncoveredBranch);

  CHECK(error_code_of([] { closed_form_distribution(3, 1, 1, 1, SetKind::D1); }) ==
        Err::OutOfRange);
  CHECK(error_code_of([] { closed_form_distribution(3, 4, 0, 1, SetKind::D1); }) ==
        Err::OutOfRange);
  CHECK(error_code_of([] { closed_form_distribution(3, 4, 5, 1, SetKind::D1); }) ==
        Err::OutOfRange);
  // m = s = 2 has even parity but m - s = 0.
  CHECK(error_code_of([] { closed_form_distribution(3, 2, 2, 1, SetKind::D1); }) ==
        Err::OutOfRange);
  CHECK(error_code_of([] { closed_form_distribution(3, 4, 1, 2, SetKind::D1); }) ==
        Err::BadEntry);
  CHECK(error_code_of([] { closed_form_distribution(9, 4, 2, 1, SetKind::D1); }) ==
        Err::CompositeP);
  CHECK(error_code_of([] { closed_form_distribution(2, 4, 2, 1, SetKind::D1); }) ==
        Err::CompositeP);
  // Parameters large enough to overflow the evaluation guard.
  CHECK(error_code_of([] { closed_form_distribution(2003, 9, 1, 1, SetKind::D1); }) ==
        Err::OverflowGuard);
}

TEST_CASE("closed forms match the census reconstruction across the grid") {
  const std::vector<SetKind> kinds = {SetKind::D0,   SetKind::D1,    SetKind::D2,
                                      SetKind::D01,  SetKind::D02,   SetKind::D12,
                                      SetKind::Dsq,  SetKind::Dnsq,  SetKind::Dsq0,
                                      SetKind::Dnsq0, SetKind::PuncD0, SetKind::PuncD12};
  int combos = 0;
  for (SetKind kind : kinds) {
    for (int p : {3, 5, 7, 11, 13}) {
      for (int m = 2; m <= 8; ++m) {
        for (int s = 1; s <= m; ++s) {
          for (int e : {1, -1}) {
            const bool ok = grid_applicable(kind, p, m, s) && grid_covered(kind, m, s);
            const auto thrown = error_code_of([&] {
              const ClosedFormDistribution cfd =
                  closed_form_distribution(p, m, s, e, kind, PunctureFlavor::FullOrbit);
              CAPTURE(static_cast<int>(kind));
              CAPTURE(p);
              CAPTURE(m);
              CAPTURE(s);
              CAPTURE(e);
              CHECK(cfd.rows == reconstructed_rows(kind, p, m, s, e));
              long long total = 0;
              for (const auto& [w, a] : cfd.rows) {
                CHECK(a > 0);
                total += a;
              }
              CHECK(total == ipow(p, m) - 1);
            });
            if (ok) {
              CHECK(!thrown.has_value());
              ++combos;
            } else {
              CHECK((thrown == Err::OutOfRange || thrown == Err::UncoveredBranch));
            }
          }
        }
      }
    }
  }
  // One equality per covered (kind, p, m, s, epsilon) combination.
  CHECK(combos == 2696);
}

TEST_CASE("punctured tables are the parent tables with scaled weights") {
  for (int p : {3, 5, 7}) {
    for (int m = 3; m <= 6; ++m) {
      for (int s = 1; s <= m; ++s) {
        if (!grid_applicable(SetKind::D0, p, m, s) || (m + s) % 2 != 0) continue;
        for (int e : {1, -1}) {
          const WeightMap parent = closed_form_distribution(p, m, s, e, SetKind::D0).rows;
          WeightMap anti_want, full_want;
          for (const auto& [w, a] : parent) {
            anti_want[w / 2] += a;
            full_want[w / (p - 1)] += a;
          }
          CHECK(closed_form_distribution(p, m, s, e, SetKind::PuncD0,
                                         PunctureFlavor::Antipodal)
                    .rows == anti_want);
          CHECK(closed_form_distribution(p, m, s, e, SetKind::PuncD0,
                                         PunctureFlavor::FullOrbit)
                    .rows == full_want);
        }
      }
    }
  }
  for (int m = 3; m <= 6; ++m) {
    for (int s = 1; s <= m; ++s) {
      if (!grid_applicable(SetKind::PuncD12, 3, m, s)) continue;
      for (int e : {1, -1}) {
        const WeightMap parent = closed_form_distribution(3, m, s, e, SetKind::D12).rows;
        WeightMap want;
        for (const auto& [w, a] : parent) want[w / 2] += a;
        CHECK(closed_form_distribution(3, m, s, e, SetKind::PuncD12).rows == want);
      }
    }
  }
}

TEST_CASE("distinct weight counts match the published statements") {
  struct Count {
    SetKind kind;
    int p, m, s, e;
    std::size_t want;
  };
  const std::vector<Count> counts = {
      {SetKind::D0, 3, 5, 1, 1, 3},   {SetKind::D1, 5, 3, 1, -1, 3},
      {SetKind::D01, 3, 4, 1, 1, 3},  {SetKind::D01, 5, 4, 1, 1, 4},
      {SetKind::D01, 5, 5, 2, 1, 4},  {SetKind::D02, 5, 5, 2, 1, 4},
      {SetKind::D12, 3, 3, 1, 1, 3},  {SetKind::D01, 5, 3, 2, 1, 3},
      {SetKind::D02, 5, 3, 2, 1, 3},  {SetKind::Dsq, 5, 4, 1, 1, 3},
      {SetKind::Dsq0, 5, 4, 1, 1, 3},
  };
  for (const Count& c : counts) {
    CAPTURE(static_cast<int>(c.kind));
    CAPTURE(c.p);
    CAPTURE(c.m);
    CAPTURE(c.s);
    CHECK(closed_form_distribution(c.p, c.m, c.s, c.e, c.kind).rows.size() == c.want);
  }
}

TEST_CASE("each pinned enumerator is reproduced by exactly one sign") {
  struct Want {
    SetKind kind;
    int p, m, s;
    WeightMap rows;
  };
  const std::vector<Want> wants = {
      {SetKind::D0, 3, 5, 1, {{48, 60}, {54, 161}, {66, 21}}},
      {SetKind::D0, 5, 3, 1, {{16, 24}, {20, 99}, {36, 1}}},
      {SetKind::D1, 5, 3, 1, {{16, 13}, {20, 99}, {26, 12}}},
      {SetKind::D01, 3, 4, 1, {{30, 9}, {36, 65}, {42, 6}}},
      {SetKind::PuncD12, 3, 3, 1, {{5, 4}, {6, 17}, {8, 5}}},
  };
  for (const Want& want : wants) {
    int hits = 0;
    for (int e : {1, -1}) {
      if (closed_form_distribution(want.p, want.m, want.s, e, want.kind).rows == want.rows) {
        ++hits;
      }
    }
    CHECK(hits == 1);
  }
}

TEST_CASE("profile-level closed form pulls the classified parameters") {
  const FieldCtx F = build_field(3, 4);
  const PFunction f = quadratic(F, {1, 1, 0});
  const PlateauedProfile profile = classify(f);
  const ClosedFormDistribution from_profile = closed_form_distribution(profile, SetKind::D1);
  const ClosedFormDistribution from_params = closed_form_distribution(3, 4, 1, 1, SetKind::D1);
  CHECK(from_profile.rows == from_params.rows);
  CHECK(from_profile.branch == from_params.branch);
  // m + s is odd here, so D0 has no covering table.
  CHECK(error_code_of([&] { closed_form_distribution(profile, SetKind::D0); }) ==
        Err::UncoveredBranch);
}

TEST_CASE("enumerator strings list ascending weights") {
  const ClosedFormDistribution cfd = closed_form_distribution(3, 5, 1, 1, SetKind::D0);
  CHECK(enumerator_string(cfd.rows) == "1+60y^48+161y^54+21y^66");
  CHECK(enumerator_string({}) == "1");
  CHECK(enumerator_string({{5, 4}, {6, 17}, {8, 5}}) == "1+4y^5+17y^6+5y^8");
}
