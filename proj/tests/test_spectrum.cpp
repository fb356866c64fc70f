#include <doctest.h>

#include <algorithm>
#include <vector>

#include "plateau/spectrum.hpp"
#include "test_util.hpp"

using namespace plateau;

namespace {

// Quadratic witnesses used across the suite, with independently computed
// classification pins.
struct Witness {
  int p, m;
  std::vector<ffelem> coeffs;
  int s;
  int eps;
  std::vector<long long> dual_counts;  // census of f*(omega) over the support
};

const std::vector<Witness>& witnesses() {
  static const std::vector<Witness> w = {
      {3, 4, {1, 1, 0}, 1, 1, {9, 6, 12}},
      {3, 3, {2, 1}, 2, -1, {1, 2, 0}},
      {3, 3, {1, 0}, 0, 1, {9, 12, 6}},
      {5, 3, {3, 1}, 2, -1, {1, 0, 2, 2, 0}},
      {5, 3, {4, 1}, 1, -1, {1, 6, 6, 6, 6}},
      {3, 5, {42, 1, 0}, 2, -1, {9, 6, 12}},
  };
  return w;
}

long long ipow(int b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TEST_CASE("walsh transform of the zero function concentrates at omega 0") {
  const FieldCtx F = build_field(3, 3);
  const PFunction f = quadratic(F, {0, 0});
  const WalshSpectrum S = walsh_transform(f);
  CHECK(as_rational_int(S.values[0]) == 27);
  for (ffelem w = 1; w < F.q; ++w) CHECK(S.values[static_cast<std::size_t>(w)].is_zero());
}

TEST_CASE("walsh transform of a trace character concentrates at its frequency") {
  const FieldCtx F = build_field(3, 3);
  std::vector<int> tr(static_cast<std::size_t>(F.q));
  for (ffelem x = 0; x < F.q; ++x) tr[static_cast<std::size_t>(x)] = trace(F, x);
  const PFunction f = from_table(F, tr);
  const WalshSpectrum S = walsh_transform(f);
  // f(x) = Tr(1*x), so W(1) = q and everything else vanishes.
  CHECK(as_rational_int(S.values[1]) == 27);
  for (ffelem w = 0; w < F.q; ++w) {
    if (w != 1) CHECK(S.values[static_cast<std::size_t>(w)].is_zero());
  }
}

TEST_CASE("parallel and serial walsh kernels agree on every witness") {
  for (const Witness& wit : witnesses()) {
    CAPTURE(wit.p);
    CAPTURE(wit.m);
    const FieldCtx F = build_field(wit.p, wit.m);
    const PFunction f = quadratic(F, wit.coeffs);
    const WalshSpectrum a = walsh_transform(f);
    const WalshSpectrum b = walsh_transform_serial(f);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
  }
}

TEST_CASE("classification of the reference witnesses") {
  for (const Witness& wit : witnesses()) {
    CAPTURE(wit.p);
    CAPTURE(wit.m);
    CAPTURE(wit.coeffs[0]);
    const FieldCtx F = build_field(wit.p, wit.m);
    const PFunction f = quadratic(F, wit.coeffs);
    const PlateauedProfile pr = classify(f);

    CHECK(pr.s == wit.s);
    CHECK(pr.epsilon == wit.eps);
    CHECK(pr.parity == (wit.m + wit.s) % 2);
    CHECK(static_cast<long long>(pr.support.size()) == ipow(wit.p, wit.m - wit.s));
    CHECK(pr.weakly_regular);
    CHECK_FALSE(pr.balanced);  // quadratics are never balanced
    CHECK(pr.in_support[0] == 1);
    CHECK(pr.dual[0] == 0);  // f*(0) = 0 since W(0) = eps * G^{m+s}

    // Plateau order equals the dimension of the radical of the form.
    CHECK(pr.s == linearized_kernel_dim(f));

    // The dual value census matches its closed form even off balance.
    CHECK(dual_value_census(pr) == wit.dual_counts);
    CHECK(closed_form_dual_census(wit.p, wit.m, wit.s, wit.eps) == wit.dual_counts);

    // Support is closed under nonzero scalar multiples, with the dual
    // transforming quadratically: f*(a w) = a^2 f*(w).
    for (int a = 2; a < wit.p; ++a) {
      const ffelem ae = ff_scalar(F, a);
      for (ffelem w : pr.support) {
        const ffelem aw = ff_mul(F, ae, w);
        CHECK(pr.in_support[static_cast<std::size_t>(aw)] == 1);
        CHECK(pr.dual[static_cast<std::size_t>(aw)] == a * a % wit.p * pr.dual[w] % wit.p);
      }
    }

    // Exact reconstruction: W(w) = eps * G^{m+s} * zeta^{f*(w)} on the
    // support, 0 elsewhere.
    const WalshSpectrum S = walsh_transform(f);
    const CycloInt gpow = sqrt_pstar_pow(wit.p, wit.m + wit.s);
    for (ffelem w = 0; w < F.q; ++w) {
      const CycloInt& W = S.values[static_cast<std::size_t>(w)];
      if (!pr.in_support[static_cast<std::size_t>(w)]) {
        CHECK(W.is_zero());
        continue;
      }
      CycloInt expect = cy_mul(CycloInt::zeta_pow(wit.p, pr.dual[w]), gpow);
      if (wit.eps < 0) expect = cy_neg(expect);
      CHECK(W == expect);
    }

    // Certificate: quadratics satisfy f(0) = 0 and t = 2 but fail balance.
    CHECK(pr.wrpb.f_of_zero_is_zero);
    CHECK(pr.wrpb.homogeneity_exponent_t == 2);
    CHECK_FALSE(pr.wrpb.holds);
  }
}

TEST_CASE("full support and dual table of the order-1 quartic-field witness") {
  const std::vector<ffelem> support = {0,  1,  2,  3,  4,  5,  6,  7,  8,  27, 28, 29, 30, 31,
                                       32, 33, 34, 35, 54, 55, 56, 57, 58, 59, 60, 61, 62};
  const std::vector<int> dual = {0, 1, 1, 0, 2, 0, 0, 0, 2, 0, 2, 0, 2, 2,
                                 1, 1, 2, 2, 0, 0, 2, 1, 2, 2, 2, 1, 2};
  const FieldCtx F = build_field(3, 4);
  const PlateauedProfile pr = classify(quadratic(F, {1, 1, 0}));
  REQUIRE(pr.support == support);
  for (std::size_t i = 0; i < support.size(); ++i) {
    CHECK(static_cast<int>(pr.dual[support[i]]) == dual[i]);
  }
}

TEST_CASE("linear functions classify as order-m plateaued") {
  const FieldCtx F = build_field(3, 3);
  std::vector<int> tr(static_cast<std::size_t>(F.q));
  for (ffelem x = 0; x < F.q; ++x) tr[static_cast<std::size_t>(x)] = trace(F, x);
  const PlateauedProfile pr = classify(from_table(F, tr));
  CHECK(pr.s == 3);
  CHECK(pr.epsilon == -1);  // 27 = -G^6 for p = 3 since G^2 = -3
  CHECK(pr.balanced);
  CHECK(pr.support == std::vector<ffelem>{1});
  CHECK(dual_value_census(pr) == std::vector<long long>{1, 0, 0});
  // The dual census closed form needs m - s >= 2 in the even case; the
  // degenerate s = m point sits outside it.
  CHECK(error_code_of([] { closed_form_dual_census(3, 3, 3, -1); }) == Err::OutOfRange);
  // Balanced, but a linear function admits no even homogeneity exponent.
  CHECK(pr.wrpb.balanced);
  CHECK_FALSE(pr.wrpb.holds);
}

TEST_CASE("plateaued function with inconsistent walsh signs is rejected") {
  // Hand-built table: |W|^2 = 81 on 9 frequencies, but the unit in front of
  // G^4 is +1 on six of them and -1 on three, so no global sign exists.
  const std::vector<int> table = {0, 0, 0, 2, 0, 1, 1, 2, 0, 0, 1, 2, 0, 1,
                                  2, 2, 2, 2, 0, 1, 2, 1, 1, 1, 0, 1, 2};
  const FieldCtx F = build_field(3, 3);
  const PFunction f = from_table(F, table);
  try {
    classify(f);
    FAIL("expected ClassifyError");
  } catch (const ClassifyError& e) {
    CHECK(e.code() == Err::NotWeaklyRegular);
    CHECK(e.offending() == std::vector<ffelem>{3, 11, 26});
  }
}

TEST_CASE("table with several nonzero walsh levels is rejected") {
  const std::vector<int> table = {0, 0, 0, 1, 0, 2, 1, 2, 0, 0, 2, 1, 0, 1,
                                  2, 0, 0, 0, 2, 2, 2, 0, 0, 0, 2, 2, 2};
  const FieldCtx F = build_field(3, 3);
  const PFunction f = from_table(F, table);
  try {
    classify(f);
    FAIL("expected ClassifyError");
  } catch (const ClassifyError& e) {
    CHECK(e.code() == Err::NotPlateaued);
    CHECK_FALSE(e.offending().empty());
  }
}

TEST_CASE("census counters satisfy the partition identities on a real function") {
  const FieldCtx F = build_field(3, 4);
  const PFunction f = quadratic(F, {1, 1, 0});
  const long long hyperplane = ipow(3, 3);
  for (ffelem w = 1; w < F.q; w += 7) {
    CAPTURE(w);
    const long long n0 = census_N0(f, w);
    const long long n1 = census_N1(f, w);
    const long long n2 = census_N2(f, w);
    CHECK(n0 + n1 + n2 == hyperplane);
    // p = 3: the nonzero squares are {1}, the nonsquares {2}.
    CHECK(census_Nsq(f, w) == n1);
    CHECK(census_Nnsq(f, w) == n2);
    CHECK(census_Nsq0(f, w) == n0 + n1);
    CHECK(census_Nnsq0(f, w) == n0 + n2);
  }
}

TEST_CASE("census counters over a five-element prime field") {
  const FieldCtx F = build_field(5, 3);
  const PFunction f = quadratic(F, {4, 1});
  for (ffelem w = 1; w < F.q; w += 11) {
    CAPTURE(w);
    // Squares mod 5 are {1, 4}, nonsquares {2, 3}; together with the zero
    // fiber they partition the hyperplane Tr(wx) = 0.
    const long long n0 = census_N0(f, w);
    const long long nsq = census_Nsq(f, w);
    const long long nnsq = census_Nnsq(f, w);
    CHECK(n0 + nsq + nnsq == ipow(5, 2));
    CHECK(census_Nsq0(f, w) == n0 + nsq);
    CHECK(census_Nnsq0(f, w) == n0 + nnsq);
  }
  CHECK(error_code_of([&] { census_N0(f, 0); }) == Err::ZeroFrequency);
}

TEST_CASE("closed-form counter rows for an even-parity parameter set") {
  // p = 3, m = 4, s = 1, eps = +1; rows ordered N0 N1 N2 Nsq Nnsq Nsq0 Nnsq0.
  using K = CountKind;
  const std::vector<K> kinds = {K::N0, K::N1, K::N2, K::Nsq, K::Nnsq, K::Nsq0, K::Nnsq0};
  const std::vector<long long> off = {9, 9, 9, 9, 9, 18, 18};
  const std::vector<long long> zero = {9, 15, 3, 15, 3, 24, 12};
  const std::vector<long long> sq = {3, 9, 15, 9, 15, 12, 18};
  const std::vector<long long> nsq = {15, 3, 9, 3, 9, 18, 24};
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    CAPTURE(i);
    CHECK(closed_form_count(kinds[i], 3, 4, 1, 1, OmegaClass::Off) == off[i]);
    CHECK(closed_form_count(kinds[i], 3, 4, 1, 1, OmegaClass::Zero) == zero[i]);
    CHECK(closed_form_count(kinds[i], 3, 4, 1, 1, OmegaClass::Square) == sq[i]);
    CHECK(closed_form_count(kinds[i], 3, 4, 1, 1, OmegaClass::NonSquare) == nsq[i]);
  }
}

TEST_CASE("closed-form counter rows for an odd-parity parameter set") {
  // p = 3, m = 5, s = 2, eps = -1.
  using K = CountKind;
  const std::vector<K> kinds = {K::N0, K::N1, K::N2, K::Nsq, K::Nnsq, K::Nsq0, K::Nnsq0};
  const std::vector<long long> off = {27, 27, 27, 27, 27, 54, 54};
  const std::vector<long long> zero = {27, 45, 9, 45, 9, 72, 36};
  const std::vector<long long> sq = {9, 27, 45, 27, 45, 36, 54};
  const std::vector<long long> nsq = {45, 9, 27, 9, 27, 54, 72};
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    CAPTURE(i);
    CHECK(closed_form_count(kinds[i], 3, 5, 2, -1, OmegaClass::Off) == off[i]);
    CHECK(closed_form_count(kinds[i], 3, 5, 2, -1, OmegaClass::Zero) == zero[i]);
    CHECK(closed_form_count(kinds[i], 3, 5, 2, -1, OmegaClass::Square) == sq[i]);
    CHECK(closed_form_count(kinds[i], 3, 5, 2, -1, OmegaClass::NonSquare) == nsq[i]);
  }
}

TEST_CASE("closed-form counters can go negative at vacuous parameters") {
  // No function realizes p = 5, m = 3, s = 1 with a zero-class frequency and
  // these signs; the formula value is negative and is reported as-is rather
  // than clamped, so downstream consumers can detect vacuity.
  CHECK(closed_form_count(CountKind::N0, 5, 3, 1, -1, OmegaClass::Zero) == -11);
}

TEST_CASE("closed-form counter identities across a parameter sweep") {
  for (int p : {3, 5, 7}) {
    for (int m = 2; m <= 5; ++m) {
      for (int s = 0; s <= m; ++s) {
        if ((m + s) % 2 == 1 && m + s < 3) continue;
        if ((m + s) % 2 == 0 && m + s < 4) continue;
        for (int eps : {1, -1}) {
          for (OmegaClass cls :
               {OmegaClass::Off, OmegaClass::Zero, OmegaClass::Square, OmegaClass::NonSquare}) {
            CAPTURE(p);
            CAPTURE(m);
            CAPTURE(s);
            CAPTURE(eps);
            const long long n0 = closed_form_count(CountKind::N0, p, m, s, eps, cls);
            const long long nsq = closed_form_count(CountKind::Nsq, p, m, s, eps, cls);
            const long long nnsq = closed_form_count(CountKind::Nnsq, p, m, s, eps, cls);
            // Union identities tie the seven counters together.
            CHECK(closed_form_count(CountKind::Nsq0, p, m, s, eps, cls) == n0 + nsq);
            CHECK(closed_form_count(CountKind::Nnsq0, p, m, s, eps, cls) == n0 + nnsq);
            CHECK(n0 + nsq + nnsq == ipow(p, m - 1));
          }
        }
      }
    }
  }
}

TEST_CASE("closed-form counter guard rails") {
  CHECK(error_code_of([] {
          closed_form_count(CountKind::N0, 3, 1, 0, 1, OmegaClass::Zero);
        }) == Err::OutOfRange);
  CHECK(error_code_of([] {
          closed_form_count(CountKind::N0, 3, 4, 1, 2, OmegaClass::Zero);
        }) == Err::BadEntry);
  // m + s - 4 negative for the even branch.
  CHECK(error_code_of([] {
          closed_form_count(CountKind::N0, 3, 2, 0, 1, OmegaClass::Zero);
        }) == Err::OutOfRange);
}

TEST_CASE("profile-level closed-form wrappers dispatch on the frequency class") {
  const FieldCtx F = build_field(3, 4);
  const PlateauedProfile pr = classify(quadratic(F, {1, 1, 0}));

  // One representative frequency per class, from the pinned dual table.
  const ffelem off_w = 9;     // not in the support
  const ffelem zero_w = 3;    // dual 0
  const ffelem sq_w = 1;      // dual 1
  const ffelem nsq_w = 4;     // dual 2
  REQUIRE(omega_class(pr, off_w) == OmegaClass::Off);
  REQUIRE(omega_class(pr, zero_w) == OmegaClass::Zero);
  REQUIRE(omega_class(pr, sq_w) == OmegaClass::Square);
  REQUIRE(omega_class(pr, nsq_w) == OmegaClass::NonSquare);

  CHECK(closed_form_N0(pr, off_w) == 9);
  CHECK(closed_form_N0(pr, zero_w) == 9);
  CHECK(closed_form_N0(pr, sq_w) == 3);
  CHECK(closed_form_N0(pr, nsq_w) == 15);
  CHECK(closed_form_Nsq0(pr, zero_w) == 24);
  CHECK(closed_form_Nnsq0(pr, nsq_w) == 24);
  CHECK(error_code_of([&] { closed_form_N0(pr, 0); }) == Err::ZeroFrequency);
}
