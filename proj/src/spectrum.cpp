#include "plateau/spectrum.hpp"

#include <algorithm>
#include <array>

#include "plateau/arith.hpp"
#include "plateau/threads.hpp"

namespace plateau {

namespace {

CycloInt cyclo_from_counts(int p, const long long* counts) {
  CycloInt out(p);
  const long long top = counts[p - 1];
  for (int i = 0; i < p - 1; ++i) out.coeffs[static_cast<std::size_t>(i)] = counts[i] - top;
  return out;
}

void assert_parseval(const PFunction& f, const WalshSpectrum& S) {
  const FieldCtx& F = *f.ctx;
  CycloInt total(F.p);
  for (const CycloInt& w : S.values) total = cy_add(total, norm_sq(w));
  const auto r = as_rational_int(total);
  require(r.has_value() && *r == pow_ll(F.p, 2 * F.m), Err::OverflowGuard,
          "Parseval identity failed; exact arithmetic was violated");
}

}  // namespace

WalshSpectrum walsh_transform(const PFunction& f) {
  const FieldCtx& F = *f.ctx;
  check_magnitude_guard(F.p, 2 * F.m);
  const long long q = F.q;

  WalshSpectrum S;
  S.p = F.p;
  S.values.assign(static_cast<std::size_t>(q), CycloInt(F.p));

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_count())
#endif
  for (long long w = 0; w < q; ++w) {
    // Bucket the exponents (f(x) - Tr(wx)) mod p, then canonicalize once.
    std::array<long long, 16> counts{};
    const std::int8_t* row = &F.trace_mul[static_cast<std::size_t>(w) * q];
    for (long long x = 0; x < q; ++x) {
      const int e = f.values[static_cast<std::size_t>(x)] - row[x];
      ++counts[static_cast<std::size_t>(e < 0 ? e + F.p : e)];
    }
    S.values[static_cast<std::size_t>(w)] = cyclo_from_counts(F.p, counts.data());
  }

  assert_parseval(f, S);
  return S;
}

WalshSpectrum walsh_transform_serial(const PFunction& f) {
  // Literal transcription of the defining sum, one zeta power at a time.
  const FieldCtx& F = *f.ctx;
  check_magnitude_guard(F.p, 2 * F.m);

  WalshSpectrum S;
  S.p = F.p;
  S.values.reserve(static_cast<std::size_t>(F.q));
  for (ffelem w = 0; w < F.q; ++w) {
    CycloInt acc(F.p);
    for (ffelem x = 0; x < F.q; ++x) {
      const int e = f(x) - F.trace_mul[static_cast<std::size_t>(w) * F.q + x];
      acc = cy_add(acc, CycloInt::zeta_pow(F.p, e));
    }
    S.values.push_back(acc);
  }

  assert_parseval(f, S);
  return S;
}

PlateauedProfile classify(const PFunction& f) {
  const FieldCtx& F = *f.ctx;
  const WalshSpectrum S = walsh_transform(f);
  const long long q = F.q;

  // Plateau test: a single nonzero |W|^2 level, necessarily rational.
  long long level = 0;
  std::vector<ffelem> support;
  std::vector<ffelem> bad;
  for (ffelem w = 0; w < q; ++w) {
    const CycloInt& W = S.values[static_cast<std::size_t>(w)];
    if (W.is_zero()) continue;
    const auto n = as_rational_int(norm_sq(W));
    if (!n.has_value()) {
      bad.push_back(w);
      continue;
    }
    if (level == 0) level = *n;
    if (*n != level) bad.push_back(w);
    support.push_back(w);
  }
  if (!bad.empty()) {
    throw ClassifyError(Err::NotPlateaued,
                        "|W|^2 takes more than one nonzero value (" +
                            std::to_string(bad.size()) + " offending frequencies, first " +
                            std::to_string(bad.front()) + ")",
                        bad);
  }

  // level = p^{m+s}: Parseval then forces #support = p^{m-s}.
  int exp = 0;
  long long lv = level;
  while (lv > 1 && lv % F.p == 0) {
    lv /= F.p;
    ++exp;
  }
  if (lv != 1 || exp < F.m || exp > 2 * F.m) {
    throw ClassifyError(Err::NotPlateaued,
                        "nonzero |W|^2 level " + std::to_string(level) +
                            " is not of the form p^{m+s}",
                        support);
  }

  PlateauedProfile pr;
  pr.p = F.p;
  pr.m = F.m;
  pr.s = exp - F.m;
  pr.parity = (F.m + pr.s) % 2;
  pr.support = support;
  pr.in_support.assign(static_cast<std::size_t>(q), 0);
  pr.dual.assign(static_cast<std::size_t>(q), 0);
  require(static_cast<long long>(support.size()) == pow_ll(F.p, F.m - pr.s), Err::NotPlateaued,
          "support size does not match the plateau level");

  // Weak regularity: every support value must be eps * zeta^a * G^{m+s}.
  // In the cases where that fails, the magnitude was still p^{(m+s)/2}, so
  // the value is a different unit multiple (the +-i-type case); report it
  // distinctly from the mixed-sign failure.
  const CycloInt gpow = sqrt_pstar_pow(F.p, F.m + pr.s);
  std::vector<CycloInt> cand_plus, cand_minus;
  for (int a = 0; a < F.p; ++a) {
    const CycloInt za = cy_mul(CycloInt::zeta_pow(F.p, a), gpow);
    cand_plus.push_back(za);
    cand_minus.push_back(cy_neg(za));
  }

  std::vector<ffelem> unmatched;
  std::vector<int> sign_of(support.size(), 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    const CycloInt& W = S.values[static_cast<std::size_t>(support[i])];
    int found_sign = 0;
    int found_a = -1;
    for (int a = 0; a < F.p && found_sign == 0; ++a) {
      if (W == cand_plus[static_cast<std::size_t>(a)]) {
        found_sign = 1;
        found_a = a;
      } else if (W == cand_minus[static_cast<std::size_t>(a)]) {
        found_sign = -1;
        found_a = a;
      }
    }
    if (found_sign == 0) {
      unmatched.push_back(support[i]);
      continue;
    }
    sign_of[i] = found_sign;
    pr.dual[static_cast<std::size_t>(support[i])] = static_cast<std::int8_t>(found_a);
    pr.in_support[static_cast<std::size_t>(support[i])] = 1;
  }
  if (!unmatched.empty()) {
    throw ClassifyError(Err::NotWeaklyRegular,
                        "support values are not +-zeta^a G^{m+s} at " +
                            std::to_string(unmatched.size()) + " frequencies (first " +
                            std::to_string(unmatched.front()) + "); unit is of the +-i type",
                        unmatched);
  }

  std::vector<ffelem> plus, minus;
  for (std::size_t i = 0; i < support.size(); ++i) {
    (sign_of[i] > 0 ? plus : minus).push_back(support[i]);
  }
  if (!plus.empty() && !minus.empty()) {
    // Report the minority sign group; a tie reports the minus group.
    const bool minus_is_minority = minus.size() <= plus.size();
    std::vector<ffelem>& minority = minus_is_minority ? minus : plus;
    throw ClassifyError(Err::NotWeaklyRegular,
                        "Walsh sign varies across the support (" + std::to_string(minority.size()) +
                            " of " + std::to_string(support.size()) + " frequencies carry sign " +
                            (minus_is_minority ? "-1" : "+1") + ")",
                        std::move(minority));
  }

  pr.epsilon = minus.empty() ? 1 : -1;
  pr.weakly_regular = true;
  pr.balanced = !pr.in_support[0];
  pr.wrpb = check_wrpb_conditions(f, pr.balanced);
  return pr;
}

std::vector<long long> dual_value_census(const PlateauedProfile& profile) {
  std::vector<long long> hist(static_cast<std::size_t>(profile.p), 0);
  for (ffelem w : profile.support) ++hist[static_cast<std::size_t>(profile.dual[w])];
  return hist;
}

std::vector<long long> closed_form_dual_census(int p, int m, int s, int epsilon) {
  const QuadChar chi = quad_char(p);
  std::vector<long long> out(static_cast<std::size_t>(p), 0);
  const long long base = pow_ll(p, m - s - 1);
  if ((m - s) % 2 == 0) {
    require(m - s >= 2, Err::OutOfRange, "dual census closed form needs m - s >= 2 when even");
    const long long dev = epsilon * eta_neg1_pow(p, m + 1) * sqrt_pstar_int_pow(p, m - s - 2);
    out[0] = base + dev * (p - 1);
    for (int a = 1; a < p; ++a) out[static_cast<std::size_t>(a)] = base - dev;
  } else {
    const long long dev = epsilon * eta_neg1_pow(p, m) * sqrt_pstar_int_pow(p, m - s - 1);
    out[0] = base;
    for (int a = 1; a < p; ++a) {
      out[static_cast<std::size_t>(a)] = chi.is_square(a) ? base + dev : base - dev;
    }
  }
  return out;
}

namespace {

// Shared census kernel: count x on the hyperplane Tr(omega x) = 0 whose
// f-value satisfies the predicate encoded as a bitmask over [0, p).
long long census_masked(const PFunction& f, ffelem omega, unsigned mask) {
  const FieldCtx& F = *f.ctx;
  require(omega != 0, Err::ZeroFrequency, "census counters need omega != 0");
  const long long q = F.q;
  const std::int8_t* row = &F.trace_mul[static_cast<std::size_t>(omega) * q];
  long long count = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : count) num_threads(worker_count())
#endif
  for (long long x = 0; x < q; ++x) {
    if (row[x] == 0 && (mask >> f.values[static_cast<std::size_t>(x)] & 1u)) ++count;
  }
  return count;
}

unsigned square_mask(const QuadChar& chi, bool with_zero) {
  unsigned mask = with_zero ? 1u : 0u;
  for (int a = 1; a < chi.p; ++a) {
    if (chi.is_square(a)) mask |= 1u << a;
  }
  return mask;
}

unsigned nonsquare_mask(const QuadChar& chi, bool with_zero) {
  unsigned mask = with_zero ? 1u : 0u;
  for (int a = 1; a < chi.p; ++a) {
    if (!chi.is_square(a)) mask |= 1u << a;
  }
  return mask;
}

}  // namespace

long long census_N0(const PFunction& f, ffelem omega) { return census_masked(f, omega, 1u); }
long long census_N1(const PFunction& f, ffelem omega) { return census_masked(f, omega, 1u << 1); }
long long census_N2(const PFunction& f, ffelem omega) { return census_masked(f, omega, 1u << 2); }

long long census_Nsq(const PFunction& f, ffelem omega) {
  return census_masked(f, omega, square_mask(f.ctx->chi, false));
}

long long census_Nnsq(const PFunction& f, ffelem omega) {
  return census_masked(f, omega, nonsquare_mask(f.ctx->chi, false));
}

long long census_Nsq0(const PFunction& f, ffelem omega) {
  return census_masked(f, omega, square_mask(f.ctx->chi, true));
}

long long census_Nnsq0(const PFunction& f, ffelem omega) {
  return census_masked(f, omega, nonsquare_mask(f.ctx->chi, true));
}

OmegaClass omega_class(const PlateauedProfile& profile, ffelem omega) {
  if (!profile.in_support[static_cast<std::size_t>(omega)]) return OmegaClass::Off;
  const int a = profile.dual[static_cast<std::size_t>(omega)];
  if (a == 0) return OmegaClass::Zero;
  return quad_char(profile.p).is_square(a) ? OmegaClass::Square : OmegaClass::NonSquare;
}

long long closed_form_count(CountKind which, int p, int m, int s, int epsilon, OmegaClass cls) {
  require(m >= 2, Err::OutOfRange, "counting lemmas need m >= 2");
  require(epsilon == 1 || epsilon == -1, Err::BadEntry, "epsilon must be +-1");
  const long long e = epsilon;
  const int et = eta_neg1(p);
  const bool even = (m + s) % 2 == 0;
  const long long pm2 = pow_ll(p, m - 2);

  switch (which) {
    case CountKind::N0: {
      if (cls == OmegaClass::Off) return pm2;
      if (even) {
        const long long g = sqrt_pstar_int_pow(p, m + s - 4);
        if (cls == OmegaClass::Zero) return pm2 + e * (p - 1) * (p - 1) * g;
        return pm2 - e * (p - 1) * g;
      }
      const long long g = sqrt_pstar_int_pow(p, m + s - 3);
      if (cls == OmegaClass::Zero) return pm2;
      return cls == OmegaClass::Square ? pm2 + e * (p - 1) * g : pm2 - e * (p - 1) * g;
    }
    case CountKind::Nsq: {
      if (cls == OmegaClass::Off) return exact_halve((p - 1) * pm2);
      if (even) {
        const long long g = sqrt_pstar_int_pow(p, m + s - 4);
        if (cls == OmegaClass::Square) return exact_halve((p - 1) * (pm2 + e * (p + 1) * g));
        return exact_halve((p - 1) * (pm2 - e * (p - 1) * g));
      }
      const long long g = sqrt_pstar_int_pow(p, m + s - 3);
      if (cls == OmegaClass::Zero) return exact_halve((p - 1) * (pm2 + e * et * (p - 1) * g));
      if (cls == OmegaClass::Square) return exact_halve((p - 1) * (pm2 - e * g * (et + 1)));
      return exact_halve((p - 1) * (pm2 - e * g * (et - 1)));
    }
    case CountKind::Nnsq: {
      if (cls == OmegaClass::Off) return exact_halve((p - 1) * pm2);
      if (even) {
        const long long g = sqrt_pstar_int_pow(p, m + s - 4);
        if (cls == OmegaClass::NonSquare) return exact_halve((p - 1) * (pm2 + e * (p + 1) * g));
        return exact_halve((p - 1) * (pm2 - e * (p - 1) * g));
      }
      const long long g = sqrt_pstar_int_pow(p, m + s - 3);
      if (cls == OmegaClass::Zero) return exact_halve((p - 1) * (pm2 - e * et * (p - 1) * g));
      if (cls == OmegaClass::Square) return exact_halve((p - 1) * (pm2 + e * g * (et - 1)));
      return exact_halve((p - 1) * (pm2 + e * g * (et + 1)));
    }
    case CountKind::N1: {
      const long long twice = 2 * closed_form_count(CountKind::Nsq, p, m, s, epsilon, cls);
      require(twice % (p - 1) == 0, Err::NonIntegerResult, "N1 average is not an integer");
      return twice / (p - 1);
    }
    case CountKind::N2: {
      const long long twice = 2 * closed_form_count(CountKind::Nnsq, p, m, s, epsilon, cls);
      require(twice % (p - 1) == 0, Err::NonIntegerResult, "N2 average is not an integer");
      return twice / (p - 1);
    }
    case CountKind::Nsq0: {
      if (cls == OmegaClass::Off) return exact_halve((p + 1) * pm2);
      if (even) {
        const long long g = sqrt_pstar_int_pow(p, m + s - 4);
        if (cls == OmegaClass::NonSquare) return exact_halve((p + 1) * (pm2 - e * (p - 1) * g));
        return exact_halve((p + 1) * pm2 + e * (p - 1) * (p - 1) * g);
      }
      const long long g = sqrt_pstar_int_pow(p, m + s - 3);
      if (cls == OmegaClass::Zero)
        return exact_halve((p + 1) * pm2 + e * et * (p - 1) * (p - 1) * g);
      if (cls == OmegaClass::Square) return exact_halve((p + 1) * pm2 - e * (p - 1) * g * (et - 1));
      return exact_halve((p + 1) * pm2 - e * (p - 1) * g * (et + 1));
    }
    case CountKind::Nnsq0: {
      if (cls == OmegaClass::Off) return exact_halve((p + 1) * pm2);
      if (even) {
        const long long g = sqrt_pstar_int_pow(p, m + s - 4);
        if (cls == OmegaClass::Square) return exact_halve((p + 1) * (pm2 - e * (p - 1) * g));
        return exact_halve((p + 1) * pm2 + e * (p - 1) * (p - 1) * g);
      }
      const long long g = sqrt_pstar_int_pow(p, m + s - 3);
      if (cls == OmegaClass::Zero)
        return exact_halve((p + 1) * pm2 - e * et * (p - 1) * (p - 1) * g);
      if (cls == OmegaClass::Square) return exact_halve((p + 1) * pm2 + e * (p - 1) * g * (et + 1));
      return exact_halve((p + 1) * pm2 + e * (p - 1) * g * (et - 1));
    }
  }
  fail(Err::UncoveredBranch, "unknown count kind");
}

namespace {

long long closed_form_dispatch(CountKind which, const PlateauedProfile& profile, ffelem omega) {
  require(omega != 0, Err::ZeroFrequency, "closed-form counters need omega != 0");
  return closed_form_count(which, profile.p, profile.m, profile.s, profile.epsilon,
                           omega_class(profile, omega));
}

}  // namespace

long long closed_form_N0(const PlateauedProfile& pr, ffelem w) {
  return closed_form_dispatch(CountKind::N0, pr, w);
}
long long closed_form_N1(const PlateauedProfile& pr, ffelem w) {
  return closed_form_dispatch(CountKind::N1, pr, w);
}
long long closed_form_N2(const PlateauedProfile& pr, ffelem w) {
  return closed_form_dispatch(CountKind::N2, pr, w);
}
long long closed_form_Nsq(const PlateauedProfile& pr, ffelem w) {
  return closed_form_dispatch(CountKind::Nsq, pr, w);
}
long long closed_form_Nnsq(const PlateauedProfile& pr, ffelem w) {
  return closed_form_dispatch(CountKind::Nnsq, pr, w);
}
long long closed_form_Nsq0(const PlateauedProfile& pr, ffelem w) {
  return closed_form_dispatch(CountKind::Nsq0, pr, w);
}
long long closed_form_Nnsq0(const PlateauedProfile& pr, ffelem w) {
  return closed_form_dispatch(CountKind::Nnsq0, pr, w);
}

}  // namespace plateau
