#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plateau/cyclo.hpp"
#include "plateau/pfunc.hpp"

namespace plateau {

struct WalshSpectrum {
  int p = 0;
  std::vector<CycloInt> values;  // indexed by omega encoding
};

// W_f(omega) = sum_x zeta^{f(x) - Tr(omega x)}. The parallel version is the
// production kernel; the serial version is an independent literal
// transcription of the defining sum, kept as a cross-check and benchmark
// baseline. Both assert Parseval: sum_omega |W|^2 = p^{2m}.
WalshSpectrum walsh_transform(const PFunction& f);
WalshSpectrum walsh_transform_serial(const PFunction& f);

// Classification failure carrying the offending frequencies.
class ClassifyError : public PlateauError {
 public:
  ClassifyError(Err code, const std::string& detail, std::vector<ffelem> offending)
      : PlateauError(code, detail), offending_(std::move(offending)) {}
  const std::vector<ffelem>& offending() const { return offending_; }

 private:
  std::vector<ffelem> offending_;
};

struct PlateauedProfile {
  int p = 0;
  int m = 0;
  int s = 0;                      // plateau order, in [0, m]
  int epsilon = 0;                // global Walsh sign, +1 or -1
  int parity = 0;                 // (m + s) mod 2
  bool balanced = false;          // W(0) = 0
  bool weakly_regular = false;    // always true for a returned profile
  std::vector<ffelem> support;    // S_f in ascending encoding order
  std::vector<std::int8_t> dual;  // f*(omega); 0 off-support by convention
  std::vector<char> in_support;   // length q indicator
  WrpbCertificate wrpb;
};

// Determines s from the unique nonzero |W|^2 level, then solves
// W(omega) = eps * G^{m+s} * zeta^a over the 2p candidates per support
// point. Throws ClassifyError with code NotPlateaued (several |W|^2 levels
// or an irrational level) or NotWeaklyRegular (a support value matching no
// candidate, or the sign varying across the support).
PlateauedProfile classify(const PFunction& f);

// Counts of each dual value over the Walsh support (length p).
std::vector<long long> dual_value_census(const PlateauedProfile& profile);

// Closed form for the same counts. Valid for any weakly regular plateaued
// function with f(0) = 0, balanced or not; for unbalanced functions the
// support contains 0 and the count of f*(0) includes it.
std::vector<long long> closed_form_dual_census(int p, int m, int s, int epsilon);

// Census counters: #{x in F_{p^m} : Tr(omega x) = 0 and f(x) in CLASS},
// where CLASS is value 0 / value 1 / value 2 / a nonzero square / a
// nonsquare / a square or zero / a nonsquare or zero. x = 0 participates
// (it always satisfies Tr(omega * 0) = 0).
long long census_N0(const PFunction& f, ffelem omega);
long long census_N1(const PFunction& f, ffelem omega);
long long census_N2(const PFunction& f, ffelem omega);
long long census_Nsq(const PFunction& f, ffelem omega);
long long census_Nnsq(const PFunction& f, ffelem omega);
long long census_Nsq0(const PFunction& f, ffelem omega);
long long census_Nnsq0(const PFunction& f, ffelem omega);

enum class CountKind { N0, N1, N2, Nsq, Nnsq, Nsq0, Nnsq0 };

// Class of a frequency relative to a profile: outside the support, or inside
// with dual value zero / a nonzero square / a nonsquare.
enum class OmegaClass { Off, Zero, Square, NonSquare };

OmegaClass omega_class(const PlateauedProfile& profile, ffelem omega);

// Parameter-level closed forms of the counting lemmas. The N1/N2 forms are
// the square/nonsquare averages 2*Nsq/(p-1) and 2*Nnsq/(p-1); their
// derivation identifies the value classes {1} and {2} with SQ and NSQ
// averages, which is exact when 2 is a nonsquare mod p (p = 3, 5 mod 8,
// covering every worked parameter set here) and is the documented form for
// all p. Preconditions: the profile parameters describe a weakly regular
// plateaued balanced function. NonIntegerResult if the expression does not
// evaluate to an integer; OutOfRange for parameter combinations whose
// Gauss-sum exponents go negative.
long long closed_form_count(CountKind which, int p, int m, int s, int epsilon, OmegaClass cls);

// Profile-level wrappers selecting the branch from (omega in support?,
// class of f*(omega)). ZeroFrequency if omega = 0.
long long closed_form_N0(const PlateauedProfile& profile, ffelem omega);
long long closed_form_N1(const PlateauedProfile& profile, ffelem omega);
long long closed_form_N2(const PlateauedProfile& profile, ffelem omega);
long long closed_form_Nsq(const PlateauedProfile& profile, ffelem omega);
long long closed_form_Nnsq(const PlateauedProfile& profile, ffelem omega);
long long closed_form_Nsq0(const PlateauedProfile& profile, ffelem omega);
long long closed_form_Nnsq0(const PlateauedProfile& profile, ffelem omega);

}  // namespace plateau
