#pragma once

#include <stdexcept>
#include <string>

namespace plateau {

enum class Err {
  CompositeP,
  ReduciblePolynomial,
  DivisionByZero,
  MixedRoots,
  OverflowGuard,
  BadLength,
  BadEntry,
  NotQuadratic,
  NotPlateaued,
  NotWeaklyRegular,
  ZeroFrequency,
  NonIntegerResult,
  NotBalanced,
  EmptySet,
  NotOrbitClosed,
  UncoveredBranch,
  RankDeficient,
  TooLarge,
  OutOfRange,
  InexactDivision,
  NotMinimal,
  NoWitnessFound,
  Usage,
};

const char* err_name(Err e);

class PlateauError : public std::runtime_error {
public:
  PlateauError(Err code, const std::string& detail)
      : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}

  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& detail) {
  throw PlateauError(code, detail);
}

inline void require(bool cond, Err code, const std::string& detail) {
  if (!cond) fail(code, detail);
}

}  // namespace plateau
