#include "plateau/errors.hpp"

namespace plateau {

const char* err_name(Err e) {
  switch (e) {
    case Err::CompositeP: return "CompositeP";
    case Err::ReduciblePolynomial: return "ReduciblePolynomial";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::MixedRoots: return "MixedRoots";
    case Err::OverflowGuard: return "OverflowGuard";
    case Err::BadLength: return "BadLength";
    case Err::BadEntry: return "BadEntry";
    case Err::NotQuadratic: return "NotQuadratic";
    case Err::NotPlateaued: return "NotPlateaued";
    case Err::NotWeaklyRegular: return "NotWeaklyRegular";
    case Err::ZeroFrequency: return "ZeroFrequency";
    case Err::NonIntegerResult: return "NonIntegerResult";
    case Err::NotBalanced: return "NotBalanced";
    case Err::EmptySet: return "EmptySet";
    case Err::NotOrbitClosed: return "NotOrbitClosed";
    case Err::UncoveredBranch: return "UncoveredBranch";
    case Err::RankDeficient: return "RankDeficient";
    case Err::TooLarge: return "TooLarge";
    case Err::OutOfRange: return "OutOfRange";
    case Err::InexactDivision: return "InexactDivision";
    case Err::NotMinimal: return "NotMinimal";
    case Err::NoWitnessFound: return "NoWitnessFound";
    case Err::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace plateau
