#include "aristo/types.hpp"

namespace aristo {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SeparationTooSmall: return "SeparationTooSmall";
    case ErrorKind::InvalidOmega: return "InvalidOmega";
    case ErrorKind::TauOffCurve: return "TauOffCurve";
    case ErrorKind::MuExcluded: return "MuExcluded";
    case ErrorKind::NegativeBase: return "NegativeBase";
    case ErrorKind::DegenerateRoot: return "DegenerateRoot";
    case ErrorKind::SingularDirection: return "SingularDirection";
    case ErrorKind::NotSemiSymmetric: return "NotSemiSymmetric";
    case ErrorKind::EqualCouplings: return "EqualCouplings";
    case ErrorKind::ReducedSingular: return "ReducedSingular";
    case ErrorKind::NonPositiveLogArgument: return "NonPositiveLogArgument";
    case ErrorKind::VerticalSlope: return "VerticalSlope";
    case ErrorKind::ConformalSingular: return "ConformalSingular";
    case ErrorKind::VanishingH2: return "VanishingH2";
    case ErrorKind::ZeroCouplingC: return "ZeroCouplingC";
    case ErrorKind::NoValidBranch: return "NoValidBranch";
    case ErrorKind::DegenerateRoots: return "DegenerateRoots";
    case ErrorKind::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace aristo
