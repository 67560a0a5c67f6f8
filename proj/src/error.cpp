#include "kmw/error.hpp"

namespace kmw {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::ZeroInversion: return "ZeroInversion";
    case Errc::NonIrreducibleModulus: return "NonIrreducibleModulus";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::EvenPrimeForLegendre: return "EvenPrimeForLegendre";
    case Errc::InfinitePlace: return "InfinitePlace";
    case Errc::MixedFields: return "MixedFields";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::UnsupportedDegree: return "UnsupportedDegree";
    case Errc::UnsupportedPlace: return "UnsupportedPlace";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::ZeroEntry: return "ZeroEntry";
    case Errc::EvenQ: return "EvenQ";
    case Errc::TooSmallQ: return "TooSmallQ";
    case Errc::RelationNotKilled: return "RelationNotKilled";
    case Errc::DegenerateArguments: return "DegenerateArguments";
    case Errc::NonUnitArgument: return "NonUnitArgument";
    case Errc::MissingBound: return "MissingBound";
    case Errc::BadBound: return "BadBound";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace kmw
