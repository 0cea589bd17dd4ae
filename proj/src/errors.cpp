#include "hopftwist/errors.hpp"

namespace hopftwist {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::ZeroG: return "ZeroG";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidCocycle: return "InvalidCocycle";
    case Errc::NotCrossed: return "NotCrossed";
    case Errc::NotIso: return "NotIso";
    case Errc::NotInKernel: return "NotInKernel";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::UnsupportedGenerator: return "UnsupportedGenerator";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::NonFinite: return "NonFinite";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::QuadratureDiverged: return "QuadratureDiverged";
    case Errc::UnsupportedSymbol: return "UnsupportedSymbol";
    case Errc::Parse: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc c, const std::string& what)
    : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}

}  // namespace hopftwist
