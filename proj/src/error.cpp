#include "pgk/error.hpp"

namespace pgk {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::PrimeMismatch: return "PrimeMismatch";
    case Errc::ZeroWithinPrecision: return "ZeroWithinPrecision";
    case Errc::InsufficientPrecision: return "InsufficientPrecision";
    case Errc::Overflow: return "Overflow";
    case Errc::RamifiedSum: return "RamifiedSum";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::SingularFrobenius: return "SingularFrobenius";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::WindowMiss: return "WindowMiss";
    case Errc::UnsupportedModule: return "UnsupportedModule";
    case Errc::NotPsiCompatible: return "NotPsiCompatible";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::BadWeight: return "BadWeight";
    case Errc::InvalidModule: return "InvalidModule";
    case Errc::NotCrystallineParameter: return "NotCrystallineParameter";
    case Errc::NotSemisimpleInput: return "NotSemisimpleInput";
    case Errc::NeedsFieldExtension: return "NeedsFieldExtension";
    case Errc::IrrationalEigenline: return "IrrationalEigenline";
    case Errc::RadiusOverflow: return "RadiusOverflow";
    case Errc::Parse: return "Parse";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pgk
