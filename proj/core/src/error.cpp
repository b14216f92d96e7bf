#include "clift/error.hpp"

namespace clift {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::IJNonzero: return "IJNonzero";
    case Errc::NotLocal: return "NotLocal";
    case Errc::NotSurjective: return "NotSurjective";
    case Errc::NotHomomorphism: return "NotHomomorphism";
    case Errc::TargetMismatch: return "TargetMismatch";
    case Errc::CharMismatch: return "CharMismatch";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NotUnital: return "NotUnital";
    case Errc::NotCommutative: return "NotCommutative";
    case Errc::BadDimensions: return "BadDimensions";
    case Errc::NotInKernel: return "NotInKernel";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::NotACocycle: return "NotACocycle";
    case Errc::NotADifferential: return "NotADifferential";
    case Errc::NotCochainMap: return "NotCochainMap";
    case Errc::NotAHomotopy: return "NotAHomotopy";
    case Errc::IncompatibleGradedLifts: return "IncompatibleGradedLifts";
    case Errc::NotInverse: return "NotInverse";
    case Errc::Obstructed: return "Obstructed";
    case Errc::InternalObstruction: return "InternalObstruction";
    case Errc::NotHomotopyEquivalence: return "NotHomotopyEquivalence";
    case Errc::GuardUndecidable: return "GuardUndecidable";
    case Errc::CheckFailed: return "CheckFailed";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::ValidationError: return "ValidationError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace clift
