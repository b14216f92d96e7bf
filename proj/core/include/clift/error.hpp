#pragma once

#include <stdexcept>
#include <string>

namespace clift {

/// Error categories raised by the library. Mathematical outcomes such as an
/// obstructed lifting problem are reported in results, never thrown.
enum class Errc {
  NonPrime,
  IJNonzero,
  NotLocal,
  NotSurjective,
  NotHomomorphism,
  TargetMismatch,
  CharMismatch,
  CapExceeded,
  NotAssociative,
  NotUnital,
  NotCommutative,
  BadDimensions,
  NotInKernel,
  ShapeMismatch,
  LevelMismatch,
  NotACocycle,
  NotADifferential,
  NotCochainMap,
  NotAHomotopy,
  IncompatibleGradedLifts,
  NotInverse,
  Obstructed,
  InternalObstruction,
  NotHomotopyEquivalence,
  GuardUndecidable,
  CheckFailed,
  ParseError,
  SchemaMismatch,
  ValidationError,
  InvalidArgument,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

inline void require(bool condition, Errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace clift
