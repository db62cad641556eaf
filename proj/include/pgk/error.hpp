#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgk {

enum class Errc {
  PrimeMismatch,
  ZeroWithinPrecision,
  InsufficientPrecision,
  Overflow,
  RamifiedSum,
  DivisionByZero,
  SingularFrobenius,
  EmptyWindow,
  WindowMiss,
  UnsupportedModule,
  NotPsiCompatible,
  RankMismatch,
  BadWeight,
  InvalidModule,
  NotCrystallineParameter,
  NotSemisimpleInput,
  NeedsFieldExtension,
  IrrationalEigenline,
  RadiusOverflow,
  Parse,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pgk
