#pragma once

#include <optional>
#include <string>

#include "pgk/character.hpp"

namespace pgk {

/// A point (delta1, delta2, L) of the trianguline parameter space; L = nullopt means infinity.
struct TriParam {
  CharacterP d1;
  CharacterP d2;
  std::optional<PadicScalar> L;

  /// Throws InvalidArgument when L is finite but delta1/delta2 is not special.
  void validate() const;
};

PadicScalar weight(const CharacterP& d);
Rational slope(const CharacterP& d);

/// Decided integrality of a p-adic number: the integer, nullopt if provably not an integer.
/// Inexact values that could still be integers raise InsufficientPrecision.
std::optional<i64> as_integer(const PadicScalar& x);

enum class SpecialKind { MinusI, AbsI, No };
struct SpecialPair {
  SpecialKind kind = SpecialKind::No;
  i64 i = 0;
  friend bool operator==(const SpecialPair&, const SpecialPair&) = default;
};
/// MinusI(i): eta = x^-i with i >= 0. AbsI(i): eta = |x| x^i with i >= 1.
SpecialPair is_special_pair(const CharacterP& eta);
std::string special_name(const SpecialPair& s);

/// dim Ext^1(R(delta2), R(delta1)).
int ext_dim(const CharacterP& d1, const CharacterP& d2);

enum class TriClass { NotSStar, Cris, St, Ng, NotIrrListed };
const char* tri_class_name(TriClass c);
TriClass classify(const TriParam& s);
inline bool in_s_irr(TriClass c) { return c == TriClass::Cris || c == TriClass::St || c == TriClass::Ng; }

/// s' = (x^w delta2, x^-w delta1, infinity) for s crystalline of weight w.
TriParam involution(const TriParam& s);
/// (x|x|)^-1 delta1 delta2^-1.
CharacterP delta_s(const TriParam& s);
/// (x|x|)^-1 delta1 delta2.
CharacterP delta_central(const TriParam& s);

}  // namespace pgk
