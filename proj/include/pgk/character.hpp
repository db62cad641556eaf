#pragma once

#include <string>

#include "pgk/padic_scalar.hpp"

namespace pgk {

/// Continuous character of Q_p^x given by its value c_p at p, the tame exponent j
/// (restriction to mu_{p-1} is omega^j) and the weight s (on 1+pZ_p it is z -> z^s).
///
/// x^k is (p^k, k, k) and |x| is (p^-1, 0, 0).
struct CharacterP {
  PadicScalar c_p;
  i64 j = 0;
  PadicScalar s;

  CharacterP(PadicScalar c, i64 tame, PadicScalar weight);

  i64 prime() const { return c_p.prime(); }

  static CharacterP trivial(i64 p);
  static CharacterP x_power(i64 p, i64 k);
  static CharacterP abs(i64 p);
  /// mu_c: trivial on Z_p^x, c at p.
  static CharacterP unramified(const PadicScalar& c);

  friend CharacterP operator*(const CharacterP& a, const CharacterP& b);
  CharacterP inverse() const;
  CharacterP pow(i64 n) const;
  friend CharacterP operator/(const CharacterP& a, const CharacterP& b) { return a * b.inverse(); }

  /// delta(q) for q in Q^x, as an element of Q_p known modulo p^digits relative to
  /// its valuation. The weight must lie in Z_p.
  PadicScalar value_at(const Rational& q, int digits) const;

  friend bool operator==(const CharacterP& a, const CharacterP& b);
  std::string str() const;
};

}  // namespace pgk
