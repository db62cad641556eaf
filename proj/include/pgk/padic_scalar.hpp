#pragma once

#include <optional>
#include <string>
#include <utility>

#include "pgk/arith.hpp"

namespace pgk {

/// Element of a finite extension E/Q_p, seen through valuations and unit residues.
///
/// A nonzero value is pi^v * u where pi^e = p, v is an integer (so val_p = v/e), and
/// u lies in Z_p^x. The unit part is either an exact p-adic unit rational or a residue
/// known modulo p^prec. Zero is either exact or "zero to absolute precision", i.e. O(p^A).
///
/// Sums of nonzero terms whose pi-exponents differ modulo e leave this model (the unit
/// part would no longer be in Z_p) and raise RamifiedSum; use sum_valuation when only
/// the valuation of such a sum is needed.
class PadicScalar {
 public:
  enum class Kind { ExactZero, ZeroTo, Nonzero };

  static PadicScalar zero(i64 p, int e = 1);
  /// O(p^abs) with abs given as a multiple of 1/e.
  static PadicScalar zero_to(i64 p, Rational abs, int e = 1);
  static PadicScalar from_rational(i64 p, const Rational& q, int e = 1);
  static PadicScalar from_integer(i64 p, i64 n, int e = 1) { return from_rational(p, Rational(n), e); }
  /// pi^vnum * u with u known mod p^prec (u must be a unit mod p).
  static PadicScalar from_unit_residue(i64 p, i64 vnum, i64 u, int prec, int e = 1);
  /// Exact p^(vnum/e).
  static PadicScalar pi_power(i64 p, i64 vnum, int e = 1);
  /// Parses expressions such as "7", "-3*p^2 + p^4 + O(p^6)", "2*p^(1/2)", "1/3".
  static PadicScalar parse(const std::string& text, i64 p);

  i64 prime() const { return p_; }
  int ram() const { return e_; }
  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::ExactZero || (kind_ == Kind::Nonzero && exact_); }
  bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
  /// True for exact zero and for O(p^A).
  bool is_zero() const { return kind_ != Kind::Nonzero; }

  /// val_p, or nullopt when the value is (possibly) zero.
  std::optional<Rational> valuation() const;
  /// Known lower bound for val_p: the valuation itself, or A for O(p^A). Throws for exact zero.
  Rational valuation_lower_bound() const;
  /// Absolute precision val_p + relative digits; nullopt when exact.
  std::optional<Rational> abs_precision() const;
  /// Relative precision in p-digits; nullopt when exact. Only meaningful when nonzero.
  std::optional<int> rel_precision() const;

  /// pi-exponent of a nonzero value.
  i64 vnum() const { return vnum_; }
  /// Unit part modulo p^k; throws InsufficientPrecision if fewer digits are known.
  i64 unit_residue(int k) const;
  /// Unit part modulo p.
  i64 residue() const { return unit_residue(1); }
  /// Exact unit part, when exact and nonzero.
  std::optional<Rational> exact_unit() const;

  PadicScalar operator-() const;
  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
  PadicScalar inverse() const;
  PadicScalar pow(i64 n) const;

  /// Same value re-expressed with ramification index e2 (a multiple of e).
  PadicScalar with_ram(int e2) const;
  /// Forgets digits beyond relative precision k.
  PadicScalar truncated(int k) const;

  /// a - b is zero within the available precision.
  bool equals_within_precision(const PadicScalar& other) const { return (*this - other).is_zero(); }
  /// Structural equality (representation, not value).
  friend bool operator==(const PadicScalar& a, const PadicScalar& b);

  /// Re-parsable human-readable form.
  std::string str() const;

 private:
  PadicScalar() = default;

  i64 p_ = 2;
  int e_ = 1;
  Kind kind_ = Kind::ExactZero;
  i64 vnum_ = 0;  // valuation * e; for ZeroTo the absolute precision * e
  bool exact_ = true;
  Rational unit_q_{1};
  i64 unit_r_ = 0;
  int prec_ = 0;
};

/// Exact val_p(a + b) when it is decidable, including the ramified case where the sum
/// itself is not representable. Throws InsufficientPrecision otherwise.
std::optional<Rational> sum_valuation(const PadicScalar& a, const PadicScalar& b);

/// Root valuations of X^2 + c1 X + c0, ascending, read off the Newton polygon.
std::pair<Rational, Rational> quadratic_newton_slopes(const PadicScalar& c1, const PadicScalar& c0);

}  // namespace pgk
