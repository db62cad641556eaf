#pragma once

#include <compare>
#include <optional>
#include <string>

#include "pgk/arith.hpp"

namespace pgk {

/// Element a + b s of F_{p^2}. For odd p, s^2 = n with n the least non-residue;
/// for p = 2, s^2 = s + 1. Elements of F_p have b = 0.
class Fp2 {
 public:
  Fp2() = default;
  Fp2(i64 p, i64 a, i64 b = 0);

  i64 prime() const { return p_; }
  i64 a() const { return a_; }
  i64 b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool in_base() const { return b_ == 0; }

  friend Fp2 operator+(const Fp2& x, const Fp2& y);
  friend Fp2 operator-(const Fp2& x, const Fp2& y);
  Fp2 operator-() const { return Fp2(p_, -a_, -b_); }
  friend Fp2 operator*(const Fp2& x, const Fp2& y);
  friend Fp2 operator/(const Fp2& x, const Fp2& y) { return x * y.inverse(); }
  Fp2 inverse() const;
  Fp2 pow(i64 n) const;

  /// A square root in F_{p^2}, if one exists there.
  std::optional<Fp2> sqrt() const;

  friend bool operator==(const Fp2&, const Fp2&) = default;
  /// Lexicographic on (a, b); used only for canonical ordering.
  friend std::strong_ordering operator<=>(const Fp2& x, const Fp2& y);

  /// "a" or "a+b*s".
  std::string str() const;
  static Fp2 parse(const std::string& text, i64 p);

  /// n with s^2 = n (odd p).
  static i64 nonresidue(i64 p);

 private:
  i64 p_ = 2;
  i64 a_ = 0;
  i64 b_ = 0;
};

/// Roots of X^2 - c X + 1 in F_{p^2}, with c in F_p. Both roots, possibly equal.
std::pair<Fp2, Fp2> reciprocal_quadratic_roots(const Fp2& c);

}  // namespace pgk
