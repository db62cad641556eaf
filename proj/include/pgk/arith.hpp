#pragma once

// Checked 64-bit integer helpers, residues mod p^k, and a small exact rational.

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include "pgk/error.hpp"

namespace pgk {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "int64 multiplication");
  return r;
}

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "int64 addition");
  return r;
}

/// p^k, throwing on overflow.
i64 ipow(i64 base, int exp);

/// Euclidean remainder in [0, m).
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<i128>(mod(a, m)) * mod(b, m) % m);
}

i64 powmod(i64 base, i64 exp, i64 m);

/// Inverse of a mod m; a must be coprime to m.
i64 invmod(i64 a, i64 m);

/// Largest k with p^k | n (n != 0).
int vp(i64 n, i64 p);

/// Largest k with p^k < 2^62, i.e. the deepest residue ring Z/p^k we can hold.
int max_digits(i64 p);

bool is_prime(i64 n);

/// Representative in (-m/2, m/2].
inline i64 balanced(i64 r, i64 m) {
  r = mod(r, m);
  return r > m / 2 ? r - m : r;
}

/// Exact rational with int64 parts, always normalized (den > 0, gcd 1).
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(i64 n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(i64 n, i64 d);

  i64 num() const { return num_; }
  i64 den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  i64 floor() const;
  i64 ceil() const;

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "n" or "n/d".
  std::string str() const;
  /// Parses "n" or "n/d".
  static Rational parse(const std::string& s);

 private:
  i64 num_ = 0;
  i64 den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Residue of an exact p-integral rational modulo p^k.
i64 rational_residue(const Rational& q, i64 p, int k);

/// Smallest positive integer generating (Z/p)^x.
i64 primitive_root(i64 p);

/// Teichmuller lift of u (a unit) modulo p^k.
i64 teichmuller(i64 u, i64 p, int k);

/// For odd p: writes a unit u = zeta^i (1+p)^x modulo p^k, where zeta is the Teichmuller
/// lift of primitive_root(p). Returns {i mod p-1, x mod p^(k-1)}.
std::pair<i64, i64> unit_decompose(i64 u, i64 p, int k);

/// Smallest t with p^t >= n (0 for n <= 1).
int ceil_log(i64 p, i64 n);

}  // namespace pgk
