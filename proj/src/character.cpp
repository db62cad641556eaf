#include "pgk/character.hpp"

namespace pgk {

namespace {

i64 tame_mod(i64 j, i64 p) { return p == 2 ? 0 : mod(j, p - 1); }

bool same_value(const PadicScalar& a, const PadicScalar& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (*a.valuation() != *b.valuation()) return false;
  return (a - b).is_zero();
}

// Residue of s in Z_p modulo p^k.
i64 zp_residue(const PadicScalar& s, int k) {
  i64 m = ipow(s.prime(), k);
  if (s.is_zero()) {
    if (!s.is_exact_zero() && s.valuation_lower_bound() < Rational(k))
      throw Error(Errc::InsufficientPrecision, "weight known to too few digits");
    return 0;
  }
  Rational v = *s.valuation();
  if (v < Rational(0) || !v.is_integer()) throw Error(Errc::InvalidArgument, "weight is not in Z_p");
  if (v >= Rational(k)) return 0;
  int vi = static_cast<int>(v.num());
  return mulmod(ipow(s.prime(), vi), s.unit_residue(k - vi), m);
}

}  // namespace

CharacterP::CharacterP(PadicScalar c, i64 tame, PadicScalar weight)
    : c_p(std::move(c)), j(tame_mod(tame, c_p.prime())), s(std::move(weight)) {
  if (c_p.is_zero()) throw Error(Errc::InvalidArgument, "character value at p must be nonzero");
  if (s.prime() != c_p.prime()) throw Error(Errc::PrimeMismatch, "character components over different primes");
}

CharacterP CharacterP::trivial(i64 p) {
  return CharacterP(PadicScalar::from_integer(p, 1), 0, PadicScalar::zero(p));
}

CharacterP CharacterP::x_power(i64 p, i64 k) {
  return CharacterP(PadicScalar::pi_power(p, k), k, PadicScalar::from_integer(p, k));
}

CharacterP CharacterP::abs(i64 p) { return CharacterP(PadicScalar::pi_power(p, -1), 0, PadicScalar::zero(p)); }

CharacterP CharacterP::unramified(const PadicScalar& c) {
  return CharacterP(c, 0, PadicScalar::zero(c.prime()));
}

CharacterP operator*(const CharacterP& a, const CharacterP& b) {
  return CharacterP(a.c_p * b.c_p, a.j + b.j, a.s + b.s);
}

CharacterP CharacterP::inverse() const { return CharacterP(c_p.inverse(), -j, -s); }

CharacterP CharacterP::pow(i64 n) const {
  return CharacterP(c_p.pow(n), checked_mul(j, n), s * PadicScalar::from_integer(prime(), n));
}

PadicScalar CharacterP::value_at(const Rational& q, int digits) const {
  i64 p = prime();
  if (q.num() == 0) throw Error(Errc::InvalidArgument, "character evaluated at 0");
  if (digits < 1) throw Error(Errc::InvalidArgument, "need at least one digit");
  i64 n = q.num(), d = q.den(), v = 0;
  while (n % p == 0) n /= p, ++v;
  while (d % p == 0) d /= p, --v;
  i64 m = ipow(p, digits);
  i64 u = rational_residue(Rational(n, d), p, digits);
  i64 unit;
  if (p == 2) {
    unit = 1;
  } else {
    i64 w = teichmuller(u, p, digits);
    i64 tame = powmod(w, j, m);
    i64 principal = mulmod(u, invmod(w, m), m);
    i64 wild = s.is_exact_zero() ? 1 : powmod(principal, zp_residue(s, std::max(1, digits - 1)), m);
    unit = mulmod(tame, wild, m);
  }
  return c_p.pow(v) * PadicScalar::from_unit_residue(p, 0, unit, digits);
}

bool operator==(const CharacterP& a, const CharacterP& b) {
  return a.prime() == b.prime() && a.j == b.j && same_value(a.c_p, b.c_p) && same_value(a.s, b.s);
}

std::string CharacterP::str() const {
  return "{c_p: " + c_p.str() + ", j: " + std::to_string(j) + ", s: " + s.str() + "}";
}

}  // namespace pgk
