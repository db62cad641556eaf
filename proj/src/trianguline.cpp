#include "pgk/trianguline.hpp"

namespace pgk {

namespace {

CharacterP x_abs(i64 p) { return CharacterP::x_power(p, 1) * CharacterP::abs(p); }

// c == p^k, or nullopt when precision cannot tell.
std::optional<bool> is_p_power(const PadicScalar& c, i64 k) {
  if (c.is_zero()) return false;
  if (*c.valuation() != Rational(k)) return false;
  PadicScalar d = c - PadicScalar::pi_power(c.prime(), k * c.ram(), c.ram());
  if (d.is_exact_zero()) return true;
  if (d.is_zero()) return std::nullopt;
  return false;
}

}  // namespace

PadicScalar weight(const CharacterP& d) { return d.s; }

Rational slope(const CharacterP& d) { return *d.c_p.valuation(); }

std::optional<i64> as_integer(const PadicScalar& x) {
  if (x.is_exact_zero()) return 0;
  if (x.is_zero()) throw Error(Errc::InsufficientPrecision, "O(p^A) could be an integer or not");
  Rational v = *x.valuation();
  if (v < Rational(0) || !v.is_integer()) return std::nullopt;
  if (!x.is_exact()) throw Error(Errc::InsufficientPrecision, "integrality of an inexact p-adic integer is undecidable");
  Rational val = *x.exact_unit();
  for (i64 i = 0; i < v.num(); ++i) val = val * Rational(x.prime());
  if (!val.is_integer()) return std::nullopt;
  return val.num();
}

SpecialPair is_special_pair(const CharacterP& eta) {
  const i64 p = eta.prime();
  Rational v = slope(eta);
  if (!v.is_integer()) return {};
  const i64 vi = v.num();
  const i64 pm1 = p == 2 ? 1 : p - 1;
  SpecialKind kind;
  i64 n;  // the integer that s must equal
  if (vi <= 0 && mod(eta.j - vi, pm1) == 0) {
    kind = SpecialKind::MinusI;
    n = vi;
  } else if (vi >= 0 && mod(eta.j - (vi + 1), pm1) == 0) {
    kind = SpecialKind::AbsI;
    n = vi + 1;
  } else {
    return {};
  }
  auto cp = is_p_power(eta.c_p, vi);
  if (cp && !*cp) return {};
  auto si = as_integer(eta.s);
  if (!si || *si != n) return {};
  if (!cp) throw Error(Errc::InsufficientPrecision, "value at p too imprecise to match p^" + std::to_string(vi));
  return {kind, kind == SpecialKind::MinusI ? -n : n};
}

std::string special_name(const SpecialPair& s) {
  switch (s.kind) {
    case SpecialKind::MinusI: return "MINUS_I(" + std::to_string(s.i) + ")";
    case SpecialKind::AbsI: return "ABS_I(" + std::to_string(s.i) + ")";
    case SpecialKind::No: return "NO";
  }
  return "NO";
}

int ext_dim(const CharacterP& d1, const CharacterP& d2) {
  return is_special_pair(d1 / d2).kind == SpecialKind::No ? 1 : 2;
}

void TriParam::validate() const {
  if (d1.prime() != d2.prime()) throw Error(Errc::PrimeMismatch, "characters over different primes");
  if (L && is_special_pair(d1 / d2).kind == SpecialKind::No)
    throw Error(Errc::InvalidArgument, "finite L requires delta1/delta2 to be special");
}

const char* tri_class_name(TriClass c) {
  switch (c) {
    case TriClass::NotSStar: return "NOT_S_STAR";
    case TriClass::Cris: return "CRIS";
    case TriClass::St: return "ST";
    case TriClass::Ng: return "NG";
    case TriClass::NotIrrListed: return "NOT_IRR_LISTED";
  }
  return "NOT_S_STAR";
}

TriClass classify(const TriParam& s) {
  s.validate();
  Rational u1 = slope(s.d1), u2 = slope(s.d2);
  if (u1 + u2 != Rational(0) || u1 <= Rational(0)) return TriClass::NotSStar;
  auto w = as_integer(weight(s.d1) - weight(s.d2));
  if (!w || *w < 1) return TriClass::Ng;
  if (!(u1 < Rational(*w))) return TriClass::NotIrrListed;
  return s.L ? TriClass::St : TriClass::Cris;
}

TriParam involution(const TriParam& s) {
  if (classify(s) != TriClass::Cris) throw Error(Errc::NotCrystallineParameter, "involution needs s in S_cris");
  i64 w = *as_integer(weight(s.d1) - weight(s.d2));
  const i64 p = s.d1.prime();
  return TriParam{CharacterP::x_power(p, w) * s.d2, CharacterP::x_power(p, -w) * s.d1, std::nullopt};
}

CharacterP delta_s(const TriParam& s) { return x_abs(s.d1.prime()).inverse() * s.d1 / s.d2; }

CharacterP delta_central(const TriParam& s) { return x_abs(s.d1.prime()).inverse() * s.d1 * s.d2; }

}  // namespace pgk
