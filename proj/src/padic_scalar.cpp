#include "pgk/padic_scalar.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

namespace pgk {

namespace {

constexpr i64 kInf = std::numeric_limits<i64>::max() / 4;

// Digits kept when an exact computation overflows int64 and we fall back to residues.
int fallback_digits(i64 p) { return std::min(24, max_digits(p)); }

// Absolute precision in units of 1/e.
i64 abs_units(const PadicScalar& x) {
  switch (x.kind()) {
    case PadicScalar::Kind::ExactZero: return kInf;
    case PadicScalar::Kind::ZeroTo: return x.vnum();
    case PadicScalar::Kind::Nonzero: {
      auto rp = x.rel_precision();
      return rp ? x.vnum() + static_cast<i64>(*rp) * x.ram() : kInf;
    }
  }
  return kInf;
}

int common_ram(const PadicScalar& a, const PadicScalar& b) {
  if (a.prime() != b.prime()) throw Error(Errc::PrimeMismatch, "scalars over different primes");
  return std::lcm(a.ram(), b.ram());
}

}  // namespace

PadicScalar PadicScalar::zero(i64 p, int e) {
  if (p < 2) throw Error(Errc::InvalidArgument, "prime must be >= 2");
  PadicScalar z;
  z.p_ = p;
  z.e_ = e;
  return z;
}

PadicScalar PadicScalar::zero_to(i64 p, Rational abs, int e) {
  PadicScalar z = zero(p, e);
  Rational scaled = abs * Rational(e);
  if (!scaled.is_integer()) throw Error(Errc::InvalidArgument, "precision not a multiple of 1/e");
  z.kind_ = Kind::ZeroTo;
  z.vnum_ = scaled.num();
  return z;
}

PadicScalar PadicScalar::from_rational(i64 p, const Rational& q, int e) {
  PadicScalar x = zero(p, e);
  if (q.num() == 0) return x;
  i64 n = q.num(), d = q.den();
  i64 v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  x.kind_ = Kind::Nonzero;
  x.vnum_ = checked_mul(v, e);
  x.exact_ = true;
  x.unit_q_ = Rational(n, d);
  return x;
}

PadicScalar PadicScalar::from_unit_residue(i64 p, i64 vnum, i64 u, int prec, int e) {
  if (prec < 1) throw Error(Errc::InvalidArgument, "relative precision must be >= 1");
  if (prec > max_digits(p)) throw Error(Errc::Overflow, "precision exceeds int64 residues");
  if (mod(u, p) == 0) throw Error(Errc::InvalidArgument, "unit part divisible by p");
  PadicScalar x = zero(p, e);
  x.kind_ = Kind::Nonzero;
  x.vnum_ = vnum;
  x.exact_ = false;
  x.prec_ = prec;
  x.unit_r_ = mod(u, ipow(p, prec));
  return x;
}

PadicScalar PadicScalar::pi_power(i64 p, i64 vnum, int e) {
  PadicScalar x = from_rational(p, Rational(1), e);
  x.vnum_ = vnum;
  return x;
}

std::optional<Rational> PadicScalar::valuation() const {
  if (kind_ != Kind::Nonzero) return std::nullopt;
  return Rational(vnum_, e_);
}

Rational PadicScalar::valuation_lower_bound() const {
  if (kind_ == Kind::ExactZero) throw Error(Errc::ZeroWithinPrecision, "exact zero has infinite valuation");
  return Rational(vnum_, e_);
}

std::optional<Rational> PadicScalar::abs_precision() const {
  i64 a = abs_units(*this);
  if (a == kInf) return std::nullopt;
  return Rational(a, e_);
}

std::optional<int> PadicScalar::rel_precision() const {
  if (kind_ == Kind::Nonzero && !exact_) return prec_;
  if (kind_ == Kind::Nonzero) return std::nullopt;
  return 0;
}

i64 PadicScalar::unit_residue(int k) const {
  if (kind_ != Kind::Nonzero) throw Error(Errc::ZeroWithinPrecision, "unit part of zero");
  if (exact_) return rational_residue(unit_q_, p_, k);
  if (k > prec_) throw Error(Errc::InsufficientPrecision, "unit known only mod p^" + std::to_string(prec_));
  return mod(unit_r_, ipow(p_, k));
}

std::optional<Rational> PadicScalar::exact_unit() const {
  if (kind_ == Kind::Nonzero && exact_) return unit_q_;
  return std::nullopt;
}

PadicScalar PadicScalar::operator-() const {
  PadicScalar r = *this;
  if (kind_ != Kind::Nonzero) return r;
  if (exact_)
    r.unit_q_ = -unit_q_;
  else
    r.unit_r_ = mod(-unit_r_, ipow(p_, prec_));
  return r;
}

PadicScalar PadicScalar::with_ram(int e2) const {
  if (e2 % e_ != 0) throw Error(Errc::InvalidArgument, "ramification index must be a multiple");
  PadicScalar r = *this;
  r.e_ = e2;
  if (kind_ != Kind::ExactZero) r.vnum_ = checked_mul(vnum_, e2 / e_);
  return r;
}

PadicScalar PadicScalar::truncated(int k) const {
  if (kind_ != Kind::Nonzero) return *this;
  if (k <= 0) {
    PadicScalar z = zero(p_, e_);
    z.kind_ = Kind::ZeroTo;
    z.vnum_ = vnum_;
    return z;
  }
  if (!exact_ && prec_ <= k) return *this;
  k = std::min(k, max_digits(p_));
  return from_unit_residue(p_, vnum_, unit_residue(k), k, e_);
}

PadicScalar operator+(const PadicScalar& a0, const PadicScalar& b0) {
  int e = common_ram(a0, b0);
  PadicScalar a = a0.with_ram(e), b = b0.with_ram(e);
  if (a.kind_ == PadicScalar::Kind::ExactZero) return b;
  if (b.kind_ == PadicScalar::Kind::ExactZero) return a;
  i64 abs = std::min(abs_units(a), abs_units(b));

  const PadicScalar* terms[2];
  int n = 0;
  for (const PadicScalar* t : {&a, &b})
    if (t->kind_ == PadicScalar::Kind::Nonzero && t->vnum_ < abs) terms[n++] = t;

  // Every pi-exponent involved must agree modulo e for the sum to stay in the model.
  auto same_class = [e](i64 x, i64 y) { return mod(x - y, e) == 0; };
  if (n == 0) return PadicScalar::zero_to(a.p_, Rational(abs, e), e);
  if (abs != kInf && !same_class(terms[0]->vnum_, abs))
    throw Error(Errc::RamifiedSum, "precision bound and value in different pi-classes");
  if (n == 1) {
    const PadicScalar& t = *terms[0];
    if (abs == kInf) return t;
    return t.truncated(static_cast<int>((abs - t.vnum_) / e));
  }
  if (!same_class(terms[0]->vnum_, terms[1]->vnum_))
    throw Error(Errc::RamifiedSum, "sum of scalars in different pi-classes");
  const PadicScalar& lo = terms[0]->vnum_ <= terms[1]->vnum_ ? *terms[0] : *terms[1];
  const PadicScalar& hi = terms[0]->vnum_ <= terms[1]->vnum_ ? *terms[1] : *terms[0];
  const i64 p = a.p_;
  const i64 shift = (hi.vnum_ - lo.vnum_) / e;

  if (abs == kInf) {
    try {
      Rational q = lo.unit_q_ + hi.unit_q_ * Rational(ipow(p, static_cast<int>(shift)));
      if (q.num() == 0) return PadicScalar::zero(p, e);
      PadicScalar r = PadicScalar::from_rational(p, q, e);
      r.vnum_ += lo.vnum_;
      return r;
    } catch (const Error& err) {
      if (err.code() != Errc::Overflow) throw;
      int k = fallback_digits(p);
      return lo.truncated(k) + hi.truncated(k);
    }
  }

  const int avail = static_cast<int>(std::min<i64>((abs - lo.vnum_) / e, max_digits(p)));
  const i64 m = ipow(p, avail);
  i64 s = lo.unit_residue(avail);
  if (shift < avail)
    s = mod(s + mulmod(ipow(p, static_cast<int>(shift)), hi.unit_residue(avail - static_cast<int>(shift)), m), m);
  if (s == 0) return PadicScalar::zero_to(p, Rational(lo.vnum_ + static_cast<i64>(avail) * e, e), e);
  int k = vp(s, p);
  return PadicScalar::from_unit_residue(p, lo.vnum_ + static_cast<i64>(k) * e, s / ipow(p, k), avail - k, e);
}

PadicScalar operator*(const PadicScalar& a0, const PadicScalar& b0) {
  int e = common_ram(a0, b0);
  PadicScalar a = a0.with_ram(e), b = b0.with_ram(e);
  using K = PadicScalar::Kind;
  if (a.kind_ == K::ExactZero || b.kind_ == K::ExactZero) return PadicScalar::zero(a.p_, e);
  if (a.kind_ == K::ZeroTo || b.kind_ == K::ZeroTo) {
    // O(p^A) times anything of valuation >= v is O(p^(A+v)).
    i64 bound = checked_add(a.vnum_, b.vnum_);
    return PadicScalar::zero_to(a.p_, Rational(bound, e), e);
  }
  PadicScalar r = a;
  r.vnum_ = checked_add(a.vnum_, b.vnum_);
  if (a.exact_ && b.exact_) {
    try {
      r.unit_q_ = a.unit_q_ * b.unit_q_;
      return r;
    } catch (const Error& err) {
      if (err.code() != Errc::Overflow) throw;
      int k = fallback_digits(a.p_);
      return a.truncated(k) * b.truncated(k);
    }
  }
  int k = std::min(a.exact_ ? std::numeric_limits<int>::max() : a.prec_,
                   b.exact_ ? std::numeric_limits<int>::max() : b.prec_);
  r.exact_ = false;
  r.prec_ = k;
  r.unit_r_ = mulmod(a.unit_residue(k), b.unit_residue(k), ipow(a.p_, k));
  return r;
}

PadicScalar PadicScalar::inverse() const {
  if (kind_ == Kind::ExactZero) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (kind_ == Kind::ZeroTo) throw Error(Errc::ZeroWithinPrecision, "inverse of O(p^A)");
  PadicScalar r = *this;
  r.vnum_ = -vnum_;
  if (exact_)
    r.unit_q_ = Rational(1) / unit_q_;
  else
    r.unit_r_ = invmod(unit_r_, ipow(p_, prec_));
  return r;
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a * b.inverse(); }

PadicScalar PadicScalar::pow(i64 n) const {
  if (n < 0) return inverse().pow(-n);
  PadicScalar r = from_rational(p_, Rational(1), e_);
  PadicScalar base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

bool operator==(const PadicScalar& a, const PadicScalar& b) {
  if (a.p_ != b.p_ || a.e_ != b.e_ || a.kind_ != b.kind_) return false;
  if (a.kind_ == PadicScalar::Kind::ExactZero) return true;
  if (a.vnum_ != b.vnum_) return false;
  if (a.kind_ == PadicScalar::Kind::ZeroTo) return true;
  if (a.exact_ != b.exact_) return false;
  if (a.exact_) return a.unit_q_ == b.unit_q_;
  return a.prec_ == b.prec_ && a.unit_r_ == b.unit_r_;
}

namespace {

std::string power_str(i64 vnum, int e) {
  Rational v(vnum, e);
  if (v.is_integer()) return v.num() == 1 ? "p" : "p^" + std::to_string(v.num());
  return "p^(" + v.str() + ")";
}

}  // namespace

std::string PadicScalar::str() const {
  switch (kind_) {
    case Kind::ExactZero: return "0";
    case Kind::ZeroTo: return "O(" + power_str(vnum_, e_) + ")";
    case Kind::Nonzero: break;
  }
  std::string unit = exact_ ? unit_q_.str() : std::to_string(balanced(unit_r_, ipow(p_, prec_)));
  std::string body = vnum_ == 0 ? unit : unit + "*" + power_str(vnum_, e_);
  if (exact_) return body;
  return body + " + O(" + power_str(vnum_ + static_cast<i64>(prec_) * e_, e_) + ")";
}

// ---------------------------------------------------------------------------
// Parser: sums of products of integers, rationals, powers of p and O(p^k).

namespace {

class ScalarParser {
 public:
  ScalarParser(const std::string& s, i64 p) : s_(s), p_(p) {}

  PadicScalar run() {
    PadicScalar r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::Parse, why + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  i64 integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    try {
      return std::stoll(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }
  // Exponent of p: integer, -integer, or (n/d).
  Rational exponent() {
    if (eat('(')) {
      bool neg = eat('-');
      i64 n = integer();
      i64 d = 1;
      if (eat('/')) d = integer();
      if (!eat(')')) fail("expected ')'");
      return Rational(neg ? -n : n, d);
    }
    bool neg = eat('-');
    i64 n = integer();
    return Rational(neg ? -n : n);
  }
  PadicScalar power_of_p() {
    Rational v = eat('^') ? exponent() : Rational(1);
    return PadicScalar::pi_power(p_, v.num(), static_cast<int>(v.den()));
  }
  PadicScalar factor() {
    skip();
    if (eat('-')) return -factor();
    if (eat('(')) {
      PadicScalar r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (pos_ < s_.size() && s_[pos_] == 'O') {
      ++pos_;
      if (!eat('(') || !eat('p')) fail("expected O(p^k)");
      Rational v = eat('^') ? exponent() : Rational(1);
      if (!eat(')')) fail("expected ')'");
      return PadicScalar::zero_to(p_, v, static_cast<int>(v.den()));
    }
    if (pos_ < s_.size() && s_[pos_] == 'p') {
      ++pos_;
      return power_of_p();
    }
    return PadicScalar::from_integer(p_, integer());
  }
  PadicScalar term() {
    PadicScalar r = factor();
    for (;;) {
      if (eat('*'))
        r = r * factor();
      else if (eat('/'))
        r = r / factor();
      else
        return r;
    }
  }
  PadicScalar expr() {
    PadicScalar r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  const std::string& s_;
  i64 p_;
  size_t pos_ = 0;
};

}  // namespace

PadicScalar PadicScalar::parse(const std::string& text, i64 p) { return ScalarParser(text, p).run(); }

std::optional<Rational> sum_valuation(const PadicScalar& a, const PadicScalar& b) {
  using K = PadicScalar::Kind;
  if (a.kind() == K::ExactZero) return b.valuation();
  if (b.kind() == K::ExactZero) return a.valuation();
  if (a.kind() == K::Nonzero && b.kind() == K::Nonzero) {
    if (*a.valuation() != *b.valuation()) return std::min(*a.valuation(), *b.valuation());
  } else if (a.kind() == K::Nonzero || b.kind() == K::Nonzero) {
    const PadicScalar& nz = a.kind() == K::Nonzero ? a : b;
    const PadicScalar& z = a.kind() == K::Nonzero ? b : a;
    if (*nz.valuation() < z.valuation_lower_bound()) return nz.valuation();
    throw Error(Errc::InsufficientPrecision, "valuation of sum hidden by O(p^A)");
  } else {
    throw Error(Errc::InsufficientPrecision, "sum of two O(p^A) terms");
  }
  PadicScalar s = a + b;
  if (s.is_exact_zero()) return std::nullopt;
  if (s.is_zero()) throw Error(Errc::InsufficientPrecision, "cancellation exhausts precision");
  return s.valuation();
}

std::pair<Rational, Rational> quadratic_newton_slopes(const PadicScalar& c1, const PadicScalar& c0) {
  if (c0.is_exact_zero()) throw Error(Errc::InvalidArgument, "constant term must be nonzero");
  if (c0.is_zero()) throw Error(Errc::InsufficientPrecision, "constant term indistinguishable from zero");
  Rational v0 = *c0.valuation();
  Rational half = v0 / Rational(2);
  if (c1.is_exact_zero()) return {half, half};
  if (c1.is_zero()) {
    if (c1.valuation_lower_bound() >= half) return {half, half};
    throw Error(Errc::InsufficientPrecision, "cannot compare val(c1) with val(c0)/2");
  }
  Rational v1 = *c1.valuation();
  if (v1 * Rational(2) < v0) return {v1, v0 - v1};
  return {half, half};
}

}  // namespace pgk
