#include "pgk/arith.hpp"

#include <cstdlib>
#include <vector>

namespace pgk {

i64 ipow(i64 base, int exp) {
  if (exp < 0) throw Error(Errc::InvalidArgument, "negative exponent in ipow");
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

i64 powmod(i64 base, i64 exp, i64 m) {
  if (m == 1) return 0;
  i64 r = 1;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    i64 q = g / a1;
    i64 t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw Error(Errc::DivisionByZero, "non-invertible residue");
  return mod(x, m);
}

int vp(i64 n, i64 p) {
  if (n == 0) throw Error(Errc::InvalidArgument, "valuation of zero");
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

int max_digits(i64 p) {
  int k = 0;
  i128 acc = 1;
  while (acc * p < (static_cast<i128>(1) << 62)) {
    acc *= p;
    ++k;
  }
  return k;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Rational::Rational(i64 n, i64 d) {
  if (d == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i64 g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num_ = n / g;
  den_ = d / g;
}

i64 Rational::floor() const {
  i64 q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

i64 Rational::ceil() const { return -Rational(-num_, den_).floor(); }

Rational operator+(const Rational& a, const Rational& b) {
  i64 g = std::gcd(a.den_, b.den_);
  i64 l = checked_mul(a.den_ / g, b.den_);
  return Rational(checked_add(checked_mul(a.num_, l / a.den_), checked_mul(b.num_, l / b.den_)), l);
}

Rational operator*(const Rational& a, const Rational& b) {
  i64 g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
  i64 g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(Errc::DivisionByZero, "rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 l = static_cast<i128>(a.num_) * b.den_;
  i128 r = static_cast<i128>(b.num_) * a.den_;
  return l <=> r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw Error(Errc::Parse, "bad rational '" + s + "'");
  }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

i64 rational_residue(const Rational& q, i64 p, int k) {
  i64 m = ipow(p, k);
  if (q.den() % p == 0) throw Error(Errc::InvalidArgument, "rational is not p-integral");
  return mulmod(mod(q.num(), m), invmod(q.den(), m), m);
}

i64 primitive_root(i64 p) {
  if (p == 2) return 1;
  std::vector<i64> factors;
  i64 n = p - 1;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) factors.push_back(n);
  for (i64 g = 2; g < p; ++g) {
    bool ok = true;
    for (i64 q : factors)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw Error(Errc::InvalidArgument, "no primitive root; p is not prime");
}

i64 teichmuller(i64 u, i64 p, int k) {
  i64 m = ipow(p, k);
  if (mod(u, p) == 0) throw Error(Errc::InvalidArgument, "Teichmuller lift of a non-unit");
  i64 r = mod(u, m);
  for (int i = 1; i < k; ++i) r = powmod(r, p, m);
  return r;
}

std::pair<i64, i64> unit_decompose(i64 u, i64 p, int k) {
  if (p == 2) throw Error(Errc::InvalidArgument, "unit_decompose needs odd p");
  i64 m = ipow(p, k);
  i64 g = primitive_root(p);
  i64 target = mod(u, p);
  i64 i = 0;
  for (i64 acc = 1; acc != target; acc = acc * g % p) ++i;
  i64 zeta_i = powmod(teichmuller(g, p, k), i, m);
  i64 w = mulmod(mod(u, m), invmod(zeta_i, m), m);  // w = 1 mod p
  // Digit-by-digit: choose x mod p^j so that (1+p)^x = w mod p^(j+1).
  i64 x = 0, pj = 1;
  for (int j = 1; j < k; ++j) {
    i64 mod_next = ipow(p, j + 1);
    for (i64 d = 0; d < p; ++d) {
      i64 cand = x + d * pj;
      if (powmod(1 + p, cand, mod_next) == w % mod_next) {
        x = cand;
        break;
      }
    }
    pj *= p;
  }
  return {i, x};
}

int ceil_log(i64 p, i64 n) {
  int t = 0;
  i128 acc = 1;
  while (acc < n) {
    acc *= p;
    ++t;
  }
  return t;
}

}  // namespace pgk
