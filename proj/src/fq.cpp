#include "pgk/fq.hpp"

#include <vector>

#include "pgk/error.hpp"

namespace pgk {

i64 Fp2::nonresidue(i64 p) {
  for (i64 n = 2; n < p; ++n)
    if (powmod(n, (p - 1) / 2, p) == p - 1) return n;
  throw Error(Errc::InvalidArgument, "no non-residue mod " + std::to_string(p));
}

Fp2::Fp2(i64 p, i64 a, i64 b) : p_(p), a_(mod(a, p)), b_(mod(b, p)) {}

Fp2 operator+(const Fp2& x, const Fp2& y) { return Fp2(x.p_, x.a_ + y.a_, x.b_ + y.b_); }

Fp2 operator-(const Fp2& x, const Fp2& y) { return Fp2(x.p_, x.a_ - y.a_, x.b_ - y.b_); }

Fp2 operator*(const Fp2& x, const Fp2& y) {
  if (x.p_ != y.p_) throw Error(Errc::PrimeMismatch, "F_{p^2} elements over different primes");
  const i64 p = x.p_;
  i64 ac = mulmod(x.a_, y.a_, p), bd = mulmod(x.b_, y.b_, p);
  i64 cross = mod(mulmod(x.a_, y.b_, p) + mulmod(x.b_, y.a_, p), p);
  if (p == 2) return Fp2(p, ac + bd, cross + bd);  // s^2 = s + 1
  return Fp2(p, ac + mulmod(bd, Fp2::nonresidue(p), p), cross);
}

Fp2 Fp2::pow(i64 n) const {
  const i64 q1 = p_ * p_ - 1;
  if (n < 0) return inverse().pow(-n);
  n %= q1;
  Fp2 r(p_, 1), x = *this;
  while (n > 0) {
    if (n & 1) r = r * x;
    x = x * x;
    n >>= 1;
  }
  return r;
}

Fp2 Fp2::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of 0 in F_{p^2}");
  return pow(p_ * p_ - 2);
}

std::optional<Fp2> Fp2::sqrt() const {
  if (is_zero()) return *this;
  const i64 q = p_ * p_;
  if (p_ == 2) return pow(q / 2);  // Frobenius is bijective
  if (pow((q - 1) / 2) != Fp2(p_, 1)) return std::nullopt;
  // Tonelli-Shanks in the cyclic group of order q - 1
  i64 Q = q - 1, S = 0;
  while (Q % 2 == 0) Q /= 2, ++S;
  Fp2 z;
  for (i64 a = 0; a < p_; ++a)
    for (i64 b = 1; b < p_ && z.is_zero(); ++b) {
      Fp2 c(p_, a, b);
      if (c.pow((q - 1) / 2) != Fp2(p_, 1)) z = c;
    }
  i64 M = S;
  Fp2 c = z.pow(Q), t = pow(Q), R = pow((Q + 1) / 2);
  const Fp2 one(p_, 1);
  while (t != one) {
    i64 i = 0;
    Fp2 tt = t;
    while (tt != one) tt = tt * tt, ++i;
    Fp2 b = c;
    for (i64 j = 0; j < M - i - 1; ++j) b = b * b;
    M = i;
    c = b * b;
    t = t * c;
    R = R * b;
  }
  return R;
}

std::strong_ordering operator<=>(const Fp2& x, const Fp2& y) {
  if (auto c = x.a_ <=> y.a_; c != 0) return c;
  return x.b_ <=> y.b_;
}

std::string Fp2::str() const {
  if (b_ == 0) return std::to_string(a_);
  return std::to_string(a_) + "+" + std::to_string(b_) + "*s";
}

Fp2 Fp2::parse(const std::string& text, i64 p) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  try {
    auto plus = t.find('+', 1);
    if (plus == std::string::npos) {
      if (t.size() > 2 && t.substr(t.size() - 2) == "*s") return Fp2(p, 0, std::stoll(t.substr(0, t.size() - 2)));
      if (t == "s") return Fp2(p, 0, 1);
      return Fp2(p, std::stoll(t));
    }
    std::string lhs = t.substr(0, plus), rhs = t.substr(plus + 1);
    i64 b = rhs == "s" ? 1 : std::stoll(rhs.substr(0, rhs.find('*')));
    if (rhs != "s" && rhs.substr(rhs.find('*')) != "*s") throw Error(Errc::Parse, "bad F_{p^2} element: " + text);
    return Fp2(p, std::stoll(lhs), b);
  } catch (const std::logic_error&) {
    throw Error(Errc::Parse, "bad F_{p^2} element: " + text);
  }
}

std::pair<Fp2, Fp2> reciprocal_quadratic_roots(const Fp2& c) {
  const i64 p = c.prime();
  if (p == 2) {
    std::vector<Fp2> roots;
    for (i64 a = 0; a < 2; ++a)
      for (i64 b = 0; b < 2; ++b) {
        Fp2 x(p, a, b);
        if ((x * x - c * x + Fp2(p, 1)).is_zero()) roots.push_back(x);
      }
    if (roots.size() == 1) return {roots[0], roots[0]};
    return {roots[0], roots[1]};
  }
  Fp2 disc = c * c - Fp2(p, 4);
  Fp2 r = *disc.sqrt();
  Fp2 half = Fp2(p, 2).inverse();
  return {(c + r) * half, (c - r) * half};
}

}  // namespace pgk
