#include "pgk/laurent_series.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace pgk {

namespace {

LaurentSeries::Ring join_ring(LaurentSeries::Ring a, LaurentSeries::Ring b) {
  using R = LaurentSeries::Ring;
  if (a == b) return a;
  if (a == R::EDagger) return b;
  if (b == R::EDagger) return a;
  throw Error(Errc::InvalidArgument, "mixing elements of E and of the Robba ring");
}

void check_prime(const LaurentSeries& f, const LaurentSeries& g) {
  if (f.prime() != g.prime()) throw Error(Errc::PrimeMismatch, "series over different primes");
}

}  // namespace

const char* ring_name(LaurentSeries::Ring r) {
  switch (r) {
    case LaurentSeries::Ring::E: return "E";
    case LaurentSeries::Ring::EDagger: return "E_dagger";
    case LaurentSeries::Ring::Robba: return "Robba";
  }
  return "E";
}

LaurentSeries::Ring parse_ring(const std::string& s) {
  if (s == "E") return LaurentSeries::Ring::E;
  if (s == "E_dagger") return LaurentSeries::Ring::EDagger;
  if (s == "Robba") return LaurentSeries::Ring::Robba;
  throw Error(Errc::Parse, "unknown ring '" + s + "'");
}

std::vector<i64> binomials_mod(i64 n, i64 count, i64 p, int a) {
  if (n < 0) throw Error(Errc::InvalidArgument, "binomials_mod needs n >= 0");
  i64 m = ipow(p, a);
  std::vector<i64> out(static_cast<size_t>(std::max<i64>(count, 0)), 0);
  if (count <= 0) return out;
  // C(n,k) = p^v * u, tracked separately so the division by k stays exact.
  i64 v = 0, u = 1 % m;
  out[0] = u;
  for (i64 k = 0; k + 1 < count; ++k) {
    i64 num = n - k;
    if (num == 0) break;
    int vn = vp(num, p);
    int vd = vp(k + 1, p);
    i64 un = num, ud = k + 1;
    for (int i = 0; i < vn; ++i) un /= p;
    for (int i = 0; i < vd; ++i) ud /= p;
    v += vn - vd;
    u = mulmod(mulmod(u, un, m), invmod(ud, m), m);
    out[static_cast<size_t>(k + 1)] = v >= a ? 0 : mulmod(u, ipow(p, static_cast<int>(v)), m);
  }
  return out;
}

LaurentSeries::LaurentSeries(i64 p, int a, i64 N, Ring ring) : p_(p), a_(a), N_(N), ring_(ring) {
  if (p < 2) throw Error(Errc::InvalidArgument, "prime must be >= 2");
  if (a < 1 || a > max_digits(p)) throw Error(Errc::InvalidArgument, "p-precision out of range");
  m_ = ipow(p, a);
  off_ = N;
}

LaurentSeries LaurentSeries::from_terms(i64 p, int a, i64 N, const std::vector<std::pair<i64, i64>>& terms,
                                        Ring ring) {
  LaurentSeries f(p, a, N, ring);
  i64 lo = N, hi = std::numeric_limits<i64>::min();
  for (auto& [d, c] : terms) {
    if (d >= N) continue;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (lo > hi) return f;
  f.off_ = lo;
  f.c_.assign(static_cast<size_t>(hi - lo + 1), 0);
  for (auto& [d, c] : terms) {
    if (d >= N) continue;
    auto& slot = f.c_[static_cast<size_t>(d - lo)];
    slot = (slot + mod(c, f.m_)) % f.m_;
  }
  f.normalize();
  return f;
}

LaurentSeries LaurentSeries::monomial(i64 p, int a, i64 N, i64 deg, i64 coef) {
  return from_terms(p, a, N, {{deg, coef}});
}

LaurentSeries LaurentSeries::one_plus_x_pow(i64 p, int a, i64 N, i64 z, int L) {
  if (L < a + ceil_log(p, N))
    throw Error(Errc::InsufficientPrecision, "exponent known mod p^" + std::to_string(L) + ", need p^" +
                                                 std::to_string(a + ceil_log(p, N)));
  if (L > max_digits(p)) throw Error(Errc::Overflow, "exponent precision exceeds int64");
  i64 rep = mod(z, ipow(p, L));
  auto b = binomials_mod(rep, std::max<i64>(N, 0), p, a);
  std::vector<std::pair<i64, i64>> t;
  for (size_t k = 0; k < b.size(); ++k)
    if (b[k]) t.emplace_back(static_cast<i64>(k), b[k]);
  return from_terms(p, a, N, t);
}

LaurentSeries LaurentSeries::with_ring(Ring r) const {
  LaurentSeries f = *this;
  f.ring_ = r;
  return f;
}

void LaurentSeries::normalize() {
  while (!c_.empty() && off_ + static_cast<i64>(c_.size()) - 1 >= N_) c_.pop_back();
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    off_ = N_;
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    off_ += static_cast<i64>(lead);
  }
}

i64 LaurentSeries::coeff(i64 d) const {
  if (d >= N_) throw Error(Errc::InsufficientPrecision, "coefficient of X^" + std::to_string(d) + " beyond O(X^" +
                                                             std::to_string(N_) + ")");
  return at(d);
}

std::vector<std::pair<i64, i64>> LaurentSeries::terms() const {
  std::vector<std::pair<i64, i64>> t;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) t.emplace_back(off_ + static_cast<i64>(i), c_[i]);
  return t;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries f = *this;
  for (auto& c : f.c_) c = c ? f.m_ - c : 0;
  return f;
}

LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g) {
  check_prime(f, g);
  int a = std::min(f.a_, g.a_);
  LaurentSeries r(f.p_, a, std::min(f.N_, g.N_), join_ring(f.ring_, g.ring_));
  if (f.is_zero() && g.is_zero()) return r;
  i64 lo = std::min(f.dmin(), g.dmin());
  i64 hi = std::min(r.N_ - 1, std::max(f.is_zero() ? lo : f.dmax(), g.is_zero() ? lo : g.dmax()));
  if (lo > hi) return r;
  r.off_ = lo;
  r.c_.resize(static_cast<size_t>(hi - lo + 1));
  for (i64 d = lo; d <= hi; ++d) r.c_[static_cast<size_t>(d - lo)] = (f.at(d) + g.at(d)) % r.m_;
  r.normalize();
  return r;
}

LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g) { return f + (-g); }

LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) {
  check_prime(f, g);
  int a = std::min(f.a_, g.a_);
  i64 n = std::min(f.N_ + g.dmin(), g.N_ + f.dmin());
  n = std::min(n, LaurentSeries::kExact);
  LaurentSeries r(f.p_, a, n, join_ring(f.ring_, g.ring_));
  if (f.is_zero() || g.is_zero()) return r;
  i64 lo = f.off_ + g.off_;
  i64 hi = std::min(n - 1, f.dmax() + g.dmax());
  if (lo > hi) return r;
  i64 m = r.m_;
  std::vector<i128> acc(static_cast<size_t>(hi - lo + 1), 0);
  // Accumulate in 128 bits and reduce occasionally; products are < 2^124.
  const i128 limit = static_cast<i128>(1) << 125;
  for (size_t i = 0; i < f.c_.size(); ++i) {
    i64 fi = f.c_[i] % m;
    if (!fi) continue;
    i64 base = static_cast<i64>(i);
    if (hi - lo - base < 0) break;
    size_t jmax = static_cast<size_t>(std::min<i64>(static_cast<i64>(g.c_.size()) - 1, hi - lo - base));
    for (size_t j = 0; j <= jmax; ++j) {
      i128& s = acc[i + j];
      s += static_cast<i128>(fi) * (g.c_[j] % m);
      if (s >= limit) s %= m;
    }
  }
  r.off_ = lo;
  r.c_.resize(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<i64>(acc[i] % m);
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::scaled(i64 c) const {
  LaurentSeries f = *this;
  i64 cm = mod(c, m_);
  for (auto& x : f.c_) x = mulmod(x, cm, m_);
  f.normalize();
  return f;
}

LaurentSeries LaurentSeries::shifted(i64 k) const {
  LaurentSeries f = *this;
  f.N_ = N_ >= kExact ? kExact : N_ + k;
  f.off_ = c_.empty() ? f.N_ : off_ + k;
  return f;
}

LaurentSeries LaurentSeries::truncated(i64 n) const {
  if (n >= N_) return *this;
  LaurentSeries f = *this;
  f.N_ = n;
  f.normalize();
  if (f.c_.empty()) f.off_ = n;
  return f;
}

LaurentSeries LaurentSeries::reduced(int b) const {
  if (b >= a_) return *this;
  LaurentSeries f(p_, b, N_, ring_);
  f.off_ = off_;
  f.c_ = c_;
  for (auto& x : f.c_) x %= f.m_;
  f.normalize();
  return f;
}

LaurentSeries LaurentSeries::pow(i64 n) const {
  if (n < 0) return inverse().pow(-n);
  LaurentSeries result = constant(p_, a_, kExact, 1).with_ring(ring_);
  LaurentSeries base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

LaurentSeries LaurentSeries::inverse() const {
  i64 d0 = N_;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] % p_ != 0) {
      d0 = off_ + static_cast<i64>(i);
      break;
    }
  if (d0 >= N_) throw Error(Errc::ZeroWithinPrecision, "series is not a unit (vanishes mod p)");
  LaurentSeries F = shifted(-d0);
  i64 nf = F.N_;
  if (nf >= kExact) {
    if (F.dmin() == 0 && F.dmax() == 0) return constant(p_, a_, kExact, invmod(F.at(0), m_)).with_ring(ring_).shifted(-d0);
    throw Error(Errc::InsufficientPrecision, "inverse of an exact non-monomial needs a finite X-precision");
  }
  // Power-series part F_+ and the p-divisible polar part F_-.
  std::vector<i64> fp(static_cast<size_t>(std::max<i64>(nf, 0)), 0);
  std::vector<std::pair<i64, i64>> polar;
  for (auto& [d, c] : F.terms()) {
    if (d < 0)
      polar.emplace_back(d, c);
    else
      fp[static_cast<size_t>(d)] = c;
  }
  i64 inv0 = invmod(fp[0], m_);
  std::vector<i64> g(fp.size(), 0);
  g[0] = inv0;
  for (size_t n = 1; n < g.size(); ++n) {
    i128 s = 0;
    for (size_t i = 1; i <= n; ++i)
      if (fp[i]) s = (s + static_cast<i128>(fp[i]) * g[n - i]) % m_;
    g[n] = mulmod(m_ - static_cast<i64>(s), inv0, m_);
  }
  std::vector<std::pair<i64, i64>> gt;
  for (size_t i = 0; i < g.size(); ++i)
    if (g[i]) gt.emplace_back(static_cast<i64>(i), g[i]);
  LaurentSeries g0 = from_terms(p_, a_, nf, gt, ring_);
  if (polar.empty()) return g0.shifted(-d0);
  LaurentSeries e = -(from_terms(p_, a_, kExact, polar, ring_) * g0);
  LaurentSeries sum = constant(p_, a_, kExact, 1).with_ring(ring_);
  LaurentSeries ek = sum;
  for (int k = 1; k < a_; ++k) {
    ek = ek * e;
    sum = sum + ek;
  }
  return (g0 * sum).shifted(-d0);
}

std::optional<int> LaurentSeries::gauss_valuation() const {
  std::optional<int> best;
  for (i64 c : c_)
    if (c) {
      int v = vp(c, p_);
      if (!best || v < *best) best = v;
    }
  return best;
}

bool LaurentSeries::agrees_with(const LaurentSeries& g) const {
  check_prime(*this, g);
  int b = std::min(a_, g.a_);
  i64 n = std::min(N_, g.N_);
  LaurentSeries d = truncated(n).reduced(b) - g.truncated(n).reduced(b);
  return d.is_zero();
}

bool operator==(const LaurentSeries& f, const LaurentSeries& g) {
  return f.p_ == g.p_ && f.a_ == g.a_ && f.N_ == g.N_ && f.ring_ == g.ring_ && f.terms() == g.terms();
}

std::string LaurentSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [d, c] : terms()) {
    i64 b = balanced(c, m_);
    bool neg = b < 0;
    i64 mag = neg ? -b : b;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (d == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << "X";
    if (d != 1) os << "^" << d;
  }
  if (N_ < kExact) {
    if (!first) os << " + ";
    os << "O(X^" << N_ << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

namespace {

class SeriesParser {
 public:
  SeriesParser(const std::string& s, i64 p, int a) : s_(s), p_(p), m_(ipow(p, a)), a_(a) {}

  LaurentSeries run(i64 N) {
    std::vector<std::pair<i64, i64>> terms;
    i64 prec = N;
    bool any = false;
    skip();
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (any) {
        fail("expected + or -");
      }
      any = true;
      if (s_.compare(pos_, 2, "O(") == 0) {
        pos_ += 2;
        skip();
        expect('X');
        expect('^');
        prec = std::min(prec, read_exponent());
        expect(')');
        continue;
      }
      i64 coef = sign > 0 ? 1 : m_ - 1;
      i64 deg = 0;
      while (true) {
        factor(coef, deg);
        skip();
        if (peek() == '*') {
          ++pos_;
          skip();
          continue;
        }
        break;
      }
      terms.emplace_back(deg, coef);
    }
    if (!any) fail("empty series");
    return LaurentSeries::from_terms(p_, a_, prec, terms);
  }

 private:
  void factor(i64& coef, i64& deg) {
    char c = peek();
    if (c == 'X') {
      ++pos_;
      i64 e = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        e = read_exponent();
      }
      deg += e;
    } else if (c == 'p') {
      ++pos_;
      i64 e = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        e = read_exponent();
      }
      if (e < 0) fail("negative power of p in a coefficient");
      coef = e >= a_ ? 0 : mulmod(coef, ipow(p_, static_cast<int>(e)), m_);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      i64 n = read_int();
      skip();
      i64 d = 1;
      if (peek() == '/') {
        ++pos_;
        skip();
        d = read_int();
      }
      coef = mulmod(coef, rational_residue(Rational(n, d), p_, a_), m_);
    } else if (c == '(') {
      ++pos_;
      skip();
      i64 n = read_signed();
      expect(')');
      coef = mulmod(coef, mod(n, m_), m_);
    } else {
      fail("unexpected character");
    }
  }

  i64 read_exponent() {
    skip();
    if (peek() == '(') {
      ++pos_;
      i64 v = read_signed();
      expect(')');
      return v;
    }
    return read_signed();
  }

  i64 read_signed() {
    skip();
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    return sign * read_int();
  }

  i64 read_int() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    try {
      return std::stoll(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail("integer too large");
    }
    return 0;
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
    skip();
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::Parse, why + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  const std::string& s_;
  i64 p_, m_;
  int a_;
  size_t pos_ = 0;
};

}  // namespace

LaurentSeries LaurentSeries::parse(const std::string& text, i64 p, int a, i64 N) {
  return SeriesParser(text, p, a).run(N);
}

}  // namespace pgk
