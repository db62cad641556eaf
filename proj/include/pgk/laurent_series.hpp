#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgk/arith.hpp"

namespace pgk {

/// Truncated Laurent series sum c_d X^d with c_d in Z/p^a, known for d < N.
///
/// Storage is dense between the lowest and highest nonzero stored degree. Negative
/// degrees are finite in number, which is the shape of an element of O_E mod p^a.
class LaurentSeries {
 public:
  /// Which ring the value is meant to live in. Carried along, never verified.
  enum class Ring { E, EDagger, Robba };

  /// Precision used for values that are known exactly (finite Laurent polynomials).
  static constexpr i64 kExact = i64{1} << 40;

  /// Zero to X-precision N.
  LaurentSeries(i64 p, int a, i64 N, Ring ring = Ring::E);

  static LaurentSeries from_terms(i64 p, int a, i64 N, const std::vector<std::pair<i64, i64>>& terms,
                                  Ring ring = Ring::E);
  static LaurentSeries monomial(i64 p, int a, i64 N, i64 deg, i64 coef = 1);
  static LaurentSeries constant(i64 p, int a, i64 N, i64 c) { return monomial(p, a, N, 0, c); }
  /// (1+X)^z for z in Z_p known modulo p^L. Requires L >= a + ceil(log_p N).
  static LaurentSeries one_plus_x_pow(i64 p, int a, i64 N, i64 z, int L);
  /// Parses "3*X^-1 + X^2 - p*X^3 + O(X^10)"; without an O-term the precision is N.
  static LaurentSeries parse(const std::string& text, i64 p, int a, i64 N);

  i64 prime() const { return p_; }
  int digits() const { return a_; }
  i64 modulus() const { return m_; }
  i64 precision() const { return N_; }
  Ring ring() const { return ring_; }
  LaurentSeries with_ring(Ring r) const;

  /// Lowest nonzero stored degree, or N when nothing nonzero is stored.
  i64 dmin() const { return c_.empty() ? N_ : off_; }
  /// Highest nonzero stored degree; only meaningful when !is_zero().
  i64 dmax() const { return off_ + static_cast<i64>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /// Residue of the coefficient of X^d in [0, p^a). Throws for d >= N.
  i64 coeff(i64 d) const;
  /// Nonzero (degree, residue) pairs in increasing degree.
  std::vector<std::pair<i64, i64>> terms() const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g);
  friend LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g);
  friend LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g);
  LaurentSeries scaled(i64 c) const;
  /// Multiplication by X^k.
  LaurentSeries shifted(i64 k) const;
  /// Forgets coefficients of degree >= n (no-op when n >= N).
  LaurentSeries truncated(i64 n) const;
  /// Reduces coefficients modulo p^b, b <= a.
  LaurentSeries reduced(int b) const;
  LaurentSeries pow(i64 n) const;
  /// Inverse in O_E / p^a. Throws ZeroWithinPrecision if the reduction mod p vanishes.
  LaurentSeries inverse() const;

  /// Minimum p-adic valuation of stored coefficients; nullopt when all vanish mod p^a.
  std::optional<int> gauss_valuation() const;

  /// f - g vanishes in all coefficients both know, at the smaller p-precision.
  bool agrees_with(const LaurentSeries& g) const;
  /// Structural equality, including precision.
  friend bool operator==(const LaurentSeries& f, const LaurentSeries& g);

  std::string str() const;

 private:
  void normalize();
  i64 at(i64 d) const {
    i64 i = d - off_;
    return (i < 0 || i >= static_cast<i64>(c_.size())) ? 0 : c_[static_cast<size_t>(i)];
  }

  i64 p_;
  int a_;
  i64 m_;
  i64 N_;
  Ring ring_;
  i64 off_ = 0;
  std::vector<i64> c_;
};

/// Binomial coefficients C(n, k) mod p^a for k < count, n >= 0.
std::vector<i64> binomials_mod(i64 n, i64 count, i64 p, int a);

const char* ring_name(LaurentSeries::Ring r);
LaurentSeries::Ring parse_ring(const std::string& s);

}  // namespace pgk
