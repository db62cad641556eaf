#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pgk/fq.hpp"
#include "pgk/padic_scalar.hpp"

namespace pgk {

/// Smooth character omega^t mu_lambda of Q_p^x (equivalently of the Galois group) with values in F_{p^2}.
struct CharModP {
  i64 p = 2;
  Fp2 lam;
  i64 t = 0;

  CharModP() = default;
  CharModP(Fp2 lambda, i64 tame);

  static CharModP trivial(i64 p);
  static CharModP omega(i64 p, i64 k = 1);
  static CharModP mu(const Fp2& lambda);

  /// Residue-field degree of the values.
  int f() const { return lam.in_base() ? 1 : 2; }

  friend CharModP operator*(const CharModP& a, const CharModP& b);
  CharModP inverse() const;
  CharModP pow(i64 n) const;
  friend CharModP operator/(const CharModP& a, const CharModP& b) { return a * b.inverse(); }

  auto key() const { return std::tuple(t, lam.a(), lam.b()); }
  friend bool operator==(const CharModP& a, const CharModP& b) { return a.p == b.p && a.key() == b.key(); }
  friend bool operator<(const CharModP& a, const CharModP& b) { return a.key() < b.key(); }

  /// "omega^t*mu(lambda)".
  std::string str() const;
};

/// Semisimple 2-dimensional mod-p Galois representation.
/// Irred: rho(r, chi) = ind(omega_2^{r+1}) (x) chi, in normal form. Split: eta1 + eta2, sorted.
struct GaloisSS {
  enum class Kind { Irred, Split };
  Kind kind = Kind::Irred;
  i64 r = 0;
  CharModP chi;
  CharModP eta1, eta2;

  static GaloisSS irred(i64 r, const CharModP& chi);
  static GaloisSS split(const CharModP& a, const CharModP& b);

  i64 prime() const { return chi.p; }
  CharModP det() const;
  GaloisSS twist(const CharModP& c) const;

  friend bool operator==(const GaloisSS& a, const GaloisSS& b);
  std::string str() const;
};

/// ind(omega_2^h) as a semisimple representation.
GaloisSS ind_decompose(i64 p, i64 h);
/// Canonical member of {rho(r,chi), rho(r,chi mu_-1), rho(p-1-r, chi omega^r), rho(p-1-r, chi omega^r mu_-1)}.
std::pair<i64, CharModP> rho_normal_form(i64 r, const CharModP& chi);

/// Irreducible constituent of a semisimple smooth GL2(Q_p) representation.
struct GL2Atom {
  enum class Kind { OneDim, Special, Pi };
  Kind kind = Kind::Pi;
  CharModP eta;  // OneDim, Special
  i64 r = 0;     // Pi
  Fp2 lam;       // Pi
  CharModP chi;  // Pi

  static GL2Atom one_dim(const CharModP& eta);
  static GL2Atom special(const CharModP& eta);
  /// pi(r, lambda, chi) in normal form; (r, lambda) must not be reducible.
  static GL2Atom pi(i64 r, const Fp2& lambda, const CharModP& chi);

  auto key() const { return std::tuple(static_cast<int>(kind), eta.key(), r, lam.a(), lam.b(), chi.key()); }
  friend bool operator==(const GL2Atom& a, const GL2Atom& b) { return a.key() == b.key(); }
  friend bool operator<(const GL2Atom& a, const GL2Atom& b) { return a.key() < b.key(); }
  std::string str() const;
};

/// Sorted multiset of atoms.
using GL2SS = std::vector<GL2Atom>;
GL2SS canonical(GL2SS atoms);
std::string gl2_str(const GL2SS& s);

GL2SS pi_semisimplify(i64 p, i64 r, const Fp2& lambda, const CharModP& chi);
GL2SS correspond(const GaloisSS& w);
/// Correspondence for omega^{r+1} chi mu_lambda + chi mu_{1/lambda}, parameters taken as given.
GL2SS correspond_split_params(i64 p, i64 r, const Fp2& lambda, const CharModP& chi);

/// Central character, or nullopt when the atoms disagree.
std::optional<CharModP> central_character(const GL2SS& s);

struct Reduction {
  enum class Kind { Decided, Ambiguous, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<GaloisSS> value;       // Decided, and the ind candidate of Ambiguous
  std::optional<CharModP> split_base;  // Ambiguous: base (x) mu_lambda + base (x) mu_{1/lambda}, lambda unknown
  std::string branch;
  bool reducible_ind = false;          // case 5a flag
};
const char* reduction_kind_name(Reduction::Kind k);

/// Reduction mod p of V_{k,a_p}, optionally twisted by chi.
Reduction reduce_crystalline(i64 p, i64 k, const PadicScalar& a_p, const std::optional<CharModP>& chi = std::nullopt);

enum class BuzzardStatus { NotApplicable, Consistent, Violation };
const char* buzzard_name(BuzzardStatus s);
BuzzardStatus buzzard_monitor(i64 p, i64 k, const PadicScalar& a_p, const Reduction& verdict);

}  // namespace pgk
