#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pgk/character.hpp"
#include "pgk/laurent_series.hpp"

namespace pgk {

using SeriesVec = std::vector<LaurentSeries>;
using SeriesMat = std::vector<SeriesVec>;  // row-major: M[i][j]

/// f((1+X)^p - 1). Requires N >= 0; the X-precision is kept.
LaurentSeries frobenius(const LaurentSeries& f);

/// f((1+X)^a - 1) for a unit a known modulo p^L.
LaurentSeries gamma_act(i64 a, int L, const LaurentSeries& f);

/// The smallest L accepted by gamma_act for X-precision N: a + ceil(log_p N).
int gamma_precision(i64 p, int a, i64 N);

/// Left inverse of frobenius: the component f_0 in f = sum_i phi(f_i) (1+X)^i.
/// Output X-precision is max(0, floor(N/p) - (a-1)).
LaurentSeries psi(const LaurentSeries& f);

/// Free module with semilinear phi and Gamma, in the column convention
/// phi(e_j) = sum_i mat_phi[i][j] e_i. The Gamma matrices describe [zeta] (zeta the
/// Teichmuller lift of primitive_root(p)) and [1+p].
struct PhiGammaModule {
  i64 p = 3;
  int a = 8;
  SeriesMat mat_phi;
  SeriesMat mat_gamma_tame;
  SeriesMat mat_gamma_wild;
  std::vector<std::string> labels;

  int rank() const { return static_cast<int>(mat_phi.size()); }
  /// Identity matrices everywhere.
  static PhiGammaModule trivial(i64 p, int a, int rank = 1);
  /// Rank 1 with phi(e) = c e and identity Gamma matrices.
  static PhiGammaModule rank_one(const LaurentSeries& c);
  /// Throws InvalidModule on shape or prime mismatches.
  void validate() const;
  bool gamma_is_trivial() const;
};

/// phi_D(y)_i = sum_j mat_phi[i][j] phi(y_j).
SeriesVec module_phi(const PhiGammaModule& D, const SeriesVec& y);
/// sigma_a(y) = Mat_a [a](y), with Mat_a assembled from the stored generators.
SeriesVec module_gamma(const PhiGammaModule& D, i64 a, int L, const SeriesVec& y);
/// psi_D: writes y = sum z_j phi(e_j) and returns sum psi(z_j) e_j.
SeriesVec module_psi(const PhiGammaModule& D, const SeriesVec& y);
/// y - phi_D(psi_D(y)).
SeriesVec res_zpx(const SeriesVec& y, const PhiGammaModule& D);

/// Inverse of a square matrix over O_E / p^a; throws SingularFrobenius if the reduction
/// mod p is singular.
SeriesMat invert(const SeriesMat& M);
SeriesMat mat_mul(const SeriesMat& A, const SeriesMat& B);
SeriesVec mat_apply(const SeriesMat& A, const SeriesVec& y);
LaurentSeries determinant(const SeriesMat& M);

enum class EtaleVerdict { CertifiedTrue, NotInThisBasis };
const char* etale_name(EtaleVerdict v);
EtaleVerdict is_etale_in_basis(const PhiGammaModule& D);

bool agrees(const SeriesVec& x, const SeriesVec& y);

/// Upper-triangular matrix [[a, b], [0, d]] over Q, viewed in B_2(Q_p).
struct B2Element {
  Rational a{1}, b{0}, d{1};
};

/// Finite window of a psi-compatible sequence x^(n), n0 <= n <= n1.
class BoxSeq {
 public:
  /// Checks psi_D(x^(n+1)) = x^(n) within precision; throws NotPsiCompatible.
  BoxSeq(int n0, std::vector<SeriesVec> entries, CharacterP delta, std::shared_ptr<const PhiGammaModule> module);

  int n0() const { return n0_; }
  int n1() const { return n0_ + static_cast<int>(entries_.size()) - 1; }
  const SeriesVec& at(int n) const;
  const std::vector<SeriesVec>& entries() const { return entries_; }
  const CharacterP& delta() const { return delta_; }
  const PhiGammaModule& module() const { return *module_; }
  std::shared_ptr<const PhiGammaModule> module_ptr() const { return module_; }

  /// x^(n+1) = phi_D(x^(n)) for n0 <= n < n0 + len - 1.
  static BoxSeq from_phi_iterates(int n0, int len, const SeriesVec& x0, CharacterP delta,
                                  std::shared_ptr<const PhiGammaModule> module);

 private:
  struct Unchecked {};
  BoxSeq(Unchecked, int n0, std::vector<SeriesVec> entries, CharacterP delta,
         std::shared_ptr<const PhiGammaModule> module);
  friend BoxSeq box_center(const Rational&, const BoxSeq&);
  friend BoxSeq box_diag_unit(const Rational&, const BoxSeq&);
  friend BoxSeq box_diag_p(i64, const BoxSeq&);
  friend BoxSeq box_unipotent(const Rational&, const BoxSeq&);

  int n0_;
  std::vector<SeriesVec> entries_;
  CharacterP delta_;
  std::shared_ptr<const PhiGammaModule> module_;
};

/// Center a: every entry scaled by delta(a).
BoxSeq box_center(const Rational& a, const BoxSeq& x);
/// diag(u, 1) with u a unit: sigma_u entrywise.
BoxSeq box_diag_unit(const Rational& u, const BoxSeq& x);
/// diag(p^k, 1): g(x)^(n) = x^(n+k).
BoxSeq box_diag_p(i64 k, const BoxSeq& x);
/// [[1, c], [0, 1]]: entry n multiplied by (1+X)^(c p^n); entries with c p^n outside Z_p dropped.
BoxSeq box_unipotent(const Rational& c, const BoxSeq& x);
/// General element, factored as d * [[1, b/d], [0, 1]] * diag(p^k, 1) * diag(u, 1).
BoxSeq box_b2_act(const B2Element& g, const BoxSeq& x);

/// x^(0); throws WindowMiss.
SeriesVec res_zp(const BoxSeq& x);
/// Rank-1 trivial module only: every entry lies in X^-1 O_E[[X]].
bool is_bounded_sharp(const BoxSeq& x);

}  // namespace pgk
