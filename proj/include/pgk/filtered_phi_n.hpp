#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgk/padic_scalar.hpp"

namespace pgk {

using PVec = std::vector<PadicScalar>;
using PMat = std::vector<PVec>;  // row-major; phi(e_j) = sum_i M[i][j] e_i

/// Fil^h = span for every h from this step up to the next one.
struct FilStep {
  i64 h = 0;
  std::vector<PVec> span;
};

/// Filtered (phi, N)-module of dimension <= 2 over a finite extension of Q_p.
///
/// Fil^h = D below the first step; the last step must be the zero subspace.
struct FilteredPhiNModule {
  i64 p = 2;
  int dim = 0;
  PMat phi;
  PMat N;
  std::vector<FilStep> fil;
  std::string label;

  /// Checks shapes, N nilpotent, N phi = p phi N, and the filtration. Throws InvalidModule.
  void validate() const;
  int fil_dim(i64 h) const;
  /// (h, dim Fil^h / Fil^{h+1}) for each jump, ascending.
  std::vector<std::pair<i64, int>> jumps() const;
};

Rational t_N(const FilteredPhiNModule& D);
i64 t_H(const FilteredPhiNModule& D);
/// Largest h with the line through v inside Fil^h.
i64 t_H_line(const FilteredPhiNModule& D, const PVec& v);

struct Subobject {
  std::optional<PVec> line;  // basis vector when dim 1
  FilteredPhiNModule module;
};

/// 0, the phi- and N-stable lines, and D. Lines whose eigenvalues are not in the base field
/// are absent; IrrationalEigenline when they might exist but cannot be written down.
std::vector<Subobject> subobjects(const FilteredPhiNModule& D);

enum class Admissibility { Admissible, NotAdmissible, Undecided };
const char* admissibility_name(Admissibility a);

struct CertEntry {
  std::string what;
  i64 t_H = 0;
  Rational t_N;
  bool t_N_lower_bound = false;
  bool ok = true;
};

struct AdmissibilityResult {
  Admissibility verdict = Admissibility::Undecided;
  std::vector<CertEntry> certificate;
  std::string note;
};

AdmissibilityResult is_admissible(const FilteredPhiNModule& D);

/// phi = (0 -1; p^(k-1) a_p), N = 0, Fil^i = E e1 for 1 <= i <= k-1.
FilteredPhiNModule build_Dkap(i64 p, i64 k, const PadicScalar& a_p);
/// phi = diag(p^(k/2), p^(k/2-1)), N = (0 0; 1 0), Fil^i = E(e1 + L e2) for 1 <= i <= k-1.
FilteredPhiNModule build_DkL(i64 p, i64 k, const PadicScalar& L);

}  // namespace pgk
