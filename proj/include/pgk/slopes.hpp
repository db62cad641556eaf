#pragma once

#include <optional>
#include <utility>

#include "pgk/laurent_series.hpp"
#include "pgk/trianguline.hpp"

namespace pgk {

/// phi-module of rank <= 2 with phi(e1) = l1 e1, phi(e2) = l2 e2 + c e1.
struct TriangularPhiModule {
  int rank = 1;
  PadicScalar l1 = PadicScalar::zero(2);
  PadicScalar l2 = PadicScalar::zero(2);
  std::optional<LaurentSeries> off;
  std::optional<TriParam> param;

  static TriangularPhiModule rank_one(const PadicScalar& l);
  static TriangularPhiModule rank_two(const PadicScalar& l1, const PadicScalar& l2,
                                      std::optional<LaurentSeries> off = std::nullopt,
                                      std::optional<TriParam> param = std::nullopt);
  /// R(delta1) extended by R(delta2), with s attached.
  static TriangularPhiModule from_param(const TriParam& s);

  void validate() const;
};

Rational slope_rank1(const TriangularPhiModule& m);

enum class Filtration { Explicit, ExchangeNeeded, Isocline };
enum class Tribool { False, True, Undetermined };
const char* filtration_name(Filtration f);
const char* tribool_name(Tribool t);

struct HnVerdict {
  std::pair<Rational, Rational> slopes;  // rank 1: both equal u1
  Filtration filtration = Filtration::Isocline;
  Tribool etale = Tribool::Undetermined;
};

HnVerdict hn_verdict(const TriangularPhiModule& m);

/// u(delta1) + u(delta2) = 0 and u(delta1) >= 0.
bool etale_constraints(const TriParam& s);

}  // namespace pgk
