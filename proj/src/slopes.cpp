#include "pgk/slopes.hpp"

namespace pgk {

TriangularPhiModule TriangularPhiModule::rank_one(const PadicScalar& l) {
  TriangularPhiModule m;
  m.rank = 1;
  m.l1 = l;
  m.l2 = l;
  m.validate();
  return m;
}

TriangularPhiModule TriangularPhiModule::rank_two(const PadicScalar& l1, const PadicScalar& l2,
                                                  std::optional<LaurentSeries> off,
                                                  std::optional<TriParam> param) {
  TriangularPhiModule m;
  m.rank = 2;
  m.l1 = l1;
  m.l2 = l2;
  m.off = std::move(off);
  m.param = std::move(param);
  m.validate();
  return m;
}

TriangularPhiModule TriangularPhiModule::from_param(const TriParam& s) {
  s.validate();
  return rank_two(s.d1.c_p, s.d2.c_p, std::nullopt, s);
}

void TriangularPhiModule::validate() const {
  if (rank != 1 && rank != 2) throw Error(Errc::RankMismatch, "rank must be 1 or 2");
  if (l1.is_zero() || (rank == 2 && l2.is_zero()))
    throw Error(Errc::InvalidArgument, "diagonal Frobenius scalars must be nonzero");
  if (rank == 1 && off) throw Error(Errc::RankMismatch, "off-diagonal entry on a rank-1 module");
}

Rational slope_rank1(const TriangularPhiModule& m) {
  if (m.rank != 1) throw Error(Errc::RankMismatch, "slope_rank1 needs rank 1");
  return *m.l1.valuation();
}

const char* filtration_name(Filtration f) {
  switch (f) {
    case Filtration::Explicit: return "EXPLICIT";
    case Filtration::ExchangeNeeded: return "EXCHANGE_NEEDED";
    case Filtration::Isocline: return "ISOCLINE";
  }
  return "ISOCLINE";
}

const char* tribool_name(Tribool t) {
  switch (t) {
    case Tribool::False: return "FALSE";
    case Tribool::True: return "TRUE";
    case Tribool::Undetermined: return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

HnVerdict hn_verdict(const TriangularPhiModule& m) {
  m.validate();
  const Rational u1 = *m.l1.valuation();
  auto etale_if_zero = [](const Rational& u) { return u == Rational(0) ? Tribool::True : Tribool::False; };
  if (m.rank == 1) return {{u1, u1}, Filtration::Isocline, etale_if_zero(u1)};
  const Rational u2 = *m.l2.valuation();
  if (u1 < u2) return {{u1, u2}, Filtration::Explicit, Tribool::False};
  if (u1 == u2) return {{u1, u1}, Filtration::Isocline, etale_if_zero(u1)};
  if (m.param) {
    try {
      if (in_s_irr(classify(*m.param))) {
        Rational mid = (u1 + u2) * Rational(1, 2);
        return {{mid, mid}, Filtration::Isocline, etale_if_zero(mid)};
      }
    } catch (const Error&) {
    }
  }
  return {{u2, u1}, Filtration::ExchangeNeeded, Tribool::Undetermined};
}

bool etale_constraints(const TriParam& s) {
  Rational u1 = slope(s.d1), u2 = slope(s.d2);
  return u1 + u2 == Rational(0) && u1 >= Rational(0);
}

}  // namespace pgk
