#include <random>
#include <vector>

#include "doctest.h"
#include "pgk/slopes.hpp"
#include "pgk/trianguline.hpp"

using namespace pgk;
using P = PadicScalar;

namespace {

P q(i64 p, i64 n, i64 d = 1, int e = 1) { return P::from_rational(p, Rational(n, d), e); }

// Characters written out as raw triples, not via the library's factories.
CharacterP raw(P c, i64 j, P s) { return CharacterP(std::move(c), j, std::move(s)); }
CharacterP raw_x_minus(i64 p, i64 i) { return raw(P::pi_power(p, -i), -i, q(p, -i)); }
CharacterP raw_abs_x(i64 p, i64 i) { return raw(P::pi_power(p, i - 1), i, q(p, i)); }
// c_p = p^(vnum/e) * unit, tame j, weight w.
CharacterP chr(i64 p, i64 vnum, int e, i64 unit, i64 j, P w) {
  return raw(P::pi_power(p, vnum, e) * P::from_integer(p, unit, e), j, std::move(w));
}

// Brute-force special test: compare against every x^-i, |x| x^i with small i.
bool oracle_special(const CharacterP& eta) {
  for (i64 i = 0; i <= 12; ++i)
    if (eta == raw_x_minus(eta.prime(), i)) return true;
  for (i64 i = 1; i <= 12; ++i)
    if (eta == raw_abs_x(eta.prime(), i)) return true;
  return false;
}

CharacterP random_char(std::mt19937_64& rng, i64 p) {
  int e = std::uniform_int_distribution<int>(1, 2)(rng);
  i64 vnum = std::uniform_int_distribution<i64>(-6, 6)(rng);
  i64 unit;
  do unit = std::uniform_int_distribution<i64>(1, p * p * p)(rng);
  while (unit % p == 0);
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) unit = 1;
  i64 j = std::uniform_int_distribution<i64>(0, p - 2)(rng);
  i64 wn = std::uniform_int_distribution<i64>(-4, 4)(rng);
  i64 wd = std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? 2 : 1;
  return chr(p, vnum, e, unit, j, q(p, wn, wd));
}

struct Grid {
  std::vector<TriParam> all;
};

// u1 in {1/2, 1, 3/2}, u2 in {-u1, u1, 1-u1}, weights in [-3,3], p = 5.
Grid make_grid() {
  const i64 p = 5;
  Grid g;
  const Rational us[] = {Rational(1, 2), Rational(1), Rational(3, 2)};
  for (const Rational& u1 : us) {
    for (int kind = 0; kind < 3; ++kind) {
      Rational u2 = kind == 0 ? -u1 : kind == 1 ? u1 : Rational(1) - u1;
      for (i64 w1 = -3; w1 <= 3; ++w1)
        for (i64 w2 = -3; w2 <= 3; ++w2) {
          auto d1 = chr(p, u1.num() * (2 / u1.den()), 2, 2, w1, q(p, w1));
          auto d2 = chr(p, u2.num() * (2 / u2.den()), 2, 3, w2, q(p, w2));
          g.all.push_back(TriParam{d1, d2, std::nullopt});
        }
    }
  }
  return g;
}

}  // namespace

TEST_CASE("weights and slopes") {
  const i64 p = 5;
  auto x2 = CharacterP::x_power(p, 2);
  CHECK(weight(x2) == q(p, 2));
  CHECK(slope(x2) == Rational(2));
  CHECK(weight(CharacterP::abs(p)).is_exact_zero());
  CHECK(slope(CharacterP::abs(p)) == Rational(-1));
  auto mu = CharacterP::unramified(P::pi_power(p, 3, 2) * q(p, 7));
  CHECK(weight(mu).is_exact_zero());
  CHECK(slope(mu) == Rational(3, 2));

  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto a = random_char(rng, p), b = random_char(rng, p);
    CHECK(slope(a * b) == slope(a) + slope(b));
    CHECK((weight(a * b) - weight(a) - weight(b)).is_exact_zero());
  }
}

TEST_CASE("special pairs") {
  for (i64 p : {3, 5, 7}) {
    CHECK(is_special_pair(CharacterP::trivial(p)) == SpecialPair{SpecialKind::MinusI, 0});
    CHECK(is_special_pair(CharacterP::abs(p) * CharacterP::x_power(p, 1)) == SpecialPair{SpecialKind::AbsI, 1});
    CHECK(is_special_pair(CharacterP::x_power(p, -1)) == SpecialPair{SpecialKind::MinusI, 1});
    CHECK(is_special_pair(CharacterP::x_power(p, 1)).kind == SpecialKind::No);
    CHECK(is_special_pair(CharacterP::abs(p)).kind == SpecialKind::No);
    for (i64 i = 0; i <= 6; ++i) CHECK(is_special_pair(raw_x_minus(p, i)) == SpecialPair{SpecialKind::MinusI, i});
    for (i64 i = 1; i <= 6; ++i) CHECK(is_special_pair(raw_abs_x(p, i)) == SpecialPair{SpecialKind::AbsI, i});
  }
  CHECK(special_name({SpecialKind::AbsI, 3}) == "ABS_I(3)");
  CHECK(special_name({}) == "NO");
}

TEST_CASE("special pairs at finite precision") {
  const i64 p = 5;
  // weight only known to O(p^4): cannot decide s = -2
  auto eta = raw(P::pi_power(p, -2), -2, P::parse("-2 + O(p^4)", p));
  CHECK_THROWS_AS(is_special_pair(eta), Error);
  // the tame part already rules it out, so no precision is needed
  auto eta2 = raw(P::pi_power(p, -2), 1, P::parse("-2 + O(p^4)", p));
  CHECK(is_special_pair(eta2).kind == SpecialKind::No);
  // residue of c_p differs from 1: decided
  auto eta3 = raw(P::from_unit_residue(p, -2, 2, 3), -2, q(p, -2));
  CHECK(is_special_pair(eta3).kind == SpecialKind::No);
  // c_p = p^-2 (1 + O(p^3)): undecidable
  auto eta4 = raw(P::from_unit_residue(p, -2, 1, 3), -2, q(p, -2));
  CHECK_THROWS_AS(is_special_pair(eta4), Error);
  // a weight outside Z is decidably not an integer
  auto eta5 = raw(P::pi_power(p, -2), -2, P::parse("p^-1 + O(p^4)", p));
  CHECK(is_special_pair(eta5).kind == SpecialKind::No);
}

TEST_CASE("ext_dim: handcrafted special pairs and random non-special pairs") {
  std::mt19937_64 rng(5);
  int specials = 0;
  for (i64 p : {3, 5}) {
    for (i64 i = 0; i < 5; ++i) {
      auto d2 = random_char(rng, p);
      CHECK(ext_dim(raw_x_minus(p, i) * d2, d2) == 2);
      auto d2b = random_char(rng, p);
      CHECK(ext_dim(raw_abs_x(p, i + 1) * d2b, d2b) == 2);
      specials += 2;
    }
  }
  CHECK(specials == 20);
  CHECK(ext_dim(CharacterP::x_power(5, 3), CharacterP::x_power(5, 3)) == 2);
  CHECK(ext_dim(CharacterP::unramified(q(5, 2)), CharacterP::trivial(5)) == 1);
  CHECK(ext_dim(CharacterP::abs(5) * CharacterP::x_power(5, 3), CharacterP::trivial(5)) == 2);

  int nonspecial = 0;
  while (nonspecial < 200) {
    i64 p = nonspecial % 2 ? 5 : 7;
    auto d1 = random_char(rng, p), d2 = random_char(rng, p);
    // half of the cases are near misses of a special pair
    if (nonspecial % 2) {
      i64 i = std::uniform_int_distribution<i64>(0, 4)(rng);
      auto base = nonspecial % 4 == 1 ? raw_x_minus(p, i) : raw_abs_x(p, i + 1);
      int which = std::uniform_int_distribution<int>(0, 2)(rng);
      if (which == 0) base = base * CharacterP::unramified(q(p, 1 + p));
      if (which == 1) base = raw(base.c_p, base.j + 1, base.s);
      if (which == 2) base = raw(base.c_p, base.j, base.s + q(p, p - 1));
      d1 = base * d2;
    }
    if (oracle_special(d1 / d2)) continue;
    CHECK(ext_dim(d1, d2) == 1);
    auto eta = random_char(rng, p);
    CHECK(ext_dim(d1 * eta, d2 * eta) == 1);
    ++nonspecial;
  }
}

TEST_CASE("classify: examples") {
  const i64 p = 5;
  // u1 = 1/2 unramified, delta2 = x^-1 * (unramified of slope 1/2)
  auto d1 = CharacterP::unramified(P::pi_power(p, 1, 2));
  auto d2 = CharacterP::x_power(p, -1) * CharacterP::unramified(P::pi_power(p, 1, 2));
  TriParam s{d1, d2, std::nullopt};
  CHECK(slope(d2) == Rational(-1, 2));
  CHECK(classify(s) == TriClass::Cris);

  TriParam ng{d1, raw(d2.c_p, d2.j, q(p, -1, 2)), std::nullopt};
  CHECK(classify(ng) == TriClass::Ng);

  TriParam nss{CharacterP::unramified(q(p, p)), CharacterP::unramified(q(p, p)), std::nullopt};
  CHECK(classify(nss) == TriClass::NotSStar);

  // w = 1 but u = 1: not listed
  TriParam nl{CharacterP::unramified(q(p, p)), CharacterP::x_power(p, -1) * CharacterP::unramified(q(p, 1)),
              std::nullopt};
  CHECK(classify(nl) == TriClass::NotIrrListed);

  // semistable: delta1/delta2 = |x| x^2, L finite, u = 1/2 < 2
  auto e1 = CharacterP::abs(p) * CharacterP::x_power(p, 2) * CharacterP::unramified(P::pi_power(p, -1, 2));
  auto e2 = CharacterP::unramified(P::pi_power(p, -1, 2));
  TriParam st{e1, e2, q(p, 3)};
  CHECK(slope(e1) == Rational(1, 2));
  CHECK(classify(st) == TriClass::St);
  TriParam st_inf{e1, e2, std::nullopt};
  CHECK(classify(st_inf) == TriClass::Cris);

  TriParam bad{d1, d2, q(p, 1)};
  CHECK_THROWS_AS(bad.validate(), Error);

  TriParam undecided{d1, raw(d2.c_p, d2.j, P::parse("-1 + O(p^3)", p)), std::nullopt};
  CHECK_THROWS_AS(classify(undecided), Error);
}

TEST_CASE("involution") {
  const i64 p = 5;
  auto d1 = CharacterP::unramified(P::pi_power(p, 1, 2));
  auto d2 = CharacterP::x_power(p, -1) * CharacterP::unramified(P::pi_power(p, 1, 2));
  TriParam s{d1, d2, std::nullopt};
  TriParam s2 = involution(s);
  CHECK(slope(s2.d1) == Rational(1, 2));
  CHECK(classify(s2) == TriClass::Cris);
  CHECK(s2.d1 == CharacterP::x_power(p, 1) * d2);
  TriParam s3 = involution(s2);
  CHECK(s3.d1 == s.d1);
  CHECK(s3.d2 == s.d2);

  TriParam ng{d1, raw(d2.c_p, d2.j, q(p, -1, 2)), std::nullopt};
  try {
    involution(ng);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCrystallineParameter);
  }
}

TEST_CASE("delta_s and delta_central") {
  const i64 p = 7;
  auto xa = raw(q(p, 1), 1, q(p, 1));  // x|x|
  TriParam s{xa, CharacterP::trivial(p), std::nullopt};
  CHECK(delta_s(s) == CharacterP::trivial(p));
  auto d = CharacterP::unramified(q(p, 3)) * CharacterP::x_power(p, 2);
  TriParam s2{d, d, std::nullopt};
  CHECK(delta_s(s2) == xa.inverse());
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    auto a = random_char(rng, p), b = random_char(rng, p);
    TriParam r{a, b, std::nullopt};
    CHECK((delta_s(r).c_p - a.c_p / b.c_p).is_exact_zero());
    CHECK((delta_central(r).c_p - a.c_p * b.c_p).is_exact_zero());
    CHECK(delta_central(r) / delta_s(r) == b * b);
  }
}

TEST_CASE("grid: involution, hn verdict, etale constraints") {
  Grid g = make_grid();
  int cris = 0, irr = 0;
  for (const TriParam& s : g.all) {
    TriClass c = classify(s);
    auto m = TriangularPhiModule::from_param(s);
    HnVerdict v = hn_verdict(m);
    bool iso_etale = v.filtration == Filtration::Isocline && v.etale == Tribool::True;
    CHECK(iso_etale == in_s_irr(c));
    CHECK(v.slopes.first + v.slopes.second == slope(s.d1) + slope(s.d2));
    CHECK(v.slopes.first <= v.slopes.second);
    if (v.etale == Tribool::True) {
      CHECK(v.slopes.first == Rational(0));
      CHECK(v.slopes.second == Rational(0));
    }
    if (in_s_irr(c)) {
      ++irr;
      CHECK(etale_constraints(s));
    }
    if (c == TriClass::Cris) {
      ++cris;
      TriParam s2 = involution(s);
      CHECK(classify(s2) == TriClass::Cris);
      TriParam s3 = involution(s2);
      CHECK(s3.d1 == s.d1);
      CHECK(s3.d2 == s.d2);
    } else {
      CHECK_THROWS_AS(involution(s), Error);
    }
  }
  CHECK(cris >= 50);
  CHECK(irr > cris - 1);
}

TEST_CASE("slopes: examples") {
  const i64 p = 5;
  CHECK(slope_rank1(TriangularPhiModule::rank_one(q(p, 1))) == Rational(0));
  CHECK(slope_rank1(TriangularPhiModule::rank_one(q(p, p))) == Rational(1));
  CHECK(slope_rank1(TriangularPhiModule::rank_one(q(p, p * p, 3))) == Rational(2));
  CHECK_THROWS_AS(slope_rank1(TriangularPhiModule::rank_two(q(p, 1), q(p, 1))), Error);
  CHECK_THROWS_AS(TriangularPhiModule::rank_one(P::zero(p)), Error);

  auto v = hn_verdict(TriangularPhiModule::rank_two(q(p, 1), q(p, 1)));
  CHECK(v.filtration == Filtration::Isocline);
  CHECK(v.etale == Tribool::True);
  CHECK(v.slopes == std::pair{Rational(0), Rational(0)});

  v = hn_verdict(TriangularPhiModule::rank_two(q(p, 1, p), q(p, p)));
  CHECK(v.filtration == Filtration::Explicit);
  CHECK(v.etale == Tribool::False);
  CHECK(v.slopes == std::pair{Rational(-1), Rational(1)});

  v = hn_verdict(TriangularPhiModule::rank_two(q(p, p), q(p, 1, p)));
  CHECK(v.filtration == Filtration::ExchangeNeeded);
  CHECK(v.etale == Tribool::Undetermined);

  // s in S_irr with (u1, u2) = (1, -1): weight 2, crystalline
  TriParam s{CharacterP::unramified(q(p, p)), CharacterP::x_power(p, -2) * CharacterP::unramified(q(p, p)),
             std::nullopt};
  REQUIRE(classify(s) == TriClass::Cris);
  v = hn_verdict(TriangularPhiModule::from_param(s));
  CHECK(v.filtration == Filtration::Isocline);
  CHECK(v.etale == Tribool::True);
  CHECK(v.slopes == std::pair{Rational(0), Rational(0)});

  auto tr = CharacterP::trivial(p);
  CHECK(etale_constraints(TriParam{tr, tr, std::nullopt}));
  CHECK(etale_constraints(s));
  TriParam s12{CharacterP::unramified(q(p, p)), CharacterP::unramified(q(p, 1, p * p)), std::nullopt};
  CHECK_FALSE(etale_constraints(s12));
}
