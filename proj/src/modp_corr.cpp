#include "pgk/modp_corr.hpp"

#include <algorithm>

#include "pgk/error.hpp"

namespace pgk {

namespace {

i64 tame_mod(i64 p) { return p == 2 ? 1 : p - 1; }

Fp2 one(i64 p) { return Fp2(p, 1); }

// Valuation of a_p as far as it is known.
struct ValView {
  bool inf = false;
  bool exact = true;
  Rational v;  // exact value or lower bound

  explicit ValView(const PadicScalar& x) {
    if (x.is_exact_zero()) {
      inf = true;
    } else if (x.is_zero()) {
      exact = false;
      v = x.valuation_lower_bound();
    } else {
      v = *x.valuation();
    }
  }
  [[noreturn]] static void undecided(const std::string& what) {
    throw Error(Errc::InsufficientPrecision, "cannot decide " + what);
  }
  bool gt(const Rational& c) const {
    if (inf) return true;
    if (exact) return v > c;
    if (v > c) return true;
    undecided("val(a_p) > " + c.str());
  }
  bool lt(const Rational& c) const {
    if (inf) return false;
    if (exact) return v < c;
    if (v >= c) return false;
    undecided("val(a_p) < " + c.str());
  }
  bool eq(const Rational& c) const { return !lt(c) && !gt(c); }
};

// Reduction mod p of x, which must be provably integral.
Fp2 residue(const PadicScalar& x) {
  const i64 p = x.prime();
  if (x.is_exact_zero()) return Fp2(p, 0);
  if (x.is_zero()) {
    if (x.valuation_lower_bound() > Rational(0)) return Fp2(p, 0);
    throw Error(Errc::InsufficientPrecision, "residue not determined at this precision");
  }
  Rational v = *x.valuation();
  if (v < Rational(0)) throw Error(Errc::InvalidArgument, "residue of a non-integral element");
  if (v > Rational(0)) return Fp2(p, 0);
  return Fp2(p, x.unit_residue(1));
}

GaloisSS split_pair(const CharModP& base, const Fp2& lam) {
  return GaloisSS::split(base * CharModP::mu(lam), base * CharModP::mu(lam.inverse()));
}

}  // namespace

CharModP::CharModP(Fp2 lambda, i64 tame) : p(lambda.prime()), lam(lambda), t(mod(tame, tame_mod(lambda.prime()))) {
  if (lam.is_zero()) throw Error(Errc::InvalidArgument, "character value at p must be nonzero");
}

CharModP CharModP::trivial(i64 p) { return CharModP(one(p), 0); }
CharModP CharModP::omega(i64 p, i64 k) { return CharModP(one(p), k); }
CharModP CharModP::mu(const Fp2& lambda) { return CharModP(lambda, 0); }

CharModP operator*(const CharModP& a, const CharModP& b) {
  if (a.p != b.p) throw Error(Errc::PrimeMismatch, "characters over different primes");
  return CharModP(a.lam * b.lam, a.t + b.t);
}

CharModP CharModP::inverse() const { return CharModP(lam.inverse(), -t); }

CharModP CharModP::pow(i64 n) const { return CharModP(lam.pow(n), t * n); }

std::string CharModP::str() const { return "omega^" + std::to_string(t) + "*mu(" + lam.str() + ")"; }

GaloisSS GaloisSS::irred(i64 r, const CharModP& chi) {
  if (r < 0 || r > chi.p - 1) throw Error(Errc::NotSemisimpleInput, "rho(r, chi) needs 0 <= r <= p-1");
  auto [r0, c0] = rho_normal_form(r, chi);
  GaloisSS w;
  w.kind = Kind::Irred;
  w.r = r0;
  w.chi = c0;
  return w;
}

GaloisSS GaloisSS::split(const CharModP& a, const CharModP& b) {
  GaloisSS w;
  w.kind = Kind::Split;
  w.eta1 = std::min(a, b);
  w.eta2 = std::max(a, b);
  w.chi = w.eta1;
  return w;
}

CharModP GaloisSS::det() const {
  if (kind == Kind::Split) return eta1 * eta2;
  return CharModP::omega(chi.p, r + 1) * chi * chi;
}

GaloisSS GaloisSS::twist(const CharModP& c) const {
  if (kind == Kind::Split) return split(eta1 * c, eta2 * c);
  return irred(r, chi * c);
}

bool operator==(const GaloisSS& a, const GaloisSS& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == GaloisSS::Kind::Split) return a.eta1 == b.eta1 && a.eta2 == b.eta2;
  return a.r == b.r && a.chi == b.chi;
}

std::string GaloisSS::str() const {
  if (kind == Kind::Split) return eta1.str() + " + " + eta2.str();
  return "rho(" + std::to_string(r) + ", " + chi.str() + ")";
}

GaloisSS ind_decompose(i64 p, i64 h) {
  i64 rem = mod(h, p + 1);
  if (rem != 0) {
    i64 m = (h - rem) / (p + 1);
    return GaloisSS::irred(rem - 1, CharModP::omega(p, m));
  }
  i64 m = h / (p + 1);
  Fp2 i = *Fp2(p, -1).sqrt();
  return split_pair(CharModP::omega(p, m), i);
}

std::pair<i64, CharModP> rho_normal_form(i64 r, const CharModP& chi) {
  const i64 p = chi.p;
  CharModP m1 = CharModP::mu(Fp2(p, -1));
  CharModP w = chi * CharModP::omega(p, r);
  std::pair<i64, CharModP> cands[] = {{r, chi}, {r, chi * m1}, {p - 1 - r, w}, {p - 1 - r, w * m1}};
  return *std::min_element(std::begin(cands), std::end(cands), [](const auto& x, const auto& y) {
    return std::pair(x.first, x.second.key()) < std::pair(y.first, y.second.key());
  });
}

GL2Atom GL2Atom::one_dim(const CharModP& eta) {
  GL2Atom a;
  a.kind = Kind::OneDim;
  a.eta = eta;
  a.chi = CharModP::trivial(eta.p);
  a.lam = Fp2(eta.p, 0);
  return a;
}

GL2Atom GL2Atom::special(const CharModP& eta) {
  GL2Atom a = one_dim(eta);
  a.kind = Kind::Special;
  return a;
}

GL2Atom GL2Atom::pi(i64 r, const Fp2& lambda, const CharModP& chi) {
  const i64 p = chi.p;
  if (r < 0 || r > p - 1) throw Error(Errc::InvalidArgument, "pi(r, lambda, chi) needs 0 <= r <= p-1");
  const bool edge = r == 0 || r == p - 1;
  if (edge && (lambda == one(p) || lambda == -one(p)))
    throw Error(Errc::InvalidArgument, "pi(r, +-1, chi) is reducible for r in {0, p-1}");
  GL2Atom a;
  a.kind = Kind::Pi;
  a.eta = CharModP::trivial(p);
  a.lam = lambda;
  if (lambda.is_zero()) {
    std::tie(a.r, a.chi) = rho_normal_form(r, chi);
    return a;
  }
  CharModP m1 = CharModP::mu(Fp2(p, -1));
  std::vector<std::tuple<i64, Fp2, CharModP>> cands{{r, lambda, chi}, {r, -lambda, chi * m1}};
  if (edge) {
    cands.emplace_back(p - 1 - r, lambda, chi);
    cands.emplace_back(p - 1 - r, -lambda, chi * m1);
  }
  auto best = *std::min_element(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
    return std::tuple(std::get<0>(x), std::get<1>(x).a(), std::get<1>(x).b(), std::get<2>(x).key()) <
           std::tuple(std::get<0>(y), std::get<1>(y).a(), std::get<1>(y).b(), std::get<2>(y).key());
  });
  std::tie(a.r, a.lam, a.chi) = best;
  return a;
}

std::string GL2Atom::str() const {
  switch (kind) {
    case Kind::OneDim: return "(" + eta.str() + ")o det";
    case Kind::Special: return "Sp(x)(" + eta.str() + ")o det";
    case Kind::Pi: return "pi(" + std::to_string(r) + ", " + lam.str() + ", " + chi.str() + ")";
  }
  return "";
}

GL2SS canonical(GL2SS atoms) {
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

std::string gl2_str(const GL2SS& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) out += (i ? " + " : "") + s[i].str();
  return out;
}

GL2SS pi_semisimplify(i64 p, i64 r, const Fp2& lambda, const CharModP& chi) {
  if (r < 0 || r > p - 1) throw Error(Errc::InvalidArgument, "r must lie in {0, ..., p-1}");
  if ((r == 0 || r == p - 1) && (lambda == one(p) || lambda == -one(p))) {
    CharModP eta = chi * CharModP::mu(lambda);
    return canonical({GL2Atom::special(eta), GL2Atom::one_dim(eta)});
  }
  return {GL2Atom::pi(r, lambda, chi)};
}

GL2SS correspond_split_params(i64 p, i64 r, const Fp2& lambda, const CharModP& chi) {
  if (r < 0 || r > std::max<i64>(p - 2, 0)) throw Error(Errc::NotSemisimpleInput, "split parameter r must lie in {0, ..., p-2}");
  if (lambda.is_zero()) throw Error(Errc::NotSemisimpleInput, "lambda must be nonzero");
  GL2SS out = pi_semisimplify(p, r, lambda, chi);
  GL2SS second = pi_semisimplify(p, mod(p - 3 - r, tame_mod(p)), lambda.inverse(), CharModP::omega(p, r + 1) * chi);
  out.insert(out.end(), second.begin(), second.end());
  return canonical(out);
}

GL2SS correspond(const GaloisSS& w) {
  const i64 p = w.prime();
  if (w.kind == GaloisSS::Kind::Irred) return {GL2Atom::pi(w.r, Fp2(p, 0), w.chi)};
  const CharModP &e1 = w.eta1, &e2 = w.eta2;
  i64 r = mod(e1.t - e2.t - 1, tame_mod(p));
  auto lam = (e1.lam / e2.lam).sqrt();
  if (!lam) throw Error(Errc::NeedsFieldExtension, "lambda^2 = " + (e1.lam / e2.lam).str() + " has no root in F_{p^2}");
  return correspond_split_params(p, r, *lam, e2 * CharModP::mu(*lam));
}

std::optional<CharModP> central_character(const GL2SS& s) {
  std::optional<CharModP> out;
  for (const auto& a : s) {
    CharModP c = a.kind == GL2Atom::Kind::Pi ? CharModP::omega(a.chi.p, a.r) * a.chi * a.chi : a.eta * a.eta;
    if (out && !(*out == c)) return std::nullopt;
    out = c;
  }
  return out;
}

const char* reduction_kind_name(Reduction::Kind k) {
  switch (k) {
    case Reduction::Kind::Decided: return "DECIDED";
    case Reduction::Kind::Ambiguous: return "AMBIGUOUS";
    case Reduction::Kind::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

Reduction reduce_crystalline(i64 p, i64 k, const PadicScalar& a_p, const std::optional<CharModP>& chi) {
  if (k < 2) throw Error(Errc::BadWeight, "k must be at least 2");
  if (a_p.prime() != p) throw Error(Errc::PrimeMismatch, "a_p over another prime");
  const ValView val(a_p);
  if (!val.gt(Rational(0))) throw Error(Errc::InvalidArgument, "a_p must have positive valuation");
  const PadicScalar P = PadicScalar::from_integer(p, p);
  const CharModP w = CharModP::omega(p);

  Reduction res;
  auto decided = [&](GaloisSS g, std::string branch) {
    res.kind = Reduction::Kind::Decided;
    res.value = std::move(g);
    res.branch = std::move(branch);
  };

  if (k <= p + 1) {
    decided(ind_decompose(p, k - 1), "1");
  } else if (k == p + 2) {
    if (val.lt(Rational(1))) {
      decided(ind_decompose(p, 2), "2a");
    } else {
      auto [l1, l2] = reciprocal_quadratic_roots(residue(a_p / P));
      decided(GaloisSS::split(w * CharModP::mu(l1), w * CharModP::mu(l2)), "2b");
    }
  } else if (k <= 2 * p) {
    if (val.lt(Rational(1))) {
      decided(ind_decompose(p, k - p), "3a");
    } else if (val.eq(Rational(1))) {
      Fp2 lam = residue(a_p / P) * Fp2(p, k - 1);
      decided(GaloisSS::split(CharModP::omega(p, k - 2) * CharModP::mu(lam), w * CharModP::mu(lam.inverse())), "3b");
    } else {
      decided(ind_decompose(p, k - 1), "3c");
    }
  } else if (k == 2 * p + 1 && p != 2) {
    PadicScalar sq = a_p * a_p;
    std::optional<Rational> v;
    try {
      v = sum_valuation(sq, P);
    } catch (const Error& e) {
      if (e.code() != Errc::InsufficientPrecision) throw;
      // a_p^2 + p is zero within precision: its known bound must already reach 3/2
      PadicScalar s = sq + P;
      if (!s.is_zero() || s.valuation_lower_bound() < Rational(3, 2))
        throw Error(Errc::InsufficientPrecision, "cannot decide val(a_p^2 + p) against 3/2");
    }
    if (v && *v < Rational(3, 2)) {
      decided(ind_decompose(p, 2), "4a");
    } else {
      PadicScalar q = (sq + P) / (PadicScalar::from_integer(p, 2) * P * a_p);
      auto [l1, l2] = reciprocal_quadratic_roots(residue(q));
      decided(GaloisSS::split(w * CharModP::mu(l1), w * CharModP::mu(l2)), "4b");
    }
  } else if (k >= 2 * p + 2) {
    const i64 bound = (k - 2) / (p - 1);
    if (val.gt(Rational(bound))) {
      decided(ind_decompose(p, k - 1), "5a");
      res.reducible_ind = mod(k - 1, p + 1) == 0;
    } else if (val.lt(Rational(1))) {
      i64 t = mod(k - 1 - 1, p - 1) + 1;
      if (mod(k - 3, p - 1) != 0) {
        decided(ind_decompose(p, t), "5b-i");
      } else {
        res.kind = Reduction::Kind::Ambiguous;
        res.value = ind_decompose(p, t);
        res.split_base = w;
        res.branch = "5b-ii";
      }
    } else {
      res.branch = "none";
    }
  } else {
    res.branch = "none";
  }

  if (chi && res.value) res.value = res.value->twist(*chi);
  if (chi && res.split_base) res.split_base = *res.split_base * *chi;
  return res;
}

const char* buzzard_name(BuzzardStatus s) {
  switch (s) {
    case BuzzardStatus::NotApplicable: return "NOT_APPLICABLE";
    case BuzzardStatus::Consistent: return "CONSISTENT";
    case BuzzardStatus::Violation: return "VIOLATION";
  }
  return "NOT_APPLICABLE";
}

BuzzardStatus buzzard_monitor(i64 p, i64 k, const PadicScalar& a_p, const Reduction& verdict) {
  if (p == 2 || k % 2 != 0) return BuzzardStatus::NotApplicable;
  if (verdict.kind != Reduction::Kind::Decided || verdict.value->kind != GaloisSS::Kind::Split)
    return BuzzardStatus::NotApplicable;
  if (a_p.is_exact_zero()) return BuzzardStatus::Consistent;
  auto v = a_p.valuation();
  if (!v) return BuzzardStatus::NotApplicable;
  return v->is_integer() ? BuzzardStatus::Consistent : BuzzardStatus::Violation;
}

}  // namespace pgk
