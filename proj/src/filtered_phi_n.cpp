#include "pgk/filtered_phi_n.hpp"

#include <algorithm>
#include <cmath>

namespace pgk {

namespace {

using P = PadicScalar;

constexpr int kHenselDigits = 20;

// nullopt: zero to the known precision but not provably zero.
std::optional<bool> decided_zero(const P& x) {
  if (x.is_exact_zero()) return true;
  if (x.is_zero()) return std::nullopt;
  return false;
}

bool surely_nonzero(const P& x) { return !x.is_zero(); }

// Exact unramified scalar as a rational.
std::optional<Rational> to_rational(const P& x) {
  if (x.is_exact_zero()) return Rational(0);
  if (!x.is_exact() || x.ram() != 1) return std::nullopt;
  Rational r = *x.exact_unit();
  for (i64 i = 0; i < x.vnum(); ++i) r = r * Rational(x.prime());
  for (i64 i = 0; i > x.vnum(); --i) r = r / Rational(x.prime());
  return r;
}

P wedge(const PVec& v, const PVec& w) { return v[0] * w[1] - v[1] * w[0]; }

PVec mat_vec(const PMat& m, const PVec& v) {
  PVec out;
  for (const auto& row : m) {
    P acc = P::zero(v[0].prime());
    for (size_t j = 0; j < v.size(); ++j) acc = acc + row[j] * v[j];
    out.push_back(acc);
  }
  return out;
}

PMat mul(const PMat& a, const PMat& b) {
  size_t n = a.size();
  PMat r(n, PVec(n, P::zero(a[0][0].prime())));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) r[i][j] = r[i][j] + a[i][k] * b[k][j];
  return r;
}

P det(const PMat& m) {
  if (m.size() == 1) return m[0][0];
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

bool all_zero(const PMat& m) {
  for (const auto& r : m)
    for (const auto& x : r)
      if (!x.is_zero()) return false;
  return true;
}

bool vec_zero(const PVec& v) {
  return std::all_of(v.begin(), v.end(), [](const P& x) { return x.is_zero(); });
}

void need(std::optional<bool> b, const char* what) {
  if (!b) throw Error(Errc::InsufficientPrecision, what);
}

// Rank of a set of vectors in E^d, d <= 2.
int span_rank(const std::vector<PVec>& vs, int d) {
  std::optional<int> first;
  bool unsure = false;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (static_cast<int>(vs[i].size()) != d) throw Error(Errc::InvalidModule, "filtration vector of wrong length");
    for (const auto& x : vs[i]) {
      if (surely_nonzero(x) && !first) first = static_cast<int>(i);
      if (!x.is_exact_zero() && x.is_zero()) unsure = true;
    }
  }
  if (!first) {
    if (unsure) throw Error(Errc::InsufficientPrecision, "filtration vector zero within precision");
    return 0;
  }
  if (d == 1) return 1;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (static_cast<int>(i) == *first) continue;
    auto z = decided_zero(wedge(vs[*first], vs[i]));
    need(z, "cannot decide the span of filtration vectors");
    if (!*z) return 2;
  }
  return 1;
}

// A spanning vector of a rank-1 step.
PVec line_of(const std::vector<PVec>& vs) {
  for (const auto& v : vs)
    if (!vec_zero(v)) return v;
  throw Error(Errc::InvalidModule, "empty line");
}

std::optional<bool> same_line(const PVec& v, const PVec& w) {
  if (v.size() == 1) return true;
  return decided_zero(wedge(v, w));
}

// lambda with M v = lambda v, assuming v is an eigenvector.
P eigenvalue(const PMat& m, const PVec& v) {
  PVec mv = mat_vec(m, v);
  for (size_t i = 0; i < v.size(); ++i)
    if (surely_nonzero(v[i])) return mv[i] / v[i];
  throw Error(Errc::InsufficientPrecision, "eigenvector zero within precision");
}

PVec eigenvector(const PMat& m, const P& lambda) {
  PVec v{m[0][1], lambda - m[0][0]};
  if (!vec_zero(v)) return v;
  PVec w{lambda - m[1][1], m[1][0]};
  if (!vec_zero(w)) return w;
  throw Error(Errc::InsufficientPrecision, "eigenvector zero within precision");
}

std::optional<PVec> kernel_line(const PMat& n) {
  PVec v{n[0][1], -n[0][0]};
  if (!vec_zero(v)) return v;
  PVec w{n[1][1], -n[1][0]};
  if (!vec_zero(w)) return w;
  return std::nullopt;
}

std::optional<bool> is_scalar(const PMat& m) {
  auto a = decided_zero(m[0][1]), b = decided_zero(m[1][0]), c = decided_zero(m[0][0] - m[1][1]);
  if ((a && !*a) || (b && !*b) || (c && !*c)) return false;
  if (!a || !b || !c) return std::nullopt;
  return true;
}

std::optional<i64> isqrt_exact(i64 n) {
  if (n < 0) return std::nullopt;
  auto r = static_cast<i64>(std::llround(std::sqrt(static_cast<long double>(n))));
  for (i64 c = std::max<i64>(0, r - 2); c <= r + 2; ++c)
    if (c * c == n) return c;
  return std::nullopt;
}

// Square roots of exact rationals when they are rational.
std::optional<Rational> rational_sqrt(const Rational& q) {
  auto a = isqrt_exact(q.num()), b = isqrt_exact(q.den());
  if (!a || !b) return std::nullopt;
  return Rational(*a, *b);
}

// Eigenvalues in the base field, computed when possible.
// Throws IrrationalEigenline when they might be rational but cannot be produced.
std::vector<P> rational_eigenvalues(const PMat& m) {
  const i64 p = m[0][0].prime();
  P tr = m[0][0] + m[1][1], dt = det(m);
  auto [s1, s2] = quadratic_newton_slopes(-tr, dt);
  auto t = to_rational(tr), d = to_rational(dt);
  std::optional<Rational> disc;
  if (t && d) disc = *t * *t - Rational(4) * *d;
  if (disc) {
    if (auto r = rational_sqrt(*disc)) {
      Rational l1 = (*t + *r) / Rational(2), l2 = (*t - *r) / Rational(2);
      if (l1 == l2) return {P::from_rational(p, l1)};
      return {P::from_rational(p, l1), P::from_rational(p, l2)};
    }
  }
  if (s1 < s2) {
    // lambda = tr - det/lambda contracts toward the root of smaller slope
    P lam = tr.is_exact() ? tr.truncated(kHenselDigits) : tr;
    int rounds = kHenselDigits * std::max(tr.ram(), dt.ram()) + 2;
    for (int i = 0; i < rounds; ++i) lam = (tr - dt / lam).truncated(kHenselDigits);
    return {lam, dt / lam};
  }
  if (disc && p != 2) {
    // disc != 0 here, since a zero discriminant has a rational root
    P pd = P::from_rational(p, *disc);
    bool square = pd.vnum() % 2 == 0 && powmod(pd.residue(), (p - 1) / 2, p) == 1;
    if (!square) return {};
  }
  throw Error(Errc::IrrationalEigenline, "eigenvalues need a square root the toolkit does not extract");
}

FilteredPhiNModule line_module(const FilteredPhiNModule& D, const PVec& v, const P& lambda) {
  FilteredPhiNModule L;
  L.p = D.p;
  L.dim = 1;
  L.phi = {{lambda}};
  L.N = {{P::zero(D.p)}};
  L.fil = {FilStep{t_H_line(D, v) + 1, {}}};
  L.label = "line";
  return L;
}

P p_power(i64 p, i64 k, int e) { return P::pi_power(p, k * e, e); }

Rational val_of(const P& x) {
  auto v = x.valuation();
  if (!v) throw Error(Errc::InsufficientPrecision, "eigenvalue zero within precision");
  return *v;
}

}  // namespace

void FilteredPhiNModule::validate() const {
  if (dim < 0 || dim > 2) throw Error(Errc::InvalidModule, "dimension must be 0, 1 or 2");
  auto square = [&](const PMat& m) {
    if (static_cast<int>(m.size()) != dim) return false;
    return std::all_of(m.begin(), m.end(), [&](const PVec& r) { return static_cast<int>(r.size()) == dim; });
  };
  if (!square(phi) || !square(N)) throw Error(Errc::InvalidModule, "matrix shape does not match dimension");
  if (dim == 0) return;
  for (const auto& r : phi)
    for (const auto& x : r)
      if (x.prime() != p) throw Error(Errc::PrimeMismatch, "matrix entry over another prime");
  if (det(phi).is_zero()) throw Error(Errc::InvalidModule, "phi is not invertible");
  PMat Nd = N;
  for (int i = 1; i < dim; ++i) Nd = mul(Nd, N);
  if (!all_zero(Nd)) throw Error(Errc::InvalidModule, "N is not nilpotent");
  PMat lhs = mul(N, phi), rhs = mul(phi, N);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (!(lhs[i][j] - P::from_integer(p, p) * rhs[i][j]).is_zero())
        throw Error(Errc::InvalidModule, "N phi != p phi N");
  if (fil.empty() || span_rank(fil.back().span, dim) != 0)
    throw Error(Errc::InvalidModule, "filtration must end with the zero subspace");
  int prev = dim;
  std::optional<PVec> prev_line;
  for (size_t i = 0; i < fil.size(); ++i) {
    if (i > 0 && fil[i].h <= fil[i - 1].h) throw Error(Errc::InvalidModule, "filtration steps must increase");
    int r = span_rank(fil[i].span, dim);
    if (r > prev) throw Error(Errc::InvalidModule, "filtration is not decreasing");
    if (r == 1 && dim == 2) {
      PVec v = line_of(fil[i].span);
      if (prev_line) {
        auto s = same_line(*prev_line, v);
        need(s, "cannot compare filtration lines");
        if (!*s) throw Error(Errc::InvalidModule, "filtration lines are not nested");
      }
      prev_line = v;
    }
    prev = r;
  }
}

int FilteredPhiNModule::fil_dim(i64 h) const {
  int d = dim;
  for (const auto& s : fil) {
    if (s.h > h) break;
    d = span_rank(s.span, dim);
  }
  return d;
}

std::vector<std::pair<i64, int>> FilteredPhiNModule::jumps() const {
  std::vector<std::pair<i64, int>> out;
  int prev = dim;
  for (const auto& s : fil) {
    int r = span_rank(s.span, dim);
    if (r < prev) out.emplace_back(s.h - 1, prev - r);
    prev = r;
  }
  return out;
}

Rational t_N(const FilteredPhiNModule& D) {
  if (D.dim == 0) return Rational(0);
  return *det(D.phi).valuation();
}

i64 t_H(const FilteredPhiNModule& D) {
  i64 t = 0;
  for (auto [h, m] : D.jumps()) t += h * m;
  return t;
}

i64 t_H_line(const FilteredPhiNModule& D, const PVec& v) {
  if (D.fil.empty()) throw Error(Errc::InvalidModule, "empty filtration");
  i64 top = D.fil.front().h - 1;
  for (size_t i = 0; i < D.fil.size(); ++i) {
    const auto& s = D.fil[i];
    int r = span_rank(s.span, D.dim);
    bool inside = r == D.dim;
    if (!inside && r == 1) {
      auto same = same_line(line_of(s.span), v);
      need(same, "cannot decide whether a line lies in a filtration step");
      inside = *same;
    }
    if (!inside) break;
    top = i + 1 < D.fil.size() ? D.fil[i + 1].h - 1 : s.h;
  }
  return top;
}

std::vector<Subobject> subobjects(const FilteredPhiNModule& D) {
  D.validate();
  const i64 p = D.p;
  std::vector<Subobject> out;
  FilteredPhiNModule zero{p, 0, {}, {}, {FilStep{0, {}}}, "0"};
  out.push_back({std::nullopt, zero});
  if (D.dim == 0) return out;
  if (D.dim == 2) {
    std::vector<PVec> lines;
    if (!all_zero(D.N)) {
      lines.push_back(*kernel_line(D.N));
    } else {
      auto sc = is_scalar(D.phi);
      need(sc, "cannot decide whether phi is scalar");
      if (*sc) throw Error(Errc::UnsupportedModule, "scalar phi: every line is stable");
      for (const P& lam : rational_eigenvalues(D.phi)) lines.push_back(eigenvector(D.phi, lam));
    }
    for (const auto& v : lines) out.push_back({v, line_module(D, v, eigenvalue(D.phi, v))});
  }
  out.push_back({std::nullopt, D});
  return out;
}

const char* admissibility_name(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible: return "ADMISSIBLE";
    case Admissibility::NotAdmissible: return "NOT_ADMISSIBLE";
    case Admissibility::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

AdmissibilityResult is_admissible(const FilteredPhiNModule& D) {
  D.validate();
  AdmissibilityResult res;
  auto add = [&](std::string what, i64 th, Rational tn, bool lower = false) {
    bool ok = Rational(th) <= tn;
    res.certificate.push_back({std::move(what), th, tn, lower, ok});
    return ok;
  };
  try {
    const i64 tH = t_H(D);
    const Rational tN = t_N(D);
    bool ok = tH == tN;
    res.certificate.push_back({"D", tH, tN, false, ok});
    if (ok && D.dim == 2) {
      // generic line: largest h with Fil^h = D
      i64 h_low = D.fil.front().h - 1;
      std::optional<PVec> F;
      for (const auto& s : D.fil)
        if (span_rank(s.span, 2) == 1) {
          F = line_of(s.span);
          break;
        }
      const P& m00 = D.phi[0][0];
      if (!all_zero(D.N)) {
        PVec v = *kernel_line(D.N);
        ok &= add("ker N", t_H_line(D, v), val_of(eigenvalue(D.phi, v)));
      } else if (auto sc = is_scalar(D.phi); !sc) {
        throw Error(Errc::InsufficientPrecision, "cannot decide whether phi is scalar");
      } else if (*sc) {
        i64 top = D.jumps().back().first;
        ok &= add("worst line (phi scalar)", top, val_of(m00));
      } else {
        std::optional<bool> stable;
        if (F) stable = decided_zero(wedge(*F, mat_vec(D.phi, *F)));
        if (F && !stable) throw Error(Errc::InsufficientPrecision, "cannot decide whether Fil line is phi-stable");
        if (F && *stable) {
          P lf = eigenvalue(D.phi, *F);
          Rational vf = val_of(lf);
          ok &= add("Fil line", t_H_line(D, *F), vf);
          P mu = det(D.phi) / lf;
          auto same = decided_zero(mu - lf);
          if (!same || !*same) {
            bool good = add("other eigenline", h_low, tN - vf);
            if (!same && !good) throw Error(Errc::InsufficientPrecision, "cannot separate the eigenvalues");
            ok &= good;
          }
        } else {
          auto [s1, s2] = quadratic_newton_slopes(-(m00 + D.phi[1][1]), det(D.phi));
          if (Rational(h_low) <= s1) {
            add("eigenlines", h_low, s1, true);
          } else if (s1 < s2) {
            ok &= add("eigenline of slope " + s1.str(), h_low, s1);
          } else {
            throw Error(Errc::IrrationalEigenline, "equal slopes above the generic jump");
          }
        }
      }
    }
    res.verdict = ok ? Admissibility::Admissible : Admissibility::NotAdmissible;
  } catch (const Error& e) {
    res.verdict = Admissibility::Undecided;
    res.note = e.what();
  }
  return res;
}

FilteredPhiNModule build_Dkap(i64 p, i64 k, const PadicScalar& a_p) {
  if (k < 2) throw Error(Errc::BadWeight, "k must be at least 2");
  if (a_p.prime() != p) throw Error(Errc::PrimeMismatch, "a_p over another prime");
  if (!a_p.is_exact_zero() && !(a_p.valuation_lower_bound() > Rational(0)))
    throw Error(Errc::InvalidArgument, "a_p must have positive valuation");
  const int e = a_p.ram();
  FilteredPhiNModule D;
  D.p = p;
  D.dim = 2;
  D.phi = {{P::zero(p, e), P::from_integer(p, -1, e)}, {p_power(p, k - 1, e), a_p}};
  D.N = {{P::zero(p, e), P::zero(p, e)}, {P::zero(p, e), P::zero(p, e)}};
  D.fil = {FilStep{1, {{P::from_integer(p, 1, e), P::zero(p, e)}}}, FilStep{k, {}}};
  D.label = "D_{k,a_p}";
  D.validate();
  return D;
}

FilteredPhiNModule build_DkL(i64 p, i64 k, const PadicScalar& L) {
  if (k <= 2 || k % 2 != 0) throw Error(Errc::BadWeight, "k must be even and greater than 2");
  if (L.prime() != p) throw Error(Errc::PrimeMismatch, "L over another prime");
  const int e = L.ram();
  FilteredPhiNModule D;
  D.p = p;
  D.dim = 2;
  D.phi = {{p_power(p, k / 2, e), P::zero(p, e)}, {P::zero(p, e), p_power(p, k / 2 - 1, e)}};
  D.N = {{P::zero(p, e), P::zero(p, e)}, {P::from_integer(p, 1, e), P::zero(p, e)}};
  D.fil = {FilStep{1, {{P::from_integer(p, 1, e), L}}}, FilStep{k, {}}};
  D.label = "D_{k,L}";
  D.validate();
  return D;
}

}  // namespace pgk
