#include "pgk/phi_gamma.hpp"

#include <algorithm>

namespace pgk {

namespace {

using S = LaurentSeries;

// In place: g(Y) = f(Y + s) for s = +1 or -1, coefficients mod m.
void taylor_shift(std::vector<i64>& c, int s, i64 m) {
  const size_t n = c.size();
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t j = n - 1; j > i; --j) {
      i64 t = s > 0 ? c[j - 1] + c[j] : c[j - 1] - c[j];
      c[j - 1] = t >= m ? t - m : (t < 0 ? t + m : t);
    }
}

// Rows of binomial coefficients C(n, k) mod p^a, k < count, for many n.
class BinomialRows {
 public:
  BinomialRows(i64 p, int a, i64 count) : p_(p), a_(a), m_(ipow(p, a)), count_(count) {
    vk_.assign(static_cast<size_t>(count + 1), 0);
    uinv_.assign(static_cast<size_t>(count + 1), 1);
    for (i64 k = 1; k <= count; ++k) {
      i64 u = k;
      int v = 0;
      while (u % p == 0) u /= p, ++v;
      vk_[static_cast<size_t>(k)] = v;
      uinv_[static_cast<size_t>(k)] = invmod(u, m_);
    }
    pw_.assign(static_cast<size_t>(a + 1), 1);
    for (int i = 1; i <= a; ++i) pw_[static_cast<size_t>(i)] = pw_[static_cast<size_t>(i - 1)] * p;
  }

  std::vector<i64> row(i64 n) const {
    std::vector<i64> out(static_cast<size_t>(count_), 0);
    if (count_ == 0) return out;
    out[0] = 1 % m_;
    i64 v = 0, u = 1;
    for (i64 k = 0; k + 1 < count_; ++k) {
      i64 num = n - k;
      if (num == 0) break;
      i64 un = num;
      int vn = 0;
      while (un % p_ == 0) un /= p_, ++vn;
      v += vn - vk_[static_cast<size_t>(k + 1)];
      u = mulmod(mulmod(u, un, m_), uinv_[static_cast<size_t>(k + 1)], m_);
      out[static_cast<size_t>(k + 1)] = v >= a_ ? 0 : mulmod(u, pw_[static_cast<size_t>(v)], m_);
    }
    return out;
  }

 private:
  i64 p_;
  int a_;
  i64 m_, count_;
  std::vector<int> vk_;
  std::vector<i64> uinv_, pw_;
};

// Dense coefficients of degrees 0..len-1.
std::vector<i64> dense(const S& f, i64 len) {
  std::vector<i64> c(static_cast<size_t>(std::max<i64>(len, 0)), 0);
  for (auto& [d, v] : f.terms())
    if (d >= 0 && d < len) c[static_cast<size_t>(d)] = v;
  return c;
}

S from_dense(i64 p, int a, i64 N, const std::vector<i64>& c, i64 shift, S::Ring ring) {
  std::vector<std::pair<i64, i64>> t;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i]) t.emplace_back(static_cast<i64>(i) + shift, c[i]);
  return S::from_terms(p, a, N, t, ring);
}

bool exact(const S& f) { return f.precision() >= S::kExact; }

// phi(X)^-1 = X^-p (1 + p h)^-1 with h = sum_{0<i<p} (C(p,i)/p) X^(i-p), as an exact Laurent polynomial.
S inverse_phi_x(i64 p, int a) {
  auto b = binomials_mod(p, p + 1, p, a + 1);
  std::vector<std::pair<i64, i64>> ht;
  for (i64 i = 1; i < p; ++i) ht.emplace_back(i - p, b[static_cast<size_t>(i)] / p);
  S ph = S::from_terms(p, a, S::kExact, ht).scaled(p);
  S term = S::constant(p, a, S::kExact, 1);
  S sum = term;
  for (int k = 1; k < a; ++k) {
    term = term * (-ph);
    sum = sum + term;
  }
  return sum.shifted(-p);
}

S phi_x(i64 p, int a) {
  auto b = binomials_mod(p, p + 1, p, a);
  std::vector<std::pair<i64, i64>> t;
  for (i64 i = 1; i <= p; ++i) t.emplace_back(i, b[static_cast<size_t>(i)]);
  return S::from_terms(p, a, S::kExact, t);
}

S exact_copy(const S& f) { return S::from_terms(f.prime(), f.digits(), S::kExact, f.terms(), f.ring()); }

}  // namespace

int gamma_precision(i64 p, int a, i64 N) { return a + ceil_log(p, N); }

LaurentSeries frobenius(const LaurentSeries& f) {
  const i64 p = f.prime(), N = f.precision(), m = f.modulus();
  const int a = f.digits();
  if (N < 0) throw Error(Errc::InsufficientPrecision, "frobenius needs X-precision >= 0");
  S result(p, a, N, f.ring());
  if (f.is_zero()) return result;
  if (f.dmax() >= 0) {
    i64 len = std::min(N, f.dmax() + 1);
    auto y = dense(f, len);
    taylor_shift(y, -1, m);
    std::vector<i64> g(static_cast<size_t>(p * (len - 1) + 1), 0);
    for (i64 j = 0; j < len; ++j) g[static_cast<size_t>(p * j)] = y[static_cast<size_t>(j)];
    taylor_shift(g, +1, m);
    if (!exact(f) && static_cast<i64>(g.size()) > N) g.resize(static_cast<size_t>(N));
    result = from_dense(p, a, N, g, 0, f.ring());
  }
  if (f.dmin() < 0) {
    S q = inverse_phi_x(p, a);
    S acc(p, a, S::kExact, f.ring());
    for (i64 d = f.dmin(); d < 0; ++d) {
      acc = acc + S::constant(p, a, S::kExact, f.coeff(d));
      acc = acc * q;
    }
    result = result + acc.with_ring(f.ring());
  }
  return result;
}

LaurentSeries gamma_act(i64 a_unit, int L, const LaurentSeries& f) {
  const i64 p = f.prime(), N = f.precision(), m = f.modulus();
  const int a = f.digits();
  if (mod(a_unit, p) == 0) throw Error(Errc::InvalidArgument, "gamma_act needs a p-adic unit");
  if (exact(f)) {
    if (f.is_zero() || (f.dmin() == 0 && f.dmax() == 0)) return f;
    throw Error(Errc::InsufficientPrecision, "gamma_act of a non-constant needs finite X-precision");
  }
  if (N < 0) throw Error(Errc::InsufficientPrecision, "gamma_act needs X-precision >= 0");
  if (L < gamma_precision(p, a, N))
    throw Error(Errc::InsufficientPrecision, "unit known mod p^" + std::to_string(L) + ", need p^" +
                                                 std::to_string(gamma_precision(p, a, N)));
  if (L > max_digits(p)) throw Error(Errc::Overflow, "unit precision exceeds int64");
  const i64 M = std::max<i64>(0, -f.dmin());
  const i64 Np = N + M;
  i128 reach = 1;
  for (int i = 0; i < L - a + 1 && reach < Np + 1; ++i) reach *= p;
  if (reach < Np + 1) throw Error(Errc::InsufficientPrecision, "polar part too deep for the unit's precision");
  const i64 mL = ipow(p, L);
  const i64 rep = mod(a_unit, mL);
  S F = f.shifted(M);
  std::vector<i64> out(static_cast<size_t>(Np), 0);
  if (!F.is_zero()) {
    i64 len = std::min(Np, F.dmax() + 1);
    auto y = dense(F, len);
    taylor_shift(y, -1, m);
    BinomialRows rows(p, a, Np);
    for (i64 j = 0; j < len; ++j) {
      i64 yj = y[static_cast<size_t>(j)];
      if (!yj) continue;
      auto r = rows.row(mulmod(rep, j, mL));
      for (i64 k = 0; k < Np; ++k)
        out[static_cast<size_t>(k)] = (out[static_cast<size_t>(k)] + mulmod(yj, r[static_cast<size_t>(k)], m)) % m;
    }
  }
  S g = from_dense(p, a, Np, out, 0, f.ring());
  if (M == 0) return g;
  BinomialRows rows(p, a, Np + 1);
  auto b = rows.row(rep);
  b.erase(b.begin());
  S U = from_dense(p, a, Np, b, 0, f.ring());
  return (U.inverse().pow(M) * g).shifted(-M);
}

LaurentSeries psi(const LaurentSeries& f) {
  const i64 p = f.prime(), N = f.precision(), m = f.modulus();
  const int a = f.digits();
  if (N < 0) throw Error(Errc::InsufficientPrecision, "psi needs X-precision >= 0");
  const i64 Npsi = exact(f) ? S::kExact : std::max<i64>(0, N / p - (a - 1));
  if (f.is_zero()) return S(p, a, Npsi, f.ring());
  const i64 M = std::max<i64>(0, -f.dmin());
  S g = exact_copy(f);
  if (M > 0) g = phi_x(p, a).pow(M) * g;
  if (g.dmin() < 0) throw Error(Errc::InvalidArgument, "internal: polar part survived in psi");
  auto y = dense(g, g.dmax() + 1);
  taylor_shift(y, -1, m);
  std::vector<i64> z((y.size() + static_cast<size_t>(p) - 1) / static_cast<size_t>(p), 0);
  for (size_t i = 0; i < z.size(); ++i) z[i] = y[i * static_cast<size_t>(p)];
  taylor_shift(z, +1, m);
  return from_dense(p, a, Npsi, z, -M, f.ring());
}

// ---- modules ----

PhiGammaModule PhiGammaModule::trivial(i64 p, int a, int rank) {
  PhiGammaModule D;
  D.p = p;
  D.a = a;
  SeriesMat I(static_cast<size_t>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) I[static_cast<size_t>(i)].push_back(S::constant(p, a, S::kExact, i == j ? 1 : 0));
  D.mat_phi = D.mat_gamma_tame = D.mat_gamma_wild = I;
  for (int i = 0; i < rank; ++i) D.labels.push_back("e" + std::to_string(i + 1));
  return D;
}

PhiGammaModule PhiGammaModule::rank_one(const LaurentSeries& c) {
  PhiGammaModule D = trivial(c.prime(), c.digits(), 1);
  D.mat_phi[0][0] = c;
  return D;
}

void PhiGammaModule::validate() const {
  const size_t d = mat_phi.size();
  if (d == 0) throw Error(Errc::InvalidModule, "rank must be positive");
  for (const SeriesMat* M : {&mat_phi, &mat_gamma_tame, &mat_gamma_wild}) {
    if (M->size() != d) throw Error(Errc::InvalidModule, "matrix size differs from rank");
    for (auto& row : *M) {
      if (row.size() != d) throw Error(Errc::InvalidModule, "matrix is not square");
      for (auto& e : row)
        if (e.prime() != p) throw Error(Errc::InvalidModule, "matrix entry over another prime");
    }
  }
  if (!labels.empty() && labels.size() != d) throw Error(Errc::InvalidModule, "label count differs from rank");
}

namespace {

bool is_identity(const SeriesMat& M) {
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < M.size(); ++j) {
      const S& e = M[i][j];
      if (!exact(e)) return false;
      auto t = e.terms();
      if (i == j ? !(t.size() == 1 && t[0].first == 0 && t[0].second == 1) : !t.empty()) return false;
    }
  return true;
}

SeriesMat identity_like(const SeriesMat& M) {
  SeriesMat I = M;
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < M.size(); ++j)
      I[i][j] = S::constant(M[i][j].prime(), M[i][j].digits(), S::kExact, i == j ? 1 : 0);
  return I;
}

SeriesMat gamma_mat(i64 c, int L, const SeriesMat& M) {
  SeriesMat R = M;
  for (auto& row : R)
    for (auto& e : row) e = gamma_act(c, L, e);
  return R;
}

// Matrix of sigma_{g^n} from that of sigma_g, via Mat_{gh} = Mat_g * g(Mat_h).
SeriesMat cocycle_power(const SeriesMat& M, i64 g, i64 n, int L, i64 p) {
  const i64 mL = ipow(p, L);
  SeriesMat R = identity_like(M);
  i64 e_val = 1, b_val = mod(g, mL);
  SeriesMat B = M;
  while (n > 0) {
    if (n & 1) {
      R = mat_mul(R, gamma_mat(e_val, L, B));
      e_val = mulmod(e_val, b_val, mL);
    }
    n >>= 1;
    if (n) {
      B = mat_mul(B, gamma_mat(b_val, L, B));
      b_val = mulmod(b_val, b_val, mL);
    }
  }
  return R;
}

}  // namespace

bool PhiGammaModule::gamma_is_trivial() const { return is_identity(mat_gamma_tame) && is_identity(mat_gamma_wild); }

SeriesMat mat_mul(const SeriesMat& A, const SeriesMat& B) {
  const size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
  SeriesMat C(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) {
      S acc = A[i][0] * B[0][j];
      for (size_t l = 1; l < k; ++l) acc = acc + A[i][l] * B[l][j];
      C[i].push_back(acc);
    }
  return C;
}

SeriesVec mat_apply(const SeriesMat& A, const SeriesVec& y) {
  if (A.empty() || A[0].size() != y.size()) throw Error(Errc::RankMismatch, "matrix and vector sizes differ");
  SeriesVec out;
  for (auto& row : A) {
    S acc = row[0] * y[0];
    for (size_t j = 1; j < y.size(); ++j) acc = acc + row[j] * y[j];
    out.push_back(acc);
  }
  return out;
}

LaurentSeries determinant(const SeriesMat& M) {
  const size_t n = M.size();
  if (n == 1) return M[0][0];
  if (n == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
  S det(M[0][0].prime(), M[0][0].digits(), S::kExact);
  for (size_t c = 0; c < n; ++c) {
    SeriesMat minor;
    for (size_t i = 1; i < n; ++i) {
      SeriesVec row;
      for (size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(M[i][j]);
      minor.push_back(row);
    }
    S term = M[0][c] * determinant(minor);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

SeriesMat invert(const SeriesMat& M0) {
  const size_t n = M0.size();
  SeriesMat M = M0, R = identity_like(M0);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r) {
      auto gv = M[r][c].gauss_valuation();
      if (gv && *gv == 0) {
        piv = r;
        break;
      }
    }
    if (piv == n) throw Error(Errc::SingularFrobenius, "matrix is not invertible over O_E mod p^a");
    std::swap(M[c], M[piv]);
    std::swap(R[c], R[piv]);
    S inv = M[c][c].inverse();
    for (size_t j = 0; j < n; ++j) {
      M[c][j] = M[c][j] * inv;
      R[c][j] = R[c][j] * inv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c].is_zero()) continue;
      S f = M[r][c];
      for (size_t j = 0; j < n; ++j) {
        M[r][j] = M[r][j] - f * M[c][j];
        R[r][j] = R[r][j] - f * R[c][j];
      }
    }
  }
  return R;
}

SeriesVec module_phi(const PhiGammaModule& D, const SeriesVec& y) {
  SeriesVec fy;
  for (auto& c : y) fy.push_back(frobenius(c));
  return mat_apply(D.mat_phi, fy);
}

SeriesVec module_gamma(const PhiGammaModule& D, i64 a_unit, int L, const SeriesVec& y) {
  SeriesVec gy;
  for (auto& c : y) gy.push_back(gamma_act(a_unit, L, c));
  if (D.gamma_is_trivial()) return gy;
  const i64 p = D.p;
  auto [i, x] = unit_decompose(a_unit, p, L);
  const i64 mL = ipow(p, L);
  const i64 zeta = teichmuller(primitive_root(p), p, L);
  SeriesMat Mt = cocycle_power(D.mat_gamma_tame, zeta, i, L, p);
  SeriesMat Mw = cocycle_power(D.mat_gamma_wild, 1 + p, x, L, p);
  SeriesMat Ma = mat_mul(Mt, gamma_mat(powmod(zeta, i, mL), L, Mw));
  return mat_apply(Ma, gy);
}

SeriesVec module_psi(const PhiGammaModule& D, const SeriesVec& y) {
  SeriesVec z = y;
  if (!is_identity(D.mat_phi)) {
    // Exact matrix entries are cut to a precision the vector can use.
    i64 ny = 0, depth = 0;
    for (auto& c : y) {
      if (c.precision() < S::kExact) ny = std::max(ny, c.precision());
      depth = std::max(depth, -c.dmin());
    }
    SeriesMat M = D.mat_phi;
    if (ny > 0)
      for (auto& row : M)
        for (auto& e : row) e = e.truncated(ny + depth + 1);
    z = mat_apply(invert(M), y);
  }
  for (auto& c : z) c = psi(c);
  return z;
}

SeriesVec res_zpx(const SeriesVec& y, const PhiGammaModule& D) {
  SeriesVec back = module_phi(D, module_psi(D, y));
  SeriesVec out;
  for (size_t i = 0; i < y.size(); ++i) out.push_back(y[i] - back[i]);
  return out;
}

const char* etale_name(EtaleVerdict v) {
  return v == EtaleVerdict::CertifiedTrue ? "CERTIFIED_TRUE" : "NOT_IN_THIS_BASIS";
}

EtaleVerdict is_etale_in_basis(const PhiGammaModule& D) {
  D.validate();
  // Entries are residues mod p^a, so gauss valuations are never negative.
  auto gv = determinant(D.mat_phi).gauss_valuation();
  return gv && *gv == 0 ? EtaleVerdict::CertifiedTrue : EtaleVerdict::NotInThisBasis;
}

bool agrees(const SeriesVec& x, const SeriesVec& y) {
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    if (!x[i].agrees_with(y[i])) return false;
  return true;
}

// ---- D boxtimes_delta Q_p ----

BoxSeq::BoxSeq(Unchecked, int n0, std::vector<SeriesVec> entries, CharacterP delta,
               std::shared_ptr<const PhiGammaModule> module)
    : n0_(n0), entries_(std::move(entries)), delta_(std::move(delta)), module_(std::move(module)) {
  if (entries_.empty()) throw Error(Errc::EmptyWindow, "box sequence with no entries");
  if (!module_) throw Error(Errc::InvalidModule, "box sequence without a module");
  for (auto& e : entries_)
    if (static_cast<int>(e.size()) != module_->rank()) throw Error(Errc::RankMismatch, "entry rank differs");
}

BoxSeq::BoxSeq(int n0, std::vector<SeriesVec> entries, CharacterP delta, std::shared_ptr<const PhiGammaModule> module)
    : BoxSeq(Unchecked{}, n0, std::move(entries), std::move(delta), std::move(module)) {
  for (size_t i = 0; i + 1 < entries_.size(); ++i)
    if (!agrees(module_psi(*module_, entries_[i + 1]), entries_[i]))
      throw Error(Errc::NotPsiCompatible, "psi(x^(" + std::to_string(n0_ + static_cast<int>(i) + 1) + ")) != x^(" +
                                              std::to_string(n0_ + static_cast<int>(i)) + ")");
}

BoxSeq BoxSeq::from_phi_iterates(int n0, int len, const SeriesVec& x0, CharacterP delta,
                                 std::shared_ptr<const PhiGammaModule> module) {
  if (len < 1) throw Error(Errc::EmptyWindow, "window length must be positive");
  std::vector<SeriesVec> e{x0};
  for (int i = 1; i < len; ++i) e.push_back(module_phi(*module, e.back()));
  return BoxSeq(Unchecked{}, n0, std::move(e), std::move(delta), std::move(module));
}

const SeriesVec& BoxSeq::at(int n) const {
  if (n < n0() || n > n1())
    throw Error(Errc::WindowMiss, "index " + std::to_string(n) + " outside [" + std::to_string(n0()) + ", " +
                                      std::to_string(n1()) + "]");
  return entries_[static_cast<size_t>(n - n0_)];
}

namespace {

i64 max_precision(const BoxSeq& x) {
  i64 n = 1;
  for (auto& e : x.entries())
    for (auto& c : e) {
      if (c.precision() >= S::kExact)
        throw Error(Errc::InsufficientPrecision, "box entries need a finite X-precision for this action");
      n = std::max(n, c.precision() + std::max<i64>(0, -c.dmin()));
    }
  return n;
}

int working_L(const BoxSeq& x) {
  const PhiGammaModule& D = x.module();
  int L = gamma_precision(D.p, D.a, max_precision(x)) + 1;
  if (L > max_digits(D.p)) throw Error(Errc::Overflow, "required unit precision exceeds int64");
  return L;
}

}  // namespace

BoxSeq box_center(const Rational& a, const BoxSeq& x) {
  const PhiGammaModule& D = x.module();
  PadicScalar v = x.delta().value_at(a, D.a);
  if (v.ram() != 1 || *v.valuation() < Rational(0))
    throw Error(Errc::InvalidArgument, "delta(a) is not in Z_p; the center does not act on this lattice");
  i64 vv = v.valuation()->num();
  i64 r = vv >= D.a ? 0 : mulmod(ipow(D.p, static_cast<int>(vv)), v.unit_residue(static_cast<int>(D.a - vv)), ipow(D.p, D.a));
  auto e = x.entries();
  for (auto& vec : e)
    for (auto& c : vec) c = c.scaled(r);
  return BoxSeq(BoxSeq::Unchecked{}, x.n0(), std::move(e), x.delta(), x.module_ptr());
}

BoxSeq box_diag_unit(const Rational& u, const BoxSeq& x) {
  const PhiGammaModule& D = x.module();
  if (u.num() % D.p == 0 || u.den() % D.p == 0) throw Error(Errc::InvalidArgument, "diag(u,1) needs a unit u");
  int L = working_L(x);
  i64 rep = rational_residue(u, D.p, L);
  auto e = x.entries();
  for (auto& vec : e) vec = module_gamma(D, rep, L, vec);
  return BoxSeq(BoxSeq::Unchecked{}, x.n0(), std::move(e), x.delta(), x.module_ptr());
}

BoxSeq box_diag_p(i64 k, const BoxSeq& x) {
  return BoxSeq(BoxSeq::Unchecked{}, static_cast<int>(x.n0() - k), x.entries(), x.delta(), x.module_ptr());
}

BoxSeq box_unipotent(const Rational& c, const BoxSeq& x) {
  if (c.num() == 0) return x;
  const PhiGammaModule& D = x.module();
  const i64 p = D.p;
  i64 vc = 0;
  for (i64 n = c.num(); n % p == 0; n /= p) ++vc;
  for (i64 d = c.den(); d % p == 0; d /= p) --vc;
  int start = static_cast<int>(std::max<i64>(x.n0(), -vc));
  if (start > x.n1()) throw Error(Errc::EmptyWindow, "c p^n lies outside Z_p on the whole window");
  int L = working_L(x);
  std::vector<SeriesVec> e;
  for (int n = start; n <= x.n1(); ++n) {
    Rational z = c;
    for (int i = 0; i < n; ++i) z = z * Rational(p);
    for (int i = 0; i > n; --i) z = z / Rational(p);
    i64 rep = rational_residue(z, p, L);
    SeriesVec vec = x.at(n);
    for (auto& coord : vec) {
      i64 need = coord.precision() + std::max<i64>(0, -coord.dmin());
      coord = coord * S::one_plus_x_pow(p, coord.digits(), need, rep, L);
    }
    e.push_back(std::move(vec));
  }
  return BoxSeq(BoxSeq::Unchecked{}, start, std::move(e), x.delta(), x.module_ptr());
}

BoxSeq box_b2_act(const B2Element& g, const BoxSeq& x) {
  if (g.a.num() == 0 || g.d.num() == 0) throw Error(Errc::InvalidArgument, "B2 element must be invertible");
  const i64 p = x.module().p;
  Rational t = g.a / g.d;
  i64 k = 0;
  Rational u = t;
  while (u.num() % p == 0) u = u / Rational(p), ++k;
  while (u.den() % p == 0) u = u * Rational(p), --k;
  BoxSeq y = x;
  if (u != Rational(1)) y = box_diag_unit(u, y);
  if (k != 0) y = box_diag_p(k, y);
  Rational c = g.b / g.d;
  if (c.num() != 0) y = box_unipotent(c, y);
  if (g.d != Rational(1)) y = box_center(g.d, y);
  return y;
}

SeriesVec res_zp(const BoxSeq& x) { return x.at(0); }

bool is_bounded_sharp(const BoxSeq& x) {
  const PhiGammaModule& D = x.module();
  if (D.rank() != 1 || !is_identity(D.mat_phi))
    throw Error(Errc::UnsupportedModule, "bounded test implemented for the trivial rank-1 module only");
  for (auto& e : x.entries())
    if (e[0].dmin() < -1) return false;
  return true;
}

}  // namespace pgk
