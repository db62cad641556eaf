#include "pgk/smooth_gl2.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "pgk/error.hpp"

namespace pgk {

namespace {

int vq(const Rational& q, i64 p) { return vp(q.num(), p) - vp(q.den(), p); }

Rational ppow(i64 p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

i64 red(const Rational& q, i64 p) { return rational_residue(q, p, 1); }

Mat2Fp reduce(const Mat2& k, i64 p) { return {red(k.a, p), red(k.b, p), red(k.c, p), red(k.d, p)}; }

Vertex word_of(i64 p, int m, const Rational& b) {
  int e = std::min(0, m);
  if (b != 0) e = std::min(e, vq(b, p));
  Vertex w(static_cast<size_t>(-e), static_cast<int>(p));
  Rational scaled = b * ppow(p, -e);
  i64 digits = m - e > 0 ? rational_residue(scaled, p, m - e) : 0;  // exact integer in [0, p^{m-e})
  for (int j = 0; j < m - e; ++j) {
    w.push_back(static_cast<int>(digits % p));
    digits /= p;
  }
  return w;
}

// Letters allowed after word w.
std::vector<int> next_letters(i64 p, const Vertex& w) {
  std::vector<int> out;
  bool down_only = std::all_of(w.begin(), w.end(), [&](int l) { return l == p; });
  if (w.empty()) {
    for (int l = 0; l <= p; ++l) out.push_back(l);
  } else if (down_only) {
    for (int l = 1; l < p; ++l) out.push_back(l);
    out.push_back(static_cast<int>(p));
  } else {
    for (int l = 0; l < p; ++l) out.push_back(l);
  }
  return out;
}

bool reduced_word(i64 p, const Vertex& w) {
  for (size_t i = 0; i < w.size(); ++i) {
    auto allowed = next_letters(p, Vertex(w.begin(), w.begin() + static_cast<long>(i)));
    if (std::find(allowed.begin(), allowed.end(), w[i]) == allowed.end()) return false;
  }
  return true;
}

bool is_zero_vec(const std::vector<Fp2>& v) {
  return std::all_of(v.begin(), v.end(), [](const Fp2& x) { return x.is_zero(); });
}

i64 binom_mod(i64 n, i64 k, i64 p) {
  // small n: Pascal
  std::vector<i64> row(static_cast<size_t>(n + 1), 0);
  row[0] = 1;
  for (i64 i = 1; i <= n; ++i)
    for (i64 j = i; j > 0; --j) row[j] = (row[j] + row[j - 1]) % p;
  return row[k];
}

// (x X + y Y)^e as coefficients of X^{e-j} Y^j.
std::vector<i64> linear_power(i64 x, i64 y, int e, i64 p) {
  std::vector<i64> out(static_cast<size_t>(e + 1));
  for (int j = 0; j <= e; ++j) out[j] = mulmod(binom_mod(e, j, p), mulmod(powmod(x, e - j, p), powmod(y, j, p), p), p);
  return out;
}

}  // namespace

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 vertex_matrix(i64 p, const Vertex& v) {
  int D = 0;
  while (D < static_cast<int>(v.size()) && v[D] == p) ++D;
  int U = static_cast<int>(v.size()) - D;
  i64 B = 0;
  for (int j = U - 1; j >= 0; --j) B = checked_add(checked_mul(B, p), v[D + j]);
  return {ppow(p, U - D), Rational(B) * ppow(p, -D), 0, 1};
}

std::pair<Vertex, Mat2Fp> tree_normalize(i64 p, const Mat2& g) {
  if (g.det() == 0) throw Error(Errc::InvalidArgument, "singular matrix");
  // g = B K0 with B upper triangular and K0 in GL2(Z_p)
  Mat2 B, K0;
  if (g.c == 0) {
    B = g;
    K0 = Mat2::identity();
  } else if (g.d != 0 && vq(g.d, p) <= vq(g.c, p)) {
    Rational t = g.c / g.d;
    B = {g.a - g.b * t, g.b, 0, g.d};
    K0 = {1, 0, t, 1};
  } else {
    Rational t = g.d / g.c;
    B = {g.b - g.a * t, g.a, 0, g.c};
    K0 = {0, 1, 1, t};
  }
  Rational ratio = B.a / B.d;
  int m = vq(ratio, p);
  Rational u = ratio / ppow(p, m);
  Rational beta = B.b / B.d;
  Rational bcan = 0;
  if (beta != 0 && vq(beta, p) < m) {
    int E = std::min(0, vq(beta, p));
    bcan = Rational(rational_residue(beta * ppow(p, -E), p, m - E)) * ppow(p, E);
  }
  Rational t = (beta - bcan) / ppow(p, m);
  Rational u2 = B.d / ppow(p, vq(B.d, p));
  Mat2 k = Mat2{u2 * u, u2 * t, 0, u2} * K0;
  return {word_of(p, m, bcan), reduce(k, p)};
}

std::vector<Vertex> neighbours(i64 p, const Vertex& v) {
  Mat2 h = vertex_matrix(p, v);
  std::vector<Vertex> out;
  for (i64 l = 0; l < p; ++l) out.push_back(tree_normalize(p, h * Mat2{p, l, 0, 1}).first);
  out.push_back(tree_normalize(p, h * Mat2{1, 0, 0, p}).first);
  return out;
}

std::vector<Vertex> ball(i64 p, int R) {
  std::vector<Vertex> out{{}};
  size_t lo = 0;
  for (int n = 1; n <= R; ++n) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i)
      for (int l : next_letters(p, out[i])) {
        Vertex w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    std::sort(out.begin() + static_cast<long>(hi), out.end());
    lo = hi;
  }
  return out;
}

std::vector<Fp2> sym_act(const Mat2Fp& k, const std::vector<Fp2>& v) {
  const int r = static_cast<int>(v.size()) - 1;
  const i64 p = v.empty() ? 2 : v[0].prime();
  std::vector<Fp2> out(v.size(), Fp2(p, 0));
  for (int i = 0; i <= r; ++i) {
    if (v[i].is_zero()) continue;
    auto left = linear_power(k[0], k[2], r - i, p);  // (aX + cY)^{r-i}
    auto right = linear_power(k[1], k[3], i, p);     // (bX + dY)^i
    for (size_t j1 = 0; j1 < left.size(); ++j1)
      for (size_t j2 = 0; j2 < right.size(); ++j2)
        out[j1 + j2] = out[j1 + j2] + v[i] * Fp2(p, mulmod(left[j1], right[j2], p));
  }
  return out;
}

TreeFunction::TreeFunction(i64 p_, int r_, int radius_) : p(p_), r(r_), radius(radius_) {
  if (!is_prime(p) || r < 0 || radius < 0) throw Error(Errc::InvalidArgument, "tree function needs prime p, r >= 0, R >= 0");
}

void TreeFunction::add(const Vertex& v, const std::vector<Fp2>& c) {
  if (c.size() != static_cast<size_t>(r + 1)) throw Error(Errc::InvalidArgument, "vector of wrong length for Sym^r");
  auto it = support.find(v);
  if (it == support.end()) {
    if (!is_zero_vec(c)) support.emplace(v, c);
    return;
  }
  for (int i = 0; i <= r; ++i) it->second[i] = it->second[i] + c[i];
  if (is_zero_vec(it->second)) support.erase(it);
}

std::vector<Fp2> TreeFunction::at(const Vertex& v) const {
  auto it = support.find(v);
  return it == support.end() ? std::vector<Fp2>(static_cast<size_t>(r + 1), Fp2(p, 0)) : it->second;
}

void TreeFunction::validate() const {
  for (const auto& [v, c] : support) {
    if (!reduced_word(p, v)) throw Error(Errc::InvalidArgument, "vertex word is not reduced");
    if (static_cast<int>(v.size()) > radius) throw Error(Errc::RadiusOverflow, "support beyond the radius bound");
    if (c.size() != static_cast<size_t>(r + 1)) throw Error(Errc::InvalidArgument, "vector of wrong length for Sym^r");
    for (const auto& x : c)
      if (x.prime() != p) throw Error(Errc::PrimeMismatch, "coefficients over another prime");
  }
}

i64 tree_dim(i64 p, int r, int R) {
  if (R < 0) throw Error(Errc::InvalidArgument, "negative radius");
  i64 vertices = 1 + checked_mul(p + 1, (ipow(p, R) - 1) / (p - 1));
  return checked_mul(r + 1, vertices);
}

TreeFunction hecke_T(const TreeFunction& f) {
  f.validate();
  const i64 p = f.p;
  const int r = f.r;
  TreeFunction out(p, r, f.radius + 1);
  for (const auto& [v, c] : f.support) {
    Mat2 h = vertex_matrix(p, v);
    // [h g_l, (sum_i c_i (-l)^i) X^r] over l, plus [h alpha, c_r Y^r]
    for (i64 l = 0; l < p; ++l) {
      Fp2 w(p, 0);
      for (int i = 0; i <= r; ++i) w = w + c[i] * Fp2(p, i == 0 ? 1 : powmod(mod(-l, p), i, p));
      if (w.is_zero()) continue;
      std::vector<Fp2> vec(static_cast<size_t>(r + 1), Fp2(p, 0));
      vec[0] = w;
      auto [v2, k] = tree_normalize(p, h * Mat2{p, l, 0, 1});
      out.add(v2, sym_act(k, vec));
    }
    if (!c[r].is_zero()) {
      std::vector<Fp2> vec(static_cast<size_t>(r + 1), Fp2(p, 0));
      vec[r] = c[r];
      auto [v2, k] = tree_normalize(p, h * Mat2{1, 0, 0, p});
      out.add(v2, sym_act(k, vec));
    }
  }
  return out;
}

TreeFunction tree_g_act(const Mat2& g, const TreeFunction& f) {
  f.validate();
  TreeFunction out(f.p, f.r, f.radius);
  for (const auto& [v, c] : f.support) {
    auto [v2, k] = tree_normalize(f.p, g * vertex_matrix(f.p, v));
    if (static_cast<int>(v2.size()) > f.radius) throw Error(Errc::RadiusOverflow, "translate leaves the radius bound");
    out.add(v2, sym_act(k, c));
  }
  return out;
}

namespace {

std::string cache_key(i64 p, int r, int R) {
  return "pgk-hecke-v1:" + std::to_string(p) + ":" + std::to_string(r) + ":" + std::to_string(R);
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::optional<HeckeMatrix> load_cached(const std::filesystem::path& file, i64 p, int r, int R) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    auto j = nlohmann::json::parse(in);
    if (j.at("key").get<std::string>() != cache_key(p, r, R)) return std::nullopt;
    HeckeMatrix M{p, r, R, j.at("rows").get<i64>(), j.at("cols").get<i64>(), {}};
    for (const auto& e : j.at("entries")) M.entries.push_back({e[0].get<i64>(), e[1].get<i64>(), e[2].get<i64>()});
    return M;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // corrupt entry: rebuild
  }
}

void store_cached(const std::filesystem::path& dir, const std::filesystem::path& file, const HeckeMatrix& M) {
  nlohmann::json j{{"key", cache_key(M.p, M.r, M.R)}, {"rows", M.rows}, {"cols", M.cols}, {"entries", M.entries}};
  std::filesystem::create_directories(dir);
  auto tmp = file;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    out << j.dump();
    if (!out) throw Error(Errc::InvalidArgument, "cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace

HeckeMatrix hecke_matrix(i64 p, int r, int R, const std::optional<std::filesystem::path>& cache_dir) {
  std::filesystem::path file;
  if (cache_dir) {
    file = *cache_dir / ("T-" + fnv1a_hex(cache_key(p, r, R)) + ".json");
    if (auto M = load_cached(file, p, r, R)) return *M;
  }
  auto small = ball(p, R), big = ball(p, R + 1);
  std::map<Vertex, i64> pos;
  for (size_t i = 0; i < big.size(); ++i) pos[big[i]] = static_cast<i64>(i);
  HeckeMatrix M{p, r, R, tree_dim(p, r, R + 1), tree_dim(p, r, R), {}};
  for (size_t vi = 0; vi < small.size(); ++vi)
    for (int i = 0; i <= r; ++i) {
      TreeFunction f(p, r, R);
      std::vector<Fp2> e(static_cast<size_t>(r + 1), Fp2(p, 0));
      e[i] = Fp2(p, 1);
      f.add(small[vi], e);
      for (const auto& [v, c] : hecke_T(f).support)
        for (int j = 0; j <= r; ++j)
          if (!c[j].is_zero())
            M.entries.push_back({pos.at(v) * (r + 1) + j, static_cast<i64>(vi) * (r + 1) + i, c[j].a()});
    }
  std::sort(M.entries.begin(), M.entries.end());
  if (cache_dir) store_cached(*cache_dir, file, M);
  return M;
}

i64 rank_fp2(std::vector<std::vector<Fp2>> rows) {
  if (rows.empty()) return 0;
  const size_t n = rows[0].size();
  i64 rank = 0;
  for (size_t col = 0; col < n && rank < static_cast<i64>(rows.size()); ++col) {
    size_t piv = static_cast<size_t>(rank);
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    Fp2 inv = rows[rank][col].inverse();
    for (auto& x : rows[rank]) x = x * inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == static_cast<size_t>(rank) || rows[i][col].is_zero()) continue;
      Fp2 f = rows[i][col];
      for (size_t j = col; j < n; ++j) rows[i][j] = rows[i][j] - f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

KerCoker t_minus_lambda_dims(const HeckeMatrix& M, const Fp2& lambda) {
  const i64 p = M.p;
  std::vector<std::vector<Fp2>> A(static_cast<size_t>(M.rows), std::vector<Fp2>(static_cast<size_t>(M.cols), Fp2(p, 0)));
  for (const auto& [i, j, v] : M.entries) A[i][j] = A[i][j] + Fp2(p, v);
  // the radius-R ball is the leading block of the radius-(R+1) ball
  for (i64 j = 0; j < M.cols; ++j) A[j][j] = A[j][j] - lambda;
  i64 rk = rank_fp2(std::move(A));
  return {M.cols - rk, M.rows - rk};
}

// ---- P^1 ----

i64 p1_dim(i64 p, int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "level must be >= 1");
  return ipow(p, n) + ipow(p, n - 1);
}

i64 sp_dim(i64 p, int n) { return p1_dim(p, n) - 1; }

std::vector<std::pair<i64, i64>> p1_points(i64 p, int n) {
  const i64 q = ipow(p, n);
  std::vector<std::pair<i64, i64>> out;
  for (i64 x = 0; x < q; ++x) out.emplace_back(x, 1);
  for (i64 j = 0; j < q / p; ++j) out.emplace_back(1, p * j);
  return out;
}

i64 p1_index(i64 p, int n, i64 x, i64 y) {
  const i64 q = ipow(p, n);
  x = mod(x, q);
  y = mod(y, q);
  if (y % p != 0) return mulmod(x, invmod(y, q), q);
  if (x % p == 0) throw Error(Errc::InvalidArgument, "not a point of P^1(Z/p^n)");
  return q + mulmod(y, invmod(x, q), q) / p;
}

P1Function::P1Function(i64 p_, int n_) : p(p_), n(n_), values(static_cast<size_t>(p1_dim(p_, n_)), Fp2(p_, 0)) {}

P1Function P1Function::constant(i64 p, int n, const Fp2& c) {
  P1Function f(p, n);
  std::fill(f.values.begin(), f.values.end(), c);
  return f;
}

P1Function p1_act(const std::array<i64, 4>& g, const P1Function& f) {
  const auto [a, b, c, d] = g;
  if (mod(a * d - b * c, f.p) == 0) throw Error(Errc::InvalidArgument, "matrix not in GL2(Z_p)");
  if (f.values.size() != static_cast<size_t>(p1_dim(f.p, f.n))) throw Error(Errc::InvalidArgument, "wrong number of values");
  P1Function out(f.p, f.n);
  auto pts = p1_points(f.p, f.n);
  const i64 q = ipow(f.p, f.n);
  for (size_t i = 0; i < pts.size(); ++i) {
    auto [x, y] = pts[i];
    // g^{-1} up to the scalar det
    out.values[i] = f.values[p1_index(f.p, f.n, mulmod(d, x, q) - mulmod(b, y, q), mulmod(a, y, q) - mulmod(c, x, q))];
  }
  return out;
}

P1Function p1_inflate(const P1Function& f) {
  P1Function out(f.p, f.n + 1);
  auto pts = p1_points(f.p, f.n + 1);
  for (size_t i = 0; i < pts.size(); ++i) out.values[i] = f.values[p1_index(f.p, f.n, pts[i].first, pts[i].second)];
  return out;
}

}  // namespace pgk
