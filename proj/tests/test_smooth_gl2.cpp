#include <random>
#include <set>

#include <unistd.h>

#include "doctest.h"
#include "pgk/smooth_gl2.hpp"

using namespace pgk;

namespace {

int vq(const Rational& q, i64 p) { return q == 0 ? 1 << 20 : vp(q.num(), p) - vp(q.den(), p); }

Mat2 inverse(const Mat2& g) {
  Rational d = g.det();
  return {g.d / d, -g.b / d, -g.c / d, g.a / d};
}

int min_val(const Mat2& g, i64 p) { return std::min({vq(g.a, p), vq(g.b, p), vq(g.c, p), vq(g.d, p)}); }

Rational ppow(i64 p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

// Oracle: g1 KZ = g2 KZ iff g1^{-1} g2, scaled to primitive, has unit determinant.
bool same_vertex(const Mat2& g1, const Mat2& g2, i64 p) {
  Mat2 m = inverse(g1) * g2;
  return vq(m.det(), p) == 2 * min_val(m, p);
}

// Oracle: distance to the root from the elementary divisors.
int distance(const Mat2& g, i64 p) { return vq(g.det(), p) - 2 * min_val(g, p); }

Mat2 random_gl2(std::mt19937_64& rng, i64 p) {
  std::uniform_int_distribution<int> e(-2, 2), x(-6, 6);
  for (;;) {
    Mat2 g{Rational(x(rng)) * ppow(p, e(rng)), Rational(x(rng)) * ppow(p, e(rng)), Rational(x(rng)) * ppow(p, e(rng)),
           Rational(x(rng)) * ppow(p, e(rng))};
    if (g.det() != 0) return g;
  }
}

std::vector<Mat2> k_generators(i64 p) {
  return {{1, 1, 0, 1}, {1, 0, 1, 1}, {primitive_root(p), 0, 0, 1}, {0, 1, 1, 0}, {2, 3, 5, 7 + p}};
}

TreeFunction random_function(std::mt19937_64& rng, i64 p, int r, int R, int inner) {
  TreeFunction f(p, r, R);
  auto vs = ball(p, inner);
  for (const auto& v : vs) {
    if (rng() % 3 == 0) continue;
    std::vector<Fp2> c;
    for (int i = 0; i <= r; ++i) c.emplace_back(p, static_cast<i64>(rng() % p));
    f.add(v, c);
  }
  return f;
}

std::vector<Fp2> unit_vec(i64 p, int r, int i) {
  std::vector<Fp2> e(static_cast<size_t>(r + 1), Fp2(p, 0));
  e[i] = Fp2(p, 1);
  return e;
}

}  // namespace

TEST_CASE("tree dimensions") {
  CHECK(tree_dim(2, 0, 2) == 10);
  CHECK(tree_dim(3, 1, 1) == 10);
  for (i64 p : {2, 3, 5, 7})
    for (int r : {0, 1, 3}) CHECK(tree_dim(p, r, 0) == r + 1);
  for (i64 p : {2, 3, 5})
    for (int R = 0; R <= 3; ++R) {
      auto vs = ball(p, R);
      CHECK(static_cast<i64>(vs.size()) == tree_dim(p, 0, R));
      // brute force: distinct classes found by walking neighbours from the root
      std::set<Vertex> seen{{}};
      std::vector<Vertex> frontier{{}};
      for (int n = 0; n < R; ++n) {
        std::vector<Vertex> next;
        for (const auto& v : frontier)
          for (const auto& w : neighbours(p, v))
            if (seen.insert(w).second) next.push_back(w);
        frontier = next;
      }
      CHECK(seen == std::set<Vertex>(vs.begin(), vs.end()));
      for (const auto& v : vs) CHECK(distance(vertex_matrix(p, v), p) == static_cast<int>(v.size()));
    }
}

TEST_CASE("tree normalization against lattice oracle") {
  for (i64 p : {2, 3, 5, 7}) {
    std::mt19937_64 rng(p);
    for (int t = 0; t < 400; ++t) {
      Mat2 g = random_gl2(rng, p);
      auto [v, k] = tree_normalize(p, g);
      Mat2 h = vertex_matrix(p, v);
      CHECK(same_vertex(g, h, p));
      CHECK(distance(g, p) == static_cast<int>(v.size()));
      // h^{-1} g = p^s k
      Mat2 m = inverse(h) * g;
      int s = min_val(m, p);
      Mat2 ks = Mat2{ppow(p, -s), 0, 0, ppow(p, -s)} * m;
      CHECK(rational_residue(ks.a, p, 1) == k[0]);
      CHECK(rational_residue(ks.b, p, 1) == k[1]);
      CHECK(rational_residue(ks.c, p, 1) == k[2]);
      CHECK(rational_residue(ks.d, p, 1) == k[3]);
    }
    for (const auto& v : ball(p, 3)) {
      auto [w, k] = tree_normalize(p, vertex_matrix(p, v));
      CHECK(w == v);
      CHECK(k == Mat2Fp{1, 0, 0, 1});
      auto nb = neighbours(p, v);
      CHECK(std::set<Vertex>(nb.begin(), nb.end()).size() == static_cast<size_t>(p + 1));
      for (const auto& x : nb) {
        auto back = neighbours(p, x);
        CHECK(std::find(back.begin(), back.end(), v) != back.end());
      }
    }
  }
}

TEST_CASE("Sym^r action is a representation") {
  for (i64 p : {3, 5}) {
    std::mt19937_64 rng(p);
    for (int t = 0; t < 100; ++t) {
      Mat2Fp x{}, y{};
      for (auto& e : x) e = static_cast<i64>(rng() % p);
      for (auto& e : y) e = static_cast<i64>(rng() % p);
      Mat2Fp xy{mod(x[0] * y[0] + x[1] * y[2], p), mod(x[0] * y[1] + x[1] * y[3], p), mod(x[2] * y[0] + x[3] * y[2], p),
                mod(x[2] * y[1] + x[3] * y[3], p)};
      std::vector<Fp2> v;
      for (int i = 0; i <= 4; ++i) v.emplace_back(p, static_cast<i64>(rng() % p));
      CHECK(sym_act(xy, v) == sym_act(x, sym_act(y, v)));
    }
  }
}

TEST_CASE("Hecke operator") {
  SUBCASE("r = 0 is the adjacency operator") {
    for (i64 p : {2, 3, 5}) {
      TreeFunction root(p, 0, 0);
      root.add({}, {Fp2(p, 1)});
      auto Tf = hecke_T(root);
      CHECK(Tf.radius == 1);
      CHECK(Tf.support.size() == static_cast<size_t>(p + 1));
      for (const auto& v : neighbours(p, {})) CHECK(Tf.at(v)[0] == Fp2(p, 1));

      std::mt19937_64 rng(p);
      auto f = random_function(rng, p, 0, 2, 2);
      auto Tf2 = hecke_T(f);
      for (const auto& v : ball(p, 3)) {
        Fp2 sum(p, 0);
        for (const auto& w : neighbours(p, v)) sum = sum + f.at(w)[0];
        CHECK(Tf2.at(v)[0] == sum);
      }
      // T^2 f(root) = (p+1) f(root) + sum over distance two
      auto TTf = hecke_T(hecke_T(f));
      Fp2 expect = Fp2(p, p + 1) * f.at({})[0];
      for (const auto& v : ball(p, 2))
        if (v.size() == 2) expect = expect + f.at(v)[0];
      CHECK(TTf.at({})[0] == expect);
    }
  }
  SUBCASE("zero") {
    TreeFunction z(5, 2, 1);
    CHECK(hecke_T(z).support.empty());
  }
  SUBCASE("equivariance") {
    for (i64 p : {2, 3, 5})
      for (int r : {0, 1, 2, 3, static_cast<int>(p) - 1, static_cast<int>(p)}) {
        std::mt19937_64 rng(p * 100 + r);
        for (int t = 0; t < 3; ++t) {
          auto f = random_function(rng, p, r, 2, 2);
          for (const auto& g : k_generators(p)) CHECK(hecke_T(tree_g_act(g, f)) == tree_g_act(g, hecke_T(f)));
          // beyond K: one step outward needs one more unit of radius
          auto f1 = random_function(rng, p, r, 2, 1);
          for (const Mat2& g : {Mat2{p, 0, 0, 1}, Mat2{1, 0, 0, p}, Mat2{0, 1, p, 0}}) {
            auto lhs = hecke_T(tree_g_act(g, f1));
            auto Tf = hecke_T(f1);
            TreeFunction wide(p, r, 3);
            for (const auto& [v, c] : Tf.support) wide.add(v, c);
            CHECK(lhs == tree_g_act(g, wide));
          }
        }
      }
  }
}

TEST_CASE("tree action") {
  const i64 p = 3;
  std::mt19937_64 rng(7);
  auto f = random_function(rng, p, 2, 2, 2);
  CHECK(tree_g_act(Mat2::identity(), f) == f);
  CHECK(tree_g_act({p, 0, 0, p}, f) == f);
  // unit scalars act through u^r
  auto g2 = tree_g_act({2, 0, 0, 2}, f);
  for (const auto& [v, c] : f.support)
    for (int i = 0; i <= 2; ++i) CHECK(g2.at(v)[i] == c[i] * Fp2(p, 4));
  // GL2(Z_p) preserves distance and permutes each sphere
  for (const auto& g : k_generators(p)) {
    std::set<Vertex> image;
    for (const auto& v : ball(p, 2)) {
      TreeFunction d(p, 0, 2);
      d.add(v, {Fp2(p, 1)});
      auto moved = tree_g_act(g, d);
      REQUIRE(moved.support.size() == 1);
      CHECK(moved.support.begin()->first.size() == v.size());
      image.insert(moved.support.begin()->first);
    }
    CHECK(image.size() == ball(p, 2).size());
  }
  // compatibility with products
  for (const auto& g : k_generators(p))
    for (const auto& h : k_generators(p)) CHECK(tree_g_act(g * h, f) == tree_g_act(g, tree_g_act(h, f)));
  TreeFunction root(p, 0, 0);
  root.add({}, {Fp2(p, 1)});
  CHECK_THROWS_AS(tree_g_act({p, 0, 0, 1}, root), Error);
  TreeFunction bad(p, 0, 1);
  bad.support[{0, 0}] = {Fp2(p, 1)};
  CHECK_THROWS_AS(hecke_T(bad), Error);
  TreeFunction backtrack(p, 0, 3);
  backtrack.support[{p, 0}] = {Fp2(p, 1)};
  CHECK_THROWS_AS(backtrack.validate(), Error);
}

TEST_CASE("Hecke matrix, cache and kernel dimensions") {
  const i64 p = 3;
  auto M = hecke_matrix(p, 1, 2);
  CHECK(M.cols == tree_dim(p, 1, 2));
  CHECK(M.rows == tree_dim(p, 1, 3));
  auto dir = std::filesystem::temp_directory_path() / ("pgk-test-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  auto M1 = hecke_matrix(p, 1, 2, dir);
  CHECK(M1.entries == M.entries);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), {}) == 1);
  auto M2 = hecke_matrix(p, 1, 2, dir);
  CHECK(M2.entries == M.entries);
  std::filesystem::remove_all(dir);

  for (i64 lam = 0; lam < p; ++lam) {
    auto kc = t_minus_lambda_dims(M, Fp2(p, lam));
    CHECK(kc.kernel >= 0);
    CHECK(M.cols - kc.kernel == M.rows - kc.cokernel);
  }
  // r = 0, radius 0: T - lambda sends the root indicator to a nonzero function
  auto M0 = hecke_matrix(p, 0, 0);
  auto kc = t_minus_lambda_dims(M0, Fp2(p, 1));
  CHECK(kc.kernel == 0);
  CHECK(kc.cokernel == p + 1);
}

TEST_CASE("P^1 at finite level") {
  CHECK(p1_dim(5, 1) == 6);
  CHECK(sp_dim(5, 1) == 5);
  CHECK(p1_dim(2, 2) == 6);
  CHECK(sp_dim(2, 2) == 5);
  CHECK(p1_dim(3, 1) == 4);
  CHECK(sp_dim(3, 1) == 3);
  for (i64 p : {2, 3, 5})
    for (int n = 1; n <= 3; ++n) {
      // brute force: primitive pairs modulo units
      const i64 q = ipow(p, n);
      std::set<std::set<std::pair<i64, i64>>> classes;
      for (i64 x = 0; x < q; ++x)
        for (i64 y = 0; y < q; ++y) {
          if (x % p == 0 && y % p == 0) continue;
          std::set<std::pair<i64, i64>> orbit;
          for (i64 u = 1; u < q; ++u)
            if (u % p) orbit.insert({x * u % q, y * u % q});
          classes.insert(orbit);
        }
      CHECK(static_cast<i64>(classes.size()) == p1_dim(p, n));
      auto pts = p1_points(p, n);
      for (size_t i = 0; i < pts.size(); ++i) CHECK(p1_index(p, n, pts[i].first, pts[i].second) == static_cast<i64>(i));

      std::mt19937_64 rng(p * 10 + n);
      P1Function f(p, n);
      for (auto& v : f.values) v = Fp2(p, static_cast<i64>(rng() % p));
      CHECK(p1_act({1, 0, 0, 1}, f) == f);
      auto c = P1Function::constant(p, n, Fp2(p, 1));
      std::vector<std::array<i64, 4>> gs{{1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 0}, {primitive_root(p), 0, 0, 1}, {2, 3, 5, 7 + p}};
      for (const auto& g : gs) {
        CHECK(p1_act(g, c) == c);
        CHECK(p1_act(g, p1_inflate(f)) == p1_inflate(p1_act(g, f)));
        for (const auto& h : gs) {
          std::array<i64, 4> gh{g[0] * h[0] + g[1] * h[2], g[0] * h[1] + g[1] * h[3], g[2] * h[0] + g[3] * h[2],
                                g[2] * h[1] + g[3] * h[3]};
          if (mod(gh[0] * gh[3] - gh[1] * gh[2], p) == 0) continue;
          CHECK(p1_act(gh, f) == p1_act(g, p1_act(h, f)));
        }
      }
    }
  // diag(u, 1) on P^1(F_p): fixes 0 and infinity, moves the rest
  const i64 p = 5;
  for (i64 u = 2; u < p; ++u) {
    P1Function delta(p, 1);
    for (i64 i = 0; i < p1_dim(p, 1); ++i) {
      delta.values.assign(static_cast<size_t>(p1_dim(p, 1)), Fp2(p, 0));
      delta.values[i] = Fp2(p, 1);
      auto moved = p1_act({u, 0, 0, 1}, delta);
      i64 j = std::find(moved.values.begin(), moved.values.end(), Fp2(p, 1)) - moved.values.begin();
      bool fixed_point = i == 0 || i == p;  // [0:1] and [1:0]
      CHECK((i == j) == fixed_point);
    }
  }
  CHECK_THROWS_AS(p1_act({p, 0, 0, 1}, P1Function(p, 1)), Error);
}
