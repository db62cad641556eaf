#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgk/arith.hpp"
#include "pgk/fq.hpp"

namespace pgk {

/// Rational 2x2 matrix (a b; c d), read as an element of GL2(Q_p).
struct Mat2 {
  Rational a, b, c, d;
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  Rational det() const { return a * d - b * c; }
  static Mat2 identity() { return {1, 0, 0, 1}; }
};

/// Element of GL2(F_p), row-major.
using Mat2Fp = std::array<i64, 4>;

/// Vertex of the tree GL2(Q_p)/KZ as a reduced word from the root. Letter p steps to the
/// vertex (p^{m-1}, b; 0, 1); letter l < p steps to (p^{m+1}, b + l p^m; 0, 1). Downward
/// steps come first, and the first upward step after a downward one is nonzero.
using Vertex = std::vector<int>;

/// Representative (p^m, b; 0, 1) of a vertex.
Mat2 vertex_matrix(i64 p, const Vertex& v);

/// g = p^s h_v k with k in GL2(Z_p); returns v and k mod p.
std::pair<Vertex, Mat2Fp> tree_normalize(i64 p, const Mat2& g);

/// The p+1 neighbours, or all vertices within distance R.
std::vector<Vertex> neighbours(i64 p, const Vertex& v);
std::vector<Vertex> ball(i64 p, int R);

/// Sym^r of the standard representation in the basis X^{r-i} Y^i: k P(X, Y) = P(aX + cY, bX + dY).
std::vector<Fp2> sym_act(const Mat2Fp& k, const std::vector<Fp2>& v);

/// Finitely supported element sum [h_v, f(v)] of ind_{KZ}^G Sym^r, with p acting trivially.
struct TreeFunction {
  i64 p = 2;
  int r = 0;
  int radius = 0;
  std::map<Vertex, std::vector<Fp2>> support;  // zero vectors are never stored

  TreeFunction() = default;
  TreeFunction(i64 p, int r, int radius);
  /// Adds c to the component at v.
  void add(const Vertex& v, const std::vector<Fp2>& c);
  std::vector<Fp2> at(const Vertex& v) const;
  void validate() const;
  friend bool operator==(const TreeFunction&, const TreeFunction&) = default;
};

i64 tree_dim(i64 p, int r, int R);
TreeFunction hecke_T(const TreeFunction& f);
/// g [h, v] = [g h, v]; the result keeps the radius bound of f. Throws RadiusOverflow.
TreeFunction tree_g_act(const Mat2& g, const TreeFunction& f);

/// Sparse matrix of T from radius R to radius R+1 in the basis (vertex in ball order, i).
struct HeckeMatrix {
  i64 p;
  int r, R;
  i64 rows, cols;
  std::vector<std::array<i64, 3>> entries;  // (row, col, value mod p)
};
/// Builds the matrix, reading and writing cache_dir when given.
HeckeMatrix hecke_matrix(i64 p, int r, int R, const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

/// dim ker and dim coker of T - lambda from radius R to radius R+1 (R-ball included in the (R+1)-ball).
struct KerCoker {
  i64 kernel, cokernel;
};
KerCoker t_minus_lambda_dims(const HeckeMatrix& M, const Fp2& lambda);

/// Rank of a dense matrix over F_{p^2}.
i64 rank_fp2(std::vector<std::vector<Fp2>> rows);

// ---- P^1(Z/p^n) ----

i64 p1_dim(i64 p, int n);
i64 sp_dim(i64 p, int n);

/// Points as primitive pairs: (x, 1) for x < p^n, then (1, p j) for j < p^{n-1}.
std::vector<std::pair<i64, i64>> p1_points(i64 p, int n);
i64 p1_index(i64 p, int n, i64 x, i64 y);

struct P1Function {
  i64 p = 2;
  int n = 1;
  std::vector<Fp2> values;

  P1Function() = default;
  P1Function(i64 p, int n);
  static P1Function constant(i64 p, int n, const Fp2& c);
  friend bool operator==(const P1Function&, const P1Function&) = default;
};

/// (g f)(z) = f(g^{-1} z) for g an integer matrix with unit determinant mod p.
P1Function p1_act(const std::array<i64, 4>& g, const P1Function& f);
/// Pull back along P^1(Z/p^{n+1}) -> P^1(Z/p^n).
P1Function p1_inflate(const P1Function& f);

}  // namespace pgk
