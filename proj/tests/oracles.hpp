#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <vector>

#include "steiner/poly.hpp"
#include "steiner/tree.hpp"

namespace oracle {

using steiner::Integer;
using steiner::Rational;
using steiner::Tree;

inline std::vector<std::vector<int>> bfs_distances(const Tree& t) {
  const int n = t.vertex_count();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    d[s][s] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : t.neighbors(u)) {
        if (d[s][w] < 0) {
          d[s][w] = d[s][u] + 1;
          q.push(w);
        }
      }
    }
  }
  return d;
}

/// Plain Gaussian elimination over the rationals.
inline Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

inline Integer integer_determinant(const std::vector<std::vector<Integer>>& a) {
  std::vector<std::vector<Rational>> q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& v : a[i]) q[i].push_back(Rational(v));
  const Rational d = determinant(q);
  return d.get_num();
}

/// Coefficients of a binary form, highest power of x_0 first.
inline std::vector<Integer> binary_coefficients(const steiner::HomogeneousForm& f) {
  std::vector<Integer> c;
  for (int i = f.degree(); i >= 0; --i) c.push_back(f.coefficient({i, f.degree() - i}));
  return c;
}

/// Classical Sylvester resultant of two binary forms given by coefficient lists.
inline Integer sylvester(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  const std::size_t m = a.size() - 1, n = b.size() - 1, size = m + n;
  std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) s[r][r + j] = a[j];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) s[n + r][r + j] = b[j];
  return integer_determinant(s);
}

inline bool isomorphic(const Tree& a, const Tree& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  std::vector<int> perm(a.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (const auto& [u, v] : a.edges()) {
      if (!b.has_edge(perm[u], perm[v])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Steiner distance by BFS-free pruning: repeatedly strip leaves outside S.
inline int pruned_steiner_distance(const Tree& t, const std::vector<int>& s) {
  const int n = t.vertex_count();
  std::vector<bool> keep(n, true), in_s(n, false);
  for (int v : s) in_s[v] = true;
  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = t.degree(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (keep[v] && !in_s[v] && degree[v] <= 1) {
        keep[v] = false;
        for (int w : t.neighbors(v))
          if (keep[w]) --degree[w];
        changed = true;
      }
    }
  }
  int kept = 0;
  for (int v = 0; v < n; ++v) kept += keep[v] ? 1 : 0;
  return kept - 1;
}

/// g_r(x) summed over ordered (k-1)-tuples: sd({r} + tuple) * prod x.
template <class Scalar>
Scalar tuple_gradient(const Tree& t, int k, int r, const std::vector<Scalar>& x) {
  const int n = t.vertex_count();
  Scalar total = 0;
  std::vector<int> s(static_cast<std::size_t>(k), r);
  std::function<void(int, Scalar)> walk = [&](int depth, Scalar product) {
    if (depth == k) {
      total += product * Scalar(pruned_steiner_distance(t, s));
      return;
    }
    for (int v = 0; v < n; ++v) {
      s[depth] = v;
      walk(depth + 1, product * x[v]);
    }
  };
  walk(1, Scalar(1));
  return total;
}

}  // namespace oracle
