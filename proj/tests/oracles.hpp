#pragma once

// Test-only reference computations. Each one is deliberately naive and shares
// no code path with the library routine it is used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "disjoint/matrix.hpp"

namespace disjoint::oracle {

/// Laplace expansion along the first row.
inline Integer cofactor_determinant(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = a(i, j);
    const Integer term = a(0, c) * cofactor_determinant(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// gcd of all r x r minors (the r-th determinantal divisor).
inline Integer minor_gcd(const IntMatrix& a, std::size_t r) {
  std::vector<std::vector<std::size_t>> rows, cols;
  std::vector<std::size_t> cur;
  combinations(a.rows(), r, 0, cur, rows);
  combinations(a.cols(), r, 0, cur, cols);
  Integer g = 0;
  for (const auto& rs : rows)
    for (const auto& cs : cols) {
      IntMatrix m(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m(i, j) = a(rs[i], cs[j]);
      g = gcd(g, cofactor_determinant(m));
    }
  return g;
}

/// Kronecker product straight from the index formula
/// out[(i1 i2), (j1 j2)] = a[i1, j1] * b[i2, j2].
inline IntMatrix kronecker_by_index(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c)
      out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
  return out;
}

/// Rank over GF(p) as log_p of the size of the row space, found by
/// enumerating every linear combination of the rows.
inline std::size_t brute_rank_mod_p(const IntMatrix& a, unsigned long p) {
  std::set<std::vector<unsigned long>> span;
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<unsigned long> coeffs(m, 0);
  while (true) {
    std::vector<unsigned long> v(n, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Integer x = a(i, j) * coeffs[i];
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
        v[j] = (v[j] + r.get_ui()) % p;
      }
    span.insert(v);
    std::size_t i = 0;
    while (i < m && ++coeffs[i] == p) coeffs[i++] = 0;
    if (i == m) break;
  }
  std::size_t rank = 0;
  for (std::size_t size = span.size(); size > 1; size /= p) ++rank;
  return rank;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace disjoint::oracle
