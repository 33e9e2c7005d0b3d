#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "disjoint/matrix.hpp"
#include "disjoint/spectrum.hpp"
#include "disjoint/transversals.hpp"

namespace disjoint {

/// P * A * Q = D with P, Q unimodular and D diagonal with a divisibility chain.
/// P and Q are empty (0x0) when the decomposition ran without transforms.
struct SnfResult {
  IntMatrix d;
  IntMatrix p;
  IntMatrix q;

  bool has_transforms() const { return p.rows() == d.rows() && q.rows() == d.cols(); }
};

struct SnfOptions {
  bool track_transforms = true;
};

inline std::vector<Integer> diagonal_of(const IntMatrix& d) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

namespace detail {

// Working state for the general elimination. Every elementary operation on
// the working matrix is mirrored on P (rows) or Q (columns) so that
// work == P * A * Q holds after each step.
class SmithReducer {
 public:
  SmithReducer(const IntMatrix& a, bool track)
      : work_(a),
        p_(track ? std::optional<IntMatrix>(IntMatrix::identity(a.rows())) : std::nullopt),
        q_(track ? std::optional<IntMatrix>(IntMatrix::identity(a.cols())) : std::nullopt) {}

  SnfResult run() {
    const std::size_t r = std::min(work_.rows(), work_.cols());
    std::size_t t = 0;
    for (; t < r; ++t) {
      if (!pivot_to(t)) break;
      eliminate_cross(t);
      if (sgn(work_(t, t)) < 0) negate_row(t);
    }
    fix_divisibility(t);
    SnfResult out{std::move(work_), {}, {}};
    if (p_) {
      out.p = std::move(*p_);
      out.q = std::move(*q_);
    }
    return out;
  }

 private:
  // Moves a nonzero entry of least magnitude in the trailing block to (t, t).
  bool pivot_to(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < work_.rows(); ++i)
      for (std::size_t j = t; j < work_.cols(); ++j) {
        const Integer& w = work_(i, j);
        if (w == 0) continue;
        if (!best || mpz_cmpabs(w.get_mpz_t(), work_(best->first, best->second).get_mpz_t()) < 0) {
          best = {{i, j}};
          if (mpz_cmpabs_ui(w.get_mpz_t(), 1) == 0) goto found;
        }
      }
  found:
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  // Clears row t and column t outside the pivot by repeated division with
  // remainder, re-pivoting on the smallest remainder until both are zero.
  void eliminate_cross(std::size_t t) {
    Integer quot;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < work_.rows(); ++i) {
        if (work_(i, t) == 0) continue;
        mpz_tdiv_q(quot.get_mpz_t(), work_(i, t).get_mpz_t(), work_(t, t).get_mpz_t());
        if (quot != 0) row_submul(i, t, quot);
        if (work_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < work_.cols(); ++j) {
        if (work_(t, j) == 0) continue;
        mpz_tdiv_q(quot.get_mpz_t(), work_(t, j).get_mpz_t(), work_(t, t).get_mpz_t());
        if (quot != 0) col_submul(j, t, quot);
        if (work_(t, j) != 0) clean = false;
      }
      if (clean) return;
      // every leftover is a nonzero remainder, hence smaller than the pivot
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < work_.rows(); ++i)
        if (work_(i, t) != 0 && mpz_cmpabs(work_(i, t).get_mpz_t(), work_(bi, bj).get_mpz_t()) < 0) bi = i, bj = t;
      for (std::size_t j = t + 1; j < work_.cols(); ++j)
        if (work_(t, j) != 0 && mpz_cmpabs(work_(t, j).get_mpz_t(), work_(bi, bj).get_mpz_t()) < 0) bi = t, bj = j;
      swap_rows(t, bi);
      swap_cols(t, bj);
    }
  }

  // For each adjacent-or-later pair (i, j) with d_i not dividing d_j, replace
  // (d_i, d_j) by (gcd, lcm) through a 2x2 unimodular row and column step.
  void fix_divisibility(std::size_t nonzero) {
    Integer g, s, u, a_g, b_g, tmp;
    for (std::size_t i = 0; i < nonzero; ++i)
      for (std::size_t j = i + 1; j < nonzero; ++j) {
        const Integer a = work_(i, i), b = work_(j, j);
        if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        a_g = a / g;
        b_g = b / g;
        // rows: [s u; -b/g a/g], columns: [1 -u b/g; 1 s a/g]
        combine_rows(i, j, s, u, -b_g, a_g);
        tmp = -u * b_g;
        Integer sa = s * a_g;
        combine_cols(i, j, Integer(1), Integer(1), tmp, sa);
      }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    work_.swap_rows(a, b);
    if (p_) p_->swap_rows(a, b);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    work_.swap_cols(a, b);
    if (q_) q_->swap_cols(a, b);
  }

  void negate_row(std::size_t r) {
    for (auto& x : work_.row(r)) mpz_neg(x.get_mpz_t(), x.get_mpz_t());
    if (p_)
      for (auto& x : p_->row(r)) mpz_neg(x.get_mpz_t(), x.get_mpz_t());
  }

  // row dst -= f * row src
  static void row_submul(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    auto d = m.row(dst);
    auto s = m.row(src);
    for (std::size_t j = 0; j < d.size(); ++j)
      if (s[j] != 0) mpz_submul(d[j].get_mpz_t(), f.get_mpz_t(), s[j].get_mpz_t());
  }

  static void col_submul(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, src) != 0) mpz_submul(m(i, dst).get_mpz_t(), f.get_mpz_t(), m(i, src).get_mpz_t());
  }

  void row_submul(std::size_t dst, std::size_t src, const Integer& f) {
    row_submul(work_, dst, src, f);
    if (p_) row_submul(*p_, dst, src, f);
  }

  void col_submul(std::size_t dst, std::size_t src, const Integer& f) {
    col_submul(work_, dst, src, f);
    if (q_) col_submul(*q_, dst, src, f);
  }

  // (row i, row j) <- (a*row i + b*row j, c*row i + d*row j)
  static void combine_rows(IntMatrix& m, std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                           const Integer& c, const Integer& d) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const Integer x = m(i, k), y = m(j, k);
      m(i, k) = a * x + b * y;
      m(j, k) = c * x + d * y;
    }
  }

  // (col i, col j) <- (a*col i + b*col j, c*col i + d*col j)
  static void combine_cols(IntMatrix& m, std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                           const Integer& c, const Integer& d) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
      const Integer x = m(k, i), y = m(k, j);
      m(k, i) = a * x + b * y;
      m(k, j) = c * x + d * y;
    }
  }

  void combine_rows(std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c,
                    const Integer& d) {
    combine_rows(work_, i, j, a, b, c, d);
    if (p_) combine_rows(*p_, i, j, a, b, c, d);
  }

  void combine_cols(std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c,
                    const Integer& d) {
    combine_cols(work_, i, j, a, b, c, d);
    if (q_) combine_cols(*q_, i, j, a, b, c, d);
  }

  IntMatrix work_;
  std::optional<IntMatrix> p_;
  std::optional<IntMatrix> q_;
};

}  // namespace detail

/// Smith normal form by elimination with least-magnitude pivoting followed by
/// a gcd/lcm pass on the diagonal. Diagonal entries are non-negative.
inline SnfResult snf(const IntMatrix& a, SnfOptions options = {}) {
  return detail::SmithReducer(a, options.track_transforms).run();
}

struct InvariantLine {
  unsigned k;
  Integer factor;
  Integer multiplicity;
};

struct InvariantFactors {
  unsigned n;
  std::vector<InvariantLine> lines;  // k = 0..n

  /// The diagonal of the normal form, weakly increasing; lines with zero
  /// multiplicity contribute nothing.
  std::vector<Integer> expand() const {
    std::vector<Integer> out;
    for (const auto& line : lines)
      for (Integer m = 0; m < line.multiplicity; ++m) out.push_back(line.factor);
    return out;
  }
};

/// (n-1)^k with multiplicity C(n,k) (n-1)^(n-k), k = 0..n, using 0^0 = 1.
inline InvariantFactors closed_form_invariants(unsigned n) {
  if (n < 1) throw std::invalid_argument("closed_form_invariants: n must be at least 1");
  InvariantFactors out{n, {}};
  for (unsigned k = 0; k <= n; ++k) out.lines.push_back({k, pow(Integer(n - 1), k), tensor_multiplicity(n, k)});
  return out;
}

struct FactorCount {
  Integer factor;
  std::uint64_t multiplicity;

  friend bool operator==(const FactorCount&, const FactorCount&) = default;
};

/// Run-length grouping of a diagonal.
inline std::vector<FactorCount> group_factors(const std::vector<Integer>& diagonal) {
  std::vector<FactorCount> out;
  for (const auto& d : diagonal) {
    if (!out.empty() && out.back().factor == d)
      ++out.back().multiplicity;
    else
      out.push_back({d, 1});
  }
  return out;
}

/// Bases x, y of Z^n (as columns) with B_n x = y diag(n-1, 1, ..., 1).
/// y_inverse is carried along so the tensor powers never need an inversion.
struct BasisPair {
  IntMatrix x;
  IntMatrix y;
  IntMatrix y_inverse;
};

inline BasisPair snf_basis_pair(unsigned n) {
  if (n < 2) throw std::invalid_argument("snf_basis_pair: n must be at least 2");
  const IntMatrix b = build_b(n);
  const SnfResult base = snf(b);
  if (base.d(n - 1, n - 1) != n - 1)
    throw std::logic_error("snf_basis_pair: unexpected normal form of B_" + std::to_string(n));

  // move the n-1 slot to the front: order (n-1, 0, 1, ..., n-2)
  std::vector<std::size_t> order(n);
  order[0] = n - 1;
  std::iota(order.begin() + 1, order.end(), std::size_t{0});

  BasisPair out;
  out.x = permute_cols(base.q, order);
  out.y_inverse = permute_rows(base.p, order);
  out.y = mat_mul(b, out.x);
  for (unsigned i = 0; i < n; ++i) mpz_divexact_ui(out.y(i, 0).get_mpz_t(), out.y(i, 0).get_mpz_t(), n - 1);
  return out;
}

/// Default limit for materializing the n^n x n^n transforms of the structured path.
inline constexpr unsigned kStructuredGuard = 4;

/// Normal form of A_n from tensor powers of the base-change pair of B_n,
/// followed by a stable sort of the diagonal.
inline SnfResult structured_snf(unsigned n, unsigned guard = kStructuredGuard) {
  if (n < 2) throw std::invalid_argument("structured_snf: n must be at least 2");
  if (n > guard)
    throw SizeGuardError("structured_snf: n=" + std::to_string(n) + " exceeds the size guard (n <= " +
                         std::to_string(guard) + "); use closed_form_invariants instead");
  const BasisPair pair = snf_basis_pair(n);
  const IntMatrix q0 = kronecker_power(pair.x, n);
  const IntMatrix p0 = kronecker_power(pair.y_inverse, n);

  // slot 1 holds the (n-1) factor, so index r carries (n-1)^k(r)
  const std::uint64_t size = transversal_count(n);
  std::vector<Integer> scattered(size);
  for (std::uint64_t r = 0; r < size; ++r) {
    const TensorPattern pattern{unrank_transversal(n, r).choices};
    scattered[r] = pow(Integer(n - 1), pattern.k());
  }
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, [&](std::size_t l, std::size_t r) { return scattered[l] < scattered[r]; });

  std::vector<Integer> sorted;
  sorted.reserve(size);
  for (std::size_t idx : order) sorted.push_back(scattered[idx]);

  return {IntMatrix::diagonal(sorted), permute_rows(p0, order), permute_cols(q0, order)};
}

struct SnfVerification {
  bool ok = true;
  std::vector<std::string> reasons;

  void fail(std::string reason) {
    ok = false;
    reasons.push_back(std::move(reason));
  }
};

inline SnfVerification verify_snf(const IntMatrix& a, const SnfResult& r) {
  SnfVerification out;
  if (r.d.rows() != a.rows() || r.d.cols() != a.cols()) {
    out.fail("shape mismatch: d is " + r.d.shape() + ", input is " + a.shape());
    return out;
  }
  if (!is_diagonal(r.d)) out.fail("d is not diagonal");
  const auto diag = diagonal_of(r.d);
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    const bool divides = diag[i] == 0 ? diag[i + 1] == 0 : mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t());
    if (!divides) {
      out.fail("divisibility chain broken at position " + std::to_string(i));
      break;
    }
  }
  if (r.p.rows() != a.rows() || r.p.cols() != a.rows() || r.q.rows() != a.cols() || r.q.cols() != a.cols()) {
    out.fail("transforms missing or misshapen");
    return out;
  }
  if (mat_mul(mat_mul(r.p, a), r.q) != r.d) out.fail("product mismatch");
  if (abs(determinant(r.p)) != 1) out.fail("p is not unimodular");
  if (abs(determinant(r.q)) != 1) out.fail("q is not unimodular");
  return out;
}

}  // namespace disjoint
