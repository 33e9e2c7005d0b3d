#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "disjoint/matrix.hpp"
#include "disjoint/transversals.hpp"

namespace disjoint {

struct SpectrumLine {
  unsigned k;
  Integer eigenvalue;
  Integer multiplicity;

  friend bool operator==(const SpectrumLine&, const SpectrumLine&) = default;
};

struct SpectrumSummary {
  unsigned n;
  std::vector<SpectrumLine> lines;  // indexed by k = 0..n
};

/// Eigenvalue attached to k all-ones factors: (-1)^(n-k) (n-1)^k, with 0^0 = 1.
inline Integer tensor_eigenvalue(unsigned n, unsigned k) {
  Integer v = pow(Integer(n - 1), k);
  return (n - k) % 2 ? Integer(-v) : v;
}

/// C(n,k) (n-1)^(n-k), with 0^0 = 1.
inline Integer tensor_multiplicity(unsigned n, unsigned k) { return binomial(n, k) * pow(Integer(n - 1), n - k); }

/// Spectrum of the n-fold Kronecker power of J - I. For n = 1 the k = 0
/// line has multiplicity zero and the k = 1 line carries eigenvalue 0.
inline SpectrumSummary closed_form_spectrum(unsigned n) {
  if (n < 1) throw std::invalid_argument("closed_form_spectrum: n must be at least 1");
  SpectrumSummary out{n, {}};
  for (unsigned k = 0; k <= n; ++k) out.lines.push_back({k, tensor_eigenvalue(n, k), tensor_multiplicity(n, k)});
  return out;
}

/// Integral eigenvectors of J - I: the all-ones vector (eigenvalue n-1) for
/// i = 1, and e_1 - e_i (eigenvalue -1) for i >= 2.
inline IntVector base_eigenvector(unsigned n, unsigned i) {
  if (i < 1 || i > n)
    throw std::out_of_range("base_eigenvector: index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  if (i == 1) return IntVector(n, Integer(1));
  IntVector v(n, Integer(0));
  v[0] = 1;
  v[i - 1] = -1;
  return v;
}

/// slots[r] names the base eigenvector in tensor position r.
struct TensorPattern {
  std::vector<unsigned> slots;

  unsigned n() const noexcept { return static_cast<unsigned>(slots.size()); }

  unsigned k() const noexcept {
    unsigned ones = 0;
    for (unsigned s : slots) ones += (s == 1);
    return ones;
  }
};

struct TensorEigenpair {
  IntVector vector;
  Integer eigenvalue;
};

inline TensorEigenpair tensor_eigenvector(const TensorPattern& pattern) {
  const unsigned n = pattern.n();
  if (n < 1) throw std::invalid_argument("tensor_eigenvector: empty pattern");
  IntVector v{Integer(1)};
  for (unsigned s : pattern.slots) {
    const IntVector base = base_eigenvector(n, s);
    v = kronecker<Integer>(v, base);
  }
  return {std::move(v), tensor_eigenvalue(n, pattern.k())};
}

struct SpectrumCheck {
  unsigned k;
  Integer expected_multiplicity;
  std::uint64_t patterns = 0;  // patterns with this k
  std::uint64_t passed = 0;    // of which satisfied A v = lambda v
};

struct SpectrumFailure {
  std::uint64_t pattern_rank;
  std::string pattern;
  std::string reason;
};

struct SpectrumReport {
  unsigned n;
  std::vector<SpectrumCheck> per_k;
  std::vector<SpectrumFailure> failures;  // sorted by pattern rank

  bool ok() const {
    if (!failures.empty()) return false;
    for (const auto& c : per_k)
      if (c.passed != c.patterns || Integer(c.patterns) != c.expected_multiplicity) return false;
    return true;
  }
};

/// Checks every tensor eigenvector against the dense incidence matrix with
/// exact arithmetic and tallies patterns per k against the closed form.
inline SpectrumReport verify_spectrum(unsigned n, unsigned guard = kDenseGuard) {
  const IntMatrix a = incidence_matrix(n, guard);
  const SpectrumSummary expected = closed_form_spectrum(n);
  SpectrumReport report{n, {}, {}};
  for (const auto& line : expected.lines) report.per_k.push_back({line.k, line.multiplicity});

  const std::uint64_t total = transversal_count(n);
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    // patterns share the mixed-radix enumeration of transversals
    const TensorPattern pattern{unrank_transversal(n, rank).choices};
    const auto [v, lambda] = tensor_eigenvector(pattern);
    auto& tally = report.per_k[pattern.k()];
    ++tally.patterns;

    const IntVector av = mat_vec<Integer>(a, v);
    bool good = true;
    std::size_t bad_index = 0;
    for (std::size_t i = 0; i < av.size() && good; ++i)
      if (av[i] != lambda * v[i]) {
        good = false;
        bad_index = i;
      }
    if (good) {
      ++tally.passed;
    } else {
      report.failures.push_back({rank, to_string(Transversal(pattern.slots)),
                                 "A v != lambda v at index " + std::to_string(bad_index) + " (lambda " +
                                     to_string(lambda) + ")"});
    }
  }
  return report;
}

}  // namespace disjoint
