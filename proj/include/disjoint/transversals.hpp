#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "disjoint/matrix.hpp"

namespace disjoint {

/// Thrown when a request would materialize a matrix beyond the configured size limit.
struct SizeGuardError : std::length_error {
  using std::length_error::length_error;
};

/// Largest n for which incidence_matrix() builds the dense n^n x n^n matrix by default.
inline constexpr unsigned kDenseGuard = 6;

/// One element from each row of the n x n array: choices[r] is the 1-based
/// column picked in row r. Array elements are identified with positions, so
/// two transversals are disjoint exactly when they differ in every row.
struct Transversal {
  std::vector<unsigned> choices;

  Transversal() = default;
  explicit Transversal(std::vector<unsigned> c) : choices(std::move(c)) {
    const auto n = static_cast<unsigned>(choices.size());
    for (unsigned v : choices)
      if (v < 1 || v > n)
        throw std::invalid_argument("Transversal: choice " + std::to_string(v) + " outside 1.." + std::to_string(n));
  }

  unsigned n() const noexcept { return static_cast<unsigned>(choices.size()); }

  friend bool operator==(const Transversal&, const Transversal&) = default;
  friend auto operator<=>(const Transversal&, const Transversal&) = default;
};

inline std::string to_string(const Transversal& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.choices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t.choices[i]);
  }
  return out + ")";
}

/// Number of transversals, n^n.
inline std::uint64_t transversal_count(unsigned n) { return checked_pow(n, n); }

/// Mixed-radix rank with row 1 most significant: sum_r (choice[r]-1) n^(n-1-r).
inline std::uint64_t rank_transversal(const Transversal& t) {
  const std::uint64_t n = t.n();
  std::uint64_t rank = 0;
  for (unsigned c : t.choices) rank = rank * n + (c - 1);
  return rank;
}

inline Transversal unrank_transversal(unsigned n, std::uint64_t rank) {
  const std::uint64_t total = transversal_count(n);
  if (rank >= total)
    throw std::out_of_range("unrank_transversal: rank " + std::to_string(rank) + " outside 0.." +
                            std::to_string(total - 1) + " for n=" + std::to_string(n));
  std::vector<unsigned> choices(n);
  for (unsigned r = n; r-- > 0;) {
    choices[r] = static_cast<unsigned>(rank % n) + 1;
    rank /= n;
  }
  return Transversal(std::move(choices));
}

inline bool is_disjoint(const Transversal& s, const Transversal& t) {
  if (s.n() != t.n())
    throw std::invalid_argument("is_disjoint: transversals of different sizes " + std::to_string(s.n()) + " and " +
                                std::to_string(t.n()));
  for (std::size_t r = 0; r < s.choices.size(); ++r)
    if (s.choices[r] == t.choices[r]) return false;
  return true;
}

/// J - I: zero diagonal, ones elsewhere.
inline IntMatrix build_b(unsigned n) {
  if (n < 1) throw std::invalid_argument("build_b: n must be at least 1");
  IntMatrix b(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (i != j) b(i, j) = 1;
  return b;
}

/// Disjointness matrix of all n^n transversals in rank order.
inline IntMatrix incidence_matrix(unsigned n, unsigned guard = kDenseGuard) {
  if (n < 1) throw std::invalid_argument("incidence_matrix: n must be at least 1");
  if (n > guard)
    throw SizeGuardError("incidence_matrix: n=" + std::to_string(n) + " exceeds the size guard (n <= " +
                         std::to_string(guard) + "); use the structured or closed-form paths instead");
  const std::uint64_t size = transversal_count(n);
  std::vector<Transversal> all;
  all.reserve(size);
  for (std::uint64_t r = 0; r < size; ++r) all.push_back(unrank_transversal(n, r));
  IntMatrix a(size, size);
  for (std::uint64_t i = 0; i < size; ++i)
    for (std::uint64_t j = i + 1; j < size; ++j)
      if (is_disjoint(all[i], all[j])) a(i, j) = a(j, i) = 1;
  return a;
}

/// All transversals disjoint from t, in rank order; there are (n-1)^n of them.
inline std::vector<Transversal> disjoint_neighbors(const Transversal& t) {
  const unsigned n = t.n();
  std::vector<Transversal> out;
  if (n < 2) return out;
  // odometer over the n-1 allowed values per row; lexicographic == rank order
  std::vector<unsigned> cur(n);
  auto first_allowed = [&](unsigned r) { return t.choices[r] == 1 ? 2u : 1u; };
  auto next_allowed = [&](unsigned r, unsigned v) {
    ++v;
    if (v == t.choices[r]) ++v;
    return v;
  };
  for (unsigned r = 0; r < n; ++r) cur[r] = first_allowed(r);
  while (true) {
    out.emplace_back(cur);
    unsigned r = n;
    while (r-- > 0) {
      const unsigned v = next_allowed(r, cur[r]);
      if (v <= n) {
        cur[r] = v;
        break;
      }
      cur[r] = first_allowed(r);
    }
    if (r == static_cast<unsigned>(-1)) break;
  }
  return out;
}

}  // namespace disjoint
