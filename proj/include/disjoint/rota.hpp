#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "disjoint/field.hpp"
#include "disjoint/matrix.hpp"
#include "disjoint/transversals.hpp"

namespace disjoint {

/// Largest n accepted by the exhaustive and backtracking routines.
inline constexpr unsigned kRotaGuard = 5;

/// n bases of an n-dimensional space over a field. bases[i] is basis i,
/// placed in row i of the array; its row j is the vector at position (i, j).
struct RotaInstance {
  unsigned n = 0;
  FieldSpec field = FieldSpec::rationals();
  std::vector<RationalMatrix> bases;

  /// Vector at array position (row, column), both 0-based.
  std::span<const Rational> element(std::size_t row, std::size_t column) const { return bases[row].row(column); }
};

/// Builds and validates an instance: shapes, field compatibility and that
/// every row of the array is a basis.
inline RotaInstance make_instance(const FieldSpec& field, std::vector<RationalMatrix> bases) {
  const auto n = static_cast<unsigned>(bases.size());
  if (n == 0) throw std::invalid_argument("instance has no bases");
  for (unsigned i = 0; i < n; ++i) {
    if (bases[i].rows() != n || bases[i].cols() != n)
      throw std::invalid_argument("row " + std::to_string(i + 1) + " has shape " + bases[i].shape() + ", expected " +
                                  RationalMatrix::shape_string(n, n));
    std::size_t rank = 0;
    try {
      rank = rank_over_field(bases[i], field);
    } catch (const std::domain_error& e) {
      throw std::invalid_argument("row " + std::to_string(i + 1) + ": " + e.what());
    }
    if (rank != n)
      throw std::invalid_argument("row " + std::to_string(i + 1) + " is not a basis (rank " + std::to_string(rank) +
                                  " over " + field.to_string() + ")");
  }
  return RotaInstance{n, field, std::move(bases)};
}

/// Matrix whose rows are the vectors a transversal selects.
inline RationalMatrix selected_vectors(const RotaInstance& inst, const Transversal& t) {
  if (t.n() != inst.n)
    throw std::invalid_argument("transversal of size " + std::to_string(t.n()) + " for instance of size " +
                                std::to_string(inst.n));
  RationalMatrix out(inst.n, inst.n);
  for (unsigned r = 0; r < inst.n; ++r) std::ranges::copy(inst.element(r, t.choices[r] - 1), out.row(r).begin());
  return out;
}

inline bool is_basis_transversal(const RotaInstance& inst, const Transversal& t) {
  return rank_over_field(selected_vectors(inst, t), inst.field) == inst.n;
}

inline void check_rota_guard(unsigned n, unsigned guard, const char* what) {
  if (n > guard)
    throw SizeGuardError(std::string(what) + ": n=" + std::to_string(n) + " exceeds the size guard (n <= " +
                         std::to_string(guard) + ")");
}

/// Ranks of all transversals whose selected vectors form a basis, ascending.
inline std::vector<std::uint64_t> basis_transversals(const RotaInstance& inst, unsigned guard = kRotaGuard) {
  check_rota_guard(inst.n, guard, "basis_transversals");
  std::vector<std::uint64_t> out;
  const std::uint64_t total = transversal_count(inst.n);
  for (std::uint64_t r = 0; r < total; ++r)
    if (is_basis_transversal(inst, unrank_transversal(inst.n, r))) out.push_back(r);
  return out;
}

/// Disjointness matrix restricted to the given ranks, in the given order.
inline IntMatrix principal_submatrix(unsigned n, std::span<const std::uint64_t> subset,
                                     std::uint64_t max_size = transversal_count(kDenseGuard)) {
  if (subset.size() > max_size)
    throw SizeGuardError("principal_submatrix: " + std::to_string(subset.size()) + " ranks exceed the size guard (" +
                         std::to_string(max_size) + ")");
  std::vector<Transversal> ts;
  ts.reserve(subset.size());
  for (std::uint64_t r : subset) ts.push_back(unrank_transversal(n, r));
  IntMatrix out(ts.size(), ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (is_disjoint(ts[i], ts[j])) out(i, j) = out(j, i) = 1;
  return out;
}

/// n transversals; column j of the rearranged array is columns[j].
struct Arrangement {
  std::vector<Transversal> columns;

  friend bool operator==(const Arrangement&, const Arrangement&) = default;
};

/// No arrangement exists; nodes is the number of placements tried.
struct Exhausted {
  std::uint64_t nodes = 0;
};

using SearchOutcome = std::variant<Arrangement, Exhausted>;

namespace detail {

template <ExactField F>
class ArrangementSearch {
 public:
  ArrangementSearch(const RotaInstance& inst, F field)
      : n_(inst.n), field_(field), used_(n_, std::vector<bool>(n_, false)), picks_(n_, std::vector<unsigned>(n_)) {
    vectors_.resize(n_);
    for (unsigned r = 0; r < n_; ++r)
      for (unsigned e = 0; e < n_; ++e) {
        auto& v = vectors_[r].emplace_back();
        for (const auto& x : inst.element(r, e)) v.push_back(field_.from_rational(x));
      }
  }

  SearchOutcome run() {
    if (place(0, 0, EchelonBasis<F>(field_, n_))) {
      Arrangement out;
      for (const auto& col : picks_) {
        std::vector<unsigned> choices(n_);
        for (unsigned r = 0; r < n_; ++r) choices[r] = col[r] + 1;
        out.columns.emplace_back(std::move(choices));
      }
      return out;
    }
    return Exhausted{nodes_};
  }

 private:
  // Columns are filled left to right and rows top to bottom; candidates are
  // tried in increasing position order.
  bool place(unsigned column, unsigned row, const EchelonBasis<F>& partial) {
    if (column == n_) return true;
    if (row == n_) return place(column + 1, 0, EchelonBasis<F>(field_, n_));
    for (unsigned e = 0; e < n_; ++e) {
      if (used_[row][e]) continue;
      ++nodes_;
      EchelonBasis<F> next = partial;
      if (!next.add(vectors_[row][e])) continue;
      if (!extendable(row, next)) continue;
      used_[row][e] = true;
      picks_[column][row] = e;
      if (place(column, row + 1, next)) return true;
      used_[row][e] = false;
    }
    return false;
  }

  // Every later row must still offer an unused vector outside the span of
  // the partial column.
  bool extendable(unsigned row, const EchelonBasis<F>& partial) const {
    for (unsigned r = row + 1; r < n_; ++r) {
      bool any = false;
      for (unsigned e = 0; e < n_ && !any; ++e)
        if (!used_[r][e] && !partial.contains(vectors_[r][e])) any = true;
      if (!any) return false;
    }
    return true;
  }

  unsigned n_;
  F field_;
  std::vector<std::vector<typename EchelonBasis<F>::Vector>> vectors_;
  std::vector<std::vector<bool>> used_;
  std::vector<std::vector<unsigned>> picks_;  // picks_[column][row], 0-based
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Backtracking search for n mutually disjoint basis transversals. The first
/// arrangement in search order is returned.
inline SearchOutcome find_arrangement(const RotaInstance& inst, unsigned guard = kRotaGuard) {
  check_rota_guard(inst.n, guard, "find_arrangement");
  return std::visit([&](const auto& f) { return detail::ArrangementSearch(inst, f).run(); }, make_field(inst.field));
}

struct ArrangementCheck {
  bool ok = true;
  std::vector<std::string> reasons;

  void fail(std::string reason) {
    ok = false;
    reasons.push_back(std::move(reason));
  }
};

/// Checks pairwise disjointness (each row's choices across the columns form
/// a permutation) and that every column is a basis.
inline ArrangementCheck verify_arrangement(const RotaInstance& inst, const Arrangement& a) {
  ArrangementCheck out;
  const unsigned n = inst.n;
  if (a.columns.size() != n) {
    out.fail("expected " + std::to_string(n) + " columns, got " + std::to_string(a.columns.size()));
    return out;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (a.columns[j].n() != n) {
      out.fail("column " + std::to_string(j + 1) + " has size " + std::to_string(a.columns[j].n()));
      return out;
    }

  for (unsigned r = 0; r < n; ++r) {
    // first column to use each position of row r
    std::vector<std::size_t> owner(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const unsigned c = a.columns[j].choices[r];
      if (c < 1 || c > n) {
        out.fail("column " + std::to_string(j + 1) + " has an invalid choice in row " + std::to_string(r + 1));
        return out;
      }
      if (owner[c] != 0) {
        out.fail("columns " + std::to_string(owner[c]) + "," + std::to_string(j + 1) + " not disjoint (row " +
                 std::to_string(r + 1) + ")");
      } else {
        owner[c] = j + 1;
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!is_basis_transversal(inst, a.columns[j])) out.fail("column " + std::to_string(j + 1) + " not a basis");
  return out;
}

/// Random instance by rejection sampling: GF(p) entries are uniform residues,
/// rational entries are integers in [-entry_bound, entry_bound].
template <class Rng>
RotaInstance random_instance(unsigned n, const FieldSpec& field, Rng& rng, long entry_bound = 5) {
  if (n < 1) throw std::invalid_argument("random_instance: n must be at least 1");
  const bool prime = field.kind() == FieldSpec::Kind::PrimeField;
  const long lo = prime ? 0 : -entry_bound;
  const long hi = prime ? static_cast<long>(field.modulus()) - 1 : entry_bound;
  std::uniform_int_distribution<long> entry(lo, hi);
  std::vector<RationalMatrix> bases;
  while (bases.size() < n) {
    RationalMatrix m(n, n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) m(i, j) = Rational(entry(rng));
    if (rank_over_field(m, field) == n) bases.push_back(std::move(m));
  }
  return make_instance(field, std::move(bases));
}

}  // namespace disjoint
